import logging
import math
from collections import deque
from typing import List, Optional, Sequence

import numpy as np

from config.settings import (
    COLOR_CODING_BATCH,
    COLOR_CODING_MAX_TRIALS,
    DEFAULT_EPSILON,
    DEFAULT_SEED,
    GRUNDY_MAX_VERTICES,
)
from domain.errors import CertificateError, InputError
from domain.models import Answer, ColorCodingOutcome, Graph, Variant, VertexSet, Witness
from services.coloring_service import validate_partition
from services.witness_service import trim_witness
from utils.bitset import iter_bits, mask_of

logger = logging.getLogger(__name__)


# k^{2^{k-1}} 이 float 범위를 넘는 지점 (ln 기준)
_LOG_FLOAT_LIMIT = 700.0


def planned_trials(k: int, epsilon: float) -> Optional[int]:
    """
    ceil(ln(1/ε) · k^{2^{k-1}}).

    float 로 표현할 수 없을 만큼 크면 None (어떤 시행 상한보다도 크다).
    """
    exponent = 1 << (k - 1)
    if exponent * math.log(k) > _LOG_FLOAT_LIMIT:
        return None
    return math.ceil(math.log(1 / epsilon) * k ** exponent)


def prune_to_fixpoint(g: Graph, col: Sequence[int]) -> VertexSet:
    """
    모든 정점 v 가 col(v) 미만의 각 색마다 남은 이웃을 갖는 최대 부분집합.

    조건을 어기는 정점을 큐로 제거한다. 제거 순서와 무관하게 같은 최대 고정점에 도달한다.
    """
    if len(col) != g.n or any(c < 1 for c in col):
        raise InputError("prune_to_fixpoint needs a total coloring with colors >= 1")
    counts: List[dict] = []
    for v in range(g.n):
        per_color: dict = {}
        for u in g.neighbors(v):
            per_color[col[u]] = per_color.get(col[u], 0) + 1
        counts.append(per_color)
    alive = [True] * g.n
    queue = deque(v for v in range(g.n) if any(counts[v].get(c, 0) == 0 for c in range(1, col[v])))
    queued = set(queue)
    while queue:
        v = queue.popleft()
        alive[v] = False
        for u in g.neighbors(v):
            if not alive[u] or u in queued:
                continue
            counts[u][col[v]] -= 1
            if counts[u][col[v]] == 0 and col[u] > col[v]:
                queue.append(u)
                queued.add(u)
    return mask_of(v for v in range(g.n) if alive[v])


def _surviving_batch(adjacency: np.ndarray, colors: np.ndarray, k: int) -> np.ndarray:
    """(trials, n) 색 배열에 대한 가지치기 고정점을 한 번에 계산"""
    alive = np.ones(colors.shape, dtype=bool)
    while True:
        bad = np.zeros(colors.shape, dtype=bool)
        for c in range(1, k):
            present = (alive & (colors == c)).astype(np.int32) @ adjacency
            bad |= (present == 0) & (colors > c)
        updated = alive & ~bad
        if np.array_equal(updated, alive):
            return alive
        alive = updated


def weak_grundy_color_coding(
    g: Graph,
    k: int,
    epsilon: float = DEFAULT_EPSILON,
    seed: int = DEFAULT_SEED,
    max_trials: Optional[int] = None,
) -> ColorCodingOutcome:
    """
    무작위 색칠 + 가지치기 반복으로 Γ'(G) >= k 를 판정한다.

    Yes 는 항상 인증서로 검증되고, ProbablyNo 는 Γ'(G) >= k 일 때 확률 ε 이하로 틀린다.
    시행마다 시드는 SeedSequence 에서 배치 순서대로 파생되므로 결과가 재현된다.
    """
    g.require_vertices(GRUNDY_MAX_VERTICES, "GRUNDY_MAX_VERTICES")
    if k < 1:
        raise InputError(f"k must be at least 1, got {k}")
    if not 0 < epsilon < 1:
        raise InputError(f"epsilon must lie in (0, 1), got {epsilon}")
    cap = COLOR_CODING_MAX_TRIALS if max_trials is None else max_trials
    if g.n == 0 or k > g.max_degree + 1:
        return ColorCodingOutcome(answer=Answer.PROBABLY_NO, trials=0, planned_trials=0, seed=seed)
    if k == 1:
        witness = Witness(vertices=1, assignment=tuple([1] + [0] * (g.n - 1)), k=1, variant=Variant.WEAK)
        return ColorCodingOutcome(answer=Answer.YES, witness=witness, trials=0, planned_trials=0, seed=seed)

    planned = planned_trials(k, epsilon)
    if planned is None or planned > cap:
        requested = "more than 1e304" if planned is None else str(planned)
        logger.warning(f"color coding: {requested} trials requested for k={k}, capped at {cap}")
        trials = cap
    else:
        trials = planned

    adjacency = np.zeros((g.n, g.n), dtype=np.int32)
    for u, v in g.edges():
        adjacency[u, v] = adjacency[v, u] = 1

    root = np.random.SeedSequence(seed)
    done = 0
    while done < trials:
        batch = min(COLOR_CODING_BATCH, trials - done)
        rng = np.random.Generator(np.random.Philox(root.spawn(1)[0]))
        colors = rng.integers(1, k + 1, size=(batch, g.n))
        alive = _surviving_batch(adjacency, colors, k)
        hits = np.flatnonzero((alive & (colors == k)).any(axis=1))
        if hits.size:
            row = int(hits[0])
            witness = _certificate(g, colors[row].tolist(), k)
            logger.info(f"color coding: k={k} found after {done + row + 1} trials")
            return ColorCodingOutcome(
                answer=Answer.YES, witness=witness, trials=done + row + 1, planned_trials=planned, seed=seed
            )
        done += batch
    logger.info(f"color coding: k={k} not found in {done} trials")
    return ColorCodingOutcome(answer=Answer.PROBABLY_NO, trials=done, planned_trials=planned, seed=seed)


def _certificate(g: Graph, col: List[int], k: int) -> Witness:
    survivors = prune_to_fixpoint(g, col)
    # 색은 1..k 에서만 뽑으므로 k 초과 색은 생기지 않는다
    phi = [0] * g.n
    for v in iter_bits(survivors):
        phi[v] = col[v]
    top = next(v for v in iter_bits(survivors) if col[v] == k)
    witness = trim_witness(g, phi, top, Variant.WEAK)
    if not validate_partition(g, witness.assignment, Variant.WEAK):
        raise CertificateError("color coding certificate failed validation", k=k)
    return witness
