import itertools
import logging
import time
from typing import Callable, Iterator, List, Optional, Tuple

import numpy as np

from config.settings import (
    DP_DEFAULT_MAX_VERTICES,
    DP_MAX_VERTICES,
    DP_STORE_CHOICES,
    EXHAUSTIVE_ORACLE_MAX_VERTICES,
    GRUNDY_MAX_VERTICES,
    ORDERING_ORACLE_MAX_VERTICES,
)
from domain.errors import InputError
from domain.models import ColorAssignment, DpTable, Graph, Ordering, Variant, VertexSet
from services.coloring_service import (
    assignment_from_layers,
    ordering_from_layers,
    validate_partition,
)
from services.enumerate_service import maximal_independent_sets, minimal_dominating_sets
from utils.bitset import full, iter_bits

logger = logging.getLogger(__name__)

LayerEnumerator = Callable[[Graph, VertexSet], Iterator[VertexSet]]


def _check_dp_size(g: Graph) -> None:
    g.require_vertices(GRUNDY_MAX_VERTICES, "GRUNDY_MAX_VERTICES")
    g.require_vertices(DP_MAX_VERTICES, "DP_MAX_VERTICES")
    if g.n > DP_DEFAULT_MAX_VERTICES:
        logger.warning(f"DP on {g.n} vertices allocates {1 << g.n} table bytes; raised cap in use")


def _popcount_table(n: int) -> np.ndarray:
    pc = np.zeros(1 << n, dtype=np.uint8)
    for j in range(n):
        pc[1 << j: 1 << (j + 1)] = pc[: 1 << j] + 1
    return pc


def _fill_table(g: Graph, enumerate_layers: LayerEnumerator, store_choices: bool) -> DpTable:
    """
    T[S] = max{ T[S \\ X] + 1 : X 가 enumerate_layers(G, S) 의 원소 } 를 |S| 증가 순으로 채운다.

    T[S - v] <= T[S] <= T[S - v] + 1 이므로 하한 L = max_v T[S - v], 상한 U = Δ(G[S]) + 1 을
    레벨 단위로 벡터 계산하고, L == U 면 나열을 건너뛰며 L + 1 에 닿으면 나열을 멈춘다.
    """
    n = g.n
    size = 1 << n
    buffer = bytearray(size)
    values = np.frombuffer(buffer, dtype=np.uint8)
    choice: Optional[np.ndarray] = None
    if store_choices:
        choice = np.zeros(size, dtype=np.uint32 if n <= 32 else np.uint64)
    pc = _popcount_table(n)
    rows = np.array(g.rows, dtype=np.int64)

    for level in range(1, n + 1):
        masks = np.flatnonzero(pc == level)
        lower = np.zeros(len(masks), dtype=np.uint8)
        upper = np.zeros(len(masks), dtype=np.uint8)
        for v in range(n):
            b = 1 << v
            has = (masks & b) != 0
            lower = np.maximum(lower, np.where(has, values[masks & ~b], 0).astype(np.uint8))
            degree = pc[masks & rows[v]]
            upper = np.maximum(upper, np.where(has, degree + 1, 0).astype(np.uint8))

        enumerated = 0
        for s, lo, up in zip(masks.tolist(), lower.tolist(), upper.tolist()):
            if lo >= up and choice is None:
                buffer[s] = lo
                continue
            target = min(lo + 1, up)
            best, best_x = -1, 0
            for x in enumerate_layers(g, s):
                value = buffer[s & ~x] + 1
                if value > best:
                    best, best_x = value, x
                    if best >= target:
                        break
            buffer[s] = best
            if choice is not None:
                choice[s] = best_x
            enumerated += 1
        logger.debug(f"level {level}: {len(masks)} subsets, {enumerated} enumerated")

    return DpTable(n=n, values=values, choice=choice)


def _layers(g: Graph, table: DpTable, enumerate_layers: LayerEnumerator) -> List[VertexSet]:
    """전체 집합에서 선택된 X 들을 따라 내려가며 색 클래스 W_1, W_2, ... 복원"""
    s = full(g.n)
    layers: List[VertexSet] = []
    while s:
        target = table.value(s) - 1
        if table.choice is not None:
            x = int(table.choice[s])
        else:
            x = next(x for x in enumerate_layers(g, s) if table.value(s & ~x) == target)
        layers.append(x)
        s &= ~x
    return layers


def grundy_dp_table(g: Graph, store_choices: bool = DP_STORE_CHOICES) -> DpTable:
    _check_dp_size(g)
    return _fill_table(g, maximal_independent_sets, store_choices)


def weak_grundy_dp_table(g: Graph, store_choices: bool = DP_STORE_CHOICES) -> DpTable:
    _check_dp_size(g)
    return _fill_table(g, minimal_dominating_sets, store_choices)


def grundy_number_dp(g: Graph, store_choices: bool = DP_STORE_CHOICES) -> Tuple[int, Ordering]:
    """
    그런디 수와, first-fit 으로 정확히 그 값을 내는 전체 정점 순서를 반환.

    Returns:
        (Γ(G), ordering) - ordering 은 선택된 극대 독립집합 층을 앞에서부터 이어 붙인 것
    """
    started = time.perf_counter()
    table = grundy_dp_table(g, store_choices)
    value = table.value(full(g.n))
    ordering = ordering_from_layers(_layers(g, table, maximal_independent_sets))
    logger.info(f"grundy dp: n={g.n} value={value} in {(time.perf_counter() - started) * 1000:.1f} ms")
    return value, ordering


def weak_grundy_number_dp(g: Graph, store_choices: bool = DP_STORE_CHOICES) -> Tuple[int, ColorAssignment]:
    started = time.perf_counter()
    table = weak_grundy_dp_table(g, store_choices)
    value = table.value(full(g.n))
    assignment = assignment_from_layers(g.n, _layers(g, table, minimal_dominating_sets))
    logger.info(f"weak grundy dp: n={g.n} value={value} in {(time.perf_counter() - started) * 1000:.1f} ms")
    return value, assignment


def _oracle(g: Graph, k: int, variant: Variant) -> bool:
    g.require_vertices(EXHAUSTIVE_ORACLE_MAX_VERTICES, "EXHAUSTIVE_ORACLE_MAX_VERTICES")
    if k < 1:
        raise InputError(f"k must be at least 1, got {k}")
    # 색 k 정점은 서로 다른 k-1 개의 이웃 색이 필요하다
    if k > g.max_degree + 1:
        return False
    for phi in itertools.product(range(k + 1), repeat=g.n):
        if k in phi and validate_partition(g, phi, variant):
            return True
    return False


def grundy_oracle(g: Graph, k: int) -> bool:
    """색칠 V -> {0..k} 전수 탐색으로 Γ(G) >= k 판정"""
    return _oracle(g, k, Variant.PROPER)


def weak_grundy_oracle(g: Graph, k: int) -> bool:
    return _oracle(g, k, Variant.WEAK)


def _largest(g: Graph, decide: Callable[[Graph, int], bool]) -> int:
    k = 0
    while k < g.n and decide(g, k + 1):
        k += 1
    return k


def grundy_number_oracle(g: Graph) -> int:
    return _largest(g, grundy_oracle)


def weak_grundy_number_oracle(g: Graph) -> int:
    return _largest(g, weak_grundy_oracle)


def grundy_ordering_oracle(g: Graph) -> int:
    """모든 n! 순서에 대한 first-fit 최대 색 (접두사 공유, Δ+1 에서 조기 종료)"""
    g.require_vertices(ORDERING_ORACLE_MAX_VERTICES, "ORDERING_ORACLE_MAX_VERTICES")
    bound = g.max_degree + 1 if g.n else 0
    colors = [0] * g.n
    best = [0]

    def extend(remaining: int, current: int, left: int) -> None:
        if left == 0:
            best[0] = max(best[0], current)
            return
        if min(bound, current + left) <= best[0]:
            return
        for v in iter_bits(remaining):
            used = {colors[u] for u in g.neighbors(v)}
            c = 1
            while c in used:
                c += 1
            colors[v] = c
            extend(remaining & ~(1 << v), max(current, c), left - 1)
            colors[v] = 0
            if best[0] >= bound:
                return

    extend(full(g.n), 0, g.n)
    return best[0]
