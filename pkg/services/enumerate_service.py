import logging
from typing import Iterator, List

from config.settings import NAIVE_ENUM_MAX_VERTICES
from domain.errors import GuardExceededError
from domain.models import Graph, VertexSet
from utils.bitset import iter_bits, lowest, popcount, to_list

logger = logging.getLogger(__name__)


def maximal_independent_sets(g: Graph, s: VertexSet) -> Iterator[VertexSet]:
    """
    G[s] 의 극대 독립집합을 각각 한 번씩 생성.

    보그래프의 극대 클리크를 피벗 Bron-Kerbosch 로 나열한다.
    s 가 비어 있으면 공집합 하나를 낸다.
    """
    rows = g.rows
    # 보그래프 행: s 안에서 인접하지 않은 정점
    comp = {v: s & ~rows[v] & ~(1 << v) for v in iter_bits(s)}

    def expand(r: int, p: int, x: int) -> Iterator[VertexSet]:
        if not p and not x:
            yield r
            return
        pivot = max(iter_bits(p | x), key=lambda u: popcount(p & comp[u]))
        candidates = p & ~comp[pivot]
        for v in iter_bits(candidates):
            b = 1 << v
            yield from expand(r | b, p & comp[v], x & comp[v])
            p &= ~b
            x |= b

    yield from expand(0, s, 0)


def minimal_dominating_sets(g: Graph, s: VertexSet) -> Iterator[VertexSet]:
    """
    G[s] 의 극소 지배집합을 각각 한 번씩 생성.

    아직 지배되지 않은 가장 작은 정점 w 에 대해 N[w] 의 후보 x 를 하나씩 포함시키고,
    앞선 후보들은 금지한다. 선택된 정점이 사적 이웃을 잃거나 어떤 미지배 정점의
    후보가 모두 금지되면 가지를 자른다. 잎에서 극소성을 확인한다.
    """
    rows = g.rows
    closed = {v: (rows[v] | (1 << v)) & s for v in iter_bits(s)}

    def has_private(chosen: int) -> bool:
        for c in iter_bits(chosen):
            others = 0
            for d in iter_bits(chosen & ~(1 << c)):
                others |= closed[d]
            if not closed[c] & ~others:
                return False
        return True

    def branch(chosen: int, dominated: int, forbidden: int) -> Iterator[VertexSet]:
        undominated = s & ~dominated
        if not undominated:
            if has_private(chosen):
                yield chosen
            return
        for u in iter_bits(undominated):
            if not closed[u] & ~forbidden:
                return
        w = lowest(undominated)
        excluded = 0
        for x in iter_bits(closed[w] & ~forbidden):
            b = 1 << x
            picked = chosen | b
            if has_private(picked):
                yield from branch(picked, dominated | closed[x], forbidden | excluded)
            excluded |= b

    if not s:
        yield 0
        return
    yield from branch(0, 0, 0)


def _subsets(s: VertexSet) -> Iterator[VertexSet]:
    sub = s
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & s


def _guard(s: VertexSet) -> None:
    size = popcount(s)
    if size > NAIVE_ENUM_MAX_VERTICES:
        raise GuardExceededError("NAIVE_ENUM_MAX_VERTICES", NAIVE_ENUM_MAX_VERTICES, size)


def _dominates(g: Graph, d: VertexSet, s: VertexSet) -> bool:
    covered = d
    for v in iter_bits(d):
        covered |= g.rows[v]
    return s & ~covered == 0


def _independent(g: Graph, x: VertexSet) -> bool:
    return all(not g.rows[v] & x for v in iter_bits(x))


def naive_maximal_independent_sets(g: Graph, s: VertexSet) -> List[VertexSet]:
    """부분집합 필터 오라클 (테스트용)"""
    _guard(s)
    return [x for x in _subsets(s) if _independent(g, x) and _dominates(g, x, s)]


def naive_minimal_dominating_sets(g: Graph, s: VertexSet) -> List[VertexSet]:
    _guard(s)
    return [
        d
        for d in _subsets(s)
        if _dominates(g, d, s) and all(not _dominates(g, d & ~(1 << v), s) for v in to_list(d))
    ]
