import logging
from collections import deque
from typing import Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx

from config.settings import (
    CONNECTED_DEFAULT_BUDGET,
    CONNECTED_MEMO,
    DP_MAX_VERTICES,
    GRUNDY_MAX_VERTICES,
    ORDERING_ORACLE_MAX_VERTICES,
)
from domain.errors import BudgetExceededError, InputError
from domain.models import Answer, ConnectedOutcome, Graph, Ordering
from services.coloring_service import first_fit, is_connected_ordering, max_color
from services.exact_service import grundy_number_dp
from utils.bitset import full, iter_bits

logger = logging.getLogger(__name__)


class _BudgetSpent(Exception):
    pass


def _require_connected(g: Graph) -> None:
    g.require_vertices(GRUNDY_MAX_VERTICES, "GRUNDY_MAX_VERTICES")
    if g.n == 0 or not nx.is_connected(g.to_networkx()):
        raise InputError("connected Grundy number is only defined here for connected graphs", n=g.n)


def complete_connected(g: Graph, prefix: Sequence[int]) -> Ordering:
    """연결 접두사를 BFS 로 전체 순서까지 늘린다 (모든 접두사 연결 유지)"""
    order = list(prefix)
    placed = set(order)
    queue = deque(order)
    while queue:
        v = queue.popleft()
        for u in sorted(g.neighbors(v)):
            if u not in placed:
                placed.add(u)
                order.append(u)
                queue.append(u)
    return tuple(order)


def connected_grundy_at_least_k(g: Graph, k: int, budget: Optional[int] = None) -> ConnectedOutcome:
    """
    연결 순서에 대한 분기 한정으로 cΓ(G) >= k 를 판정.

    상태는 (칠해진 집합, 경계 정점의 색). 미색 정점 u 가 받을 수 있는 색은
    1 + (칠해진 이웃의 서로 다른 색 수) + (미색 이웃 수) 이하이므로, 모든 u 가 k 미만이면 가지를 자른다.
    """
    _require_connected(g)
    budget = CONNECTED_DEFAULT_BUDGET if budget is None else budget
    n = g.n
    rows = g.rows
    if k <= 1:
        return ConnectedOutcome(answer=Answer.YES, ordering=complete_connected(g, [0]), prefix_length=1)
    if g.m == 0:
        return ConnectedOutcome(answer=Answer.NO)
    if k == 2:
        u, v = g.edges()[0]
        return ConnectedOutcome(answer=Answer.YES, ordering=complete_connected(g, [u, v]), prefix_length=2)
    if k > g.max_degree + 1 or nx.is_bipartite(g.to_networkx()):
        return ConnectedOutcome(answer=Answer.NO)

    colors = [0] * n
    prefix: List[int] = []
    failed: Set[Tuple[int, Tuple[int, ...]]] = set()
    nodes = [0]

    def reachable(colored: int) -> bool:
        for u in iter_bits(full(n) & ~colored):
            seen = {colors[w] for w in iter_bits(rows[u] & colored)}
            if 1 + len(seen) + len(list(iter_bits(rows[u] & ~colored))) >= k:
                return True
        return False

    def signature(colored: int) -> Tuple[int, Tuple[int, ...]]:
        boundary = tuple(colors[w] for w in iter_bits(colored) if rows[w] & ~colored)
        return colored, boundary

    def search(colored: int, frontier: int) -> bool:
        nodes[0] += 1
        if nodes[0] > budget:
            raise _BudgetSpent()
        if not reachable(colored):
            return False
        key = signature(colored) if CONNECTED_MEMO else None
        if key is not None and key in failed:
            return False
        for v in iter_bits(frontier):
            used = {colors[w] for w in iter_bits(rows[v] & colored)}
            c = 1
            while c in used:
                c += 1
            colors[v] = c
            prefix.append(v)
            if c >= k:
                return True
            grown = colored | (1 << v)
            if search(grown, (frontier | rows[v]) & ~grown):
                return True
            prefix.pop()
            colors[v] = 0
        if key is not None:
            failed.add(key)
        return False

    try:
        for start in range(n):
            colors[start] = 1
            prefix.append(start)
            if search(1 << start, rows[start]):
                ordering = complete_connected(g, prefix)
                logger.debug(f"connected search: k={k} yes after {nodes[0]} nodes")
                return ConnectedOutcome(
                    answer=Answer.YES, ordering=ordering, nodes=nodes[0], prefix_length=len(prefix)
                )
            prefix.pop()
            colors[start] = 0
    except _BudgetSpent:
        logger.warning(f"connected search: budget of {budget} nodes exhausted at k={k}")
        return ConnectedOutcome(answer=Answer.BUDGET_EXCEEDED, nodes=nodes[0])
    logger.debug(f"connected search: k={k} no after {nodes[0]} nodes")
    return ConnectedOutcome(answer=Answer.NO, nodes=nodes[0])


def connected_grundy_number(g: Graph, budget: Optional[int] = None) -> int:
    """k 를 2 부터 올려 가며 판정. Γ(G) (작은 그래프) 또는 Δ+1 을 상한으로 쓴다."""
    _require_connected(g)
    remaining = CONNECTED_DEFAULT_BUDGET if budget is None else budget
    upper = grundy_number_dp(g)[0] if g.n <= DP_MAX_VERTICES else g.max_degree + 1
    value = 1
    for k in range(2, upper + 1):
        outcome = connected_grundy_at_least_k(g, k, remaining)
        remaining -= outcome.nodes
        if outcome.answer == Answer.BUDGET_EXCEEDED:
            raise BudgetExceededError(f"node budget exhausted while deciding k={k}", k=k, lower_bound=value)
        if outcome.answer == Answer.NO:
            break
        value = k
    return value


def verify_connected_certificate(g: Graph, sigma: Sequence[int], k: int) -> bool:
    """전체 순서이고, 모든 접두사가 연결이며, first-fit 이 색 k 이상에 닿는지"""
    if len(sigma) != g.n or not is_connected_ordering(g, sigma):
        return False
    return max_color(first_fit(g, sigma)) >= k


def iter_connected_orderings(g: Graph) -> Iterator[Ordering]:
    g.require_vertices(ORDERING_ORACLE_MAX_VERTICES, "ORDERING_ORACLE_MAX_VERTICES")
    rows = g.rows
    order: List[int] = []

    def extend(placed: int, frontier: int) -> Iterator[Ordering]:
        if len(order) == g.n:
            yield tuple(order)
            return
        candidates = frontier if order else full(g.n)
        for v in iter_bits(candidates):
            order.append(v)
            grown = placed | (1 << v)
            yield from extend(grown, (frontier | rows[v]) & ~grown)
            order.pop()

    yield from extend(0, 0)


def connected_grundy_oracle(g: Graph) -> int:
    """모든 연결 순서의 first-fit 최대 색 (테스트용 전수 탐색)"""
    _require_connected(g)
    return max(max_color(first_fit(g, sigma)) for sigma in iter_connected_orderings(g))
