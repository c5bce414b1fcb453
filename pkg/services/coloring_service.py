import logging
from collections import deque
from typing import Dict, Iterator, List, Optional, Sequence

from config.settings import CHROMATIC_ORACLE_MAX_VERTICES
from domain.errors import InputError
from domain.models import ColorAssignment, Graph, Ordering, Variant, VertexSet
from utils.bitset import full, iter_bits

logger = logging.getLogger(__name__)


def _check_ordering(g: Graph, sigma: Sequence[int]) -> None:
    seen = set()
    for v in sigma:
        if not 0 <= v < g.n:
            raise InputError(f"vertex {v + 1} out of range", n=g.n)
        if v in seen:
            raise InputError(f"vertex {v + 1} appears twice in ordering")
        seen.add(v)


def first_fit(g: Graph, sigma: Sequence[int]) -> ColorAssignment:
    """sigma 순서대로 이미 칠해진 이웃에 없는 가장 작은 색을 부여. sigma 밖 정점은 0."""
    _check_ordering(g, sigma)
    colors = [0] * g.n
    for v in sigma:
        used = {colors[u] for u in g.neighbors(v)}
        c = 1
        while c in used:
            c += 1
        colors[v] = c
    return tuple(colors)


def validate_partition(g: Graph, phi: Sequence[int], variant: Variant) -> bool:
    """
    색칠 phi 가 (약) 그런디 색칠의 witness 인지 검사.

    색 c 인 정점은 c' < c 인 모든 색의 이웃을 가져야 하고, PROPER 이면 같은 색 이웃이 없어야 한다.
    색이 없는(0) 정점은 제약을 주지도 받지도 않는다.
    """
    if variant == Variant.CONNECTED:
        raise InputError("connected colorings are not characterized by the partition; use the connected solver")
    if len(phi) != g.n:
        raise InputError(f"assignment has {len(phi)} entries for {g.n} vertices")
    proper = variant == Variant.PROPER
    for v in range(g.n):
        c = phi[v]
        if c < 0:
            raise InputError(f"negative color at vertex {v + 1}")
        if c == 0:
            continue
        seen = {phi[u] for u in g.neighbors(v)}
        if proper and c in seen:
            return False
        for lower in range(1, c):
            if lower not in seen:
                return False
    return True


def is_connected_ordering(g: Graph, sigma: Sequence[int]) -> bool:
    # 모든 접두사가 연결 <=> 두 번째 정점부터 각 정점이 앞선 정점과 인접
    placed = set()
    for i, v in enumerate(sigma):
        if not 0 <= v < g.n or v in placed:
            return False
        if i > 0 and placed.isdisjoint(g.neighbors(v)):
            return False
        placed.add(v)
    return True


def max_color(phi: Sequence[int]) -> int:
    return max(phi, default=0)


def bfs_order(g: Graph, vertices: VertexSet, start: Optional[int] = None) -> List[int]:
    """vertices 안에서의 BFS 순서. 연결 요소마다 가장 작은 정점에서 시작."""
    rows = g.rows
    order: List[int] = []
    remaining = vertices
    starts = ([start] if start is not None else []) + list(iter_bits(vertices))
    for s in starts:
        if not remaining >> s & 1:
            continue
        remaining &= ~(1 << s)
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            for u in iter_bits(rows[v] & remaining):
                remaining &= ~(1 << u)
                queue.append(u)
    return order


def ball(g: Graph, v: int, radius: int, within: Optional[VertexSet] = None) -> VertexSet:
    """v 에서 거리 radius 이하인 정점 집합 (within 안에서)"""
    within = full(g.n) if within is None else within
    rows = g.rows
    reached = 1 << v
    layer = reached
    for _ in range(radius):
        grown = 0
        for u in iter_bits(layer):
            grown |= rows[u]
        layer = grown & within & ~reached
        if not layer:
            break
        reached |= layer
    return reached


def iter_valid_assignments(
    g: Graph,
    k: int,
    variant: Variant,
    vertices: Optional[VertexSet] = None,
    allow_uncolored: bool = True,
    forced: Optional[Dict[int, int]] = None,
    require_top: bool = True,
    start: Optional[int] = None,
) -> Iterator[ColorAssignment]:
    """
    vertices 위의 색칠 V -> {0, 1..k} 중 validate_partition 을 통과하는 것을 모두 생성.

    Args:
        allow_uncolored: False 면 vertices 의 모든 정점에 색을 준다
        forced: 고정할 {정점: 색}
        require_top: 어떤 정점이 색 k 를 받은 색칠만 생성
        start: BFS 시작 정점 (forced 정점을 먼저 두면 가지치기가 빨라진다)

    vertices 밖의 정점은 0 으로 고정된다.
    """
    if variant == Variant.CONNECTED:
        raise InputError("assignment search supports proper and weak variants only")
    vertices = full(g.n) if vertices is None else vertices
    forced = forced or {}
    proper = variant == Variant.PROPER
    rows = g.rows
    order = bfs_order(g, vertices, start)
    position = {v: i for i, v in enumerate(order)}
    nbrs = [[u for u in iter_bits(rows[v] & vertices)] for v in range(g.n)]
    cap = {v: min(k, len(nbrs[v]) + 1) for v in order}

    # 정점과 그 이웃이 모두 정해지는 시점에 조건을 검사
    closes_at: List[List[int]] = [[] for _ in order]
    for v in order:
        last = max([position[v]] + [position[u] for u in nbrs[v]])
        closes_at[last].append(v)

    colors = [0] * g.n
    assigned = [False] * g.n
    top_count = [0]

    def satisfied(v: int) -> bool:
        c = colors[v]
        if c <= 1:
            return True
        seen = {colors[u] for u in nbrs[v]}
        return all(lower in seen for lower in range(1, c))

    def feasible(v: int) -> bool:
        # 남은 미배정 이웃 수로 부족한 색을 채울 수 있는지
        c = colors[v]
        if c <= 1:
            return True
        seen = set()
        open_slots = 0
        for u in nbrs[v]:
            if assigned[u]:
                seen.add(colors[u])
            else:
                open_slots += 1
        missing = sum(1 for lower in range(1, c) if lower not in seen)
        return missing <= open_slots

    def options(v: int) -> List[int]:
        if v in forced:
            return [forced[v]]
        opts = list(range(1, cap[v] + 1))
        if allow_uncolored:
            opts.append(0)
        return opts

    def extend(i: int) -> Iterator[ColorAssignment]:
        if i == len(order):
            if not require_top or top_count[0] > 0:
                yield tuple(colors)
            return
        v = order[i]
        for c in options(v):
            if proper and c and any(assigned[u] and colors[u] == c for u in nbrs[v]):
                continue
            colors[v] = c
            assigned[v] = True
            if c == k:
                top_count[0] += 1
            ok = all(satisfied(w) for w in closes_at[i]) and feasible(v) and all(
                feasible(u) for u in nbrs[v] if assigned[u] and colors[u] > 1
            )
            if ok:
                yield from extend(i + 1)
            if c == k:
                top_count[0] -= 1
            assigned[v] = False
            colors[v] = 0

    yield from extend(0)


def find_witness(
    g: Graph,
    k: int,
    variant: Variant,
    vertices: Optional[VertexSet] = None,
    top: Optional[int] = None,
) -> Optional[ColorAssignment]:
    """
    vertices 안에서 색 k 를 달성하는 witness 를 찾는다.

    k-witness 는 색 k 정점에서 거리 k-1 안에 잡을 수 있으므로 후보 정점마다 그 공에서만 탐색한다.
    WEAK 는 0 을 색 1 로 바꿔도 유효하므로 공 전체를 색칠하는 경우만 본다.
    """
    vertices = full(g.n) if vertices is None else vertices
    if k < 1:
        raise InputError(f"k must be at least 1, got {k}")
    if not vertices:
        return None
    tops = [top] if top is not None else list(iter_bits(vertices))
    for v in tops:
        if g.degree_in(v, vertices) < k - 1:
            continue
        region = ball(g, v, k - 1, within=vertices)
        for phi in iter_valid_assignments(
            g,
            k,
            variant,
            vertices=region,
            allow_uncolored=variant == Variant.PROPER,
            forced={v: k},
            require_top=False,
            start=v,
        ):
            return phi
    return None


def _k_colorable(g: Graph, order: List[int], k: int) -> bool:
    colors = [0] * g.n

    def place(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        taken = {colors[u] for u in g.neighbors(v)}
        # 새 색은 지금까지 쓴 색 + 1 까지만 (대칭 제거)
        for c in range(1, min(k, used + 1) + 1):
            if c in taken:
                continue
            colors[v] = c
            if place(i + 1, max(used, c)):
                return True
            colors[v] = 0
        return False

    return place(0, 0)


def chromatic_number_oracle(g: Graph) -> int:
    g.require_vertices(CHROMATIC_ORACLE_MAX_VERTICES, "CHROMATIC_ORACLE_MAX_VERTICES")
    if g.n == 0:
        return 0
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    for k in range(1, g.n + 1):
        if _k_colorable(g, order, k):
            return k
    return g.n


def ordering_from_layers(layers: Sequence[VertexSet]) -> Ordering:
    """색 클래스들을 앞에서부터 이어 붙인 순서"""
    order: List[int] = []
    for layer in layers:
        order.extend(iter_bits(layer))
    return tuple(order)


def assignment_from_layers(n: int, layers: Sequence[VertexSet]) -> ColorAssignment:
    colors = [0] * n
    for c, layer in enumerate(layers, start=1):
        for v in iter_bits(layer):
            colors[v] = c
    return tuple(colors)
