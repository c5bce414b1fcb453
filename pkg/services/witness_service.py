import logging
import math
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from config.settings import (
    ASSIGNMENT_ORACLE_MAX_VERTICES,
    GRUNDY_MAX_VERTICES,
    LOCAL_MAX_BALL,
    XP_MAX_SUBSETS,
    XP_MAX_WITNESS_SIZE,
)
from domain.errors import GuardExceededError, InputError
from domain.models import (
    ColorAssignment,
    Graph,
    PrunedTree,
    RootedTree,
    Variant,
    Witness,
)
from services.coloring_service import ball, find_witness, iter_valid_assignments
from utils.bitset import full, iter_bits, mask_of, popcount

logger = logging.getLogger(__name__)


def binomial_tree(k: int) -> Tuple[RootedTree, Graph]:
    """
    T_1 은 정점 하나, T_k 는 루트 아래에 T_1, ..., T_{k-1} 을 순서대로 단 트리.

    정점 번호는 전위 순서, 라벨은 루트에서의 자식 번호 경로 ("r", "r.3", "r.3.2").
    """
    if k < 1:
        raise InputError(f"binomial tree order must be at least 1, got {k}")
    parent: List[int] = [-1]
    children: List[List[int]] = [[]]
    labels: List[str] = ["r"]

    def attach(v: int, order: int) -> None:
        for i in range(1, order):
            c = len(parent)
            parent.append(v)
            children.append([])
            labels.append(f"{labels[v]}.{i}")
            children[v].append(c)
            attach(c, i)

    attach(0, k)
    tree = RootedTree(
        parent=tuple(parent),
        children=tuple(tuple(c) for c in children),
        root=0,
        labels=tuple(labels),
    )
    return tree, tree.to_graph()


def _is_binomial(t: RootedTree, v: int) -> bool:
    for i, c in enumerate(t.children[v], start=1):
        if len(t.children[c]) != i - 1 or not _is_binomial(t, c):
            return False
    return True


def canonical_level_coloring(t: RootedTree) -> ColorAssignment:
    """잎부터 한 겹씩 벗겨 내는 색칠: 정점의 색 = 그 부분트리의 차수 (자식 수 + 1)"""
    if t.n == 0 or not _is_binomial(t, t.root):
        raise InputError("tree is not a binomial tree")
    return tuple(len(c) + 1 for c in t.children)


def dominant_roots(t: RootedTree, l: int) -> List[int]:
    """전위 순서로 나열한 지배 T_l 의 루트 (부모가 T_{l+1} 의 루트인 T_l)"""
    roots = []
    for v in t.preorder():
        p = t.parent[v]
        if p >= 0 and len(t.children[v]) + 1 == l and len(t.children[p]) + 1 == l + 1:
            roots.append(v)
    return roots


def prune_subtrees(t: RootedTree, removed: Sequence[int], colors: Sequence[int]) -> PrunedTree:
    """removed 의 부분트리를 지우고 남은 정점을 전위 순서로 다시 번호 매긴다."""
    dropped = set()
    for r in removed:
        dropped.update(t.subtree(r))
    kept = [v for v in t.preorder() if v not in dropped]
    position = {v: i for i, v in enumerate(kept)}
    parent = tuple(position[t.parent[v]] if t.parent[v] >= 0 else -1 for v in kept)
    children = tuple(tuple(position[c] for c in t.children[v] if c in position) for v in kept)
    labels = tuple(t.labels[v] for v in kept) if t.labels is not None else None
    tree = RootedTree(parent=parent, children=children, root=position[t.root], labels=labels)
    return PrunedTree(
        tree=tree,
        graph=tree.to_graph(),
        parents=tuple(position[t.parent[r]] for r in removed),
        colors=tuple(colors[v] for v in kept),
        root=position[t.root],
    )


def remove_dominant_subtrees(s: int, l: int, m: int) -> PrunedTree:
    """T_s 에서 지배 T_l 을 전위 순서로 앞에서부터 m 개 제거. parents 가 F = f_1..f_m."""
    if not 1 <= l <= s - 2:
        raise InputError(f"need 1 <= l <= s - 2, got s={s}, l={l}")
    available = 1 << (s - l - 2)
    if not 0 <= m <= available:
        raise InputError(f"T_{s} has {available} dominant T_{l} subtrees, {m} requested", available=available)
    tree, _ = binomial_tree(s)
    colors = canonical_level_coloring(tree)
    return prune_subtrees(tree, dominant_roots(tree, l)[:m], colors)


def trim_witness(g: Graph, phi: Sequence[int], v: int, variant: Variant = Variant.PROPER) -> Witness:
    """
    유효한 색칠에서 v 의 색 c 에 대한 witness 를 잘라낸다.

    남긴 정점마다 더 작은 색 하나당 이웃 하나만 남긴다 (이미 남긴 이웃 우선).
    결과는 2^{c-1} 개 이하, v 에서 거리 c-1 이내.
    """
    keep = {v}
    queue = [v]
    for u in queue:
        nbrs = sorted(g.neighbors(u), key=lambda w: (w not in keep, w))
        for lower in range(1, phi[u]):
            w = next((w for w in nbrs if phi[w] == lower), None)
            if w is None:
                raise InputError(f"vertex {u + 1} colored {phi[u]} has no neighbor colored {lower}")
            if w not in keep:
                keep.add(w)
                queue.append(w)
    assignment = tuple(phi[u] if u in keep else 0 for u in range(g.n))
    return Witness(vertices=mask_of(keep), assignment=assignment, k=phi[v], variant=variant)


def xp_grundy_at_least_k(g: Graph, k: int) -> Tuple[bool, Optional[Witness]]:
    """2^{k-1} 개 정점 부분집합마다 witness 가 있는지 색칠 전수 탐색으로 확인"""
    g.require_vertices(GRUNDY_MAX_VERTICES, "GRUNDY_MAX_VERTICES")
    if k < 1:
        raise InputError(f"k must be at least 1, got {k}")
    size = 1 << (k - 1)
    if size > XP_MAX_WITNESS_SIZE:
        raise GuardExceededError("XP_MAX_WITNESS_SIZE", XP_MAX_WITNESS_SIZE, size)
    if g.n == 0 or k > g.max_degree + 1:
        return False, None
    chosen = min(g.n, size)
    subsets = math.comb(g.n, chosen)
    if subsets > XP_MAX_SUBSETS:
        raise GuardExceededError("XP_MAX_SUBSETS", XP_MAX_SUBSETS, subsets)
    logger.debug(f"xp search: k={k}, {subsets} subsets of size {chosen}")
    for subset in combinations(range(g.n), chosen):
        phi = find_witness(g, k, Variant.PROPER, vertices=mask_of(subset))
        if phi is not None:
            return True, trim_witness(g, phi, phi.index(k))
    return False, None


def xp_grundy_number(g: Graph) -> int:
    k = 0
    while k < g.n and xp_grundy_at_least_k(g, k + 1)[0]:
        k += 1
    return k


def local_grundy_witness(g: Graph, k: int) -> Optional[Witness]:
    g.require_vertices(GRUNDY_MAX_VERTICES, "GRUNDY_MAX_VERTICES")
    if k < 1:
        raise InputError(f"k must be at least 1, got {k}")
    if g.n == 0 or k > g.max_degree + 1:
        return None
    for v in range(g.n):
        if g.degree(v) < k - 1:
            continue
        region = ball(g, v, k)
        size = popcount(region)
        if size > LOCAL_MAX_BALL:
            raise GuardExceededError("LOCAL_MAX_BALL", LOCAL_MAX_BALL, size)
        phi = find_witness(g, k, Variant.PROPER, vertices=region, top=v)
        if phi is not None:
            return trim_witness(g, phi, v)
    return None


def local_grundy_at_least_k(g: Graph, k: int) -> bool:
    """각 정점의 거리 k 공 안에서 k-witness 를 찾는다 (최대 차수가 작은 그래프용)"""
    return local_grundy_witness(g, k) is not None


def local_grundy_number(g: Graph) -> int:
    k = 0
    while k < g.n and local_grundy_at_least_k(g, k + 1):
        k += 1
    return k


def degeneracy(g: Graph) -> int:
    if g.m == 0:
        return 0
    return max(nx.core_number(g.to_networkx()).values())


def sparse_upper_bound(g: Graph) -> int:
    """
    Γ(G) <= log_{(d+1)/d}(n) + 2. d 는 퇴화도 (모든 부분그래프 H 가 d|V(H)| 이하의 간선을 가짐).

    ceil 은 정수 연산으로 구한다: (d+1)^e >= n * d^e 인 최소 e.
    """
    if g.n == 0:
        raise InputError("sparse bound needs a nonempty graph")
    d = degeneracy(g)
    if d == 0:
        return 2
    e = 0
    while (d + 1) ** e < g.n * d ** e:
        e += 1
    return e + 2


def count_grundy_colorings_achieving(g: Graph, k: int, forced: Optional[Dict[int, int]] = None) -> int:
    """최대 색이 정확히 k 인 전체 그런디 색칠의 개수"""
    g.require_vertices(ASSIGNMENT_ORACLE_MAX_VERTICES, "ASSIGNMENT_ORACLE_MAX_VERTICES")
    if not 1 <= k <= g.n:
        raise InputError(f"need 1 <= k <= n, got k={k}, n={g.n}")
    start = next(iter(forced)) if forced else None
    return sum(
        1
        for _ in iter_valid_assignments(
            g, k, Variant.PROPER, allow_uncolored=False, forced=forced, require_top=True, start=start
        )
    )


def glue_pruned_tree(pruned: PrunedTree, other: Graph, links: Sequence[Tuple[int, int]]) -> Graph:
    """
    가지친 트리와 다른 그래프를 F 를 통해서만 잇는다.

    Args:
        links: (parents 의 인덱스 i, other 의 정점 r) 쌍 - f_i 와 r 을 잇는다
    """
    offset = pruned.graph.n
    edges = list(pruned.graph.edges())
    edges += [(u + offset, v + offset) for u, v in other.edges()]
    edges += [(pruned.parents[i], offset + r) for i, r in links]
    labels = [pruned.graph.label(v) for v in range(offset)] + [f"R{r + 1}" for r in range(other.n)]
    return Graph(offset + other.n, edges, labels)


def pruned_tree_equivalence(glued: Graph, pruned: PrunedTree, l: int, variant: Variant) -> Tuple[bool, bool]:
    """
    가지친 트리 가젯의 두 조건을 각각 판정한다.

    (i)  루트가 색 s 를 받는 (약) 그런디 색칠이 있다.
    (ii) G - T 의 유도 부분그래프 색칠 중, 각 f_i 의 바깥 이웃 하나 이상이 색 l 이고
         (PROPER 이면) 색 l+1 인 바깥 이웃이 없는 것이 있다.

    Returns:
        (i, ii)
    """
    s = pruned.colors[pruned.root]
    rest = full(glued.n) & ~full(pruned.graph.n)
    condition_i = find_witness(glued, s, variant, top=pruned.root) is not None
    targets = [glued.rows[f] & rest for f in pruned.parents]
    # 색 상한 l: l 색 정점을 받쳐 주는 witness 만 남겨도 유효하므로 손실 없음
    condition_ii = any(
        all(any(phi[u] == l for u in iter_bits(t)) for t in targets)
        for phi in iter_valid_assignments(glued, l, variant, vertices=rest, require_top=False)
    )
    return condition_i, condition_ii
