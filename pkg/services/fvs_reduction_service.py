import logging
import math
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from domain.errors import CertificateError, InputError
from domain.models import ColorAssignment, CnfFormula, Graph, PrunedTree, ReductionOutput, Variant, VertexSet
from services.cnf_service import is_satisfying, require
from services.coloring_service import validate_partition
from services.nae_reduction_service import ceil_log2
from services.witness_service import binomial_tree, canonical_level_coloring, prune_subtrees, remove_dominant_subtrees
from utils.bitset import iter_bits, mask_of

logger = logging.getLogger(__name__)

GENERATOR = "fvs"


def zeta(rank: int, t: int) -> Tuple[int, ...]:
    """사전순 rank 번째 S_t 순열 (Lehmer 코드). 값은 1..t, 결과[p-1] = σ(p)."""
    if not 0 <= rank < math.factorial(t):
        raise InputError(f"rank {rank} outside [0, {t}!)")
    pool = list(range(1, t + 1))
    permutation = []
    for i in range(t, 0, -1):
        index, rank = divmod(rank, math.factorial(i - 1))
        permutation.append(pool.pop(index))
    return tuple(permutation)


def fvs_parameters(n: int, m: int, q: int, t: Optional[int] = None) -> Dict[str, int]:
    """
    그룹 크기 g = ceil(n/q), t = ceil(3n / (q log(n/q))), s = ceil(log m) + 2t + 4.
    t 를 직접 주면 2^g <= t! 만 확인한다.
    """
    if m < 1:
        raise InputError("FVS reduction needs at least one clause")
    if not 1 <= q <= n:
        raise InputError(f"need 1 <= q <= n, got q={q}, n={n}")
    group_size = math.ceil(n / q)
    if t is None:
        if n / q <= 1:
            raise InputError(f"n/q = {n / q:g} leaves log(n/q) undefined; pass t explicitly")
        t = math.ceil(3 * n / (q * math.log2(n / q)))
    if t < 1:
        raise InputError(f"t must be at least 1, got {t}")
    if 2 ** group_size > math.factorial(t):
        raise InputError(
            f"zeta infeasible: 2^{group_size} group assignments exceed {t}! permutations",
            group_size=group_size,
            t=t,
        )
    return {"n": n, "m": m, "q": q, "t": t, "s": ceil_log2(m) + 2 * t + 4, "group_size": group_size}


def group_assignment(assignment: Sequence[bool], h: int, group_size: int) -> int:
    """그룹 h 의 부분 할당을 비트열로 (p 번째 변수 = 비트 p, 더미 변수는 거짓)"""
    tau = 0
    for p in range(group_size):
        var = h * group_size + p
        if var < len(assignment) and assignment[var]:
            tau |= 1 << p
    return tau


def group_satisfies(clause: Sequence[int], h: int, group_size: int, tau: int) -> bool:
    for literal in clause:
        var = abs(literal) - 1
        if var // group_size == h and bool(tau >> (var % group_size) & 1) == (literal > 0):
            return True
    return False


@lru_cache(maxsize=None)
def clause_gadget(t: int) -> PrunedTree:
    """T_{t+2} 에서 각 자식 p+1 (p=1..t) 의 지배 부분트리를 제거한 트리"""
    tree, _ = binomial_tree(t + 2)
    colors = canonical_level_coloring(tree)
    removed = [tree.children[tree.child(tree.root, p + 1)][-1] for p in range(1, t + 1)]
    return prune_subtrees(tree, removed, colors)


def gadget_label(j: int, h: int, tau: int) -> str:
    return f"v{j}.{h}.{tau}"


def gen_fvs_reduction(f: CnfFormula, q: int, t: Optional[int] = None) -> ReductionOutput:
    """
    SAT 식에서 크기 qt 인 피드백 정점 집합을 갖는 그래프를 만든다 (목표 k = s).

    T_s 에서 지배 T_{t+2} 를 m 개 제거하고, 절 C_j 를 만족하는 그룹 할당 τ 마다
    v(j,τ) 를 f_j 에 잇는다. v(j,τ) 는 clause_gadget 의 루트이며, 자식 p+1 은
    그룹의 클리크 정점 s_h^{σ(p)} (σ = zeta(τ)) 와 이어진다.
    """
    params = fvs_parameters(f.num_vars, f.m, q, t)
    t, s, group_size = params["t"], params["s"], params["group_size"]
    pruned = remove_dominant_subtrees(s, t + 2, f.m)
    gadget = clause_gadget(t)
    labels: List[str] = [pruned.graph.label(v) for v in range(pruned.graph.n)]
    edges: List[Tuple[int, int]] = list(pruned.graph.edges())

    cliques: List[List[int]] = []
    for h in range(1, q + 1):
        members = list(range(len(labels), len(labels) + t))
        labels += [f"s{h}.{x}" for x in range(1, t + 1)]
        edges += [(a, b) for i, a in enumerate(members) for b in members[i + 1:]]
        cliques.append(members)

    children = [gadget.tree.child(gadget.root, p + 1) for p in range(1, t + 1)]
    for j, clause in enumerate(f.clauses, start=1):
        attached = 0
        for h in range(q):
            for tau in range(1 << group_size):
                if not group_satisfies(clause, h, group_size, tau):
                    continue
                offset = len(labels)
                name = gadget_label(j, h + 1, tau)
                labels += [name + gadget.graph.label(v)[1:] for v in range(gadget.graph.n)]
                edges += [(offset + a, offset + b) for a, b in gadget.graph.edges()]
                edges.append((pruned.parents[j - 1], offset + gadget.root))
                sigma = zeta(tau, t)
                edges += [(offset + child, cliques[h][sigma[p] - 1]) for p, child in enumerate(children)]
                attached += 1
        if attached == 0:
            raise InputError(f"clause {j} has no satisfying group assignment", clause=j)

    graph = Graph(len(labels), edges, labels)
    feedback = mask_of(v for members in cliques for v in members)
    logger.info(f"fvs reduction: q={q} t={t} s={s} -> {graph.n} vertices, {graph.m} edges, fvs size {q * t}")
    return ReductionOutput(
        generator=GENERATOR,
        graph=graph,
        k=s,
        root=pruned.root,
        parents=pruned.parents,
        feedback_set=feedback,
        formula=f,
        params=params,
        tree_colors=pruned.colors,
    )


def is_feedback_vertex_set(g: Graph, feedback: VertexSet) -> bool:
    """feedback 을 지우면 숲이 되는지"""
    remaining = g.to_networkx()
    remaining.remove_nodes_from(iter_bits(feedback))
    return nx.is_forest(remaining) if remaining.number_of_nodes() else True


def fvs_witness_coloring(out: ReductionOutput, assignment: Sequence[bool]) -> ColorAssignment:
    """
    만족 할당에서 루트가 색 s 인 그런디 witness.

    클리크는 s_h^{σ_h(p)} = p, 각 절은 만족시키는 첫 그룹의 v(j, τ_h) 트리를 정규 색으로 칠한다
    (루트 t+2, 자식 p+1 은 p+1). T 는 T_s 의 정규 색 (f_j = t+3).
    """
    f = out.formula
    if out.generator != GENERATOR or f is None:
        raise InputError("not an FVS reduction output")
    require(is_satisfying(f, assignment), "assignment does not satisfy the formula")
    t, q, group_size = out.params["t"], out.params["q"], out.params["group_size"]
    gadget = clause_gadget(t)
    colors = [0] * out.graph.n
    for v, c in enumerate(out.tree_colors):
        colors[v] = c
    taus = [group_assignment(assignment, h, group_size) for h in range(q)]
    for h, tau in enumerate(taus, start=1):
        for p, x in enumerate(zeta(tau, t), start=1):
            colors[out.vertex(f"s{h}.{x}")] = p
    for j, clause in enumerate(f.clauses, start=1):
        h = next(h for h in range(q) if group_satisfies(clause, h, group_size, taus[h]))
        offset = out.vertex(gadget_label(j, h + 1, taus[h]))
        for v, c in enumerate(gadget.colors):
            colors[offset + v] = c
    phi = tuple(colors)
    if not validate_partition(out.graph, phi, Variant.PROPER) or phi[out.root] != out.k:
        raise CertificateError("FVS witness coloring failed validation")
    return phi
