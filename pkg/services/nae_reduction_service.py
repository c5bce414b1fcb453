import logging
from typing import List, Sequence, Tuple

from domain.errors import CertificateError, InputError
from domain.models import ColorAssignment, CnfFormula, Graph, ReductionOutput, Variant
from services.cnf_service import is_monotone, is_nae_satisfying, max_clause_size, require
from services.coloring_service import validate_partition
from services.witness_service import remove_dominant_subtrees

logger = logging.getLogger(__name__)

GENERATOR = "nae"


def ceil_log2(m: int) -> int:
    return (m - 1).bit_length() if m > 1 else 0


def nae_target(m: int) -> int:
    return ceil_log2(m) + 5


def gen_nae_reduction(f: CnfFormula, variant: Variant = Variant.WEAK) -> ReductionOutput:
    """
    단조 3-NAE-SAT 식에서 목표 k = ceil(log m) + 5 인 그래프를 만든다.

    T_k 에서 지배 T_3 을 m 개 제거하고, 각 부모 f_j 를 절 정점 C_j 에 잇는다.
    C_j 는 자기 변수 정점 x_i 들과 이어진다. 변수 가젯은 WEAK 이면 중심 c 의 별,
    PROPER 이면 x_i - ~x_i 매칭이다.
    """
    if variant not in (Variant.WEAK, Variant.PROPER):
        raise InputError(f"NAE reduction has weak and proper variants, got {variant.value}")
    if f.m < 1:
        raise InputError("NAE reduction needs at least one clause")
    require(is_monotone(f), "NAE reduction needs a monotone formula")
    require(max_clause_size(f, 3), "NAE reduction needs clauses of size at most 3")

    k = nae_target(f.m)
    pruned = remove_dominant_subtrees(k, 3, f.m)
    size = pruned.graph.n
    labels: List[str] = [pruned.graph.label(v) for v in range(size)]
    edges: List[Tuple[int, int]] = list(pruned.graph.edges())

    def add(label: str) -> int:
        labels.append(label)
        return len(labels) - 1

    center = add("c") if variant == Variant.WEAK else None
    literal = [add(f"x{i}") for i in range(1, f.num_vars + 1)]
    if variant == Variant.WEAK:
        edges += [(center, x) for x in literal]
    else:
        negated = [add(f"~x{i}") for i in range(1, f.num_vars + 1)]
        edges += list(zip(negated, literal))
    for j, clause in enumerate(f.clauses):
        c = add(f"C{j + 1}")
        edges.append((pruned.parents[j], c))
        edges += [(c, literal[i - 1]) for i in CnfFormula.variables_of(clause)]

    graph = Graph(len(labels), edges, labels)
    logger.info(f"nae reduction ({variant.value}): n={f.num_vars} m={f.m} k={k} -> {graph.n} vertices, {graph.m} edges")
    return ReductionOutput(
        generator=GENERATOR,
        graph=graph,
        k=k,
        root=pruned.root,
        parents=pruned.parents,
        formula=f,
        params={"variant": variant.value, "n": f.num_vars, "m": f.m},
        tree_colors=pruned.colors,
    )


def nae_witness_coloring(out: ReductionOutput, assignment: Sequence[bool]) -> ColorAssignment:
    """
    NAE 만족 할당에서 뿌리가 색 k 인 witness 색칠을 만든다.

    c=1, 참 변수 x_i=2 / 거짓 x_i=1, 절 정점 3, 트리는 T_k 의 정규 색 (f_j 는 4).
    PROPER 에서는 참이면 ~x_i=1, 거짓이면 ~x_i 는 칠하지 않는다.
    """
    f = out.formula
    if out.generator != GENERATOR or f is None:
        raise InputError("not an NAE reduction output")
    require(is_nae_satisfying(f, assignment), "assignment does not NAE-satisfy the formula")
    variant = Variant(out.params["variant"])
    colors = [0] * out.graph.n
    for v, c in enumerate(out.tree_colors):
        colors[v] = c
    if variant == Variant.WEAK:
        colors[out.vertex("c")] = 1
    for i, value in enumerate(assignment, start=1):
        colors[out.vertex(f"x{i}")] = 2 if value else 1
        if variant == Variant.PROPER and value:
            colors[out.vertex(f"~x{i}")] = 1
    for j in range(1, f.m + 1):
        colors[out.vertex(f"C{j}")] = 3
    phi = tuple(colors)
    if not validate_partition(out.graph, phi, variant) or phi[out.root] != out.k:
        raise CertificateError("NAE witness coloring failed validation")
    return phi
