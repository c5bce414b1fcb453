import logging
from typing import List, Sequence, Tuple

from domain.errors import CertificateError, InputError
from domain.models import CnfFormula, Graph, Ordering, ReductionOutput
from services.cnf_service import is_satisfying, is_three_occ, max_clause_size, no_pure_variable, require
from services.coloring_service import first_fit, is_connected_ordering

logger = logging.getLogger(__name__)

GENERATOR = "cgc"
TARGET = 7
GADGET_SIZE = 33

# 상수 가젯 a1..a33 의 간선 (a28..a33 은 K6)
GADGET_EDGES: Tuple[Tuple[int, int], ...] = (
    (27, 28), (27, 33),
    (27, 15), (15, 7), (7, 3), (3, 2), (2, 1), (1, 3), (3, 4), (4, 5), (5, 7), (7, 6),
    (6, 8), (8, 9), (9, 10), (10, 12), (12, 13), (13, 14), (14, 16), (16, 17), (17, 18),
    (18, 19), (19, 21), (21, 23),
    (11, 12), (12, 15), (15, 13), (14, 15), (27, 22), (22, 20), (16, 23), (23, 17), (23, 27),
    (27, 26), (26, 25), (25, 27), (19, 20), (20, 21), (18, 24), (24, 25), (4, 25),
) + tuple((a, b) for a in range(28, 34) for b in range(a + 1, 34))

# 모든 절 정점 c_j 와 이어지는 가젯 정점
CLAUSE_HUBS = (4, 21, 24)


def literal_label(literal: int) -> str:
    return f"x{literal}" if literal > 0 else f"~x{-literal}"


def path_labels(m: int) -> List[str]:
    """P2 경로 p_1..p_{3m-1}. c_j = p_{3j-1}"""
    labels = []
    for idx in range(1, 3 * m):
        labels.append(f"c{(idx + 1) // 3}" if idx % 3 == 2 else f"p{idx}")
    return labels


def gen_cgc_reduction(f: CnfFormula) -> ReductionOutput:
    """
    3-SAT (변수당 등장 3 회 이하) 식에서 목표 k = 7 인 연결 그런디 인스턴스를 만든다.

    상수 가젯 W, a4 와 a6 사이의 P1 (i1, i2, v 와 변수마다 삼각형 v-x_i-~x_i),
    a9 와 a11 사이의 경로 P2 로 구성되고, c_j 는 자기 리터럴과 a4, a21, a24 에 이어진다.
    """
    if f.m < 1:
        raise InputError("CGC reduction needs at least one clause")
    require(max_clause_size(f, 3), "CGC reduction needs clauses of size at most 3")
    require(is_three_occ(f), "CGC reduction needs every variable to occur at most 3 times")
    require(no_pure_variable(f), "CGC reduction needs every variable in both polarities")

    labels: List[str] = [f"a{i}" for i in range(1, GADGET_SIZE + 1)]
    labels += ["i1", "i2", "v"]
    for i in range(1, f.num_vars + 1):
        labels += [f"x{i}", f"~x{i}"]
    labels += path_labels(f.m)
    index = {label: v for v, label in enumerate(labels)}

    def a(i: int) -> int:
        return i - 1

    edges: List[Tuple[int, int]] = [(a(x), a(y)) for x, y in GADGET_EDGES]
    edges += [(a(4), index["i1"]), (index["i1"], index["i2"]), (index["i2"], index["v"]), (index["v"], a(6))]
    for i in range(1, f.num_vars + 1):
        x, nx_ = index[f"x{i}"], index[f"~x{i}"]
        edges += [(index["v"], x), (index["v"], nx_), (x, nx_)]
    path = [index[label] for label in path_labels(f.m)]
    edges += list(zip(path, path[1:]))
    edges += [(a(9), path[0]), (path[-1], a(11))]
    for j, clause in enumerate(f.clauses, start=1):
        c = index[f"c{j}"]
        edges += [(c, index[literal_label(literal)]) for literal in clause]
        edges += [(c, a(hub)) for hub in CLAUSE_HUBS]

    graph = Graph(len(labels), edges, labels)
    logger.info(f"cgc reduction: n={f.num_vars} m={f.m} -> {graph.n} vertices, {graph.m} edges")
    return ReductionOutput(
        generator=GENERATOR,
        graph=graph,
        k=TARGET,
        root=a(33),
        formula=f,
        params={"n": f.num_vars, "m": f.m},
    )


def cgc_witness_ordering(out: ReductionOutput, assignment: Sequence[bool]) -> Ordering:
    """
    만족 할당에서 a33 이 색 7 을 받는 연결 순서.

    a1..a4, P1 (변수마다 거짓 리터럴 먼저), a5..a9, P2, a11, a10, a12..a33 순.
    first-fit 은 a4=1, a21=3, a24=2, 모든 c_j=4 를 준다.
    """
    f = out.formula
    if out.generator != GENERATOR or f is None:
        raise InputError("not a CGC reduction output")
    require(is_satisfying(f, assignment), "assignment does not satisfy the formula")
    names = ["a1", "a2", "a3", "a4", "i1", "i2", "v"]
    for i, value in enumerate(assignment, start=1):
        names += [f"~x{i}", f"x{i}"] if value else [f"x{i}", f"~x{i}"]
    names += ["a5", "a6", "a7", "a8", "a9"]
    names += path_labels(f.m)
    names += ["a11", "a10"] + [f"a{i}" for i in range(12, GADGET_SIZE + 1)]
    ordering = tuple(out.vertex(name) for name in names)
    if not is_connected_ordering(out.graph, ordering) or len(ordering) != out.graph.n:
        raise CertificateError("CGC witness ordering is not a connected full ordering")
    if max(first_fit(out.graph, ordering)) < TARGET:
        raise CertificateError("CGC witness ordering does not reach color 7")
    return ordering
