import logging
from typing import Iterable, List, Optional, Tuple

from domain.errors import InputError
from domain.models import CnfFormula, Graph

logger = logging.getLogger(__name__)


def _tokens(text: str) -> Iterable[Tuple[int, List[str]]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        yield number, line.split()


def read_dimacs_graph(text: str) -> Graph:
    """
    DIMACS 그래프 ("p edge n m", "e u v", 1부터 번호).

    중복 간선은 합치고, 자기 루프와 범위 밖 정점은 거부한다.
    """
    n: Optional[int] = None
    declared = 0
    edges = set()
    for number, parts in _tokens(text):
        if parts[0] == "p":
            if n is not None:
                raise InputError(f"line {number}: second problem line", line=number)
            if len(parts) != 4 or parts[1] not in ("edge", "edges", "col"):
                raise InputError(f"line {number}: malformed header {' '.join(parts)!r}", line=number)
            try:
                n, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise InputError(f"line {number}: malformed header {' '.join(parts)!r}", line=number)
            if n < 0 or declared < 0:
                raise InputError(f"line {number}: negative counts in header", line=number)
        elif parts[0] == "e":
            if n is None:
                raise InputError(f"line {number}: edge before problem line", line=number)
            if len(parts) != 3:
                raise InputError(f"line {number}: malformed edge line", line=number)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise InputError(f"line {number}: malformed edge line", line=number)
            if not (1 <= u <= n and 1 <= v <= n):
                raise InputError(f"line {number}: vertex index out of range 1..{n}", line=number)
            if u == v:
                raise InputError(f"line {number}: self-loop at vertex {u}", line=number)
            edges.add((min(u, v) - 1, max(u, v) - 1))
        else:
            raise InputError(f"line {number}: unknown line type {parts[0]!r}", line=number)
    if n is None:
        raise InputError("missing problem line 'p edge n m'")
    if declared != len(edges):
        logger.debug(f"header declares {declared} edges, {len(edges)} distinct edges read")
    return Graph(n, sorted(edges))


def write_dimacs_graph(g: Graph, comments: Iterable[str] = ()) -> str:
    lines = [f"c {comment}" for comment in comments]
    lines.append(f"p edge {g.n} {g.m}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_dimacs_cnf(text: str) -> CnfFormula:
    """
    DIMACS CNF. 절은 여러 줄에 걸칠 수 있고 0 으로 끝난다.
    problem line 이 없으면 변수 수는 등장한 최대 변수로 정한다.
    """
    num_vars: Optional[int] = None
    declared: Optional[int] = None
    clauses: List[Tuple[int, ...]] = []
    current: List[int] = []
    for number, parts in _tokens(text):
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "cnf":
                raise InputError(f"line {number}: malformed header {' '.join(parts)!r}", line=number)
            try:
                num_vars, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise InputError(f"line {number}: malformed header {' '.join(parts)!r}", line=number)
            continue
        for token in parts:
            try:
                literal = int(token)
            except ValueError:
                raise InputError(f"line {number}: malformed literal {token!r}", line=number)
            if literal == 0:
                if not current:
                    raise InputError(f"line {number}: empty clause", line=number)
                clauses.append(tuple(current))
                current = []
            else:
                current.append(literal)
    if current:
        clauses.append(tuple(current))
    if num_vars is None:
        num_vars = max((abs(literal) for clause in clauses for literal in clause), default=0)
    if declared is not None and declared != len(clauses):
        logger.warning(f"header declares {declared} clauses, {len(clauses)} read")
    return CnfFormula(num_vars=num_vars, clauses=tuple(clauses))


def write_dimacs_cnf(f: CnfFormula) -> str:
    lines = [f"p cnf {f.num_vars} {f.m}"]
    lines.extend(" ".join(str(literal) for literal in clause) + " 0" for clause in f.clauses)
    return "\n".join(lines) + "\n"
