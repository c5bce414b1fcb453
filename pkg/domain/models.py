from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any, Dict, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np

from domain.errors import GuardExceededError, InputError
from utils.bitset import popcount

# 정점 집합은 비트마스크, 순서/색칠은 정점 인덱스 기준 튜플
VertexSet = int
Ordering = Tuple[int, ...]
ColorAssignment = Tuple[int, ...]

UNCOLORED = 0


class Variant(str, Enum):
    PROPER = "proper"
    WEAK = "weak"
    CONNECTED = "connected"


class Answer(str, Enum):
    YES = "Yes"
    NO = "No"
    PROBABLY_NO = "ProbablyNo"
    BUDGET_EXCEEDED = "BudgetExceeded"


class Graph:
    """
    무방향 단순 그래프. 생성 이후 불변이며 워커 간 공유해도 안전하다.

    정점 수에는 상한이 없다 (환원 출력은 63 을 넘을 수 있다).
    GRUNDY_MAX_VERTICES 는 solver 진입점이 require_vertices 로 확인한다.
    """

    def __init__(
        self,
        n: int,
        edges: Iterable[Tuple[int, int]] = (),
        labels: Optional[Sequence[str]] = None,
    ):
        if n < 0:
            raise InputError(f"vertex count must be non-negative, got {n}")
        adjacency: List[Set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u + 1}, {v + 1}) out of range", n=n)
            if u == v:
                raise InputError(f"self-loop at vertex {u + 1}")
            adjacency[u].add(v)
            adjacency[v].add(u)
        if labels is not None and len(labels) != n:
            raise InputError(f"expected {n} labels, got {len(labels)}")
        self._n = n
        self._adjacency: Tuple[frozenset, ...] = tuple(frozenset(a) for a in adjacency)
        self._labels: Optional[Tuple[str, ...]] = tuple(labels) if labels is not None else None

    @property
    def n(self) -> int:
        return self._n

    @property
    def adjacency(self) -> Tuple[frozenset, ...]:
        return self._adjacency

    @property
    def labels(self) -> Optional[Tuple[str, ...]]:
        return self._labels

    def neighbors(self, v: int) -> frozenset:
        return self._adjacency[v]

    def degree(self, v: int) -> int:
        return len(self._adjacency[v])

    def label(self, v: int) -> str:
        if self._labels is None:
            return str(v + 1)
        return self._labels[v]

    @cached_property
    def index(self) -> Dict[str, int]:
        return {self.label(v): v for v in range(self._n)}

    @cached_property
    def max_degree(self) -> int:
        return max((len(a) for a in self._adjacency), default=0)

    @cached_property
    def m(self) -> int:
        return sum(len(a) for a in self._adjacency) // 2

    @cached_property
    def rows(self) -> Tuple[int, ...]:
        """정점별 이웃 비트마스크"""
        rows = []
        for a in self._adjacency:
            mask = 0
            for u in a:
                mask |= 1 << u
            rows.append(mask)
        return tuple(rows)

    def edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u in range(self._n) for v in sorted(self._adjacency[u]) if u < v]

    def degree_in(self, v: int, mask: VertexSet) -> int:
        return popcount(self.rows[v] & mask)

    def induced_subgraph(self, vertices: Iterable[int]) -> Tuple["Graph", List[int]]:
        """(부분 그래프, 새 인덱스 -> 원래 인덱스) 반환"""
        kept = sorted(set(vertices))
        position = {v: i for i, v in enumerate(kept)}
        edges = [
            (position[u], position[v])
            for u in kept
            for v in self._adjacency[u]
            if v in position and u < v
        ]
        labels = [self.label(v) for v in kept] if self._labels is not None else None
        return Graph(len(kept), edges, labels), kept

    def require_vertices(self, limit: int, guard: str) -> None:
        if self._n > limit:
            raise GuardExceededError(guard, limit, self._n)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self._n))
        graph.add_edges_from(self.edges())
        return graph

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        nodes = sorted(graph.nodes())
        position = {v: i for i, v in enumerate(nodes)}
        return cls(len(nodes), [(position[u], position[v]) for u, v in graph.edges() if u != v])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adjacency == other._adjacency

    def __hash__(self) -> int:
        return hash((self._n, self._adjacency))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.m})"


@dataclass(frozen=True)
class RootedTree:
    """자식 순서가 있는 루트 트리. children[v][i-1] 이 v 의 i 번째 자식."""

    parent: Tuple[int, ...]
    children: Tuple[Tuple[int, ...], ...]
    root: int = 0
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        if len(self.parent) != len(self.children):
            raise InputError("parent and children tables differ in length")
        if self.parent and self.parent[self.root] != -1:
            raise InputError("root must have no parent")

    @property
    def n(self) -> int:
        return len(self.parent)

    def child(self, v: int, i: int) -> int:
        return self.children[v][i - 1]

    def edges(self) -> List[Tuple[int, int]]:
        return [(p, v) for v, p in enumerate(self.parent) if p >= 0]

    def preorder(self, start: Optional[int] = None) -> List[int]:
        if not self.parent:
            return []
        order: List[int] = []
        stack = [self.root if start is None else start]
        while stack:
            v = stack.pop()
            order.append(v)
            stack.extend(reversed(self.children[v]))
        return order

    def subtree(self, v: int) -> List[int]:
        return self.preorder(v)

    def to_graph(self) -> Graph:
        return Graph(self.n, self.edges(), self.labels)


@dataclass(frozen=True)
class PrunedTree:
    """이항 트리에서 지배 부분트리를 제거한 결과. colors 는 원래 T_s 기준 정규 색."""

    tree: RootedTree
    graph: Graph
    parents: Tuple[int, ...]
    colors: ColorAssignment
    root: int = 0


@dataclass(frozen=True)
class Witness:
    vertices: VertexSet
    assignment: ColorAssignment
    k: int
    variant: Variant = Variant.PROPER

    @property
    def size(self) -> int:
        return popcount(self.vertices)

    @property
    def top(self) -> int:
        return self.assignment.index(self.k)


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        for j, clause in enumerate(self.clauses):
            if not clause:
                raise InputError(f"clause {j + 1} is empty", clause=j + 1)
            for literal in clause:
                if literal == 0 or abs(literal) > self.num_vars:
                    raise InputError(
                        f"literal {literal} in clause {j + 1} outside [1, {self.num_vars}]",
                        clause=j + 1,
                    )

    @property
    def m(self) -> int:
        return len(self.clauses)

    @staticmethod
    def variables_of(clause: Sequence[int]) -> List[int]:
        seen: List[int] = []
        for literal in clause:
            if abs(literal) not in seen:
                seen.append(abs(literal))
        return seen


@dataclass
class DpTable:
    """부분집합 DP 테이블. values[S] 는 G[S] 의 (약) 그런디 수."""

    n: int
    values: np.ndarray
    choice: Optional[np.ndarray] = None

    def value(self, mask: VertexSet) -> int:
        return int(self.values[mask])

    @property
    def nbytes(self) -> int:
        total = int(self.values.nbytes)
        if self.choice is not None:
            total += int(self.choice.nbytes)
        return total


@dataclass
class ReductionOutput:
    generator: str
    graph: Graph
    k: int
    root: int
    parents: Tuple[int, ...] = ()
    feedback_set: Optional[VertexSet] = None
    formula: Optional[CnfFormula] = None
    params: Dict[str, Any] = field(default_factory=dict)
    tree_colors: ColorAssignment = ()
    witness_assignment: Optional[ColorAssignment] = None
    witness_ordering: Optional[Ordering] = None

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(self.graph.label(v) for v in range(self.graph.n))

    def vertex(self, label: str) -> int:
        return self.graph.index[label]


@dataclass
class ConnectedOutcome:
    answer: Answer
    ordering: Optional[Ordering] = None
    nodes: int = 0
    prefix_length: Optional[int] = None


@dataclass
class ColorCodingOutcome:
    answer: Answer
    witness: Optional[Witness] = None
    trials: int = 0
    planned_trials: Optional[int] = 0  # None: float 범위 초과
    seed: int = 0
