from __future__ import annotations

import json
import logging
import time
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel

from domain.errors import CertificateError, InputError
from domain.models import CnfFormula, Graph, ReductionOutput, Variant
from schemas.results import Sidecar
from services.coloring_service import first_fit, is_connected_ordering, max_color, validate_partition
from utils.bitset import iter_bits
from utils.dimacs import read_dimacs_cnf, read_dimacs_graph, write_dimacs_graph

logger = logging.getLogger(__name__)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}", path=path)


def load_graph(path: str) -> Graph:
    graph = read_dimacs_graph(_read_text(path))
    logger.debug(f"loaded {path}: n={graph.n} m={graph.m}")
    return graph


def load_cnf(path: str) -> CnfFormula:
    return read_dimacs_cnf(_read_text(path))


def load_json(path: str) -> Any:
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON ({e.msg})", path=path, line=e.lineno)


def parse_truth_assignment(text: Optional[str], num_vars: int) -> Optional[List[bool]]:
    """ "1,0,1" 또는 "TFT" 형식. 길이는 변수 수와 같아야 한다."""
    if text is None:
        return None
    text = text.strip()
    tokens = text.replace(",", " ").split() if ("," in text or " " in text) else list(text)
    values: List[bool] = []
    for token in tokens:
        lowered = token.lower()
        if lowered in ("1", "t", "true"):
            values.append(True)
        elif lowered in ("0", "f", "false"):
            values.append(False)
        else:
            raise InputError(f"bad truth value {token!r} in assignment")
    if len(values) != num_vars:
        raise InputError(f"assignment has {len(values)} values, formula has {num_vars} variables")
    return values


def one_based(vertices: Sequence[int]) -> List[int]:
    return [v + 1 for v in vertices]


def zero_based(vertices: Sequence[int], n: int) -> List[int]:
    result = []
    for v in vertices:
        if not 1 <= v <= n:
            raise InputError(f"vertex {v} outside [1, {n}]", n=n)
        result.append(v - 1)
    return result


def checked_ordering(g: Graph, sigma: Sequence[int], k: int, connected: bool = False) -> Dict[str, Any]:
    """출력 직전 순서 인증서를 재검증하고 1부터 번호로 돌려준다."""
    if len(sigma) != g.n:
        raise CertificateError("ordering certificate does not cover every vertex", length=len(sigma), n=g.n)
    colors = first_fit(g, sigma)
    if max_color(colors) < k:
        raise CertificateError(f"ordering certificate reaches {max_color(colors)}, expected {k}", k=k)
    if connected and not is_connected_ordering(g, sigma):
        raise CertificateError("ordering certificate has a disconnected prefix")
    return {"ordering": one_based(sigma)}


def checked_assignment(g: Graph, phi: Sequence[int], k: int, variant: Variant) -> Dict[str, Any]:
    if len(phi) != g.n or not validate_partition(g, phi, variant):
        raise CertificateError(f"{variant.value} assignment certificate failed validation", k=k)
    if max_color(phi) < k:
        raise CertificateError(f"assignment certificate reaches {max_color(phi)}, expected {k}", k=k)
    return {"assignment": list(phi)}


def emit(model: BaseModel) -> None:
    print(model.model_dump_json(exclude_none=True))


class Stopwatch:
    def __init__(self):
        self.started = time.perf_counter()

    @property
    def elapsed_ms(self) -> float:
        return round((time.perf_counter() - self.started) * 1000, 3)


def sidecar_of(out: ReductionOutput) -> Sidecar:
    return Sidecar(
        generator=out.generator,
        params=out.params,
        n=out.graph.n,
        m=out.graph.m,
        k=out.k if out.k > 0 else None,
        root=out.root + 1 if out.root >= 0 else None,
        labels=list(out.labels),
        parents=one_based(out.parents) if out.parents else None,
        feedback_set=one_based(list(iter_bits(out.feedback_set))) if out.feedback_set is not None else None,
        witness_assignment=list(out.witness_assignment) if out.witness_assignment is not None else None,
        witness_ordering=one_based(out.witness_ordering) if out.witness_ordering is not None else None,
    )


def write_instance(out: ReductionOutput, prefix: str) -> Tuple[Path, Path]:
    """PREFIX.col (DIMACS) 와 PREFIX.json (사이드카) 를 쓴다."""
    graph_path = Path(f"{prefix}.col")
    sidecar_path = Path(f"{prefix}.json")
    comments = [f"generator {out.generator}"] + ([f"target k {out.k}"] if out.k > 0 else [])
    try:
        graph_path.parent.mkdir(parents=True, exist_ok=True)
        graph_path.write_text(write_dimacs_graph(out.graph, comments), encoding="utf-8")
        sidecar_path.write_text(sidecar_of(out).model_dump_json(exclude_none=True, indent=2), encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot write {prefix}.*: {e.strerror}", prefix=prefix)
    logger.info(f"wrote {graph_path} ({out.graph.n} vertices, {out.graph.m} edges) and {sidecar_path}")
    return graph_path, sidecar_path
