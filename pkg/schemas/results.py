from typing import Any, Dict, List, Optional
from pydantic import BaseModel, Field


class SolveResult(BaseModel):
    problem: str
    n: int
    m: int
    algorithm: str
    k: Optional[int] = None
    answer: str
    value: Optional[int] = None
    certificate: Optional[Dict[str, Any]] = None  # ordering / assignment, 1부터 번호
    seed: Optional[int] = None
    trials: Optional[int] = None
    nodes: Optional[int] = None
    elapsed_ms: float


class Sidecar(BaseModel):
    generator: str
    params: Dict[str, Any] = Field(default_factory=dict)
    n: int
    m: int
    k: Optional[int] = None
    root: Optional[int] = None
    labels: List[str] = Field(default_factory=list)
    parents: Optional[List[int]] = None
    feedback_set: Optional[List[int]] = None
    witness_assignment: Optional[List[int]] = None
    witness_ordering: Optional[List[int]] = None


class ValidationReport(BaseModel):
    variant: str
    valid: bool
    colors: int
    connected: Optional[bool] = None


class BenchInstance(BaseModel):
    name: Optional[str] = None
    path: Optional[str] = None
    family: Optional[str] = None  # binomial | gnp | tree | cycle | complete
    params: Dict[str, Any] = Field(default_factory=dict)
    seed: Optional[int] = None


class BenchManifest(BaseModel):
    instances: List[BenchInstance]
    algorithms: List[str]
    repeats: Optional[int] = None
    seed: int = 0


class BenchRow(BaseModel):
    instance: str
    algorithm: str
    value: Optional[int] = None
    elapsed_ms: float
    peak_table_bytes: int = 0
