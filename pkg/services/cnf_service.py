import logging
from collections import Counter
from dataclasses import dataclass
from typing import Optional, Sequence

from domain.errors import InputError
from domain.models import CnfFormula

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CnfCheck:
    """검사 결과. 실패하면 처음 위반한 절(1부터) 또는 변수를 가리킨다."""

    ok: bool
    reason: str = ""
    clause: Optional[int] = None
    variable: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok


PASSED = CnfCheck(ok=True)


def is_monotone(f: CnfFormula) -> CnfCheck:
    for j, clause in enumerate(f.clauses, start=1):
        for literal in clause:
            if literal < 0:
                return CnfCheck(False, f"clause {j} contains negated literal {literal}", clause=j, variable=-literal)
    return PASSED


def max_clause_size(f: CnfFormula, limit: int = 3) -> CnfCheck:
    for j, clause in enumerate(f.clauses, start=1):
        if len(clause) > limit:
            return CnfCheck(False, f"clause {j} has {len(clause)} literals (limit {limit})", clause=j)
    return PASSED


def is_three_occ(f: CnfFormula) -> CnfCheck:
    """모든 변수가 최대 3 번 등장"""
    occurrences = Counter(abs(literal) for clause in f.clauses for literal in clause)
    for variable in range(1, f.num_vars + 1):
        if occurrences[variable] > 3:
            return CnfCheck(False, f"x{variable} occurs {occurrences[variable]} times", variable=variable)
    return PASSED


def no_pure_variable(f: CnfFormula) -> CnfCheck:
    """등장하는 모든 변수가 양/음 리터럴 양쪽으로 나타난다"""
    positive = {literal for clause in f.clauses for literal in clause if literal > 0}
    negative = {-literal for clause in f.clauses for literal in clause if literal < 0}
    for variable in range(1, f.num_vars + 1):
        if (variable in positive) != (variable in negative):
            sign = "positive" if variable in positive else "negative"
            return CnfCheck(False, f"x{variable} occurs only as a {sign} literal", variable=variable)
    return PASSED


def _value(literal: int, assignment: Sequence[bool]) -> bool:
    return bool(assignment[abs(literal) - 1]) == (literal > 0)


def _check_length(f: CnfFormula, assignment: Sequence[bool]) -> None:
    if len(assignment) != f.num_vars:
        raise InputError(f"assignment has {len(assignment)} values for {f.num_vars} variables")


def is_satisfying(f: CnfFormula, assignment: Sequence[bool]) -> CnfCheck:
    _check_length(f, assignment)
    for j, clause in enumerate(f.clauses, start=1):
        if not any(_value(literal, assignment) for literal in clause):
            return CnfCheck(False, f"clause {j} is not satisfied", clause=j)
    return PASSED


def is_nae_satisfying(f: CnfFormula, assignment: Sequence[bool]) -> CnfCheck:
    """각 절에 참 리터럴과 거짓 리터럴이 모두 있다"""
    _check_length(f, assignment)
    for j, clause in enumerate(f.clauses, start=1):
        values = {_value(literal, assignment) for literal in clause}
        if values != {True, False}:
            return CnfCheck(False, f"clause {j} is not NAE-satisfied", clause=j)
    return PASSED


def require(check: CnfCheck, what: str) -> None:
    if not check:
        raise InputError(f"{what}: {check.reason}", clause=check.clause, variable=check.variable)
