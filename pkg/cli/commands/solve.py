from __future__ import annotations

import argparse
import logging
from typing import Any, Dict, Optional

from config.settings import DEFAULT_EPSILON, DEFAULT_SEED, DP_STORE_CHOICES
from domain.errors import InputError
from domain.models import Answer, Graph, Variant, Witness
from schemas.results import SolveResult
from services.color_coding_service import weak_grundy_color_coding
from services.connected_service import connected_grundy_at_least_k, connected_grundy_number
from services.exact_service import grundy_number_dp, weak_grundy_number_dp
from services.witness_service import (
    local_grundy_number,
    local_grundy_witness,
    xp_grundy_at_least_k,
    xp_grundy_number,
)
from cli.commands.commands_utils import Stopwatch, checked_assignment, checked_ordering, emit, load_graph

logger = logging.getLogger(__name__)

SOLVED = "Solved"
EXIT_OK = 0
EXIT_BUDGET = 2


def _decide(value: int, k: Optional[int]) -> str:
    if k is None:
        return SOLVED
    return Answer.YES.value if value >= k else Answer.NO.value


def _require_k(args: argparse.Namespace) -> int:
    if args.k is None:
        raise InputError(f"solve {args.solver} needs --k")
    if args.k < 1:
        raise InputError(f"--k must be at least 1, got {args.k}")
    return args.k


def _witness_certificate(g: Graph, witness: Optional[Witness]) -> Optional[Dict[str, Any]]:
    if witness is None:
        return None
    certificate = checked_assignment(g, witness.assignment, witness.k, witness.variant)
    certificate["top"] = witness.top + 1
    return certificate


def _result(g: Graph, problem: str, algorithm: str, args: argparse.Namespace, watch: Stopwatch, **fields) -> SolveResult:
    return SolveResult(problem=problem, n=g.n, m=g.m, algorithm=algorithm, k=args.k, elapsed_ms=watch.elapsed_ms, **fields)


def solve_grundy(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    watch = Stopwatch()
    value, ordering = grundy_number_dp(g, store_choices=args.store_choices)
    answer = _decide(value, args.k)
    certificate = None
    if args.certificate and answer != Answer.NO.value:
        certificate = checked_ordering(g, ordering, value)
    emit(_result(g, "grundy", "dp", args, watch, answer=answer, value=value, certificate=certificate))
    return EXIT_OK


def solve_weak(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    watch = Stopwatch()
    value, assignment = weak_grundy_number_dp(g, store_choices=args.store_choices)
    answer = _decide(value, args.k)
    certificate = None
    if args.certificate and answer != Answer.NO.value:
        certificate = checked_assignment(g, assignment, value, Variant.WEAK)
    emit(_result(g, "weak", "dp", args, watch, answer=answer, value=value, certificate=certificate))
    return EXIT_OK


def solve_connected(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    watch = Stopwatch()
    if args.k is None:
        # 예산 초과는 BudgetExceededError 로 올라가 종료 코드 2 가 된다
        value = connected_grundy_number(g, args.budget)
        certificate = None
        if args.certificate:
            outcome = connected_grundy_at_least_k(g, value, args.budget)
            if outcome.ordering is not None:
                certificate = checked_ordering(g, outcome.ordering, value, connected=True)
        emit(_result(g, "connected", "branch-and-bound", args, watch, answer=SOLVED, value=value, certificate=certificate))
        return EXIT_OK

    k = _require_k(args)
    outcome = connected_grundy_at_least_k(g, k, args.budget)
    certificate = None
    if args.certificate and outcome.ordering is not None:
        certificate = checked_ordering(g, outcome.ordering, k, connected=True)
    emit(
        _result(
            g, "connected", "branch-and-bound", args, watch,
            answer=outcome.answer.value, certificate=certificate, nodes=outcome.nodes,
        )
    )
    return EXIT_BUDGET if outcome.answer == Answer.BUDGET_EXCEEDED else EXIT_OK


def solve_xp(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    watch = Stopwatch()
    if args.k is None:
        value = xp_grundy_number(g)
        witness = xp_grundy_at_least_k(g, value)[1] if (args.certificate and value > 0) else None
        emit(_result(g, "grundy", "xp", args, watch, answer=SOLVED, value=value, certificate=_witness_certificate(g, witness)))
        return EXIT_OK
    found, witness = xp_grundy_at_least_k(g, _require_k(args))
    answer = Answer.YES if found else Answer.NO
    certificate = _witness_certificate(g, witness) if args.certificate else None
    emit(_result(g, "grundy", "xp", args, watch, answer=answer.value, certificate=certificate))
    return EXIT_OK


def solve_local(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    watch = Stopwatch()
    if args.k is None:
        value = local_grundy_number(g)
        witness = local_grundy_witness(g, value) if (args.certificate and value > 0) else None
        emit(_result(g, "grundy", "local", args, watch, answer=SOLVED, value=value, certificate=_witness_certificate(g, witness)))
        return EXIT_OK
    witness = local_grundy_witness(g, _require_k(args))
    answer = Answer.YES if witness is not None else Answer.NO
    certificate = _witness_certificate(g, witness) if args.certificate else None
    emit(_result(g, "grundy", "local", args, watch, answer=answer.value, certificate=certificate))
    return EXIT_OK


def solve_colorcoding(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    k = _require_k(args)
    watch = Stopwatch()
    outcome = weak_grundy_color_coding(g, k, args.epsilon, args.seed, args.max_trials)
    certificate = _witness_certificate(g, outcome.witness) if args.certificate else None
    emit(
        _result(
            g, "weak", "colorcoding", args, watch,
            answer=outcome.answer.value, certificate=certificate, seed=outcome.seed, trials=outcome.trials,
        )
    )
    return EXIT_OK


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("solve", help="Compute or decide a Grundy-type number of a DIMACS graph")
    solvers = parser.add_subparsers(dest="solver", required=True)

    def add(name: str, handler, help_text: str) -> argparse.ArgumentParser:
        sub = solvers.add_parser(name, help=help_text)
        sub.add_argument("graph", help="DIMACS graph file")
        sub.add_argument("--k", type=int, help="Decide whether the number is at least k")
        sub.add_argument("--certificate", action="store_true", help="Include a revalidated certificate")
        sub.set_defaults(handler=handler)
        return sub

    for name, handler, help_text in (
        ("grundy", solve_grundy, "Grundy number by subset DP"),
        ("weak", solve_weak, "Weak Grundy number by subset DP"),
    ):
        sub = add(name, handler, help_text)
        sub.add_argument(
            "--store-choices",
            action=argparse.BooleanOptionalAction,
            default=DP_STORE_CHOICES,
            help="Keep the per-subset choice table",
        )

    sub = add("connected", solve_connected, "Connected Grundy number by branch-and-bound")
    sub.add_argument("--budget", type=int, default=None, help="Search-node budget")

    add("xp", solve_xp, "Grundy >= k by witness-subset search")
    add("local", solve_local, "Grundy >= k by bounded-radius search")

    sub = add("colorcoding", solve_colorcoding, "Weak Grundy >= k by color coding")
    sub.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON, help="One-sided error bound")
    sub.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Random seed")
    sub.add_argument("--max-trials", type=int, default=None, help="Override COLOR_CODING_MAX_TRIALS")
