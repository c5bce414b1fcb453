from __future__ import annotations

import argparse
import logging
from typing import Optional

import networkx as nx

from domain.errors import InputError
from domain.models import Graph, ReductionOutput, Variant
from services.cgc_reduction_service import cgc_witness_ordering, gen_cgc_reduction
from services.fvs_reduction_service import fvs_witness_coloring, gen_fvs_reduction
from services.nae_reduction_service import gen_nae_reduction, nae_witness_coloring
from services.witness_service import binomial_tree, canonical_level_coloring, remove_dominant_subtrees
from cli.commands.commands_utils import load_cnf, parse_truth_assignment, write_instance

logger = logging.getLogger(__name__)


def binomial_instance(k: int) -> ReductionOutput:
    tree, graph = binomial_tree(k)
    colors = canonical_level_coloring(tree)
    return ReductionOutput(
        generator="binomial",
        graph=graph,
        k=k,
        root=tree.root,
        params={"k": k},
        tree_colors=colors,
        witness_assignment=colors,
    )


def pruned_instance(s: int, l: int, m: int) -> ReductionOutput:
    pruned = remove_dominant_subtrees(s, l, m)
    return ReductionOutput(
        generator="pruned",
        graph=pruned.graph,
        k=s,
        root=pruned.root,
        parents=pruned.parents,
        params={"s": s, "l": l, "m": m},
        tree_colors=pruned.colors,
    )


def random_instance(n: int, p: float, seed: int) -> ReductionOutput:
    if n < 0 or not 0 <= p <= 1:
        raise InputError(f"need n >= 0 and 0 <= p <= 1, got n={n}, p={p}")
    graph = Graph.from_networkx(nx.gnp_random_graph(n, p, seed=seed))
    return ReductionOutput(generator="random", graph=graph, k=0, root=-1, params={"n": n, "p": p, "seed": seed})


def gen_binomial(args: argparse.Namespace) -> int:
    write_instance(binomial_instance(args.k), args.out)
    return 0


def gen_pruned(args: argparse.Namespace) -> int:
    write_instance(pruned_instance(args.s, args.l, args.m), args.out)
    return 0


def gen_random(args: argparse.Namespace) -> int:
    write_instance(random_instance(args.n, args.p, args.seed), args.out)
    return 0


def gen_nae(args: argparse.Namespace) -> int:
    f = load_cnf(args.cnf)
    out = gen_nae_reduction(f, Variant(args.variant))
    assignment = parse_truth_assignment(args.assignment, f.num_vars)
    if assignment is not None:
        out.witness_assignment = nae_witness_coloring(out, assignment)
    write_instance(out, args.out)
    return 0


def gen_fvs(args: argparse.Namespace) -> int:
    f = load_cnf(args.cnf)
    out = gen_fvs_reduction(f, args.q, args.t)
    assignment = parse_truth_assignment(args.assignment, f.num_vars)
    if assignment is not None:
        out.witness_assignment = fvs_witness_coloring(out, assignment)
    write_instance(out, args.out)
    return 0


def gen_cgc(args: argparse.Namespace) -> int:
    f = load_cnf(args.cnf)
    out = gen_cgc_reduction(f)
    assignment = parse_truth_assignment(args.assignment, f.num_vars)
    if assignment is not None:
        out.witness_ordering = cgc_witness_ordering(out, assignment)
    write_instance(out, args.out)
    return 0


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("gen", help="Write a generated instance as PREFIX.col and PREFIX.json")
    generators = parser.add_subparsers(dest="generator", required=True)

    def add(name: str, handler, help_text: str, cnf: bool = False, assignment: Optional[str] = None) -> argparse.ArgumentParser:
        sub = generators.add_parser(name, help=help_text)
        if cnf:
            sub.add_argument("cnf", help="DIMACS CNF file")
        sub.add_argument("--out", required=True, help="Output prefix")
        if assignment:
            sub.add_argument("--assignment", help=assignment)
        sub.set_defaults(handler=handler)
        return sub

    sub = add("binomial", gen_binomial, "Binomial tree T_k")
    sub.add_argument("--k", type=_positive, required=True)

    sub = add("pruned", gen_pruned, "T_s with m dominant T_l subtrees removed")
    sub.add_argument("--s", type=_positive, required=True)
    sub.add_argument("--l", type=_positive, required=True)
    sub.add_argument("--m", type=int, required=True)

    sub = add("nae", gen_nae, "Monotone 3-NAE-SAT reduction", cnf=True,
              assignment="NAE-satisfying assignment; embeds a witness coloring")
    sub.add_argument("--variant", choices=[Variant.WEAK.value, Variant.PROPER.value], default=Variant.WEAK.value)

    sub = add("fvs", gen_fvs, "SAT reduction with a small feedback vertex set", cnf=True,
              assignment="Satisfying assignment; embeds a witness coloring")
    sub.add_argument("--q", type=_positive, required=True, help="Number of variable groups")
    sub.add_argument("--t", type=_positive, default=None, help="Clique size override")

    add("cgc", gen_cgc, "3-SAT-3-OCC reduction for connected Grundy k=7", cnf=True,
        assignment="Satisfying assignment; embeds a connected witness ordering")

    sub = add("random", gen_random, "Seeded G(n, p)")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--p", type=float, required=True)
    sub.add_argument("--seed", type=int, default=0)
