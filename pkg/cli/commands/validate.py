from __future__ import annotations

import argparse
import logging
from typing import Any, Dict

from domain.errors import InputError
from domain.models import Variant
from schemas.results import ValidationReport
from services.coloring_service import first_fit, is_connected_ordering, max_color, validate_partition
from cli.commands.commands_utils import emit, load_graph, load_json, zero_based

logger = logging.getLogger(__name__)

EXIT_INVALID = 3


def _certificate_of(document: Any) -> Dict[str, Any]:
    """인증서 파일, solve 결과 JSON, gen 사이드카를 모두 받는다."""
    if not isinstance(document, dict):
        raise InputError("certificate file must hold a JSON object")
    if isinstance(document.get("certificate"), dict):
        document = document["certificate"]
    if document.get("witness_ordering") is not None:
        return {"ordering": document["witness_ordering"]}
    if document.get("witness_assignment") is not None:
        return {"assignment": document["witness_assignment"]}
    if "ordering" in document or "assignment" in document:
        return document
    raise InputError("certificate needs an 'ordering' or an 'assignment'")


def validate_certificate(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    variant = Variant(args.variant)
    certificate = _certificate_of(load_json(args.certificate))

    if "ordering" in certificate:
        sigma = zero_based(certificate["ordering"], g.n)
        colors = first_fit(g, sigma)
        connected = is_connected_ordering(g, sigma)
        full = len(sigma) == g.n
        valid = full and (connected or variant != Variant.CONNECTED)
        report = ValidationReport(variant=variant.value, valid=valid, colors=max_color(colors), connected=connected)
    else:
        if variant == Variant.CONNECTED:
            raise InputError("connected certificates are orderings, got an assignment")
        phi = [int(c) for c in certificate["assignment"]]
        if len(phi) != g.n:
            raise InputError(f"assignment has {len(phi)} entries, graph has {g.n} vertices")
        valid = validate_partition(g, phi, variant)
        report = ValidationReport(variant=variant.value, valid=valid, colors=max_color(phi))

    if not report.valid:
        logger.error(f"{variant.value} certificate rejected for {args.graph}")
    emit(report)
    return 0 if report.valid else EXIT_INVALID


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("validate", help="Replay a certificate against a DIMACS graph")
    parser.add_argument("graph", help="DIMACS graph file")
    parser.add_argument("certificate", help="JSON with 'ordering' or 'assignment' (1-indexed vertices)")
    parser.add_argument(
        "--variant",
        choices=[v.value for v in Variant],
        default=Variant.PROPER.value,
    )
    parser.set_defaults(handler=validate_certificate)
