#!/usr/bin/env python3
"""
grundy-solver 명령행 진입점

사용법:
python main.py solve grundy graph.col --certificate
python main.py gen nae formula.cnf --out build/nae --assignment 1,0,1
python main.py bench manifest.json --out results.csv
"""

import argparse
import logging
import sys
from typing import List, Optional

from config.settings import ENV, LOG_LEVEL
from domain.errors import GrundyError
from cli.commands import bench, gen, solve, validate

logger = logging.getLogger("grundy")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grundy",
        description="Grundy, weak Grundy and connected Grundy solvers with reduction generators",
    )
    parser.add_argument("--verbose", action="store_true", help="Enable debug logs")
    subparsers = parser.add_subparsers(dest="command", required=True)
    solve.register(subparsers)
    gen.register(subparsers)
    bench.register(subparsers)
    validate.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    # stdout 은 JSON/CSV 전용, 로그는 stderr 로
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else LOG_LEVEL,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    logger.debug(f"env={ENV} command={args.command}")
    try:
        return args.handler(args)
    except GrundyError as e:
        logger.error(f"{type(e).__name__}: {e.message} {e.detail}")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
