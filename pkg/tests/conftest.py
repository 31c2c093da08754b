"""Shared helpers: random tables and a capture-safe CLI runner."""

from __future__ import annotations

import io
from contextlib import redirect_stderr, redirect_stdout
from random import Random

from hilbhodge.cli import main as cli_main
from hilbhodge.surfaces import SurfaceDiamond, TwistedTable


def random_diamond(rng: Random, hi: int = 3) -> SurfaceDiamond:
    return SurfaceDiamond(
        [[rng.randint(0, hi) for _ in range(3)] for _ in range(3)]
    )


def random_symmetric_diamond(rng: Random, hi: int = 3) -> SurfaceDiamond:
    rows = [[0] * 3 for _ in range(3)]
    for p in range(3):
        for q in range(p, 3):
            rows[p][q] = rows[q][p] = rng.randint(0, hi)
    return SurfaceDiamond(rows)


def random_table(rng: Random, max_power: int, hi: int = 3) -> TwistedTable:
    return TwistedTable([random_diamond(rng, hi) for _ in range(max_power + 1)])


def random_symmetric_table(rng: Random, max_power: int, hi: int = 3) -> TwistedTable:
    return TwistedTable(
        [random_symmetric_diamond(rng, hi) for _ in range(max_power + 1)]
    )


def run_cli(*argv: str) -> tuple[int, str, str]:
    """Run the CLI in-process; returns (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        try:
            code = cli_main(list(argv))
        except SystemExit as exc:  # argparse errors
            code = exc.code if isinstance(exc.code, int) else 1
    return code, out.getvalue(), err.getvalue()
