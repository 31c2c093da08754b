"""Command-line frontend: dataset ingestion, formula selection, rendering.

Subcommands::

    hilb    twisted Hodge numbers of Hilb^n S (one n, or the whole series)
    sym     symmetric-power table Sym^a of the k-th twisted diamond
    nested  twisted Hodge numbers of the nested space Hilb^{n,n+1} S
    chiy    refined chi_y genera (three interchangeable methods)
    betti   Betti numbers of Hilb^n S
    hh      Hochschild homology dimensions of (Hilb^n S, L_n)
    deform  tangent/obstruction dimensions h^q(Hilb^n S, T)
    verify  self-validation: every two-path identity on the given data

Exit codes: 0 success, 1 parse/validation errors, 2 insufficient twisted
powers in the table, 3 a verify check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

from . import engine
from .engine import EngineError, HodgePolynomial, InsufficientPowers, MismatchReport
from .oracles import naive_mul, super_sym_multiset
from .series import SeriesError, TriSeries
from .surfaces import (
    PRESET_NAMES,
    SurfaceDataError,
    SurfaceDataset,
    load_dataset,
    preset,
)

__all__ = ["main", "render_diamond", "render_json", "render_latex", "render_poly",
           "polynomial_from_json"]


# -- rendering ----------------------------------------------------------------


def render_diamond(poly: HodgePolynomial) -> str:
    """Centered diamond; row s lists h^{p, s-p} with p increasing."""
    rows = poly.rows()
    width = max((len(str(v)) for row in rows for v in row), default=1)
    pitch = width + 1
    total = (2 * poly.space_dim + 1) * pitch - 1
    lines = []
    for row in rows:
        text = " ".join(str(v).rjust(width) for v in row)
        lines.append(text.center(total).rstrip())
    return "\n".join(lines)


def render_latex(poly: HodgePolynomial) -> str:
    """Diamond as a LaTeX smallmatrix, one grid column between entries."""
    d = poly.space_dim
    width = 2 * d + 1
    lines = [r"\begin{smallmatrix}"]
    for s, row in enumerate(poly.rows()):
        cells = [""] * width
        col = abs(d - s)
        for i, value in enumerate(row):
            cells[col + 2 * i] = f" {value} "
        lines.append("&".join(cells).rstrip() + r" \\")
    lines.append(r"\end{smallmatrix}")
    return "\n".join(lines)


def render_json(poly: HodgePolynomial, n: int) -> str:
    """The stable JSON shape: terms sorted by (p + q, p)."""
    payload = {
        "n": n,
        "space_dim": poly.space_dim,
        "terms": [
            {"p": p, "q": q, "h": h} for (p, q), h in poly.sorted_terms()
        ],
    }
    return json.dumps(payload, indent=2)


def polynomial_from_json(text: str) -> tuple[int, HodgePolynomial]:
    """Inverse of :func:`render_json`."""
    obj = json.loads(text)
    terms = {(t["p"], t["q"]): t["h"] for t in obj["terms"]}
    return obj["n"], HodgePolynomial(terms, obj["space_dim"])


def render_poly(poly: HodgePolynomial) -> str:
    return str(poly)


_RENDERERS: dict[str, Callable[[HodgePolynomial, int], str]] = {
    "diamond": lambda poly, n: render_diamond(poly),
    "latex": lambda poly, n: render_latex(poly),
    "json": render_json,
    "poly": lambda poly, n: render_poly(poly),
}


def _render(poly: HodgePolynomial, n: int, fmt: str) -> str:
    return _RENDERERS[fmt](poly, n)


def _series_yt_payload(series: TriSeries, trunc: int) -> list[dict]:
    out = []
    for n in range(trunc + 1):
        poly = series.coefficient_of_t(n)
        terms = [
            {"y": ey, "c": int(c)}
            for (_, ey), c in sorted(poly.items(), key=lambda kv: kv[0][1])
        ]
        out.append({"t": n, "terms": terms})
    return out


# -- dataset loading ----------------------------------------------------------


def _add_dataset_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument(
        "--preset", choices=PRESET_NAMES, help="built-in trivial-bundle surface"
    )
    group.add_argument(
        "--input", metavar="FILE", help="JSON dataset file (see README schema)"
    )


def _dataset(args: argparse.Namespace, needed_power: int) -> SurfaceDataset:
    if args.preset:
        return preset(args.preset, max_power=max(needed_power, 0))
    return load_dataset(args.input)


# -- command handlers ----------------------------------------------------------


def _cmd_hilb(args: argparse.Namespace) -> int:
    if args.n is not None:
        ds = _dataset(args, args.n)
        poly = engine.hilb_coefficient(ds.table, args.n)
        print(_render(poly, args.n, args.format or "diamond"))
        return 0
    ds = _dataset(args, args.N)
    series = engine.hilb_series(ds.table, args.N)
    fmt = args.format or "json"
    if fmt == "json":
        payload = {
            "N": args.N,
            "coefficients": [
                json.loads(
                    render_json(
                        HodgePolynomial.from_bipolynomial(
                            series.coefficient_of_t(n), 2 * n
                        ),
                        n,
                    )
                )
                for n in range(args.N + 1)
            ],
        }
        print(json.dumps(payload, indent=2))
    else:
        for n in range(args.N + 1):
            poly = HodgePolynomial.from_bipolynomial(series.coefficient_of_t(n), 2 * n)
            print(f"t^{n}:")
            print(_render(poly, n, fmt))
    return 0


def _cmd_sym(args: argparse.Namespace) -> int:
    ds = _dataset(args, args.k)
    if args.k > ds.table.max_power:
        raise InsufficientPowers(
            f"sym needs the k={args.k} diamond; the table stops at K={ds.table.max_power}"
        )
    poly = engine.sym_power_twisted_hodge(ds.table.diamond(args.k), args.a)
    print(_render(poly, args.a, args.format or "diamond"))
    return 0


def _cmd_nested(args: argparse.Namespace) -> int:
    ds = _dataset(args, args.n)
    poly = engine.nested_coefficient(ds.table, ds.nested_or_main(), args.n)
    print(_render(poly, args.n, args.format or "diamond"))
    return 0


def _cmd_chiy(args: argparse.Namespace) -> int:
    ds = _dataset(args, args.N)
    route = {
        "product": engine.chi_y_product,
        "exp": engine.chi_y_exp,
        "hodge": engine.chi_y_from_hodge,
    }[args.method]
    series = route(ds.table, args.N)
    fmt = args.format or "json"
    if fmt == "json":
        # no method field: the three routes must be byte-identical
        payload = {
            "N": args.N,
            "coefficients": _series_yt_payload(series, args.N),
        }
        print(json.dumps(payload, indent=2))
    else:
        for entry in _series_yt_payload(series, args.N):
            pieces = []
            for t in entry["terms"]:
                if not t["y"]:
                    pieces.append(str(t["c"]))
                else:
                    power = "y" if t["y"] == 1 else f"y^{t['y']}"
                    pieces.append(power if t["c"] == 1 else f"{t['c']}*{power}")
            print(f"t^{entry['t']}: {' + '.join(pieces) or '0'}")
    return 0


def _cmd_betti(args: argparse.Namespace) -> int:
    ds = _dataset(args, args.N)
    series = engine.betti_series(ds.betti, args.N)
    rows = []
    for n in range(args.N + 1):
        poly = series.coefficient_of_t(n)
        b = [int(poly.coefficient(i, 0)) for i in range(4 * n + 1)]
        rows.append({"t": n, "b": b})
    if (args.format or "json") == "json":
        print(json.dumps({"N": args.N, "coefficients": rows}, indent=2))
    else:
        for row in rows:
            print(f"n={row['t']}: {' '.join(map(str, row['b']))}")
    return 0


def _cmd_hh(args: argparse.Namespace) -> int:
    ds = _dataset(args, args.n)
    dims = engine.hh_dims(ds.table, args.n)
    entries = [{"i": i, "dim": dims[i]} for i in sorted(dims)]
    if (args.format or "json") == "json":
        print(json.dumps({"n": args.n, "dims": entries}, indent=2))
    else:
        for entry in entries:
            print(f"HH_{entry['i']}: {entry['dim']}")
    return 0


def _cmd_deform(args: argparse.Namespace) -> int:
    ds = _dataset(args, max(args.n, 1))
    if ds.deformation is None:
        print("error: dataset carries no deformation block", file=sys.stderr)
        return 1
    dims = engine.deformation_dims(ds.deformation, args.n, args.qmax)
    if (args.format or "text") == "json":
        payload = {
            "n": args.n,
            "dims": [{"q": q, "h": dims[q]} for q in sorted(dims)],
        }
        print(json.dumps(payload, indent=2))
    else:
        print("q   h^q(Hilb^n S, T)")
        for q in sorted(dims):
            print(f"{q}   {dims[q]}")
        if args.qmax >= 3:
            print(
                "note: values for q >= 3 expand the invariant tangent cohomology "
                "of S^n by symmetric powers (derived convention)"
            )
    return 0


class _CheckFailed(Exception):
    pass


class _CheckSkipped(Exception):
    pass


def _omega_trivial_applicable(ds: SurfaceDataset) -> bool:
    # the table must be a trivial-bundle table and the deformation block
    # must claim a trivial canonical bundle (h^*(w2 T) = h^{0,*})
    if ds.deformation is None:
        return False
    return ds.table.is_constant() and ds.deformation.hW2 == ds.deformation.hO


def _verify_checks(ds: SurfaceDataset, N: int):
    table = ds.table

    def product_vs_partition() -> None:
        series = engine.hilb_series(table, N)
        for n in range(N + 1):
            got = HodgePolynomial.from_bipolynomial(series.coefficient_of_t(n), 2 * n)
            want = engine.hilb_via_partitions(table, n)
            if got != want:
                raise _CheckFailed(f"paths disagree at n={n}")

    def chi_y_three_way() -> None:
        by_product = engine.chi_y_product(table, N)
        by_exp = engine.chi_y_exp(table, N)
        by_hodge = engine.chi_y_from_hodge(table, N)
        if by_product != by_exp:
            raise _CheckFailed("product and exp routes disagree")
        if by_product != by_hodge:
            raise _CheckFailed("product and Hodge-specialization routes disagree")

    def frolicher() -> None:
        if not table.is_constant():
            raise _CheckSkipped("table is not a trivial-bundle table")
        try:
            engine.frolicher_check(table, ds.betti, N)
        except MismatchReport as exc:
            raise _CheckFailed(str(exc)) from exc

    def hochschild_two_path() -> None:
        rhs = engine.hh_rhs_series(table, N)
        for n in range(N + 1):
            if engine.hh_dims(table, n) != engine.hh_from_rhs(rhs, n):
                raise _CheckFailed(f"paths disagree at n={n}")

    def nested_two_path() -> None:
        llp = ds.nested_or_main()
        depth = min(N, 4)
        series = engine.nested_series(table, llp, depth)
        for n in range(depth + 1):
            got = HodgePolynomial.from_bipolynomial(
                series.coefficient_of_t(n), 2 * n + 2
            )
            want = engine.nested_via_strata(table, llp, n)
            if got != want:
                raise _CheckFailed(f"paths disagree at n={n}")

    def deformation_closed() -> None:
        if ds.deformation is None:
            raise _CheckSkipped("dataset carries no deformation block")
        if not ds.deformation.connected or ds.deformation.hO[0] != 1:
            raise _CheckSkipped("closed forms assume a connected surface")
        dims = engine.deformation_dims(ds.deformation, 3, 2)
        closed = engine.deformation_closed_forms(ds.deformation, 3)
        if (dims[0], dims[1], dims[2]) != closed:
            raise _CheckFailed(f"n=3 dims {tuple(dims.values())} != closed {closed}")

    def deformation_omega_trivial() -> None:
        if not _omega_trivial_applicable(ds):
            raise _CheckSkipped("table does not describe a trivial canonical bundle")
        if N < 3:
            raise _CheckSkipped("needs N >= 3")
        for n in (2, 3):
            got = engine.deformation_dims(ds.deformation, n, 3)
            want = engine.tangent_dims_from_series(table, n, 3)
            if got != want:
                raise _CheckFailed(f"n={n}: formula {got} != series column {want}")

    def oracle_suite() -> None:
        a = engine.hilb_series(table, min(N, 3))
        if naive_mul(a, a) != a * a:
            raise _CheckFailed("naive multiplication oracle disagrees")
        diamond = table.diamond(min(1, table.max_power))
        dims = diamond.bigraded()
        if sum(dims.values()) <= 12:  # brute-force guard
            for n in range(4):
                sym = engine.sym_power_twisted_hodge(diamond, n)
                if dict(sym.items()) != super_sym_multiset(dims, n):
                    raise _CheckFailed(f"symmetric-power oracle disagrees at n={n}")

    return [
        ("product-vs-partition", product_vs_partition),
        ("chi-y-three-way", chi_y_three_way),
        ("frolicher", frolicher),
        ("hochschild-two-path", hochschild_two_path),
        ("nested-two-path", nested_two_path),
        ("deformation-closed-forms", deformation_closed),
        ("deformation-omega-trivial", deformation_omega_trivial),
        ("oracle-suite", oracle_suite),
    ]


def _cmd_verify(args: argparse.Namespace) -> int:
    ds = _dataset(args, args.N)
    failures: list[str] = []
    for name, check in _verify_checks(ds, args.N):
        try:
            check()
        except _CheckSkipped as skip:
            print(f"{name}: SKIP ({skip})")
        except InsufficientPowers:
            raise
        except (_CheckFailed, EngineError) as exc:
            print(f"{name}: FAIL ({exc})")
            failures.append(name)
        else:
            print(f"{name}: PASS")
    if failures:
        print(f"verification FAILED; first failing check: {failures[0]}")
        return 3
    print("all checks passed")
    return 0


# -- argument parsing -----------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    # reserve exit code 2 for InsufficientPowers; argument errors are exit 1
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="hilbhodge",
        description=(
            "Exact twisted Hodge numbers, Hodge diamonds, chi_y genera, Betti "
            "numbers, Hochschild homology and deformation dimensions of "
            "Hilbert schemes of points on a compact complex surface."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    formats = ("diamond", "latex", "json", "poly")

    p = sub.add_parser("hilb", help="twisted Hodge numbers of Hilb^n S")
    _add_dataset_args(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("-n", type=int, help="single Hilbert scheme index")
    group.add_argument("-N", type=int, help="series truncation order")
    p.add_argument("--format", choices=formats)
    p.set_defaults(func=_cmd_hilb)

    p = sub.add_parser("sym", help="symmetric-power table Sym^a of a diamond")
    _add_dataset_args(p)
    p.add_argument("-a", type=int, required=True, help="symmetric power")
    p.add_argument("-k", type=int, default=1, help="bundle power (default 1)")
    p.add_argument("--format", choices=formats)
    p.set_defaults(func=_cmd_sym)

    p = sub.add_parser("nested", help="twisted Hodge numbers of Hilb^{n,n+1} S")
    _add_dataset_args(p)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--format", choices=formats)
    p.set_defaults(func=_cmd_nested)

    p = sub.add_parser("chiy", help="refined chi_y genera")
    _add_dataset_args(p)
    p.add_argument("-N", type=int, required=True)
    p.add_argument(
        "--method", choices=("product", "exp", "hodge"), default="product"
    )
    p.add_argument("--format", choices=("json", "poly"))
    p.set_defaults(func=_cmd_chiy)

    p = sub.add_parser("betti", help="Betti numbers of Hilb^n S")
    _add_dataset_args(p)
    p.add_argument("-N", type=int, required=True)
    p.add_argument("--format", choices=("json", "text"))
    p.set_defaults(func=_cmd_betti)

    p = sub.add_parser("hh", help="Hochschild homology dimensions")
    _add_dataset_args(p)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--format", choices=("json", "text"))
    p.set_defaults(func=_cmd_hh)

    p = sub.add_parser("deform", help="tangent cohomology of Hilb^n S")
    _add_dataset_args(p)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--qmax", type=int, default=3)
    p.add_argument("--format", choices=("json", "text"))
    p.set_defaults(func=_cmd_deform)

    p = sub.add_parser("verify", help="run every self-validation check")
    _add_dataset_args(p)
    p.add_argument("-N", type=int, required=True)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InsufficientPowers as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SurfaceDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError, SeriesError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
