"""Closed formulas for Hodge-theoretic invariants of Hilbert schemes of points.

Everything here is a pure function from a twisted Hodge table of a
surface (the family ``h^{p,q}(S, L^k)``) to graded dimensions of the
associated Hilbert schemes ``Hilb^n S`` carrying the naturally induced
line bundle.  Each quantity is computable along two independent routes:

* a multiplicative route, an Euler product expanded in
  :class:`~hilbhodge.series.TriSeries`;
* an additive route, a sum over integer partitions of super symmetric
  powers of the surface table.

The two routes must agree exactly; ``verify``-style callers and the test
suite exercise that agreement on arbitrary tables.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping

from .partitions import bounded_compositions, nested_index_set, partitions
from .series import BiPolynomial, TriSeries, _format_terms, euler_product
from .surfaces import DeformationInput, SurfaceDiamond, TwistedTable

GradedDims = dict[int, int]

__all__ = [
    "EngineError",
    "GradedDims",
    "HodgePolynomial",
    "InsufficientPowers",
    "IntegralityFailure",
    "MismatchReport",
    "betti_series",
    "chi_y_exp",
    "chi_y_from_hodge",
    "chi_y_product",
    "deformation_closed_forms",
    "deformation_dims",
    "frolicher_check",
    "hh_dims",
    "hh_from_rhs",
    "hh_rhs_series",
    "hilb_coefficient",
    "hilb_series",
    "hilb_via_partitions",
    "nested_coefficient",
    "nested_series",
    "nested_via_strata",
    "sn_invariant_tangent",
    "super_sym_series",
    "sym_power_twisted_hodge",
    "tangent_dims_from_series",
]


class EngineError(Exception):
    """Base class for computation errors."""


class InsufficientPowers(EngineError):
    """The twisted table does not reach the power of L the formula needs."""


class IntegralityFailure(EngineError):
    """An exp-route result failed to collapse to integers (an internal bug)."""


class MismatchReport(EngineError):
    """Two supposedly equal series differ; carries the first failing spot."""

    def __init__(self, n: int, degree: int, got, want):
        self.n = n
        self.degree = degree
        self.got = got
        self.want = want
        super().__init__(
            f"mismatch at t^{n}, degree {degree}: got {got}, expected {want}"
        )


def _require_powers(table: TwistedTable, needed: int, operation: str) -> None:
    if table.max_power < needed:
        raise InsufficientPowers(
            f"{operation} needs h^(p,q)(S, L^k) for every k <= {needed}, but the "
            f"table stops at K={table.max_power}: k={table.max_power + 1} is missing"
        )


class HodgePolynomial:
    """Twisted Hodge numbers of one fixed space: a finite (p, q) -> dim map."""

    __slots__ = ("_terms", "space_dim")

    def __init__(self, terms: Mapping[tuple[int, int], int], space_dim: int):
        if space_dim < 0:
            raise ValueError("space_dim must be nonnegative")
        clean: dict[tuple[int, int], int] = {}
        for (p, q), value in terms.items():
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    raise IntegralityFailure(
                        f"non-integral dimension {value} at (p, q)=({p}, {q})"
                    )
                value = value.numerator
            if value == 0:
                continue
            if value < 0:
                raise ValueError(f"negative dimension {value} at (p, q)=({p}, {q})")
            if not (0 <= p <= space_dim and 0 <= q <= space_dim):
                raise ValueError(
                    f"(p, q)=({p}, {q}) outside [0, {space_dim}]^2"
                )
            clean[(p, q)] = value
        self._terms = clean
        self.space_dim = space_dim

    @classmethod
    def from_bipolynomial(cls, poly: BiPolynomial, space_dim: int) -> "HodgePolynomial":
        return cls(dict(poly.items()), space_dim)

    def entry(self, p: int, q: int) -> int:
        return self._terms.get((p, q), 0)

    def items(self):
        return self._terms.items()

    def sorted_terms(self) -> list[tuple[tuple[int, int], int]]:
        """Terms ordered by (p + q, p): the diamond reading order."""
        return sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0][0]))

    def rows(self) -> list[list[int]]:
        """Diamond rows: row s lists h^{p, s-p} with p increasing."""
        d = self.space_dim
        out = []
        for s in range(2 * d + 1):
            out.append(
                [self.entry(p, s - p) for p in range(max(0, s - d), min(s, d) + 1)]
            )
        return out

    def collapse_hodge_degree(self) -> GradedDims:
        """Sum along q - p = i, the Hochschild-homology collapse."""
        out: GradedDims = {}
        for (p, q), value in self._terms.items():
            out[q - p] = out.get(q - p, 0) + value
        return out

    def collapse_total_degree(self) -> list[int]:
        """Sum along p + q = i for i = 0..2 space_dim (Betti numbers)."""
        out = [0] * (2 * self.space_dim + 1)
        for (p, q), value in self._terms.items():
            out[p + q] += value
        return out

    def total(self) -> int:
        return sum(self._terms.values())

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HodgePolynomial):
            return NotImplemented
        return self.space_dim == other.space_dim and self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"HodgePolynomial({len(self._terms)} terms, space_dim={self.space_dim})"

    def __str__(self) -> str:
        return _format_terms(
            (coeff, [("x", p), ("y", q)]) for (p, q), coeff in self.sorted_terms()
        )


# -- super symmetric powers ----------------------------------------------


def super_sym_series(
    dims: Mapping[tuple[int, int], int], trunc_t: int
) -> TriSeries:
    """Generating series sum_n Sym^n(V) t^n of a bigraded super space.

    V has v_{p,q} generators in bidegree (p, q); a generator is odd when
    p + q is odd.  Even generators contribute a factor
    (1 - x^p y^q t)^-v, odd ones (1 + x^p y^q t)^v, which is the closed
    form of the boson/fermion counting rule.
    """
    result = TriSeries.one(trunc_t)
    for (p, q), v in sorted(dims.items()):
        if v < 0:
            raise ValueError("dimensions must be nonnegative")
        if not v:
            continue
        sign = -1 if (p + q) % 2 else 1
        base = TriSeries({(0, 0, 0): 1, (p, q, 1): -sign}, trunc_t)
        result = result * base.int_pow(-sign * v)
    return result


def sym_power_twisted_hodge(diamond: SurfaceDiamond, a: int) -> HodgePolynomial:
    """Twisted Hodge numbers of the a-th symmetric power of a surface.

    The table of ``Sym^a`` of the surface cohomology, a space of complex
    dimension 2a; ``a = 0`` is a point and ``a = 1`` returns the diamond
    itself.
    """
    if a < 0:
        raise ValueError("a must be nonnegative")
    poly = super_sym_series(diamond.bigraded(), a).coefficient_of_t(a)
    return HodgePolynomial.from_bipolynomial(poly, 2 * a)


# -- the main Euler product and its partition-sum twin ---------------------


def _hilb_factor(diamond: SurfaceDiamond, k: int, trunc_t: int) -> TriSeries:
    """Level-k factor: generators shifted to (p+k-1, q+k-1) at t^k."""
    factor = TriSeries.one(trunc_t)
    for (p, q), h in sorted(diamond.bigraded().items()):
        sign = -1 if (p + q) % 2 else 1
        base = TriSeries({(0, 0, 0): 1, (p + k - 1, q + k - 1, k): -sign}, trunc_t)
        factor = factor * base.int_pow(-sign * h)
    return factor


def hilb_series(table: TwistedTable, trunc_t: int) -> TriSeries:
    """Three-variable series of twisted Hodge numbers of all Hilb^n S, n <= N.

    The coefficient of x^p y^q t^n is h^{p,q}(Hilb^n S, L_n).  Every term
    satisfies e_x <= 2 e_t and e_y <= 2 e_t because each factor does.
    """
    _require_powers(table, trunc_t, "hilb_series")
    return euler_product(
        lambda k: _hilb_factor(table.diamond(k), k, trunc_t), trunc_t
    )


def hilb_coefficient(table: TwistedTable, n: int) -> HodgePolynomial:
    """Twisted Hodge numbers of Hilb^n S via the product route."""
    poly = hilb_series(table, n).coefficient_of_t(n)
    return HodgePolynomial.from_bipolynomial(poly, 2 * n)


def _rows_by_p(poly: HodgePolynomial) -> dict[int, dict[int, int]]:
    rows: dict[int, dict[int, int]] = {}
    for (p, q), value in poly.items():
        rows.setdefault(p, {})[q] = value
    return rows


def hilb_via_partitions(table: TwistedTable, n: int) -> HodgePolynomial:
    """Twisted Hodge numbers of Hilb^n S via the partition-indexed sum.

    For each partition (1^a1 ... r^ar) of n the stratum contributes
    products of symmetric-power tables Sym^{a_k} of the k-th twisted
    diamond, summed over bounded compositions of p + len - n (and the
    same in q).  Must agree exactly with :func:`hilb_coefficient`.
    """
    _require_powers(table, n, "hilb_via_partitions")
    acc: dict[tuple[int, int], int] = {}
    for lam in partitions(n):
        shift = n - lam.length
        syms = [
            sym_power_twisted_hodge(table.diamond(k), a)
            for k, a in enumerate(lam.mults, start=1)
        ]
        rows = [_rows_by_p(s) for s in syms]
        bounds = [2 * a for a in lam.mults]
        for itot in range(2 * lam.length + 1):
            for composition in bounded_compositions(itot, bounds):
                factor_rows = []
                for slot, ik in enumerate(composition):
                    row = rows[slot].get(ik)
                    if row is None:
                        break
                    factor_rows.append(row)
                else:
                    jconv = {0: 1}
                    for row in factor_rows:
                        nxt: dict[int, int] = {}
                        for j0, v0 in jconv.items():
                            for j1, v1 in row.items():
                                key = j0 + j1
                                nxt[key] = nxt.get(key, 0) + v0 * v1
                        jconv = nxt
                    p = itot + shift
                    for jtot, value in jconv.items():
                        key = (p, jtot + shift)
                        acc[key] = acc.get(key, 0) + value
    return HodgePolynomial(acc, 2 * n)


# -- nested Hilbert schemes ------------------------------------------------


def nested_series(
    table_l: TwistedTable, table_llp: TwistedTable, trunc_t: int
) -> TriSeries:
    """Series for the nested spaces Hilb^{n, n+1} S with both bundles.

    ``table_llp`` holds h^{p,q}(S, L^j x L') for j = 0..N.  The result is
    the Hilb series of ``table_l`` times the residual-point series
    sum_j E(S, L^j x L')(x, y) (xy)^j t^j; terms satisfy
    e_x, e_y <= 2 e_t + 2.
    """
    _require_powers(table_l, trunc_t, "nested_series")
    _require_powers(table_llp, trunc_t, "nested_series (residual bundle)")
    tail_terms: dict[tuple[int, int, int], int] = {}
    for j in range(trunc_t + 1):
        for (p, q), h in table_llp.diamond(j).bigraded().items():
            tail_terms[(p + j, q + j, j)] = h
    tail = TriSeries(tail_terms, trunc_t)
    return hilb_series(table_l, trunc_t) * tail


def nested_coefficient(
    table_l: TwistedTable, table_llp: TwistedTable, n: int
) -> HodgePolynomial:
    """Twisted Hodge numbers of Hilb^{n, n+1} S via the product route."""
    poly = nested_series(table_l, table_llp, n).coefficient_of_t(n)
    return HodgePolynomial.from_bipolynomial(poly, 2 * n + 2)


def _conv2(
    a: dict[tuple[int, int], int], b: Iterable[tuple[tuple[int, int], int]]
) -> dict[tuple[int, int], int]:
    out: dict[tuple[int, int], int] = {}
    for (ax, ay), av in a.items():
        for (bx, by), bv in b:
            key = (ax + bx, ay + by)
            out[key] = out.get(key, 0) + av * bv
    return out


def nested_via_strata(
    table_l: TwistedTable, table_llp: TwistedTable, n: int
) -> HodgePolynomial:
    """Twisted Hodge numbers of Hilb^{n, n+1} S via the stratum sum.

    Strata are indexed by pairs (partition of n, marked part j): j = 0
    keeps all symmetric-power factors and tensors the residual surface
    with L'; marking a part j > 0 drops one copy of it (Sym^{a_j - 1})
    and the residual surface carries L^j x L'.  The j = 0 strata shift
    the bigrading by n - len, the marked ones by n - len + 1.
    """
    _require_powers(table_l, n, "nested_via_strata")
    _require_powers(table_llp, n, "nested_via_strata (residual bundle)")
    acc: dict[tuple[int, int], int] = {}
    for lam, j in nested_index_set(n):
        mults = list(lam.mults)
        if j == 0:
            shift = n - lam.length
            residual = table_llp.diamond(0)
        else:
            shift = n - lam.length + 1
            mults[j - 1] -= 1
            residual = table_llp.diamond(j)
        product = dict(residual.bigraded())
        for k, a in enumerate(mults, start=1):
            if not product:
                break
            sym = sym_power_twisted_hodge(table_l.diamond(k), a)
            product = _conv2(product, list(sym.items()))
        for (p, q), value in product.items():
            key = (p + shift, q + shift)
            acc[key] = acc.get(key, 0) + value
    return HodgePolynomial(acc, 2 * n + 2)


# -- chi_y genera along three routes ---------------------------------------


def chi_y_product(table: TwistedTable, trunc_t: int) -> TriSeries:
    """Refined chi_y series in (y, t) as an Euler product.

    Factor k contributes (1 - y^{p+k-1} t^k)^(-(-1)^p chi(S, Omega^p x L^k))
    for p = 0, 1, 2, with chi the alternating q-sum of the k-th diamond.
    """
    _require_powers(table, trunc_t, "chi_y_product")

    def factor(k: int) -> TriSeries:
        f = TriSeries.one(trunc_t)
        d = table.diamond(k)
        for p in range(3):
            chi = d.chi_column(p)
            if not chi:
                continue
            base = TriSeries({(0, 0, 0): 1, (0, p + k - 1, k): -1}, trunc_t)
            f = f * base.int_pow(-((-1) ** p) * chi)
        return f

    return euler_product(factor, trunc_t)


def chi_y_exp(table: TwistedTable, trunc_t: int) -> TriSeries:
    """Refined chi_y series through the exponential form.

    exp( sum_m t^m/m sum_k (t y)^{(k-1) m} chi_{-y^m}(S, L^k) ) expanded
    over exact rationals; the result must collapse to integers, and a
    failure to do so raises :class:`IntegralityFailure`.
    """
    _require_powers(table, trunc_t, "chi_y_exp")
    arg: dict[tuple[int, int, int], Fraction] = {}
    for m in range(1, trunc_t + 1):
        for k in range(1, trunc_t // m + 1):
            d = table.diamond(k)
            offset = (k - 1) * m
            for p in range(3):
                chi = d.chi_column(p)
                if not chi:
                    continue
                key = (0, offset + m * p, k * m)
                value = arg.get(key, Fraction(0)) + Fraction((-1) ** p * chi, m)
                if value:
                    arg[key] = value
                else:
                    arg.pop(key, None)
    series = TriSeries(arg, trunc_t).exp()
    if not series.is_integral():
        raise IntegralityFailure(
            "chi_y exponential route produced non-integer coefficients"
        )
    return series


def chi_y_from_hodge(table: TwistedTable, trunc_t: int) -> TriSeries:
    """Refined chi_y series by specializing the full Hodge series.

    Sets y = -1 in the three-variable series and renames x to -y, so the
    result lives in (y, t) like the other two routes.
    """
    _require_powers(table, trunc_t, "chi_y_from_hodge")
    return hilb_series(table, trunc_t).substitute({"x": "-y", "y": -1})


# -- Betti numbers and the Frolicher collapse -------------------------------


def betti_series(betti: Iterable[int], trunc_t: int) -> TriSeries:
    """Series of Betti numbers of Hilb^n S in (x, t).

    The coefficient of x^i t^n is b_i(Hilb^n S), from the Euler product
    over (1 -+ x^{i+2k-2} t^k)^{-+b_i(S)} with signs by the parity of i.
    """
    b = tuple(betti)
    if len(b) != 5 or any(v < 0 for v in b):
        raise ValueError("betti numbers must be five nonnegative ints")

    def factor(k: int) -> TriSeries:
        f = TriSeries.one(trunc_t)
        for i, bi in enumerate(b):
            if not bi:
                continue
            sign = -1 if i % 2 else 1
            base = TriSeries({(0, 0, 0): 1, (i + 2 * k - 2, 0, k): -sign}, trunc_t)
            f = f * base.int_pow(-sign * bi)
        return f

    return euler_product(factor, trunc_t)


def frolicher_check(table: TwistedTable, betti: Iterable[int], trunc_t: int) -> None:
    """Assert b_i(Hilb^n) = sum_{p+q=i} h^{p,q}(Hilb^n) up to order N.

    ``table`` must be the trivial-bundle table and ``betti`` the surface
    Betti numbers with b_i(S) = sum_{p+q=i} h^{p,q}(S).  Raises
    :class:`MismatchReport` at the first failing (n, i).
    """
    collapsed = hilb_series(table, trunc_t).substitute({"y": "x"})
    target = betti_series(betti, trunc_t)
    if collapsed == target:
        return
    for n in range(trunc_t + 1):
        got = collapsed.coefficient_of_t(n)
        want = target.coefficient_of_t(n)
        degrees = sorted(
            {ex for (ex, _ey), _ in got.items()}
            | {ex for (ex, _ey), _ in want.items()}
        )
        for i in degrees:
            if got.coefficient(i, 0) != want.coefficient(i, 0):
                raise MismatchReport(
                    n, i, got.coefficient(i, 0), want.coefficient(i, 0)
                )
    raise AssertionError("series differ but no mismatching coefficient found")


# -- Hochschild homology -----------------------------------------------------


def hh_dims(table: TwistedTable, n: int) -> GradedDims:
    """Hochschild homology dimensions of (Hilb^n S, L_n).

    HH_i collects the twisted Hodge numbers along q - p = i, so the
    support lies in i = -2n..2n.
    """
    _require_powers(table, n, "hh_dims")
    return hilb_coefficient(table, n).collapse_hodge_degree()


def hh_rhs_series(table: TwistedTable, trunc_t: int) -> TriSeries:
    """Super-symmetric series of surface Hochschild homology in (y, t).

    The level-k generator of HH degree i is stored at y-exponent i + 2k,
    so the coefficient of t^n keeps degrees i = -2n..2n at nonnegative
    offsets i + 2n; parity (and so the super sign rule) is unchanged by
    the even offset.
    """
    _require_powers(table, trunc_t, "hh_rhs_series")

    def factor(k: int) -> TriSeries:
        f = TriSeries.one(trunc_t)
        for (p, q), h in sorted(table.diamond(k).bigraded().items()):
            sign = -1 if (p + q) % 2 else 1
            base = TriSeries({(0, 0, 0): 1, (0, q - p + 2 * k, k): -sign}, trunc_t)
            f = f * base.int_pow(-sign * h)
        return f

    return euler_product(factor, trunc_t)


def hh_from_rhs(series: TriSeries, n: int) -> GradedDims:
    """Decode the t^n coefficient of :func:`hh_rhs_series` to HH degrees."""
    out: GradedDims = {}
    for i in range(-2 * n, 2 * n + 1):
        value = series.coefficient(0, i + 2 * n, n)
        if value:
            out[i] = int(value)
    return out


# -- deformation theory ------------------------------------------------------


def _sym_graded(triple: tuple[int, int, int], m: int) -> GradedDims:
    """Super symmetric power Sym^m of a single-graded space in degrees 0..2.

    Used for H^*(S^{(m)}, O) = Sym^m H^{0,*}(S); degree-1 generators are
    odd, the others even.  Sym^0 is one dimension in degree 0.
    """
    dims = {(0, j): v for j, v in enumerate(triple) if v}
    poly = super_sym_series(dims, m).coefficient_of_t(m)
    return {ey: int(v) for (_, ey), v in poly.items()}


def sn_invariant_tangent(din: DeformationInput, n: int) -> GradedDims:
    """Graded dimensions of the invariant tangent cohomology of S^n.

    Expanded as H^*(S, T_S) tensor Sym^{n-1} H^{0,*}(S): the tangent
    sheaf of the n-fold product is the sum of the pullbacks from the
    factors, and the invariants reduce to the stabilizer of one factor.
    For n = 1 this is just hT.
    """
    if n < 1:
        raise ValueError("n must be positive")
    sym = _sym_graded(din.hO, n - 1)
    out: GradedDims = {}
    for a, v in enumerate(din.hT):
        if not v:
            continue
        for d, w in sym.items():
            out[a + d] = out.get(a + d, 0) + v * w
    return out


def deformation_dims(din: DeformationInput, n: int, qmax: int = 3) -> GradedDims:
    """Dimensions h^q(Hilb^n S, tangent sheaf) for q = 0..qmax.

    For n >= 2 this sums the invariant tangent cohomology of S^n with
    three shifted contributions H^{q-s}(S^{(n-2)}, O) x h^{s-1}(wedge^2 T_S),
    s = 1, 2, 3; negative-degree cohomology is zero and S^{(0)} is a
    point.  n = 1 returns hT and n = 0 is identically zero.
    """
    if n < 0 or qmax < 0:
        raise ValueError("n and qmax must be nonnegative")
    if n == 0:
        return {q: 0 for q in range(qmax + 1)}
    if n == 1:
        return {q: (din.hT[q] if q < 3 else 0) for q in range(qmax + 1)}
    snt = sn_invariant_tangent(din, n)
    sym_o = _sym_graded(din.hO, n - 2)
    out: GradedDims = {}
    for q in range(qmax + 1):
        total = snt.get(q, 0)
        for s, w2 in enumerate(din.hW2, start=1):
            total += sym_o.get(q - s, 0) * w2
        out[q] = total
    return out


def deformation_closed_forms(din: DeformationInput, n: int) -> tuple[int, int, int]:
    """The stable closed forms for h^0, h^1, h^2 of the tangent cohomology.

    h0 = h^0(T), h1 = h^1(T) + h^0(T) h^1(O) + h^0(w2T) and h2 adds the
    obstruction terms including dim Lambda^2 H^1(O) = C(h^1(O), 2).
    Exact for every connected surface once n >= 3; at n = 2 the terms
    h^0(T) C(h^1(O), 2) and h^1(O) h^0(w2T) are not yet present in
    :func:`deformation_dims` (the symmetric power S^{(0)} is a point),
    so the closed h2 can overshoot there.
    """
    if n < 2:
        raise ValueError("closed forms apply to n >= 2")
    if not din.connected:
        raise ValueError("closed forms assume a connected surface")
    hT, hO, hW2 = din.hT, din.hO, din.hW2
    h0 = hT[0]
    h1 = hT[1] + hT[0] * hO[1] + hW2[0]
    h2 = (
        hT[2]
        + hT[1] * hO[1]
        + hT[0] * hO[2]
        + hT[0] * comb(hO[1], 2)
        + hO[1] * hW2[0]
        + hW2[1]
    )
    return (h0, h1, h2)


def tangent_dims_from_series(
    table: TwistedTable, n: int, qmax: int = 3
) -> GradedDims:
    """Tangent cohomology of Hilb^n S read off the main series.

    Valid when the table is the trivial-bundle table of a surface with
    trivial canonical bundle: then h^q(Hilb^n, T) = h^{2n-1, q}(Hilb^n),
    the column p = 2n - 1 of the ordinary Hodge diamond.
    """
    if n < 1:
        raise ValueError("n must be positive")
    poly = hilb_coefficient(table, n)
    return {q: poly.entry(2 * n - 1, q) for q in range(qmax + 1)}
