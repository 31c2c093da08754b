"""The closed formulas: symmetric powers, Hilbert series, specializations."""

from random import Random

import pytest
from conftest import random_symmetric_table, random_table

from hilbhodge.engine import (
    HodgePolynomial,
    InsufficientPowers,
    MismatchReport,
    betti_series,
    chi_y_exp,
    chi_y_from_hodge,
    chi_y_product,
    deformation_closed_forms,
    deformation_dims,
    frolicher_check,
    hh_dims,
    hh_from_rhs,
    hh_rhs_series,
    hilb_coefficient,
    hilb_series,
    hilb_via_partitions,
    nested_coefficient,
    nested_series,
    nested_via_strata,
    sn_invariant_tangent,
    super_sym_series,
    sym_power_twisted_hodge,
    tangent_dims_from_series,
)
from hilbhodge.oracles import super_sym_multiset
from hilbhodge.series import TriSeries
from hilbhodge.surfaces import preset

HOPF = preset("hopf", max_power=12)

# Sym^2 of the hopf diamond: the multisets of one even pair and four
# mixed pairs of the generators 1, y, x^2 y, x^2 y^2
HOPF_SYM2 = {
    (0, 0): 1,
    (0, 1): 1,
    (2, 1): 1,
    (2, 2): 2,
    (2, 3): 1,
    (4, 3): 1,
    (4, 4): 1,
}

# the Hilb^2 table of the hopf surface, an 11-term polynomial
HOPF_HILB2 = {
    (0, 0): 1,
    (0, 1): 1,
    (1, 1): 1,
    (1, 2): 1,
    (2, 1): 1,
    (2, 2): 2,
    (2, 3): 1,
    (3, 2): 1,
    (3, 3): 1,
    (4, 3): 1,
    (4, 4): 1,
}


# -- super symmetric powers ----------------------------------------------


def test_super_sym_one_odd_generator():
    series = super_sym_series({(0, 1): 1}, 4)
    assert series == TriSeries({(0, 0, 0): 1, (0, 1, 1): 1}, 4)


def test_super_sym_one_even_generator():
    series = super_sym_series({(1, 1): 1}, 4)
    assert series == TriSeries({(n, n, n): 1 for n in range(5)}, 4)


def test_super_sym_hopf_square():
    got = super_sym_series(HOPF.table.diamond(0).bigraded(), 2).coefficient_of_t(2)
    assert dict(got.items()) == HOPF_SYM2
    assert super_sym_multiset(HOPF.table.diamond(0).bigraded(), 2) == HOPF_SYM2


def test_sym_power_zero_is_a_point():
    sym = sym_power_twisted_hodge(HOPF.table.diamond(0), 0)
    assert dict(sym.items()) == {(0, 0): 1}
    assert sym.space_dim == 0


def test_sym_power_one_is_identity():
    d = HOPF.table.diamond(0)
    sym = sym_power_twisted_hodge(d, 1)
    assert dict(sym.items()) == d.bigraded()
    assert sym.space_dim == 2


def test_sym_power_two_hopf():
    sym = sym_power_twisted_hodge(HOPF.table.diamond(0), 2)
    assert dict(sym.items()) == HOPF_SYM2
    assert sym.space_dim == 4


# -- the main series --------------------------------------------------------


def test_hilb_series_order_zero_is_one():
    rng = Random(7)
    table = random_table(rng, 3)
    assert hilb_series(table, 3).coefficient(0, 0, 0) == 1


def test_hilb_series_linear_term_is_the_diamond():
    rng = Random(8)
    for _ in range(5):
        table = random_table(rng, 3)
        poly = hilb_series(table, 3).coefficient_of_t(1)
        assert dict(poly.items()) == table.diamond(1).bigraded()


def test_hilb_hopf_square_is_the_printed_polynomial():
    poly = hilb_coefficient(HOPF.table, 2)
    assert dict(poly.items()) == HOPF_HILB2


def test_hilb_degree_bounds():
    rng = Random(9)
    table = random_table(rng, 4)
    for (ex, ey, et) in hilb_series(table, 4).support():
        assert ex <= 2 * et and ey <= 2 * et


def test_hilb_coefficients_are_nonnegative_integers():
    rng = Random(10)
    table = random_table(rng, 4)
    for _, value in hilb_series(table, 4).sorted_terms():
        assert isinstance(value, int) and value > 0


def test_hilb_xy_symmetry_for_symmetric_tables():
    rng = Random(11)
    for _ in range(5):
        table = random_symmetric_table(rng, 4)
        series = hilb_series(table, 4)
        assert series.substitute({"x": "y", "y": "x"}) == series


def test_hilb_constant_table_equals_untwisted_product():
    # the trivial-bundle series written out directly from the one diamond
    d = preset("k3").table.diamond(0)
    trunc = 5
    direct = TriSeries.one(trunc)
    for k in range(1, trunc + 1):
        for (p, q), h in d.bigraded().items():
            sign = -1 if (p + q) % 2 else 1
            base = TriSeries(
                {(0, 0, 0): 1, (p + k - 1, q + k - 1, k): -sign}, trunc
            )
            direct = direct * base.int_pow(-sign * h)
    assert direct == hilb_series(preset("k3", max_power=trunc).table, trunc)


def test_hilb_insufficient_powers_names_missing_k():
    ds = preset("hopf", max_power=2)
    with pytest.raises(InsufficientPowers, match="k=3"):
        hilb_series(ds.table, 5)


# -- partition route ---------------------------------------------------------


def test_partitions_route_n1_is_the_diamond():
    rng = Random(12)
    table = random_table(rng, 2)
    poly = hilb_via_partitions(table, 1)
    assert dict(poly.items()) == table.diamond(1).bigraded()


def test_partitions_route_hopf_square():
    poly = hilb_via_partitions(HOPF.table, 2)
    assert dict(poly.items()) == HOPF_HILB2


def test_partitions_route_matches_product_route():
    rng = Random(13)
    for _ in range(10):
        table = random_table(rng, 5)
        series = hilb_series(table, 5)
        for n in range(6):
            got = HodgePolynomial.from_bipolynomial(series.coefficient_of_t(n), 2 * n)
            assert got == hilb_via_partitions(table, n)


# -- nested spaces -------------------------------------------------------------


def test_nested_order_zero_is_residual_diamond():
    rng = Random(14)
    table_l = random_table(rng, 3)
    table_lp = random_table(rng, 3)
    poly = nested_series(table_l, table_lp, 3).coefficient_of_t(0)
    assert dict(poly.items()) == table_lp.diamond(0).bigraded()


def test_nested_trivial_bundles_factorize():
    for name in ("hopf", "k3"):
        ds = preset(name, max_power=5)
        series = nested_series(ds.table, ds.nested_or_main(), 5)
        surface = TriSeries(
            {(p, q, 0): v for (p, q), v in ds.table.diamond(0).bigraded().items()}, 5
        )
        point_chain = TriSeries({(0, 0, 0): 1, (1, 1, 1): -1}, 5).invert()
        assert series == hilb_series(ds.table, 5) * surface * point_chain


def test_nested_strata_order_zero():
    rng = Random(15)
    table_l = random_table(rng, 2)
    table_lp = random_table(rng, 2)
    poly = nested_via_strata(table_l, table_lp, 0)
    assert dict(poly.items()) == table_lp.diamond(0).bigraded()
    assert poly.space_dim == 2


def test_nested_strata_matches_series():
    rng = Random(16)
    for _ in range(8):
        table_l = random_table(rng, 4)
        table_lp = random_table(rng, 4)
        series = nested_series(table_l, table_lp, 4)
        for n in range(5):
            got = HodgePolynomial.from_bipolynomial(
                series.coefficient_of_t(n), 2 * n + 2
            )
            assert got == nested_via_strata(table_l, table_lp, n)


def test_nested_degree_bounds():
    rng = Random(17)
    table_l = random_table(rng, 4)
    table_lp = random_table(rng, 4)
    for (ex, ey, et) in nested_series(table_l, table_lp, 4).support():
        assert ex <= 2 * et + 2 and ey <= 2 * et + 2


# -- chi_y routes -----------------------------------------------------------------


def test_chi_y_order_zero_and_one():
    ds = preset("k3", max_power=4)
    for route in (chi_y_product, chi_y_exp, chi_y_from_hodge):
        series = route(ds.table, 4)
        assert series.coefficient(0, 0, 0) == 1
        # t^1 coefficient is chi_{-y}(S): for K3 that is 2 + 20 y + 2 y^2
        assert [series.coefficient(0, j, 1) for j in range(3)] == [2, 20, 2]


def test_chi_y_three_routes_agree():
    rng = Random(18)
    tables = [preset("hopf", max_power=6).table, preset("torus", max_power=6).table]
    tables += [random_table(rng, 6) for _ in range(4)]
    for table in tables:
        a = chi_y_product(table, 6)
        b = chi_y_exp(table, 6)
        c = chi_y_from_hodge(table, 6)
        assert a == b == c
        assert a.is_integral()


def test_chi_y_hopf_is_trivial():
    # all three columns of the hopf diamond have vanishing Euler characteristic
    series = chi_y_product(HOPF.table, 6)
    assert series == TriSeries.one(6)


def test_chi_y_exp_zero_table():
    from hilbhodge.surfaces import SurfaceDiamond, TwistedTable

    zero = TwistedTable.constant(SurfaceDiamond([[0] * 3] * 3), 4)
    assert chi_y_exp(zero, 4) == TriSeries.one(4)


# -- Betti numbers and Frolicher ---------------------------------------------------


def test_betti_series_low_orders():
    series = betti_series((1, 1, 0, 1, 1), 2)
    assert series.coefficient_of_t(0).coefficient(0, 0) == 1
    # t^1 is the surface row: b = (1, 1, 0, 1, 1)
    assert [series.coefficient(i, 0, 1) for i in range(5)] == [1, 1, 0, 1, 1]
    # t^2 matches the printed Hilb^2 row sums of the hopf surface
    assert [series.coefficient(i, 0, 2) for i in range(9)] == [1, 1, 1, 2, 2, 2, 1, 1, 1]


def test_frolicher_passes_on_presets():
    for name in ("hopf", "k3"):
        ds = preset(name, max_power=6)
        frolicher_check(ds.table, ds.betti, 6)


def test_frolicher_detects_corrupted_betti():
    ds = preset("hopf", max_power=4)
    bad = (1, 2, 0, 1, 1)
    with pytest.raises(MismatchReport) as info:
        frolicher_check(ds.table, bad, 4)
    assert info.value.n == 1


# -- Hochschild homology --------------------------------------------------------------


def test_hh_dims_point():
    assert hh_dims(HOPF.table, 0) == {0: 1}


def test_hh_dims_surface():
    got = hh_dims(HOPF.table, 1)
    assert got == {-1: 1, 0: 2, 1: 1}


def test_hh_dims_hopf_square():
    # collapse of the 11-term Hilb^2 polynomial along q - p
    assert hh_dims(HOPF.table, 2) == {-1: 3, 0: 6, 1: 3}


def test_hh_two_paths_agree():
    rng = Random(19)
    for _ in range(6):
        table = random_table(rng, 5)
        rhs = hh_rhs_series(table, 5)
        for n in range(6):
            assert hh_dims(table, n) == hh_from_rhs(rhs, n)


def test_hh_rhs_order_zero_and_one():
    rhs = hh_rhs_series(HOPF.table, 3)
    assert hh_from_rhs(rhs, 0) == {0: 1}
    assert hh_from_rhs(rhs, 1) == {-1: 1, 0: 2, 1: 1}


# -- deformation theory ------------------------------------------------------------------


def test_sn_invariant_tangent_n1_is_hT():
    din = preset("torus").deformation
    assert sn_invariant_tangent(din, 1) == {0: 2, 1: 4, 2: 2}


def test_sn_invariant_tangent_examples():
    torus = preset("torus").deformation
    assert sn_invariant_tangent(torus, 2)[1] == 8  # 4*1 + 2*2
    k3 = preset("k3").deformation
    assert sn_invariant_tangent(k3, 2)[1] == 20


def test_deformation_dims_edge_cases():
    din = preset("torus").deformation
    assert deformation_dims(din, 0, 2) == {0: 0, 1: 0, 2: 0}
    assert deformation_dims(din, 1, 3) == {0: 2, 1: 4, 2: 2, 3: 0}


@pytest.mark.parametrize(
    "name,expected",
    [("k3", 21), ("torus", 9), ("bielliptic_ord2", 3), ("bielliptic_ord3", 2)],
)
def test_deformation_tangent_dimension(name, expected):
    din = preset(name).deformation
    for n in range(2, 6):
        assert deformation_dims(din, n, 1)[1] == expected


def test_deformation_closed_forms_examples():
    assert deformation_closed_forms(preset("k3").deformation, 3) == (0, 21, 0)
    assert deformation_closed_forms(preset("torus").deformation, 3) == (2, 9, 18)
    # Both obstruction-free collapse cases: no h^1(O) h^0(T) coupling and no
    # anticanonical sections, so h1 reduces to h^1(S, T).
    enriques = preset("enriques").deformation
    assert deformation_closed_forms(enriques, 2)[1] == enriques.hT[1]


def test_deformation_closed_forms_match_dims_for_n_at_least_3():
    for name in ("k3", "torus", "enriques", "bielliptic_ord2", "bielliptic_ord3", "p2"):
        din = preset(name).deformation
        for n in (3, 4, 5):
            dims = deformation_dims(din, n, 2)
            assert (dims[0], dims[1], dims[2]) == deformation_closed_forms(din, n)


def test_deformation_n2_obstruction_drops_two_terms():
    # at n = 2 the symmetric power S^(0) is a point, so the terms
    # h^0(T) C(h^1(O), 2) and h^1(O) h^0(w2T) are absent from h^2
    from math import comb

    for name in ("k3", "torus", "bielliptic_ord2", "p2"):
        din = preset(name).deformation
        dims = deformation_dims(din, 2, 2)
        closed = deformation_closed_forms(din, 2)
        gap = din.hT[0] * comb(din.hO[1], 2) + din.hO[1] * din.hW2[0]
        assert (dims[0], dims[1], dims[2]) == (closed[0], closed[1], closed[2] - gap)


def test_deformation_closed_forms_preconditions():
    din = preset("k3").deformation
    with pytest.raises(ValueError):
        deformation_closed_forms(din, 1)
    from hilbhodge.surfaces import DeformationInput

    disconnected = DeformationInput((0, 1, 0), (2, 0, 0), (0, 0, 0), connected=False)
    with pytest.raises(ValueError):
        deformation_closed_forms(disconnected, 2)


def test_omega_trivial_cross_check():
    # with trivial canonical bundle, h^q(Hilb^n, T) is the p = 2n-1 column
    for name in ("k3", "torus"):
        ds = preset(name, max_power=3)
        for n in (2, 3):
            assert deformation_dims(ds.deformation, n, 3) == tangent_dims_from_series(
                ds.table, n, 3
            )
