from fractions import Fraction

import pytest

from meanders.errors import (
    BoundsMismatchError,
    CoverageError,
    StructureViolationError,
)
from meanders.nclat import catalan, enumerate_nc
from meanders.series import (
    CoeffPoly,
    IntPolynomial,
    TruncSeries,
    catalan_inverse_series,
    change_var_to_w,
    compose,
    extract_polynomial,
    f_transform,
    series_from_table,
    shifted_argument,
    substitute_AB_one,
    w_substitution_series,
)

from helpers import moment_sum_over_lattice, seeded

B0 = (0, 0, 0)


def _poly(terms, bounds):
    return CoeffPoly(terms, bounds)


# -- coefficient polynomials -------------------------------------------------

def test_coeffpoly_arithmetic():
    bounds = (2, 2, 2)
    p = _poly({(1, 1, 0): 2, (0, 0, 0): 1}, bounds)
    q = _poly({(1, 0, 1): 3}, bounds)
    s = p + q
    assert s.coeff(1, 1, 0) == 2 and s.coeff(1, 0, 1) == 3
    prod = p * q
    assert prod.coeff(1, 0, 1) == 3          # 1 * 3YB
    assert prod.coeff(2, 1, 1) == 6          # 2YA * 3YB
    assert (p - p).is_zero()


def test_coeffpoly_truncates_products():
    bounds = (1, 1, 1)
    p = _poly({(1, 1, 0): 1}, bounds)
    q = _poly({(1, 0, 1): 1}, bounds)
    assert (p * q).is_zero()  # Y^2 exceeds the bound


def test_coeffpoly_bounds_must_match():
    with pytest.raises(BoundsMismatchError):
        _poly({}, (1, 1, 1)) + _poly({}, (2, 2, 2))


def test_series_mul_truncates_x():
    s = TruncSeries.from_ints([1, 1])  # X + X^2
    t = TruncSeries.from_ints([1, 0])  # X
    prod = s * t
    assert prod.as_int_list() == [0, 1]  # X^2 survives, X^3 truncated


def test_series_mul_mixed_variables():
    bounds = (2, 2, 2)
    ya = _poly({(1, 1, 0): 1}, bounds)
    yb = _poly({(1, 0, 1): 1}, bounds)
    zero = CoeffPoly.zero(bounds)
    s = TruncSeries([zero, ya, zero, zero], bounds)
    t = TruncSeries([zero, yb, zero, zero], bounds)
    prod = s * t
    assert prod.coeff(4).coeff(2, 1, 1) == 1


# -- the transform -----------------------------------------------------------

def test_transform_single_cumulant():
    m = f_transform(TruncSeries.from_ints([1] + [0] * 7))
    assert m.as_int_list() == [1] * 8


def test_transform_all_ones_gives_catalan():
    m = f_transform(TruncSeries.from_ints([1] * 10))
    assert m.as_int_list() == [catalan(n) for n in range(1, 11)]


def test_transform_matches_lattice_sum_with_random_polynomials():
    # literal moment-cumulant sum over NC(n) as the oracle, with random
    # integer-polynomial cumulants in the graded variables
    rng = seeded(17)
    nx = 7
    bounds = (3, 2, 2)
    parts_by_n = {n: enumerate_nc(n) for n in range(1, nx + 1)}
    for _ in range(5):
        cumulants = {}
        for k in range(1, nx + 1):
            terms = {}
            for _ in range(rng.randint(0, 4)):
                key = (rng.randint(0, 3), rng.randint(0, 2), rng.randint(0, 2))
                terms[key] = rng.randint(-4, 4)
            cumulants[k] = CoeffPoly(terms, bounds)
        r_series = TruncSeries([cumulants[k] for k in range(1, nx + 1)], bounds)
        m_series = f_transform(r_series)
        for n in range(1, nx + 1):
            expected = moment_sum_over_lattice(parts_by_n, cumulants, n)
            assert m_series.coeff(n) == expected


def test_transform_inverse_consistency():
    rng = seeded(23)
    vals = [rng.randint(-5, 5) for _ in range(9)]
    r = TruncSeries.from_ints(vals)
    m = f_transform(r)
    assert compose(r, shifted_argument(m)) == m


def test_transform_y_truncation_soundness(table_r3, table_r4):
    # recompute with looser auxiliary bounds (needs the deeper table) and
    # compare within the tight window
    tight = f_transform(series_from_table(table_r3, 8, 3, 4, 4))
    loose = f_transform(series_from_table(table_r4, 8, 4, 6, 6))
    for n in range(1, 9):
        want = {k: v for k, v in loose.coeff(n).terms.items()
                if k[0] <= 3 and k[1] <= 4 and k[2] <= 4}
        assert tight.coeff(n).terms == want


# -- table to series ---------------------------------------------------------

def test_series_from_table_low_orders(table_r3):
    s = series_from_table(table_r3, 8, 2, 2, 2)
    expected = {
        (1, 0, 0, 0): 1,
        (2, 1, 1, 0): 1, (2, 1, 0, 1): 1,
        (3, 2, 2, 0): 1, (3, 2, 1, 1): 6, (3, 2, 0, 2): 1,
        (4, 2, 1, 1): 2, (4, 2, 2, 2): 2,
    }
    assert s.terms_through_y(2) == expected


def test_series_from_table_coverage_error(table_r3):
    with pytest.raises(CoverageError):
        series_from_table(table_r3, 20, 5, 8, 8)  # needs n <= 10


def test_series_from_table_respects_bounds(table_r3):
    s = series_from_table(table_r3, 6, 1, 1, 1)
    assert all(key[0] <= 1 for c in s.coeffs for key in c.terms)


# -- substitution, change of variables, extraction ---------------------------

def test_substitute_ab_one():
    bounds = (2, 2, 2)
    c = _poly({(1, 1, 0): 1, (1, 0, 1): 1}, bounds)
    s = TruncSeries([CoeffPoly.zero(bounds), c], bounds)
    out = substitute_AB_one(s)
    assert out.coeff(2).terms == {(1, 0, 0): 2}


def test_w_substitution_series():
    assert w_substitution_series(6).as_int_list() == [1, -2, 3, -4, 5, -6]


def test_change_var_on_x():
    s = TruncSeries.from_ints([1] + [0] * 7)
    assert change_var_to_w(s).as_int_list() == [1, -2, 3, -4, 5, -6, 7, -8]


def test_change_var_kills_catalan():
    # the loop-complete generating function collapses to a single term
    g = TruncSeries.from_ints([catalan(k) for k in range(1, 14)])
    assert change_var_to_w(g).as_int_list() == [1] + [0] * 12


def test_change_var_numeric_consistency():
    # evaluate both sides at w = 1/10, t = w/(1+w)^2 = 10/121, exactly;
    # the difference is the truncation tail, bounded by the geometric
    # sum of |coefficient| * t^n over the dropped orders (coefficients
    # here grow at most like 4^n, so 40 orders leave < 1e-18 slack)
    nx = 40
    g = TruncSeries.from_ints([catalan(k) for k in range(1, nx + 1)])
    gw = change_var_to_w(g)
    w = Fraction(1, 10)
    t = w / (1 + w) ** 2
    direct = sum(c * t ** n for n, c in enumerate(g.as_int_list(), start=1))
    via_w = sum(c * w ** n for n, c in enumerate(gw.as_int_list(), start=1))
    assert abs(direct - via_w) < Fraction(1, 10 ** 18)


def test_catalan_inverse_series_inverts_substitution():
    nx = 12
    u = w_substitution_series(nx)
    w_of_t = catalan_inverse_series(nx)
    assert compose(u, w_of_t).as_int_list() == [1] + [0] * (nx - 1)
    assert compose(w_of_t, u).as_int_list() == [1] + [0] * (nx - 1)


def test_extract_polynomial_round_trip():
    # plant a known numerator and recover it
    import math

    from meanders.series import poly_mul_ints

    r = 2
    poly = [8, 4, -12, 4]
    cap = 16
    inv = [math.comb(m + 2 * r - 2, 2 * r - 2) for m in range(cap + 1)]
    out = poly_mul_ints(poly, [1, 1], cap)
    out = poly_mul_ints(out, inv, cap)
    coeffs = ([0] * (r + 1) + out[: cap - r])[1:]
    recovered = extract_polynomial(TruncSeries.from_ints(coeffs, var="w"), r)
    assert recovered == IntPolynomial(poly)


def test_extract_polynomial_structure_violations():
    r = 2
    good = [0, 0, 8, 0, 0, 0, 0, 0, 0, 0, 0, 0]  # 8w^3 alone fails the form
    with pytest.raises(StructureViolationError):
        extract_polynomial(TruncSeries.from_ints(good, var="w"), r)
    low = [5] + [0] * 11
    with pytest.raises(StructureViolationError):
        extract_polynomial(TruncSeries.from_ints(low, var="w"), r)
    with pytest.raises(BoundsMismatchError):
        extract_polynomial(TruncSeries.from_ints([0, 0, 2], var="w"), 2)


def test_int_polynomial_basics():
    p = IntPolynomial([2, 0, 1, 0])
    assert p.degree == 2
    assert p(3) == 11
    assert p == [2, 0, 1]
    assert IntPolynomial([]).is_zero()


def test_series_dump_format(table_r3):
    s = series_from_table(table_r3, 3, 2, 2, 2)
    assert s.dump_lines()[:3] == ["1 0 0 0 1", "2 1 0 1 1", "2 1 1 0 1"]
