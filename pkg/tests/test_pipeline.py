import math
from fractions import Fraction

import pytest

from meanders.errors import AsymptoticUndefinedError
from meanders.nclat import catalan
from meanders.pipeline import (
    GOLDEN_CONSTANTS,
    GOLDEN_POLYS,
    asymptotic_constant,
    double_factorial,
    golden_check,
    lando_zvonkin_check,
    run_pipeline,
    verify_against_brute,
)
from meanders.series import IntPolynomial, binomial_power_ints, poly_mul_ints


def test_double_factorial():
    assert [double_factorial(k) for k in (-1, 0, 1, 2, 3, 5, 7)] == \
        [1, 1, 1, 2, 3, 15, 105]


def test_half_integer_gamma_identity():
    # Gamma((2r-1)/2) = (2r-3)!! sqrt(pi) / 2^(r-1), checked numerically
    # before the constants rely on it
    for r in range(1, 9):
        closed = (double_factorial(2 * r - 3) * math.sqrt(math.pi)
                  / 2 ** (r - 1))
        assert math.isclose(math.gamma((2 * r - 1) / 2), closed,
                            rel_tol=1e-12)


def test_constants_from_reference_polynomials():
    for r in range(1, 7):
        c = asymptotic_constant(r, IntPolynomial(GOLDEN_POLYS[r]))
        assert c == GOLDEN_CONSTANTS[r]


def test_constant_undefined_when_vanishing_at_one():
    with pytest.raises(AsymptoticUndefinedError):
        asymptotic_constant(2, IntPolynomial([1, -1]))


def test_pipeline_smallest_runs(cache_dir):
    result = run_pipeline(1, cache_dir=cache_dir)
    assert result.polys[1] == [2]
    assert result.asympt[1] == Fraction(2)
    assert result.f_series[0] == [catalan(n) for n in range(1, result.nx + 1)]
    # loop-deficit-1 counts: 0, 2, 12, 56, ... all even, vanishing at n=1
    f1 = result.f_series[1]
    assert f1[0] == 0 and f1[1] == 2
    assert all(c % 2 == 0 for c in f1)


def test_pipeline_r3(cache_dir, table_r3):
    result = run_pipeline(3, table=table_r3, cache_dir=cache_dir)
    for r in (1, 2, 3):
        assert result.polys[r] == GOLDEN_POLYS[r]
        assert result.asympt[r] == GOLDEN_CONSTANTS[r]
    assert all(rec.passed for rec in result.checks)
    text = result.to_text()
    assert text.splitlines()[0] == "meander-genfun v1"
    assert "poly 2 8 4 -12 4" in text
    assert "asympt 3 4/3" in text


def test_pipeline_r0(cache_dir):
    result = run_pipeline(0, cache_dir=cache_dir)
    assert result.polys == {}
    assert result.f_series[0] == [1, 2, 5, 14]


def test_pipeline_rejects_insufficient_order(table_r3):
    with pytest.raises(ValueError):
        run_pipeline(3, nx=10, table=table_r3)


def test_mid_series_closed_forms(table_r3):
    # the once-transformed series: (0,0,0) column all ones; one sample
    # cell against the rational form X^(r+1) Q / (1-X)^(2r+1) directly
    from meanders.pipeline import _compute_series, CheckList

    checks = CheckList()
    irr, mid, full = _compute_series(table_r3, 3, 12, checks)
    assert checks.ok
    ones = [mid.coeff(n).coeff(0, 0, 0) for n in range(1, 13)]
    assert ones == [1] * 12
    cell = [0] + [mid.coeff(n).coeff(1, 1, 0) for n in range(1, 13)]
    norm = poly_mul_ints(cell, binomial_power_ints(-1, 3), 12)
    assert [m for m in range(13) if norm[m]] == [2]  # exactly X^2: Q = 1


def test_verify_against_brute_full(cache_dir):
    report = verify_against_brute(5, cache_dir=cache_dir)
    assert report.ok, "\n".join(report.lines())


def test_lando_zvonkin(cache_dir):
    report = lando_zvonkin_check(6, cache_dir=cache_dir)
    assert report.ok, "\n".join(report.lines())


def test_golden_check(cache_dir):
    report = golden_check(cache_dir=cache_dir, r_max=3)
    assert report.ok, "\n".join(report.lines())
