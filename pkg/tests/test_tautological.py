from fractions import Fraction as F
from math import comb, factorial

import pytest

from vwq.tautological import (
    CurveModel,
    InsufficientWindowError,
    TautPolynomial,
    chern_series,
    closed_form,
    integrate,
    kernel_constant,
    monopole_direct,
    monopole_reduced,
    monopole_series,
)


def poly_power(lin, k, n):
    """Coefficients of (a + b w)^k through w^n for any integer k (a != 0)."""
    a, b = map(F, lin)
    out = []
    c = F(1)
    for j in range(n + 1):
        out.append(c * a ** (k - j) * b**j)
        c = c * (k - j) / (j + 1)
    return out


def poly_mul(x, y, n):
    out = [F(0)] * (n + 1)
    for i, a in enumerate(x):
        for j, b in enumerate(y):
            if i + j <= n:
                out[i + j] += a * b
    return out


def test_integrate_examples():
    w2 = TautPolynomial({(0, 2): 1}, 3)
    tw = TautPolynomial({(1, 1): 1}, 3)
    t2 = TautPolynomial({(2, 0): F(1, 2)}, 3)
    assert integrate(w2, 2, 6) == 1
    assert integrate(tw, 2, 6) == 6
    assert integrate(t2, 2, 6) == 15


def test_integrate_basic_property():
    g, n = 6, 5
    for i in range(n + 1):
        p = TautPolynomial({(i, n - i): F(1, 1)}, n + 1)
        assert integrate(p, n, g) / factorial(i) == comb(g, i)


def test_integrate_degree_filter_and_window():
    p = TautPolynomial({(0, 1): 5, (1, 0): 7, (0, 3): 2}, 4)
    assert integrate(p, 2, 3) == 0
    with pytest.raises(InsufficientWindowError):
        integrate(TautPolynomial({(0, 0): 1}, 2), 2, 1)


def test_integrate_linear():
    a = TautPolynomial({(1, 2): 3, (0, 3): 1}, 4)
    b = TautPolynomial({(3, 0): 2, (2, 1): -1}, 4)
    assert integrate(a + b, 3, 4) == integrate(a, 3, 4) + integrate(b, 3, 4)
    assert integrate(a.scale(5), 3, 4) == 5 * integrate(a, 3, 4)


def test_chern_examples():
    assert chern_series("tangent", CurveModel(6), 0) == TautPolynomial.constant(1, 1)
    for g, r, n in [(3, 1, 4), (2, 2, 3), (6, 1, 5)]:
        cm = CurveModel(g, r)
        x = F(r) ** n
        got = chern_series("bundle", cm, n, cm.degK, 1).omega_part()
        assert got == poly_power((1, -x), n, n)
        got = chern_series("bundle", cm, n, cm.degK2, F(1, 2)).omega_part()
        assert got == poly_power((1, -x / 2), n + 1 - g, n)


def test_chern_at_zero_parameter():
    cm = CurveModel(4, 2)
    assert chern_series("bundle", cm, 3, 2, 0) == TautPolynomial.constant(1, 4)
    with pytest.raises(ValueError):
        chern_series("nonsense", cm, 1)


def test_monopole_examples():
    assert monopole_direct(CurveModel(0), 0) == -2
    assert monopole_direct(CurveModel(0), 2) == -22
    assert monopole_reduced(CurveModel(0), 1) == 4
    assert monopole_reduced(CurveModel(0), 2) == -22
    assert monopole_reduced(CurveModel(6), 0) == F(-1, 2048)
    for g in range(5):
        assert monopole_direct(CurveModel(g), 0) == F(-2) ** (1 - 2 * g)


def test_reduced_against_hand_expansion():
    # (w-2)^(n+1-2g)(1+w)^(n-g)(1-w)^-(n+g)(1-2w)^g, w^n coefficient
    for g in (0, 1, 3):
        for n in range(6):
            p = poly_power((-2, 1), n + 1 - 2 * g, n)
            p = poly_mul(p, poly_power((1, 1), n - g, n), n)
            p = poly_mul(p, poly_power((1, -1), -(n + g), n), n)
            p = poly_mul(p, poly_power((1, -2), g, n), n)
            assert monopole_reduced(CurveModel(g), n) == p[n]


@pytest.mark.parametrize("g", [0, 1, 2, 6])
@pytest.mark.parametrize("r", [1, 2])
def test_two_paths_agree(g, r):
    cm = CurveModel(g, r)
    for n in range(9):
        assert monopole_direct(cm, n) == monopole_reduced(cm, n)


@pytest.mark.parametrize("g", [0, 1, 2, 6])
def test_gerbe_independence(g):
    for n in range(9):
        vals = {monopole_reduced(CurveModel(g, r), n) for r in (1, 2, 3)}
        assert len(vals) == 1


def test_series_leading_terms_g0():
    s = monopole_series(CurveModel(0), 3)
    assert [s.coefficient(n) for n in range(3)] == [2, 4, 22]


def test_closed_form_examples():
    c = closed_form(0, 3)
    assert [c.coefficient(n) for n in range(3)] == [2, 4, 22]
    for g in range(6):
        assert closed_form(g, 4).coefficient(0) == F(2) ** (1 - g)
    for N in (1, 5, 12):
        one = closed_form(1, N)
        assert one.items() == [(0, 1)] and one.trunc == N


@pytest.mark.parametrize("g", [0, 1, 2, 6])
def test_series_matches_closed_form(g):
    assert monopole_series(CurveModel(g), 12) == closed_form(g, 12)
    assert monopole_series(CurveModel(g, 2), 8) == closed_form(g, 8)


@pytest.mark.parametrize("g", [0, 1, 2, 3, 6])
def test_unnormalized_constant(g):
    assert kernel_constant(g, 10) == F(1, 2**g)


def test_domain_errors():
    with pytest.raises(ValueError):
        CurveModel(-1)
    with pytest.raises(ValueError):
        CurveModel(1, 0)
    with pytest.raises(ValueError):
        monopole_series(CurveModel(1), 0)
    with pytest.raises(ValueError):
        closed_form(1, 0)


def test_taut_inverse():
    p = TautPolynomial({(0, 0): 2, (1, 0): 1, (0, 1): -3, (1, 1): 4}, 5)
    assert p * p.inverse() == TautPolynomial.constant(1, 5)
