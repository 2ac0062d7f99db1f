from fractions import Fraction as F
from math import gcd

import pytest

from vwq.number_theory import (
    CycNumber,
    ThetaIrrationalityError,
    cyc_root,
    cyc_to_rational,
    cyclotomic_polynomial,
    divisor_count,
    eta_power,
    hurwitz,
    theta_block,
)
from vwq.series import EmptyWindowError, FracExpSeries, mul, one


def brute_hurwitz(d):
    """Count every form (a, b, c) with b^2 - 4ac = -d up to SL2(Z) via reduction."""
    if d == 0:
        return F(-1, 12)
    total = F(0)
    for a in range(1, d + 1):
        for b in range(-a, a + 1):
            if (b * b + d) % (4 * a):
                continue
            c = (b * b + d) // (4 * a)
            if c < a:
                continue
            if b == -a or (a == c and b < 0):
                continue  # boundary duplicates
            if a == b == c:
                total += F(1, 3)
            elif b == 0 and a == c:
                total += F(1, 2)
            else:
                total += 1
    return total


def brute_euler_product(N):
    coeffs = [F(0)] * N
    coeffs[0] = F(1)
    for n in range(1, N):
        new = coeffs[:]
        for k in range(n, N):
            new[k] -= coeffs[k - n]
        coeffs = new
    return coeffs


def partition_numbers(N):
    p = [1] + [0] * (N - 1)
    for part in range(1, N):
        for k in range(part, N):
            p[k] += p[k - part]
    return p


def test_hurwitz_examples():
    assert hurwitz(3) == F(1, 3)
    assert hurwitz(4) == F(1, 2)
    assert hurwitz(5) == 0
    assert [hurwitz(d) for d in (7, 8, 11, 12)] == [1, 1, 1, F(4, 3)]


@pytest.mark.parametrize("d", range(0, 120))
def test_hurwitz_against_brute_force(d):
    if d % 4 in (1, 2):
        assert hurwitz(d) == 0
    else:
        assert hurwitz(d) == brute_hurwitz(d)


def test_hurwitz_vanishing_pattern():
    for d in range(1, 401):
        assert (hurwitz(d) == 0) == (d % 4 in (1, 2))


def test_odd_hurwitz_integrality():
    for n in range(1, 101):
        v = 3 * hurwitz(4 * n - 1)
        assert v.denominator == 1 and v >= 0


def test_divisor_count():
    assert divisor_count(1) == 1
    assert divisor_count(6) == 4
    assert divisor_count(12) == 6
    for n in range(1, 60):
        assert divisor_count(n) == sum(1 for d in range(1, n + 1) if n % d == 0)
    with pytest.raises(ValueError):
        divisor_count(0)


def test_eta_examples():
    e = eta_power(1, 3)
    assert e.valuation() == F(1, 24)
    assert [e.coefficient(F(1, 24) + k) for k in range(3)] == [1, -1, -1]
    assert eta_power(0, 5) == one(5)
    inv = eta_power(-1, 2)
    assert [inv.coefficient(F(-1, 24) + k) for k in range(2)] == [1, 1]


@pytest.mark.parametrize("k", [1, 2, 3, 5, 24])
def test_eta_against_product_oracle(k):
    N = 15
    body = FracExpSeries.polynomial(brute_euler_product(N), N)
    oracle = body
    for _ in range(k - 1):
        oracle = mul(oracle, body)
    ours = eta_power(k, N + F(k, 24)).shift(F(-k, 24))
    assert ours.agrees_with(oracle)


def test_eta_inverse_gives_partitions():
    N = 20
    s = eta_power(-1, N - F(1, 24))
    got = [s.coefficient(n - F(1, 24)) for n in range(N - 1)]
    assert got == partition_numbers(N - 1)


@pytest.mark.parametrize("k", [1, 3, 7])
def test_eta_power_inverse_pair(k):
    prod = mul(eta_power(k, 10), eta_power(-k, 10))
    assert prod.agrees_with(one(prod.trunc))


def test_eta_empty_window():
    with pytest.raises(EmptyWindowError):
        eta_power(24, 1)


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_cyc_examples():
    assert cyc_root(4, 1) + cyc_root(4, -1) == CycNumber.rational(4, 0)
    assert cyc_root(3, 1) + cyc_root(3, 2) == CycNumber.rational(3, -1)
    for m in (1, 2, 5, 6):
        assert cyc_to_rational(cyc_root(m, 0)) == 1
    assert cyc_to_rational(cyc_root(3, 1) + cyc_root(3, 2)) == -1
    assert cyc_to_rational(cyc_root(4, 1)) is None
    with pytest.raises(ValueError):
        cyc_root(0, 1)


@pytest.mark.parametrize("m", [3, 4, 5, 6, 8, 12])
def test_root_sums(m):
    # sum of zeta^a over a in Z/m is 0; over primitive roots it is mu(m)
    total = CycNumber.rational(m, 0)
    for a in range(m):
        total = total + cyc_root(m, a)
    assert cyc_to_rational(total) == 0
    assert cyc_root(m, 1) * cyc_root(m, m - 1) == CycNumber.rational(m, 1)
    prim = CycNumber.rational(m, 0)
    for a in range(1, m + 1):
        if gcd(a, m) == 1:
            prim = prim + cyc_root(m, a)
    mobius = {3: -1, 4: 0, 5: -1, 6: 1, 8: 0, 12: 0}[m]
    assert cyc_to_rational(prim) == mobius


def test_theta_examples():
    t1 = theta_block(1, 9)
    assert [t1.coefficient(e) for e in range(10)] == [1, -1, 0, 0, -1, 0, 0, 0, 0, 2]
    t2 = theta_block(2, 1)
    assert t2.coefficient(0) == 1 and t2.coefficient(1) == -2
    for n in (1, 2, 3, 4):
        assert theta_block(n, 0) == one(1)


def test_theta1_pattern():
    N = 30
    t1 = theta_block(1, N)
    for e in range(1, N + 1):
        m = int(round(e ** 0.5))
        if m * m == e:
            assert t1.coefficient(e) == (2 if m % 3 == 0 else -1)
        else:
            assert t1.coefficient(e) == 0


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_theta_rational_through_30(n):
    theta_block(n, 30)


def test_theta_irrationality_is_reported(monkeypatch):
    import vwq.number_theory as nt

    monkeypatch.setattr(nt, "theta_coefficients", lambda n, order: {0: CycNumber.rational(4, 1), 1: cyc_root(4, 1)})
    with pytest.raises(ThetaIrrationalityError) as info:
        nt.theta_block(2, 1)
    assert info.value.exponent == 1 and info.value.n == 2
