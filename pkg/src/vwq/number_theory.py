"""Hurwitz class numbers, divisor counts, Dedekind eta powers and theta blocks."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .series import EmptyWindowError, FracExpSeries, as_rational, pow_int


@lru_cache(maxsize=None)
def hurwitz(disc: int) -> Fraction:
    """Hurwitz class number H(disc).

    Counts positive definite forms ``a X^2 + b XY + c Y^2`` with
    ``b^2 - 4ac = -disc`` up to equivalence, weighting the classes of
    ``a(X^2 + Y^2)`` by 1/2 and ``a(X^2 + XY + Y^2)`` by 1/3.  Non-primitive
    forms are included.  ``H(0) = -1/12`` by convention.
    """
    if disc < 0:
        raise ValueError("discriminant magnitude must be nonnegative")
    if disc == 0:
        return Fraction(-1, 12)
    if disc % 4 in (1, 2):
        return Fraction(0)
    total = Fraction(0)
    a = 1
    # reduced forms satisfy 3a^2 <= disc
    while 3 * a * a <= disc:
        for b in range(-a + 1, a + 1):
            num = b * b + disc
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (b < 0 and a == c):
                continue
            if a == b == c:
                total += Fraction(1, 3)
            elif b == 0 and a == c:
                total += Fraction(1, 2)
            else:
                total += 1
        a += 1
    return total


def divisor_count(n: int) -> int:
    if n < 1:
        raise ValueError("divisor_count needs n >= 1")
    count = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            count += 1 if d * d == n else 2
        d += 1
    return count


def euler_product(trunc) -> FracExpSeries:
    """``prod_{n>=1} (1 - q^n)`` below ``trunc`` from the pentagonal number theorem."""
    trunc = as_rational(trunc)
    terms: dict[int, Fraction] = {0: Fraction(1)}
    m = 1
    while True:
        sign = -1 if m % 2 else 1
        p1, p2 = m * (3 * m - 1) // 2, m * (3 * m + 1) // 2
        if p1 >= trunc:
            break
        terms[p1] = Fraction(sign)
        if p2 < trunc:
            terms[p2] = Fraction(sign)
        m += 1
    return FracExpSeries(1, terms, trunc)


def eta_power(k: int, trunc) -> FracExpSeries:
    """``eta(q)**k`` including the ``q**(k/24)`` prefactor, known below ``trunc``."""
    trunc = as_rational(trunc)
    lead = Fraction(k, 24)
    if trunc <= lead:
        raise EmptyWindowError(f"window {trunc} does not contain the leading exponent {lead}")
    body = pow_int(euler_product(trunc - lead), k)
    return body.shift(lead)


# -- cyclotomic numbers -----------------------------------------------------


def _mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(a: list[int], b: list[int]) -> list[int]:
    # b is monic
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = a[i + len(b) - 1]
        out[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] -= c * y
    if any(a[: len(b) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients (constant term first) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("cyclotomic order must be positive")
    num, den = [1], [1]
    for d in range(1, m + 1):
        if m % d:
            continue
        mu = _mobius(m // d)
        if mu == 0:
            continue
        factor = [-1] + [0] * (d - 1) + [1]
        if mu == 1:
            num = _poly_mul(num, factor)
        else:
            den = _poly_mul(den, factor)
    return tuple(_poly_divexact(num, den))


def _reduce(coeffs: list[Fraction], m: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    c = list(coeffs) + [Fraction(0)] * max(0, deg - len(coeffs))
    for i in range(len(c) - 1, deg - 1, -1):
        top = c[i]
        if top:
            for j in range(deg + 1):
                c[i - deg + j] -= top * phi[j]
    return tuple(c[:deg])


class CycNumber:
    """Element of Q(zeta_m) in the power basis modulo the m-th cyclotomic polynomial."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        if order < 1:
            raise ValueError("cyclotomic order must be positive")
        self.order = order
        self.coeffs = _reduce([as_rational(c) for c in coeffs], order)

    @classmethod
    def rational(cls, m: int, x) -> "CycNumber":
        return cls(m, [as_rational(x)])

    def __add__(self, other: "CycNumber") -> "CycNumber":
        self._check(other)
        return CycNumber(self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "CycNumber") -> "CycNumber":
        self._check(other)
        return CycNumber(self.order, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "CycNumber":
        return CycNumber(self.order, [-a for a in self.coeffs])

    def __mul__(self, other) -> "CycNumber":
        if isinstance(other, (int, Fraction)):
            return CycNumber(self.order, [a * other for a in self.coeffs])
        self._check(other)
        out = [Fraction(0)] * (2 * len(self.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return CycNumber(self.order, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycNumber):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        return f"CycNumber({self.order}, {[str(c) for c in self.coeffs]})"

    def _check(self, other):
        if not isinstance(other, CycNumber) or other.order != self.order:
            raise ValueError("cyclotomic numbers must share the same order")


def cyc_root(m: int, a: int) -> CycNumber:
    """``zeta_m ** a``."""
    if m < 1:
        raise ValueError("cyclotomic order must be positive")
    e = a % m
    return CycNumber(m, [Fraction(0)] * e + [Fraction(1)])


def cyc_to_rational(x: CycNumber) -> Fraction | None:
    """The rational value of ``x``, or ``None`` when ``x`` is not in Q."""
    if any(c for c in x.coeffs[1:]):
        return None
    return x.coeffs[0] if x.coeffs else Fraction(0)


# -- theta blocks -------------------------------------------------------------


class ThetaIrrationalityError(ArithmeticError):
    def __init__(self, n: int, exponent: int, value: CycNumber):
        super().__init__(f"Theta_{n} coefficient at q^{exponent} is not rational: {value!r}")
        self.n = n
        self.exponent = exponent
        self.value = value


def _lattice_points(n: int, max_norm: int):
    """Integer vectors with sum of squares at most ``max_norm``."""
    vec = [0] * n

    def rec(i: int, used: int):
        if i == n:
            yield tuple(vec)
            return
        room = max_norm - used
        r = math.isqrt(room)
        for v in range(-r, r + 1):
            vec[i] = v
            yield from rec(i + 1, used + v * v)
        vec[i] = 0

    yield from rec(0, 0)


def theta_form(k: tuple[int, ...]) -> int:
    """``sum_{i<=j} k_i k_j``."""
    s = sum(k)
    return (sum(x * x for x in k) + s * s) // 2


def theta_counts(n: int, order: int) -> dict[int, list[int]]:
    """Lattice vector counts per (form value, phase index mod n+2) up to ``order``."""
    if n < 1:
        raise ValueError("theta block rank must be positive")
    m = n + 2
    counts: dict[int, list[int]] = {}
    # sum_{i<=j} k_i k_j >= |k|^2 / 2
    for k in _lattice_points(n, 2 * order):
        qv = theta_form(k)
        if qv > order:
            continue
        phase = sum((i + 1) * x for i, x in enumerate(k)) % m
        row = counts.setdefault(qv, [0] * m)
        row[phase] += 1
    return counts


def theta_coefficients(n: int, order: int) -> dict[int, CycNumber]:
    """Exact cyclotomic coefficients of Theta_n through ``q**order``."""
    m = n + 2
    out = {}
    for qv, row in theta_counts(n, order).items():
        out[qv] = CycNumber(m, row)
    return out


def theta_block(n: int, order: int) -> FracExpSeries:
    """Theta_n as a rational q-series known below ``order + 1``.

    Raises :class:`ThetaIrrationalityError` naming the first exponent whose
    lattice sum fails to land in Q.
    """
    terms = {}
    for qv, value in sorted(theta_coefficients(n, order).items()):
        r = cyc_to_rational(value)
        if r is None:
            raise ThetaIrrationalityError(n, qv, value)
        terms[qv] = r
    return FracExpSeries(1, terms, order + 1)
