"""Monopole-branch integrals over Hilbert schemes of points on a gerby curve.

Two evaluation routes are kept separate on purpose:

* :func:`monopole_direct` expands the Chern-class ratio in the classes
  ``omega`` and ``theta`` and integrates with the tautological pairing
  ``int theta^i/i! omega^(n-i) = binom(g, i)``.
* :func:`monopole_reduced` extracts a single ``omega^n`` coefficient from the
  one-variable integrand obtained after eliminating ``theta``.

Both return values in the normalization of the reduced integrand.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Mapping

from .series import (
    FracExpSeries,
    as_rational,
    invert,
    mul,
    pow_int,
    sqrt,
)


@dataclass(frozen=True)
class CurveModel:
    """Genus ``g`` curve inside a root stack, with ``mu_r``-gerbe order ``r``."""

    g: int
    r: int = 1

    def __post_init__(self):
        if self.g < 0:
            raise ValueError("genus must be nonnegative")
        if self.r < 1:
            raise ValueError("gerbe order must be positive")

    @property
    def degK(self) -> int:
        return self.g - 1

    @property
    def degK2(self) -> int:
        return 2 * self.g - 2


class InsufficientWindowError(ValueError):
    pass


class TautPolynomial:
    """Truncated polynomial in theta and omega; key ``(i, j)`` is ``theta^i omega^j``.

    Only monomials of total degree below ``maxdeg`` are kept.
    """

    __slots__ = ("coeffs", "maxdeg")

    def __init__(self, coeffs: Mapping[tuple[int, int], Fraction], maxdeg: int):
        self.maxdeg = maxdeg
        self.coeffs = {
            (i, j): as_rational(c)
            for (i, j), c in coeffs.items()
            if c and i + j < maxdeg
        }

    @classmethod
    def constant(cls, c, maxdeg: int) -> "TautPolynomial":
        return cls({(0, 0): as_rational(c)}, maxdeg)

    @classmethod
    def omega_poly(cls, coeffs, maxdeg: int) -> "TautPolynomial":
        return cls({(0, j): c for j, c in enumerate(coeffs)}, maxdeg)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        return self.coeffs.get(key, Fraction(0))

    def __add__(self, other: "TautPolynomial") -> "TautPolynomial":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + c
        return TautPolynomial(out, min(self.maxdeg, other.maxdeg))

    def __sub__(self, other: "TautPolynomial") -> "TautPolynomial":
        return self + other.scale(-1)

    def scale(self, c) -> "TautPolynomial":
        c = as_rational(c)
        return TautPolynomial({k: c * v for k, v in self.coeffs.items()}, self.maxdeg)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        maxdeg = min(self.maxdeg, other.maxdeg)
        out: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), a in self.coeffs.items():
            for (i2, j2), b in other.coeffs.items():
                if i1 + i2 + j1 + j2 >= maxdeg:
                    continue
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, Fraction(0)) + a * b
        return TautPolynomial(out, maxdeg)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "TautPolynomial":
        if k < 0:
            return self.inverse() ** (-k)
        result = TautPolynomial.constant(1, self.maxdeg)
        for _ in range(k):
            result = result * self
        return result

    def inverse(self) -> "TautPolynomial":
        c0 = self[(0, 0)]
        if c0 == 0:
            raise ZeroDivisionError("constant term vanishes")
        # 1/(c0 (1 + N)) = c0^-1 sum (-N)^k, N nilpotent in the window
        nil = TautPolynomial({k: v / c0 for k, v in self.coeffs.items() if k != (0, 0)}, self.maxdeg)
        term = TautPolynomial.constant(1, self.maxdeg)
        total = term
        for _ in range(1, self.maxdeg):
            term = term * nil.scale(-1)
            total = total + term
        return total.scale(1 / c0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TautPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs and self.maxdeg == other.maxdeg

    def __repr__(self) -> str:
        return f"TautPolynomial({self.coeffs}, maxdeg={self.maxdeg})"

    def omega_part(self) -> list[Fraction]:
        return [self[(0, j)] for j in range(self.maxdeg)]


def _binomial_series(a: Fraction, k: int, maxdeg: int) -> TautPolynomial:
    """``(1 + a*omega)**k`` via generalized binomial coefficients."""
    coeffs = []
    c = Fraction(1)
    for j in range(maxdeg):
        coeffs.append(c * a**j)
        c = c * (k - j) / (j + 1)
    return TautPolynomial.omega_poly(coeffs, maxdeg)


def _exp_theta(h: TautPolynomial) -> TautPolynomial:
    """``exp(theta * h(omega))`` expanded termwise in theta."""
    maxdeg = h.maxdeg
    theta = TautPolynomial({(1, 0): Fraction(1)}, maxdeg)
    arg = theta * h
    total = TautPolynomial.constant(1, maxdeg)
    power = TautPolynomial.constant(1, maxdeg)
    for i in range(1, maxdeg):
        power = power * arg
        total = total + power.scale(Fraction(1, factorial(i)))
    return total


def integrate(P: TautPolynomial, n: int, g: int, r: int = 1) -> Fraction:
    """Integrate over the Hilbert scheme of ``n`` points of the genus-``g`` (gerby) curve.

    On the ``mu_r``-gerby curve every top monomial picks up ``r**(-n*n)``.
    """
    if P.maxdeg <= n:
        raise InsufficientWindowError(f"polynomial truncated at degree {P.maxdeg} cannot be integrated in degree {n}")
    total = Fraction(0)
    for i in range(0, min(n, g) + 1):
        c = P[(i, n - i)]
        if c:
            total += c * factorial(i) * comb(g, i)
    return total / Fraction(r) ** (n * n)


def chern_series(kind: str, cm: CurveModel, n: int, degL: int = 0, s=1) -> TautPolynomial:
    """``c_s`` of the tangent bundle or a tautological bundle on the gerby Hilbert scheme.

    ``kind="tangent"``: ``(1 + x w s)^(n+1-g) exp(-s x theta / (1 + x w s))``.
    ``kind="bundle"``:  ``(1 - x w s)^(n+g-1-degL) exp(s x theta / (1 - x w s))``.
    Here ``x = r**n`` and the result is truncated above total degree ``n``.
    """
    if n < 0:
        raise ValueError("number of points must be nonnegative")
    s = as_rational(s)
    x = Fraction(cm.r) ** n
    maxdeg = n + 1
    g = cm.g
    if kind == "tangent":
        base = _binomial_series(x * s, n + 1 - g, maxdeg)
        h = _binomial_series(x * s, -1, maxdeg).scale(-s * x)
    elif kind == "bundle":
        base = _binomial_series(-x * s, n + g - 1 - degL, maxdeg)
        h = _binomial_series(-x * s, -1, maxdeg).scale(s * x)
    else:
        raise ValueError(f"unknown Chern series kind {kind!r}")
    return base * _exp_theta(h)


def monopole_integrand(cm: CurveModel, n: int) -> TautPolynomial:
    """The Chern-class ratio integrated over the gerby Hilbert scheme, before prefactors."""
    num = (
        chern_series("bundle", cm, n, cm.degK2, Fraction(1, 2))
        * chern_series("tangent", cm, n, s=-1)
        * chern_series("bundle", cm, n, cm.degK, -1)
    )
    den = chern_series("bundle", cm, n, cm.degK, 1) * chern_series("bundle", cm, n, cm.degK2, 1)
    return num * den.inverse()


def monopole_direct(cm: CurveModel, n: int) -> Fraction:
    """Direct route: integrate the full ratio, then apply ``(-2)^(1-2g) (-1)^n 2^n``."""
    raw = integrate(monopole_integrand(cm, n), n, cm.g, cm.r)
    return Fraction(-2) ** (1 - 2 * cm.g) * (-1) ** n * 2**n * raw


def reduced_integrand(cm: CurveModel, n: int) -> FracExpSeries:
    """``(xw-2)^(n+1-2g) (1+xw)^(n-g) (1-xw)^-(n+g) (1-2xw)^g`` in ``w``, ``x = r**n``."""
    g = cm.g
    x = Fraction(cm.r) ** n
    t = n + 1

    def lin(c0, c1):
        return FracExpSeries(1, {0: Fraction(c0), 1: Fraction(c1)}, t)

    f = pow_int(lin(-2, x), n + 1 - 2 * g)
    f = mul(f, pow_int(lin(1, x), n - g))
    f = mul(f, pow_int(lin(1, -x), -(n + g)))
    f = mul(f, pow_int(lin(1, -2 * x), g))
    return f


def monopole_reduced(cm: CurveModel, n: int) -> Fraction:
    """Reduced route: ``omega^n`` coefficient of the theta-free integrand."""
    if n < 0:
        raise ValueError("number of points must be nonnegative")
    return reduced_integrand(cm, n).coefficient(n) / Fraction(cm.r) ** (n * n)


def monopole_series(cm: CurveModel, N: int, normalization: bool = True) -> FracExpSeries:
    """``sum_{n<N} (-1)^(n+1) 2^g I_n q^n`` with ``I_n = monopole_reduced(cm, n)``.

    With ``normalization=False`` the ``2^g`` factor is left out.
    """
    if N < 1:
        raise ValueError("order must be at least 1")
    scale = Fraction(2) ** cm.g if normalization else Fraction(1)
    terms = {n: (-1) ** (n + 1) * scale * monopole_reduced(cm, n) for n in range(N)}
    return FracExpSeries(1, terms, N)


def closed_form(g: int, N: int) -> FracExpSeries:
    """``(1-q)^(g-1) (1 + (1-3q)/sqrt((1-q)(1-9q)))^(1-g)`` below ``q^N``."""
    if N < 1:
        raise ValueError("order must be at least 1")

    def lin(c0, c1):
        return FracExpSeries(1, {0: Fraction(c0), 1: Fraction(c1)}, N)

    root = sqrt(mul(lin(1, -1), lin(1, -9)))
    bracket = lin(1, 0) + mul(lin(1, -3), invert(root))
    return mul(pow_int(lin(1, -1), g - 1), pow_int(bracket, 1 - g))


def kernel_constant(g: int, N: int) -> Fraction | None:
    """Constant ``c`` with ``sum (-1)^(n+1) I_n q^n = c * closed_form``, or ``None`` if not constant."""
    raw = monopole_series(CurveModel(g), N, normalization=False)
    kernel = closed_form(g, N)
    ratio = None
    for n in range(N):
        a, b = raw.coefficient(n), kernel.coefficient(n)
        if b == 0:
            if a != 0:
                return None
            continue
        if ratio is None:
            ratio = a / b
        elif a / b != ratio:
            return None
    return ratio
