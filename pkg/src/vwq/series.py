"""Truncated Laurent series in q with rational exponents and exact coefficients.

A :class:`FracExpSeries` stores the coefficient of ``q**(k/D)`` under the
integer key ``k``.  Every series carries an explicit truncation ``trunc``:
coefficients at exponents ``>= trunc`` are unknown and reading them is an
error.  Series that come from sums truncated *from below* (expansions in
``q**-1``) additionally carry a ``floor``; exponents below it are unknown.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping

Rational = Fraction


class SeriesError(ValueError):
    """Base class for series arithmetic failures."""


class EmptyWindowError(SeriesError):
    pass


class OutsideWindowError(SeriesError):
    pass


class NotInvertibleError(SeriesError):
    pass


class NoRootError(SeriesError):
    pass


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _exact_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


class FracExpSeries:
    """Immutable truncated series ``sum c_k q^(k/D)`` valid for exponents below ``trunc``."""

    __slots__ = ("denom", "terms", "trunc", "floor")

    def __init__(
        self,
        denom: int,
        terms: Mapping[int, Fraction],
        trunc,
        floor=None,
    ):
        if denom < 1:
            raise ValueError("denominator must be positive")
        trunc = as_rational(trunc)
        floor = None if floor is None else as_rational(floor)
        clean: dict[int, Fraction] = {}
        for k, c in terms.items():
            c = as_rational(c)
            if c == 0:
                continue
            e = Fraction(k, denom)
            if e >= trunc:
                continue
            if floor is not None and e < floor:
                continue
            clean[int(k)] = c
        object.__setattr__(self, "denom", int(denom))
        object.__setattr__(self, "terms", dict(sorted(clean.items())))
        object.__setattr__(self, "trunc", trunc)
        object.__setattr__(self, "floor", floor)

    def __setattr__(self, name, value):
        raise AttributeError("FracExpSeries is immutable")

    # -- construction -------------------------------------------------

    @classmethod
    def zero(cls, trunc, denom: int = 1) -> "FracExpSeries":
        return cls(denom, {}, trunc)

    @classmethod
    def from_exponents(cls, items: Iterable[tuple], trunc, floor=None) -> "FracExpSeries":
        """Build from ``(exponent, coefficient)`` pairs with rational exponents."""
        items = [(as_rational(e), as_rational(c)) for e, c in items]
        denom = 1
        for e, _ in items:
            denom = _lcm(denom, e.denominator)
        terms: dict[int, Fraction] = {}
        for e, c in items:
            k = int(e * denom)
            terms[k] = terms.get(k, Fraction(0)) + c
        return cls(denom, terms, trunc, floor)

    @classmethod
    def polynomial(cls, coeffs: Iterable, trunc=None) -> "FracExpSeries":
        """Integer-exponent series from a coefficient list ``[c0, c1, ...]``."""
        coeffs = [as_rational(c) for c in coeffs]
        if trunc is None:
            trunc = len(coeffs)
        return cls(1, dict(enumerate(coeffs)), trunc)

    # -- inspection ---------------------------------------------------

    def items(self) -> list[tuple[Fraction, Fraction]]:
        """``(exponent, coefficient)`` pairs in ascending exponent order."""
        return [(Fraction(k, self.denom), c) for k, c in self.terms.items()]

    def is_zero(self) -> bool:
        return not self.terms

    def valuation(self) -> Fraction:
        """Least stored exponent; the truncation bound for the zero series."""
        if not self.terms:
            return self.trunc
        return Fraction(next(iter(self.terms)), self.denom)

    def leading_coefficient(self) -> Fraction:
        if not self.terms:
            raise SeriesError("zero series has no leading coefficient")
        return next(iter(self.terms.values()))

    def top_exponent(self) -> Fraction:
        if not self.terms:
            raise SeriesError("zero series has no top exponent")
        return Fraction(next(reversed(self.terms)), self.denom)

    def coefficient(self, e) -> Fraction:
        e = as_rational(e)
        if e >= self.trunc:
            raise OutsideWindowError(f"exponent {e} is at or beyond truncation {self.trunc}")
        if self.floor is not None and e < self.floor:
            raise OutsideWindowError(f"exponent {e} is below the known floor {self.floor}")
        k = e * self.denom
        if k.denominator != 1:
            return Fraction(0)
        return self.terms.get(int(k), Fraction(0))

    def normalized(self) -> "FracExpSeries":
        """Same series with the smallest exponent denominator."""
        g = self.denom
        for k in self.terms:
            g = math.gcd(g, k)
        if g <= 1:
            return self
        return FracExpSeries(self.denom // g, {k // g: c for k, c in self.terms.items()},
                             self.trunc, self.floor)

    def rebase(self, denom: int) -> "FracExpSeries":
        if denom % self.denom:
            raise ValueError(f"cannot rebase denominator {self.denom} to {denom}")
        f = denom // self.denom
        return FracExpSeries(denom, {k * f: c for k, c in self.terms.items()}, self.trunc, self.floor)

    def with_window(self, trunc=None, floor=None) -> "FracExpSeries":
        """Narrow the known window; widening would fabricate coefficients."""
        t = self.trunc if trunc is None else min(self.trunc, as_rational(trunc))
        f = self.floor
        if floor is not None:
            f = as_rational(floor) if f is None else max(f, as_rational(floor))
        return FracExpSeries(self.denom, self.terms, t, f)

    def drop_floor(self) -> "FracExpSeries":
        """Treat the stored terms as an exact Laurent polynomial (partial sum)."""
        return FracExpSeries(self.denom, self.terms, self.trunc)

    # -- comparisons --------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, FracExpSeries):
            return NotImplemented
        return (
            self.items() == other.items()
            and self.trunc == other.trunc
            and self.floor == other.floor
        )

    def __hash__(self):
        return hash((tuple(self.items()), self.trunc, self.floor))

    def agrees_with(self, other: "FracExpSeries") -> bool:
        """Coefficient equality on the common known window."""
        return not self.differences(other)

    def differences(self, other: "FracExpSeries") -> list[tuple[Fraction, Fraction, Fraction]]:
        t = min(self.trunc, other.trunc)
        lo = [f for f in (self.floor, other.floor) if f is not None]
        f = max(lo) if lo else None
        out = []
        exps = {e for e, _ in self.items()} | {e for e, _ in other.items()}
        for e in sorted(exps):
            if e >= t or (f is not None and e < f):
                continue
            a, b = self.coefficient(e), other.coefficient(e)
            if a != b:
                out.append((e, a, b))
        return out

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*q^({e})" for e, c in self.items()) or "0"
        extra = f", floor={self.floor}" if self.floor is not None else ""
        return f"FracExpSeries({body} + O(q^({self.trunc})){extra})"

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        return add(self, _promote(other, self))

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return add(self, -_promote(other, self))

    def __rsub__(self, other):
        return add(_promote(other, self), -self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        return pow_int(self, k)

    def scale(self, c) -> "FracExpSeries":
        c = as_rational(c)
        return FracExpSeries(self.denom, {k: c * v for k, v in self.terms.items()}, self.trunc, self.floor)

    def shift(self, e) -> "FracExpSeries":
        """Multiply by ``q**e``; windows move with the terms."""
        e = as_rational(e)
        d = _lcm(self.denom, e.denominator)
        s = self.rebase(d)
        k0 = int(e * d)
        return FracExpSeries(
            d,
            {k + k0: c for k, c in s.terms.items()},
            self.trunc + e,
            None if self.floor is None else self.floor + e,
        )

    # -- interchange ----------------------------------------------------

    def to_dict(self) -> dict:
        out = {
            "denominator": self.denom,
            "truncation": {"num": self.trunc.numerator, "den": self.trunc.denominator},
            "terms": [
                {"exp_num": k, "exp_den": self.denom, "num": c.numerator, "den": c.denominator}
                for k, c in self.terms.items()
            ],
        }
        if self.floor is not None:
            out["floor"] = {"num": self.floor.numerator, "den": self.floor.denominator}
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: Mapping) -> "FracExpSeries":
        denom = int(d["denominator"])
        trunc = Fraction(int(d["truncation"]["num"]), int(d["truncation"]["den"]))
        floor = None
        if d.get("floor") is not None:
            floor = Fraction(int(d["floor"]["num"]), int(d["floor"]["den"]))
        terms: dict[int, Fraction] = {}
        for t in d["terms"]:
            e = Fraction(int(t["exp_num"]), int(t["exp_den"]))
            k = e * denom
            if k.denominator != 1:
                raise ValueError(f"term exponent {e} not representable with denominator {denom}")
            terms[int(k)] = Fraction(int(t["num"]), int(t["den"]))
        return cls(denom, terms, trunc, floor)

    @classmethod
    def from_json(cls, text: str) -> "FracExpSeries":
        return cls.from_dict(json.loads(text))


def _promote(x, like: FracExpSeries) -> FracExpSeries:
    if isinstance(x, FracExpSeries):
        return x
    return FracExpSeries(1, {0: as_rational(x)}, like.trunc)


def _common(a: FracExpSeries, b: FracExpSeries) -> tuple[FracExpSeries, FracExpSeries]:
    d = _lcm(a.denom, b.denom)
    return a.rebase(d), b.rebase(d)


def monomial(c, e, trunc) -> FracExpSeries:
    """``c * q**e`` known below ``trunc``."""
    e, trunc = as_rational(e), as_rational(trunc)
    if e >= trunc:
        raise EmptyWindowError(f"exponent {e} does not lie below truncation {trunc}")
    return FracExpSeries.from_exponents([(e, c)], trunc)


def add(a: FracExpSeries, b: FracExpSeries) -> FracExpSeries:
    a, b = _common(a, b)
    terms = dict(a.terms)
    for k, c in b.terms.items():
        terms[k] = terms.get(k, Fraction(0)) + c
    floors = [f for f in (a.floor, b.floor) if f is not None]
    return FracExpSeries(a.denom, terms, min(a.trunc, b.trunc), max(floors) if floors else None)


def _is_monomial(a: FracExpSeries) -> bool:
    return len(a.terms) == 1 and a.floor is None


def mul(a: FracExpSeries, b: FracExpSeries) -> FracExpSeries:
    """Cauchy product, known below ``min(a.trunc + val(b), b.trunc + val(a))``."""
    if a.floor is not None or b.floor is not None:
        # a floored factor is only determined when the other factor is a single term
        if _is_monomial(b):
            (e, c), = b.items()
            return a.shift(e).scale(c).with_window(trunc=b.trunc + a.valuation())
        if _is_monomial(a):
            return mul(b, a)
        raise SeriesError(
            "product with a series truncated from below is undetermined; "
            "call drop_floor() to multiply the partial sum"
        )
    a, b = _common(a, b)
    trunc = min(a.trunc + b.valuation(), b.trunc + a.valuation())
    kmax = trunc * a.denom  # exclusive bound in units of 1/D
    out: dict[int, Fraction] = {}
    bt = list(b.terms.items())
    for ka, ca in a.terms.items():
        for kb, cb in bt:
            k = ka + kb
            if k >= kmax:
                break
            out[k] = out.get(k, Fraction(0)) + ca * cb
    return FracExpSeries(a.denom, out, trunc)


def _unit_part(a: FracExpSeries) -> tuple[int, list[Fraction], int]:
    """Leading key, dense relative coefficients and window length in units of 1/D."""
    if a.floor is not None:
        raise SeriesError("series truncated from below cannot be inverted or rooted")
    if not a.terms:
        raise NotInvertibleError("series is zero within its window")
    k0 = next(iter(a.terms))
    span = a.trunc * a.denom - k0
    length = math.ceil(span)
    dense = [Fraction(0)] * length
    for k, c in a.terms.items():
        dense[k - k0] = c
    return k0, dense, length


def invert(a: FracExpSeries) -> FracExpSeries:
    """Multiplicative inverse on the window inherited from ``a``."""
    k0, u, n = _unit_part(a)
    inv0 = 1 / u[0]
    v = [Fraction(0)] * n
    v[0] = inv0
    for k in range(1, n):
        s = Fraction(0)
        for j in range(1, k + 1):
            if u[j]:
                s += u[j] * v[k - j]
        v[k] = -s * inv0
    val = Fraction(k0, a.denom)
    return FracExpSeries(a.denom, {k - k0: c for k, c in enumerate(v)}, a.trunc - 2 * val)


def sqrt(a: FracExpSeries) -> FracExpSeries:
    """Square root with positive leading coefficient."""
    k0, u, n = _unit_part(a)
    if k0 % 2:
        raise NoRootError(f"leading exponent {Fraction(k0, a.denom)} has odd parity over denominator {a.denom}")
    r0 = _exact_sqrt(u[0])
    if r0 is None:
        raise NoRootError(f"leading coefficient {u[0]} is not the square of a rational")
    v = [Fraction(0)] * n
    v[0] = r0
    two_r0 = 2 * r0
    for k in range(1, n):
        s = u[k]
        for j in range(1, k):
            s -= v[j] * v[k - j]
        v[k] = s / two_r0
    half = k0 // 2
    return FracExpSeries(a.denom, {k + half: c for k, c in enumerate(v)},
                         a.trunc - Fraction(half, a.denom))


def pow_int(a: FracExpSeries, k: int) -> FracExpSeries:
    if k < 0:
        return pow_int(invert(a), -k)
    if k == 0:
        if a.floor is not None:
            raise SeriesError("power of a series truncated from below")
        return FracExpSeries(1, {0: Fraction(1)}, a.trunc - a.valuation())
    result = None
    base = a
    while k:
        if k & 1:
            result = base if result is None else mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def rescale(a: FracExpSeries, s) -> FracExpSeries:
    """Substitute ``q -> q**s`` for a rational ``s > 0``."""
    s = as_rational(s)
    if s <= 0:
        raise ValueError("rescale factor must be positive")
    d = a.denom * s.denominator
    terms = {k * s.numerator: c for k, c in a.terms.items()}
    return FracExpSeries(d, terms, a.trunc * s, None if a.floor is None else a.floor * s).normalized()


def coefficient(a: FracExpSeries, e) -> Fraction:
    return a.coefficient(e)


def one(trunc) -> FracExpSeries:
    return FracExpSeries(1, {0: Fraction(1)}, trunc)


def q_binomial(a, e, k: int, trunc) -> FracExpSeries:
    """``(1 + a q**e)**k`` for any integer ``k`` on the window below ``trunc``."""
    base = FracExpSeries.from_exponents([(0, 1), (e, a)], trunc)
    return pow_int(base, k)
