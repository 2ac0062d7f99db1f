"""Rank-two partition functions of P^2, P(1,2,2), P(2,2,2) and ADE generating series.

The vector-bundle partition functions are expansions in ``q**-1``: the
``n``-th summand sits at exponent ``prefactor + shift - n``.  Summing
``n = 1..N`` gives a series that is exact from its lowest computed exponent
(recorded as ``floor``) up to the would-be ``n = 0`` slot (``trunc``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .number_theory import divisor_count, eta_power, hurwitz, theta_block
from .series import FracExpSeries, as_rational, mul, rescale

SURFACES = ("p2", "p122", "p222")


class PreconditionError(ValueError):
    """Arguments outside an identity's or formula's domain."""


# -- building blocks ----------------------------------------------------------


def odd_coefficient(n: int) -> Fraction:
    return 3 * hurwitz(4 * n - 1)


def even_coefficient(n: int, drop_divisor_term: bool = False) -> Fraction:
    c = 3 * hurwitz(4 * n)
    if not drop_divisor_term:
        c -= Fraction(3 * divisor_count(n), 2)
    return c


def _descending_sum(coeff, lead, step, N: int) -> FracExpSeries:
    """``sum_{n=1..N} coeff(n) q^(lead - step*n)`` with its summed window."""
    lead, step = as_rational(lead), as_rational(step)
    items = [(lead - step * n, coeff(n)) for n in range(1, N + 1)]
    return FracExpSeries.from_exponents(items, trunc=lead, floor=lead - step * N)


def odd_sum(N: int, step=1) -> FracExpSeries:
    """``sum 3H(4n-1) q^(step*(1/4 - n))``."""
    step = as_rational(step)
    return _descending_sum(odd_coefficient, step / 4, step, N)


def even_sum(N: int, step=1, drop_divisor_term: bool = False) -> FracExpSeries:
    """``sum 3(H(4n) - sigma_0(n)/2) q^(-step*n)``."""
    return _descending_sum(lambda n: even_coefficient(n, drop_divisor_term), 0, step, N)


def _check_order(N: int):
    if N < 1:
        raise PreconditionError("order must be at least 1")


# -- P^2 -------------------------------------------------------------------------


def p2_prefactor(c1: int) -> Fraction:
    return Fraction(c1 * c1, 4) + Fraction(3 * c1, 2) + 2


def z_vb_p2_odd(c1: int, N: int) -> FracExpSeries:
    _check_order(N)
    return odd_sum(N).shift(p2_prefactor(c1))


def z_vb_p2_even(c1: int, N: int, drop_divisor_term: bool = False) -> FracExpSeries:
    _check_order(N)
    return even_sum(N, drop_divisor_term=drop_divisor_term).shift(p2_prefactor(c1))


def z_vb_p2(c1: int, N: int, drop_divisor_term: bool = False) -> FracExpSeries:
    """Vector-bundle partition function of P^2, branch chosen by the parity of ``c1``."""
    if c1 % 2:
        return z_vb_p2_odd(c1, N)
    return z_vb_p2_even(c1, N, drop_divisor_term)


def hat_normalization(trunc) -> FracExpSeries:
    """``q^(1/8) eta(q)^-3`` below ``trunc``."""
    return eta_power(-3, as_rational(trunc) - Fraction(1, 8)).shift(Fraction(1, 8))


def z_hat_p2(c1: int, N: int, drop_divisor_term: bool = False) -> FracExpSeries:
    """``q^(1/8) eta^-3`` times the ``N``-term partial sum of :func:`z_vb_p2`.

    The partial sum is multiplied as an exact Laurent polynomial; the full
    ``q**-1`` expansion has no well-defined product with an ascending series.
    """
    poly = z_vb_p2(c1, N, drop_divisor_term).drop_floor()
    return mul(poly, hat_normalization(poly.trunc - poly.valuation()))


# -- P(1,2,2) ------------------------------------------------------------------------


def p122_prefactor(c1: int) -> Fraction:
    base = Fraction(c1 * c1, 8) + Fraction(3 * c1, 2)
    return base + (Fraction(17, 4) if c1 % 2 else 4)


def z_vb_p122(c1: int, N: int, drop_divisor_term: bool = False) -> FracExpSeries:
    _check_order(N)
    e0 = p122_prefactor(c1)
    if c1 % 2:
        body = _descending_sum(lambda n: hurwitz(8 * n - 1), Fraction(1, 8), 1, N)
        return body.shift(e0)
    # odd-type sum in q^(1/2 - 2n), even-type sum in q^(-2n)
    odd_part = odd_sum(N, step=2)
    even_part = even_sum(N, step=2, drop_divisor_term=drop_divisor_term)
    if c1 % 4 == 0:
        body = odd_part.shift(Fraction(1, 2)) + even_part
    else:
        body = odd_part + even_part.shift(Fraction(1, 2))
    return body.shift(e0)


# -- P(2,2,2) ----------------------------------------------------------------------


def p222_prefactor(c1: int, lam: int) -> Fraction:
    if lam == 0:
        return Fraction(c1 * c1, 16) + Fraction(3 * c1, 4) + 2
    s = Fraction(c1, 2) + 1
    return s * s / 4 + Fraction(3, 2) * s + 2


def z_vb_p222(c1: int, lam: int, N: int, drop_divisor_term: bool = False) -> FracExpSeries:
    """P(2,2,2) partition function on inertia component ``lam`` (formulas as printed)."""
    _check_order(N)
    if c1 % 2:
        raise PreconditionError("P(2,2,2) requires an even first Chern class")
    if lam not in (0, 1):
        raise PreconditionError("lambda must be 0 or 1")
    # lam=0: even-type sum iff c1 = 0 mod 4; lam=1: the opposite
    use_even = (c1 % 4 == 0) == (lam == 0)
    body = even_sum(N, drop_divisor_term=drop_divisor_term) if use_even else odd_sum(N)
    return body.shift(p222_prefactor(c1, lam))


def z_so3_p2(N: int, drop_divisor_term: bool = False) -> FracExpSeries:
    """SO(3) partition function of P^2 assembled from the two P(2,2,2) components."""
    a = z_vb_p222(0, 0, N, drop_divisor_term).shift(-2)
    b = z_vb_p222(0, 1, N, drop_divisor_term).shift(Fraction(-15, 4))
    return (a + b).scale(Fraction(1, 2))


# -- identity checks ----------------------------------------------------------------


@dataclass
class IdentityReport:
    identity: str
    params: dict
    passed: bool
    differences: list = field(default_factory=list)
    lhs: FracExpSeries | None = None
    rhs: FracExpSeries | None = None

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "params": self.params,
            "pass": self.passed,
            "differences": [
                {"exponent": str(e), "lhs": str(a), "rhs": str(b)} for e, a, b in self.differences
            ],
        }


def _compare(name: str, params: dict, lhs: FracExpSeries, rhs: FracExpSeries) -> IdentityReport:
    diffs = lhs.differences(rhs)
    same_window = lhs.trunc == rhs.trunc and lhs.floor == rhs.floor
    return IdentityReport(name, params, not diffs and same_window, diffs, lhs, rhs)


def verify_p122_identity(c1: int, N: int) -> IdentityReport:
    """``Z^{P(1,2,2)}(q^(1/2))`` against the shifted odd and even P^2 series."""
    if c1 % 4:
        raise PreconditionError("the P(1,2,2) identity needs c1 = 0 mod 4")
    _check_order(N)
    lhs = rescale(z_vb_p122(c1, N), Fraction(1, 2))
    a = -Fraction(3 * c1 * c1, 16) - Fraction(3 * c1, 4)
    rhs = z_vb_p2_odd(c1, N).shift(a + Fraction(1, 4)) + z_vb_p2_even(c1, N).shift(a)
    return _compare("p122-p2", {"c1": c1, "order": N}, lhs, rhs)


def verify_p222_shift(c1: int, lam: int, N: int) -> IdentityReport:
    """``Z^{P(2,2,2)}_{c1,lam} = Z^{P^2}_{c1/2 + lam}``."""
    lhs = z_vb_p222(c1, lam, N)
    rhs = z_vb_p2(c1 // 2 + lam, N)
    return _compare("p222-shift", {"c1": c1, "lambda": lam, "order": N}, lhs, rhs)


def verify_so3_assembly(N: int) -> IdentityReport:
    """SO(3) combination against a direct Hurwitz-number build of the same sum."""
    _check_order(N)
    items = []
    for n in range(1, N + 1):
        items.append((-n, Fraction(1, 2) * (3 * hurwitz(4 * n) - Fraction(3, 2) * divisor_count(n))))
        items.append((Fraction(1, 4) - n, Fraction(3, 2) * hurwitz(4 * n - 1)))
    rhs = FracExpSeries.from_exponents(items, trunc=0, floor=Fraction(1, 4) - N)
    return _compare("so3-assembly", {"order": N}, z_so3_p2(N), rhs)


# -- ADE surfaces ------------------------------------------------------------------


@dataclass(frozen=True)
class AdeSurface:
    """Resolved Euler characteristic plus the ranks ``n_i`` of its ``A_{n_i}`` points."""

    chi_resolved: int
    singularities: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "singularities", tuple(self.singularities))
        if any(n < 1 for n in self.singularities):
            raise ValueError("A_n singularities need n >= 1")


def toda_series(surface: AdeSurface, N: int) -> FracExpSeries:
    """``eta^-chi * prod Theta_{n_i}``; ``chi(Hilb^n)`` sits at ``q^(n - chi/24)``."""
    _check_order(N)
    chi = surface.chi_resolved
    result = eta_power(-chi, N + 1 - Fraction(chi, 24))
    for n in surface.singularities:
        result = mul(result, theta_block(n, N))
    return result


def hilbert_euler_characteristics(surface: AdeSurface, N: int) -> list[Fraction]:
    series = toda_series(surface, N)
    shift = Fraction(surface.chi_resolved, 24)
    return [series.coefficient(n - shift) for n in range(N + 1)]


ADE_DEGREE_ONE_INTEGRAL = 1


def ade_chern_integral(ct2, ct1_c1, ct1_sq) -> Fraction:
    """Degree-two A_1 contribution ``ct2 + 14 ct1.c1 + 4 ct1^2`` (without the dimension prefactor)."""
    return as_rational(ct2) + 14 * as_rational(ct1_c1) + 4 * as_rational(ct1_sq)


def ade_integrand_degree2() -> dict[str, Fraction]:
    """Degree-two part of the A_1 Chern-class ratio, expanded exactly.

    Keys name the degree-two monomials ``ct2``, ``ct1_c1``, ``ct1_sq`` and
    ``c1_sq`` in the Chern classes of the resolution and of the stack.
    """
    # graded monomials (a, b, c) = ct1^a c1^b ct2^c, weight a + b + 2c
    def trunc(p):
        return {k: v for k, v in p.items() if v and k[0] + k[1] + 2 * k[2] <= 2}

    def pmul(p, r):
        out = {}
        for k1, v1 in p.items():
            for k2, v2 in r.items():
                k = (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2])
                out[k] = out.get(k, Fraction(0)) + v1 * v2
        return trunc(out)

    def padd(*ps):
        out = {}
        for p in ps:
            for k, v in p.items():
                out[k] = out.get(k, Fraction(0)) + v
        return trunc(out)

    def pscale(p, c):
        return {k: c * v for k, v in p.items()}

    one = {(0, 0, 0): Fraction(1)}
    ct1 = {(1, 0, 0): Fraction(1)}
    c1 = {(0, 1, 0): Fraction(1)}
    ct2 = {(0, 0, 1): Fraction(1)}

    # Chern classes of T(S~) (x) K^2 and of T(S~) (x) K^-1
    e1 = padd(ct1, pscale(c1, -4))
    e2 = padd(ct2, pscale(pmul(ct1, c1), -2), pscale(pmul(c1, c1), 4))
    f1 = padd(ct1, pscale(c1, 2))
    f2 = padd(ct2, pmul(ct1, c1), pmul(c1, c1))

    num = pmul(
        padd(one, pscale(ct1, -1), ct2),
        pscale(padd(one, pscale(e1, Fraction(1, 2)), pscale(e2, Fraction(1, 4))), 4),
    )
    den = padd(one, pscale(f1, -1), f2)
    nil = padd(den, pscale(one, -1))
    inv = padd(one, pscale(nil, -1), pmul(nil, nil))
    top = {k: v for k, v in pmul(num, inv).items() if k[0] + k[1] + 2 * k[2] == 2}
    names = {(0, 0, 1): "ct2", (1, 1, 0): "ct1_c1", (2, 0, 0): "ct1_sq", (0, 2, 0): "c1_sq"}
    return {names[k]: top.get(k, Fraction(0)) for k in names}


# -- quintic surface ------------------------------------------------------------------


def quintic_invariants(c1_sq: int = 5, c2: int = 55) -> tuple[int, int, int]:
    """``(g_C, p_g, h^0(K^2))`` for a canonical curve on a surface with the given Chern numbers."""
    g_c = 1 + c1_sq
    p_g = Fraction(c1_sq + c2, 12) - 1
    if p_g.denominator != 1:
        raise ValueError("Chern numbers violate Noether's formula integrality")
    p_g = int(p_g)
    return g_c, p_g, p_g + g_c
