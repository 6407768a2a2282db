"""Weight-two sector: the energy-momentum brackets and their central-term recursions.

The generators are ``z**-(n+1) D (z**(2n+2) phi)``; ``N2`` is read on the
output monomial.  A central sequence is a finite map ``n -> c_n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Union

from .errors import DomainError
from .laurent import LadderOperator, LaurentPoly, compose
from .rexpr import RFunction
from .scalar import BaseParams, as_scalar, half_power, pq_number
from .virasoro import generator, omega, pq_generator

VARIANTS = ("pq", "rpq")


def _sum_pow(base: BaseParams, e) -> Fraction:
    return half_power(base, "p", e) + half_power(base, "q", e)


def _x2y2(base: BaseParams, n, m) -> tuple[Fraction, Fraction]:
    x2 = half_power(base, "pq", n) * _sum_pow(base, m)
    y2 = half_power(base, "pq", m) * _sum_pow(base, n)
    return x2, y2


def _rhs_prefactor(base: BaseParams, n, m, N2) -> Fraction:
    return half_power(base, "pq", n) * pq_number(base, m - n) * _sum_pow(base, N2)


def emt_bracket_sides(base: BaseParams, n, m, k) -> tuple[Fraction, Fraction]:
    """Both sides of the (p,q) weight-two bracket on ``z**k``."""
    x2, y2 = _x2y2(base, n, m)
    ln, lm = pq_generator(base, 2, n), pq_generator(base, 2, m)
    lhs = x2 * compose(ln, lm).at(k) - y2 * compose(lm, ln).at(k)
    N2 = k + n + m + 2
    rhs = _rhs_prefactor(base, n, m, N2) * pq_generator(base, 2, n + m).at(k)
    return lhs, rhs


def emt_bracket_check(base: BaseParams, n, m, k) -> Fraction:
    lhs, rhs = emt_bracket_sides(base, n, m, k)
    return lhs - rhs


def k_nm(r: RFunction, n, m) -> Fraction:
    return omega(r, 2, n + m) / (omega(r, 2, n) * omega(r, 2, m))


def emt_rpq_bracket_sides(r: RFunction, n, m, k, literal: bool = False) -> tuple[Fraction, Fraction]:
    """Weighted coefficients ``K_nm x2, K_nm y2``.

    The default right side carries no ``K_nm``; ``literal=True`` keeps the
    printed extra ``K_nm`` factor, which only balances when ``K_nm = 1``.
    """
    base = r.base
    K = k_nm(r, n, m)
    x2, y2 = _x2y2(base, n, m)
    ln, lm = generator(r, 2, n), generator(r, 2, m)
    lhs = K * (x2 * compose(ln, lm).at(k) - y2 * compose(lm, ln).at(k))
    pref = _rhs_prefactor(base, n, m, k + n + m + 2)
    if literal:
        pref *= K
    return lhs, pref * generator(r, 2, n + m).at(k)


def emt_rpq_bracket_check(r: RFunction, n, m, k, literal: bool = False) -> Fraction:
    lhs, rhs = emt_rpq_bracket_sides(r, n, m, k, literal)
    return lhs - rhs


# --- central recursions ----------------------------------------------------------

@dataclass(frozen=True)
class EmtCoefficients:
    nu: Fraction
    mu: Fraction
    alpha: Fraction
    variant: str


def emt_coefficients(variant: str, source: Union[BaseParams, RFunction], n, m) -> EmtCoefficients:
    """``nu``, ``mu``, ``alpha`` of the central recursion.

    ``pq`` takes a BaseParams and uses the printed coefficients; ``rpq`` takes
    an RFunction and adds the weight-two generator weights.
    """
    if variant == "pq":
        base = source.base if isinstance(source, RFunction) else source
        nu = half_power(base, "pq", n) * _sum_pow(base, m) * pq_number(base, 2 * n + m)
        mu = half_power(base, "pq", m - n) * _sum_pow(base, n) * pq_number(base, 2 * m + n)
        alpha = pq_number(base, m - n) * _sum_pow(base, m + n)
        return EmtCoefficients(nu, mu, alpha, variant)
    if variant == "rpq":
        if not isinstance(source, RFunction):
            raise TypeError("the rpq variant needs an RFunction")
        base = source.base
        nu = half_power(base, "pq", n) * _sum_pow(base, m) * pq_number(base, 2 * n + m) * omega(source, 2, n)
        mu = half_power(base, "pq", m) * _sum_pow(base, n) * pq_number(base, 2 * m + n) * omega(source, 2, m)
        alpha = half_power(base, "pq", n) * pq_number(base, m - n) * _sum_pow(base, m + n)
        return EmtCoefficients(nu, mu, alpha, variant)
    raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")


@dataclass(frozen=True)
class CentralSequence:
    values: Mapping[int, Fraction]
    c1: Fraction = Fraction(0)
    c2_hat: Fraction = Fraction(0)
    beta: Fraction = Fraction(0)

    def __getitem__(self, n) -> Fraction:
        try:
            return self.values[n]
        except KeyError:
            raise DomainError(f"central sequence has no value at n = {n}") from None

    def shifted(self, base: BaseParams, beta=None) -> "CentralSequence":
        """``c_n + beta [2n]/[2]``; ``beta`` defaults to ``-c_1``."""
        beta = -self[1] if beta is None else as_scalar(beta)
        two = pq_number(base, 2)
        vals = {n: c + beta * pq_number(base, 2 * n) / two for n, c in self.values.items()}
        return CentralSequence(vals, self.values.get(1, Fraction(0)), vals.get(2, Fraction(0)), beta)

    def invariant_violations(self) -> list[str]:
        out = []
        if self.values.get(0, 0) != 0:
            out.append("c_0 != 0")
        for n, c in sorted(self.values.items()):
            if n > 0 and -n in self.values and self.values[-n] != c:
                out.append(f"c_{n} != c_{-n}")
        return out


def sequence(fn, indices) -> CentralSequence:
    return CentralSequence({n: as_scalar(fn(n)) for n in indices})


def recursion_residual(variant: str, source, candidate: CentralSequence, n, m) -> Fraction:
    """``nu c_m - mu c_n - alpha c_(n+m)``."""
    co = emt_coefficients(variant, source, n, m)
    return co.nu * candidate[m] - co.mu * candidate[n] - co.alpha * candidate[n + m]


def forced_ratio(variant: str, source, n) -> Fraction:
    """``c_-n / c_n`` forced by the ``(n, -n)`` instance (where ``c_0 = 0``)."""
    co = emt_coefficients(variant, source, n, -n)
    if co.nu == 0:
        raise DomainError(f"nu vanishes at (n, m) = ({n}, {-n})")
    return co.mu / co.nu


def two_term_residual(base: BaseParams, seq: CentralSequence, m) -> Fraction:
    """``(p^m + q^m)[m-2] c_m - (pq)^-2 (p^(m-1) + q^(m-1))[m+1] c_(m-1)``."""
    left = _sum_pow(base, m) * pq_number(base, m - 2) * seq[m]
    right = half_power(base, "pq", -2) * _sum_pow(base, m - 1) * pq_number(base, m + 1) * seq[m - 1]
    return left - right


def solve_two_term(base: BaseParams, c2_hat, n_max: int) -> CentralSequence:
    c2_hat = as_scalar(c2_hat)
    vals = {1: Fraction(0), 2: c2_hat}
    for m in range(3, n_max + 1):
        num = half_power(base, "pq", -2) * _sum_pow(base, m - 1) * pq_number(base, m + 1) * vals[m - 1]
        vals[m] = num / (_sum_pow(base, m) * pq_number(base, m - 2))
    return CentralSequence(vals, Fraction(0), c2_hat, Fraction(0))


def exponent_candidate(base: BaseParams, a, indices) -> CentralSequence:
    """``(pq)^(a m) [m-1][m][m+1] / (p^m + q^m)``."""
    def c(m):
        return (half_power(base, "pq", a * m) * pq_number(base, m - 1) * pq_number(base, m)
                * pq_number(base, m + 1) / _sum_pow(base, m))
    return sequence(c, indices)


# --- infinitesimal form ----------------------------------------------------------

def _placeholder_tensor(lo=-4, hi=4) -> LaurentPoly:
    return LaurentPoly({d: Fraction(1, d * d + 2 * d + 5) for d in range(lo, hi + 1)})


def _placeholder_sequence(lo=-8, hi=8) -> CentralSequence:
    return sequence(lambda j: Fraction(j * j + 3 * j + 1, j * j + 7), range(lo, hi + 1))


@dataclass
class InfinitesimalReport:
    n: int
    m: int
    operator_residual: LaurentPoly
    central_constraint: Fraction
    recursion_form: Fraction
    match: bool
    notes: list = field(default_factory=list)


def emt_infinitesimal_consistency(r: RFunction, delta2_only: bool, n, m,
                                  candidate: Optional[CentralSequence] = None,
                                  tensor: Optional[LaurentPoly] = None,
                                  literal: bool = True) -> InfinitesimalReport:
    """Expand ``[delta_m, delta_n]`` on a generic tensor.

    ``delta_n T = L_n T + C_n z**(n-2)``, and the second variation acts
    through the outer generator: ``delta_m delta_n T = L_n (delta_m T)``.
    The ``z**(n+m-2)`` part left after the operator bracket cancels, divided
    by ``K_nm``, is the induced scalar constraint.  ``delta2_only`` drops the
    tensor and keeps the inhomogeneous terms only.

    With ``literal`` the right side keeps the extra ``K_nm`` of the printed
    bracket; that is the reading under which the constraint equals the rpq
    recursion, at the price of a nonzero operator remainder when ``K_nm != 1``.
    """
    base = r.base
    C = candidate if candidate is not None else _placeholder_sequence()
    T = LaurentPoly() if delta2_only else (tensor if tensor is not None else _placeholder_tensor())
    K = k_nm(r, n, m)
    rk = K if literal else Fraction(1)
    x2, y2 = _x2y2(base, n, m)
    X, Y = K * x2, K * y2
    ln, lm, lnm = generator(r, 2, n), generator(r, 2, m), generator(r, 2, n + m)

    def delta(j, op: LadderOperator, poly: LaurentPoly) -> LaurentPoly:
        return op(poly) + LaurentPoly.monomial(j - 2, C[j])

    # delta_m delta_n T = L_n(delta_m T); delta_n delta_m T = L_m(delta_n T)
    mn = ln(delta(m, lm, T))
    nm = lm(delta(n, ln, T))
    lhs = X * mn - Y * nm
    out = delta(n + m, lnm, T)
    rhs = LaurentPoly({d: rk * _rhs_prefactor(base, n, m, d + 2) * c for d, c in out.items()})
    full = lhs - rhs
    target = n + m - 2

    # operator-only part: the same expansion with the central terms removed
    op_part = X * ln(lm(T)) - Y * lm(ln(T)) - LaurentPoly(
        {d: rk * _rhs_prefactor(base, n, m, d + 2) * c for d, c in lnm(T).items()})
    central = (full.coeff(target) - op_part.coeff(target)) / K
    rec = recursion_residual("rpq", r, C, n, m)
    rep = InfinitesimalReport(n, m, op_part, central, rec, central == rec)
    if not op_part.is_zero():
        rep.notes.append("operator bracket leaves a nonzero remainder")
    return rep
