"""R(p,q)-deformed conformal generators of arbitrary weight and their brackets.

Conventions used throughout:

* ``x = delta * (n + 1)`` is the argument of the generator weight ``omega``.
* Diagonal factors such as ``p**N`` with ``N = z d/dz + delta`` are evaluated
  on the *output* monomial of the bracket (``convention="output"``); the
  ``"input"`` convention is kept only so that its failure can be shown.
* ``weight(n, m) = omega(n + m) / (omega(n) * omega(m))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateIndexError, DomainError
from .laurent import LadderOperator, compose, diagonal
from .rexpr import RFunction, builtin, family_closed_form
from .scalar import BaseParams, as_scalar, family_number, half_integer, half_power, pq_number, rational_power

CONVENTIONS = ("output", "input")


def _x(delta, n) -> Fraction:
    return half_integer(as_scalar(delta) * (n + 1))


def omega(r: RFunction, delta, n) -> Fraction:
    """Generator weight ``-(pq)**x R(p**x, q**x) / [x]`` with ``x = delta(n+1)``.

    At ``x = 0`` only the builtins with a rational limit are accepted: JS
    gives -1 and CJP gives +1.
    """
    x = _x(delta, n)
    if x == 0:
        if r.family == "JS":
            return Fraction(-1)
        if r.family == "CJP":
            return Fraction(1)
        raise DegenerateIndexError(
            f"omega is 0/0 at delta*(n+1) = 0 (delta={delta}, n={n}) and has no rational limit for {r.name}"
        )
    base = r.base
    return -half_power(base, "pq", x) * r.number(x) / pq_number(base, x)


def omega_literal(r: RFunction, delta, n) -> Fraction:
    """``(p - q) (p**-x - q**-x)**-1 R(p**x, q**x)`` evaluated as written."""
    x = _x(delta, n)
    base = r.base
    den = half_power(base, "p", -x) - half_power(base, "q", -x)
    if den == 0:
        raise DegenerateIndexError(f"omega prefactor is 0/0 at x = {x}")
    return (base.p - base.q) / den * r.number(x)


def weight(r: RFunction, delta, n, m) -> Fraction:
    return omega(r, delta, n + m) / (omega(r, delta, n) * omega(r, delta, m))


def generator(r: RFunction, delta, n) -> LadderOperator:
    """``L_n``: ``z**k -> omega_n [k + delta(n+1)] z**(k+n)``."""
    w = omega(r, delta, n)
    x = _x(delta, n)
    base = r.base
    return LadderOperator(n, lambda k: w * pq_number(base, k + x), f"L{n}")


def pq_generator(base: BaseParams, delta, n) -> LadderOperator:
    """The weight-free generator ``e_n`` with ``L_n = omega_n e_n``."""
    x = _x(delta, n)
    return LadderOperator(n, lambda k: pq_number(base, k + x), f"e{n}")


def generator_e1(r: RFunction, delta, n) -> LadderOperator:
    """``z**((1+n)(1-delta)) D_R z**(delta(1+n))`` built from the R-derivative on monomials."""
    base = r.base
    x = _x(delta, n)

    def coeff(k):
        e = k + x
        if e == 0:
            return Fraction(0)
        return -half_power(base, "pq", e) * r.number(e)

    return LadderOperator(n, coeff, f"L{n}[e1]")


def construction_report(r: RFunction, delta, n, ks=range(-4, 5)) -> list[dict]:
    """Compare the closed-form generator with the derivative pipeline degree by degree."""
    rows = []
    try:
        closed = generator(r, delta, n)
    except DomainError as exc:
        return [{"k": None, "status": "skipped", "reason": str(exc)}]
    pipeline = generator_e1(r, delta, n)
    for k in ks:
        try:
            a, b = closed.at(k), pipeline.at(k)
        except DomainError as exc:
            rows.append({"k": k, "status": "skipped", "reason": str(exc)})
            continue
        rows.append({"k": k, "closed": a, "pipeline": b, "residual": a - b, "ratio": (b / a) if a else None})
    return rows


# --- (P1) -------------------------------------------------------------------

def _require_bracket_indices(delta, n, m):
    if n == 0 or m == 0:
        raise DegenerateIndexError("[n]=0 denominator" if n == 0 else "[m]=0 denominator")
    if as_scalar(delta) == 1:
        raise DegenerateIndexError("delta = 1 makes both numerators vanish; use the delta1 module")


def plain_coeffs(base: BaseParams, delta, n, m) -> tuple[Fraction, Fraction]:
    """Weight-free structure coefficients ``X, Y``."""
    _require_bracket_indices(delta, n, m)
    d = as_scalar(delta)
    b = lambda y: pq_number(base, y)
    den = b(n) * b(m)
    x = half_power(base, "pq", n) * b(n * (d - 1)) * b(d * m) / den
    y = half_power(base, "pq", m) * b(m * (d - 1)) * b(d * n) / den
    return x, y


def _brace(base: BaseParams, x, y, n, m, N) -> Fraction:
    p_part = half_power(base, "p", N) * (x * half_power(base, "p", -n) - y * half_power(base, "p", -m))
    q_part = half_power(base, "q", N) * (x * half_power(base, "q", -n) - y * half_power(base, "q", -m))
    return (p_part - q_part) / (base.p - base.q)


def _dressed(inner: LadderOperator, fn, delta, convention: str) -> LadderOperator:
    """Diagonal ``N -> fn(N)`` applied after (output) or before (input) ``inner``."""
    d = as_scalar(delta)
    diag = diagonal(lambda j: fn(j + d), "brace")
    if convention == "output":
        return compose(diag, inner)
    if convention == "input":
        return compose(inner, diag)
    raise ValueError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")


@dataclass(frozen=True)
class BracketCoeffs:
    delta: Fraction
    n: int
    m: int
    x: Fraction
    y: Fraction
    x_tilde: Fraction
    y_tilde: Fraction
    rhs_operator: LadderOperator
    rhs_literal: LadderOperator


def bracket_coeffs(r: RFunction, delta, n, m, convention: str = "output") -> BracketCoeffs:
    """Coefficients and right-hand sides of the deformed bracket.

    ``rhs_operator`` uses the weight-free ``X, Y`` in the brace, which is the
    form that holds; ``rhs_literal`` uses ``X~, Y~`` and is off by ``weight``.
    """
    base = r.base
    x, y = plain_coeffs(base, delta, n, m)
    w = weight(r, delta, n, m)
    xt, yt = x * w, y * w
    target = generator(r, delta, n + m)
    rhs = _dressed(target, lambda N: _brace(base, x, y, n, m, N), delta, convention)
    rhs_lit = _dressed(target, lambda N: _brace(base, xt, yt, n, m, N), delta, convention)
    return BracketCoeffs(as_scalar(delta), n, m, x, y, xt, yt, rhs, rhs_lit)


def bracket_sides(r: RFunction, delta, n, m, k, convention: str = "output", literal: bool = False):
    """``(lhs, rhs)`` coefficients on ``z**k`` for the (P1) bracket."""
    c = bracket_coeffs(r, delta, n, m, convention)
    ln, lm = generator(r, delta, n), generator(r, delta, m)
    lhs = c.x_tilde * compose(ln, lm).at(k) - c.y_tilde * compose(lm, ln).at(k)
    rhs = (c.rhs_literal if literal else c.rhs_operator).at(k)
    return lhs, rhs


def check_bracket_P1(r: RFunction, delta, n, m, k, convention: str = "output", literal: bool = False) -> Fraction:
    lhs, rhs = bracket_sides(r, delta, n, m, k, convention, literal)
    return lhs - rhs


def pq_bracket_sides(base: BaseParams, delta, n, m, k, convention: str = "output"):
    """The same bracket for the weight-free generators ``e_n`` with ``X, Y``."""
    x, y = plain_coeffs(base, delta, n, m)
    en, em = pq_generator(base, delta, n), pq_generator(base, delta, m)
    lhs = x * compose(en, em).at(k) - y * compose(em, en).at(k)
    rhs = _dressed(pq_generator(base, delta, n + m), lambda N: _brace(base, x, y, n, m, N), delta, convention).at(k)
    return lhs, rhs


def check_pq_bracket(base: BaseParams, delta, n, m, k, convention: str = "output") -> Fraction:
    lhs, rhs = pq_bracket_sides(base, delta, n, m, k, convention)
    return lhs - rhs


# --- Witt form (e4)/(5) -----------------------------------------------------

def _ratio(base: BaseParams, a, b, m) -> Fraction:
    """``[a m] / [b m]``, read as 1 at ``m = 0``."""
    if m == 0:
        return Fraction(1)
    den = pq_number(base, b * m)
    if den == 0:
        raise DegenerateIndexError(f"[{b * m}] = 0 in a structure-coefficient denominator")
    return pq_number(base, a * m) / den


def rho_prime(base: BaseParams, delta, n, m) -> Fraction:
    """``[m(delta-1)][delta n] / ([n(delta-1)][delta m])``."""
    d = as_scalar(delta)
    if d == 1 and (n != 0 or m != 0):
        raise DegenerateIndexError("delta = 1 makes [n(delta-1)] vanish")
    return _ratio(base, d - 1, d, m) / _ratio(base, d - 1, d, n)


def chi(base: BaseParams, delta, n, m, N) -> Fraction:
    rp = rho_prime(base, delta, n, m)
    p_part = half_power(base, "p", N) * (half_power(base, "p", -n) - rp * half_power(base, "q", m - n) * half_power(base, "p", -n))
    q_part = half_power(base, "q", N) * (half_power(base, "q", -n) - rp * half_power(base, "p", m - n) * half_power(base, "q", -n))
    den = p_part - q_part
    if den == 0:
        raise DegenerateIndexError(f"chi_({n},{m}) denominator vanishes at N = {N}")
    return 1 / den


def witt_coeffs(r: RFunction, delta, n, m, N, literal: bool = False) -> tuple[Fraction, Fraction]:
    """``(X^, Y^)`` at diagonal eigenvalue ``N``; ``literal`` drops the weight ratio."""
    if n == m:
        raise DegenerateIndexError("n = m: chi denominators vanish identically")
    base = r.base
    pref = (base.p - base.q) * r.number(n - m)
    if not literal:
        pref *= weight(r, delta, n, m)
    return pref * chi(base, delta, n, m, N), pref * chi(base.swapped(), delta, m, n, N)


def witt_bracket(r: RFunction, delta, a: LadderOperator, b: LadderOperator, n, m, literal: bool = False) -> LadderOperator:
    """``X^ a b - Y^ b a`` with ``X^, Y^`` read at the output degree."""
    d = as_scalar(delta)
    ab, ba = compose(a, b), compose(b, a)
    shift = ab.shift

    def coeff(k):
        first, second = ab.at(k), ba.at(k)
        if not first and not second:
            return Fraction(0)
        xh, yh = witt_coeffs(r, delta, n, m, k + shift + d, literal)
        return xh * first - yh * second

    return LadderOperator(shift, coeff, f"[{a.name},{b.name}]")


def check_witt_form(r: RFunction, delta, n, m, k, literal: bool = False) -> Fraction:
    if n == m:
        raise DegenerateIndexError("n = m: chi denominators vanish identically")
    _require_bracket_indices(delta, n, m)
    ln, lm = generator(r, delta, n), generator(r, delta, m)
    lhs = witt_bracket(r, delta, ln, lm, n, m, literal).at(k)
    rhs = r.number(n - m) * generator(r, delta, n + m).at(k)
    return lhs - rhs


# --- lambda / theta ----------------------------------------------------------

def lambda_theta(base: BaseParams) -> tuple[Fraction, Fraction]:
    if not base.has_roots:
        raise DomainError("lambda and theta need rational square roots s, t")
    return 1 / (base.s * base.t), base.s / base.t


def theta_number(theta: Fraction, x) -> Fraction:
    x = half_integer(x)
    if theta == 1:
        raise DomainError("[x]_theta is undefined at theta = 1")
    if x.denominator != 1:
        raise DomainError("[x]_theta is evaluated at integer x only")
    return (theta ** x.numerator - theta ** -x.numerator) / (theta - 1 / theta)


def e12_residual(base: BaseParams, x) -> Fraction:
    lam, theta = lambda_theta(base)
    return pq_number(base, x) - lam ** (1 - x) * theta_number(theta, x)


def item7_report(base: BaseParams, r: RFunction, delta, n) -> dict:
    """Prefactor ``T_n(lambda) = lambda**(n-1-delta(2n+1)) R(lambda**-x, lambda**-x)``.

    Both arguments of R coincide as printed, so any R vanishing on the
    diagonal (JS among them) gives a zero generator.
    """
    lam, theta = lambda_theta(base)
    x = _x(delta, n)
    if x.denominator != 1:
        raise DomainError("item-7 prefactor is evaluated at integer delta*(n+1) only")
    arg = lam ** -int(x)
    e = n - 1 - as_scalar(delta) * (2 * n + 1)
    if e.denominator != 1:
        raise DomainError("item-7 prefactor exponent is not an integer")
    t_value = lam ** int(e) * r(arg, arg)
    return {"lambda": lam, "theta": theta, "T": t_value, "vanishes": t_value == 0}


# --- special cases -----------------------------------------------------------

def special_prefactor(r: RFunction, delta, n) -> Fraction:
    """The generator weight as printed for each named family."""
    x = _x(delta, n)
    base = r.base
    if r.family == "CJP":
        return Fraction(1)
    if r.family == "HB":
        lift = base.pq * half_power(base, "q", base.nu) / half_power(base, "p", base.mu)
        return -base.g * rational_power(lift, x) * family_number(base, "Quesne", x) / pq_number(base, x)
    return -half_power(base, "pq", x) * family_closed_form(r, x) / pq_number(base, x)


def special_xtilde(r: RFunction, delta, n, m) -> Fraction:
    """X~ as printed for each named family (HB keeps its printed ``(q^nu/p^mu)^(n delta)``)."""
    base = r.base
    d = as_scalar(delta)
    x, _ = plain_coeffs(base, delta, n, m)
    core = -half_power(base, "pq", -d) * x
    if r.family == "JS":
        return core
    fam = "Quesne" if r.family == "HB" else r.family
    if fam == "CJP":
        raise DomainError("no printed X~ for this choice")
    f = lambda y: family_number(base, fam, y)
    b = lambda y: pq_number(base, y)
    xs = d * (n + m + 1), d * (n + 1), d * (m + 1)
    ratio = f(xs[0]) / b(xs[0]) * b(xs[1]) * b(xs[2]) / (f(xs[1]) * f(xs[2]))
    if r.family == "HB":
        lift = half_power(base, "q", base.nu) / half_power(base, "p", base.mu)
        ratio *= rational_power(lift, n * d) / base.g
    return core * ratio


def special_case_report(r: RFunction, delta, n, m) -> dict:
    generic = bracket_coeffs(r, delta, n, m).x_tilde
    printed = special_xtilde(r, delta, n, m)
    return {"generic": generic, "printed": printed, "match": generic == printed}


# --- classical limit ---------------------------------------------------------

def classical_limit_probe(family: str, n: int, m: int, epsilon) -> Fraction:
    """``R(p**(n-m), q**(n-m))`` at ``p = 1``, ``q = 1 - epsilon``."""
    epsilon = as_scalar(epsilon)
    if not 0 < epsilon < Fraction(1, 2):
        raise DomainError("classical-limit probe needs 0 < epsilon < 1/2")
    base = BaseParams(p=1, q=1 - epsilon)
    return builtin(family, base).number(n - m)


def classical_limit_bound(n: int, m: int, epsilon) -> Fraction:
    return (n - m) ** 2 * as_scalar(epsilon)
