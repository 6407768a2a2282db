"""The weight-one algebra: rescaled generators, su(1,1) relations, the deformed current and alpha sums.

All diagonal factors (``q**(N1 - m)``, ``p**(N1 - m) q**(n - N1)``,
``(q/p)**N1``) are read on the output monomial, with ``N1 = z d/dz + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DegenerateIndexError, DomainError
from .laurent import LadderOperator, compose
from .rexpr import RFunction
from .scalar import BaseParams, as_scalar, family_number, half_power, pq_number
from .virasoro import generator, lambda_theta, omega, theta_number

VARIANTS = ("plain", "tilde", "t", "scaled")
ALPHA_FAMILIES = ("JS", "CJ", "Quesne", "HN")


def delta1_generator(r: RFunction, n: int, variant: str = "plain") -> LadderOperator:
    base = r.base
    plain = generator(r, 1, n)
    if variant == "plain":
        return plain
    tilde = lambda k: half_power(base, "q", -(k + n + 1)) * plain.at(k)
    if variant == "tilde":
        return LadderOperator(n, tilde, f"Lt{n}")
    if variant == "t":
        ratio = base.q / base.p
        return LadderOperator(n, lambda k: ratio ** (k + n + 1) * tilde(k), f"t{n}")
    if variant == "scaled":
        lam, _ = lambda_theta(base)
        return LadderOperator(n, lambda k: tilde(k) / lam, f"Ls{n}")
    raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")


def chi_hat(r: RFunction, n: int, m: int) -> Fraction:
    """``R(p^(n-m), q^(n-m)) / [m-n]`` times the weight ratio."""
    if n == m:
        raise DegenerateIndexError("n = m: [m-n] = 0")
    w = omega(r, 1, n + m) / (omega(r, 1, n) * omega(r, 1, m))
    return r.number(n - m) / pq_number(r.base, m - n) * w


def k1(r: RFunction, n: int, m: int) -> Fraction:
    return omega(r, 1, n) * omega(r, 1, m) / omega(r, 1, n + m)


def _pair(a: LadderOperator, b: LadderOperator, k) -> tuple[Fraction, Fraction]:
    """``(a b)(k)`` and ``(b a)(k)``."""
    return compose(a, b).at(k), compose(b, a).at(k)


def delta1_bracket_check(r: RFunction, n: int, m: int, k) -> Fraction:
    """``x^ L_n L_m - y^ L_m L_n - R(p^(n-m),q^(n-m)) q^(N1-m) L_(n+m)`` on ``z**k``."""
    c = chi_hat(r, n, m)
    x, y = c, half_power(r.base, "p", m - n) * c
    ln, lm = delta1_generator(r, n), delta1_generator(r, m)
    nm, mn = _pair(ln, lm, k)
    N1 = k + n + m + 1
    rhs = r.number(n - m) * half_power(r.base, "q", N1 - m) * delta1_generator(r, n + m).at(k)
    return x * nm - y * mn - rhs


def delta1_bracket_sides(r: RFunction, n: int, m: int, k) -> tuple[Fraction, Fraction]:
    residual = delta1_bracket_check(r, n, m, k)
    N1 = k + n + m + 1
    rhs = r.number(n - m) * half_power(r.base, "q", N1 - m) * delta1_generator(r, n + m).at(k)
    return residual + rhs, rhs


def tilde_coeffs(r: RFunction, n: int, m: int, literal: bool = False) -> tuple[Fraction, Fraction]:
    """``(x, y)`` of the xy-form bracket.

    ``literal`` uses ``chi_hat(m, n)`` in ``y`` as printed; the default uses
    ``chi_hat(n, m)``, which is what the su(1,1) specializations use.
    """
    base = r.base
    x = half_power(base, "q", m - n) * chi_hat(r, n, m)
    y = half_power(base, "p", m - n) * chi_hat(r, *((m, n) if literal else (n, m)))
    return x, y


def tilde_bracket_check(r: RFunction, n: int, m: int, k, form: str = "d15", literal: bool = False) -> Fraction:
    """Residual of the tilde-generator bracket on ``z**k``.

    ``form="d15"``: ``x Lt_n Lt_m - y Lt_m Lt_n - R(p^(n-m),q^(n-m)) Lt_(n+m)``.
    ``form="d17"``: ``[Lt_n, Lt_m] - [m-n] p^(N1-m) q^(n-N1) K1_nm Lt_(n+m)``.
    """
    if n == m:
        raise DegenerateIndexError("n = m: [m-n] = 0")
    base = r.base
    ln, lm = delta1_generator(r, n, "tilde"), delta1_generator(r, m, "tilde")
    nm, mn = _pair(ln, lm, k)
    target = delta1_generator(r, n + m, "tilde").at(k)
    if form == "d15":
        x, y = tilde_coeffs(r, n, m, literal)
        return x * nm - y * mn - r.number(n - m) * target
    if form == "d17":
        N1 = k + n + m + 1
        pref = pq_number(base, m - n) * half_power(base, "p", N1 - m) * half_power(base, "q", n - N1) * k1(r, n, m)
        return nm - mn - pref * target
    raise ValueError(f"unknown form {form!r}")


def su11_check(r: RFunction, relation: str, k) -> Fraction:
    """The three su(1,1) relations among ``Lt_-1, Lt_0, Lt_1``."""
    base = r.base
    p, q = base.p, base.q
    L = lambda i: delta1_generator(r, i, "tilde")
    if relation == "d23":
        c = chi_hat(r, 0, 1)
        nm, mn = _pair(L(0), L(1), k)
        return q * c * nm - p * c * mn - r.number(-1) * L(1).at(k)
    if relation == "d25":
        c = chi_hat(r, -1, 0)
        nm, mn = _pair(L(-1), L(0), k)
        return q * c * nm - p * c * mn - r.number(-1) * L(-1).at(k)
    if relation == "d27":
        nm, mn = _pair(L(-1), L(1), k)
        N1 = k + 1
        pref = pq_number(base, 2) * half_power(base, "p", N1 - 1) * half_power(base, "q", -N1 - 1) * k1(r, -1, 0)
        return nm - mn - pref * L(0).at(k)
    raise ValueError(f"unknown relation {relation!r}; expected d23, d25 or d27")


def scaled_bracket_check(r: RFunction, n: int, m: int, k, form: str = "induced") -> Fraction:
    """Bracket of the lambda-scaled generators on ``z**k``.

    ``induced``: coefficients ``lambda x, lambda y`` from the tilde bracket and
    right side ``R(p^(n-m), q^(n-m))``; its residual is ``1/lambda`` times the
    tilde residual.  ``literal``: the printed theta-form coefficients, with the
    unnamed chi read as ``chi_hat`` at base ``(theta, 1/theta)``.
    """
    if n == m:
        raise DegenerateIndexError("n = m: [m-n] = 0")
    base = r.base
    lam, theta = lambda_theta(base)
    if theta == 1:
        raise DomainError("theta = 1 (p = q)")
    ln, lm = delta1_generator(r, n, "scaled"), delta1_generator(r, m, "scaled")
    nm, mn = _pair(ln, lm, k)
    target = delta1_generator(r, n + m, "scaled").at(k)
    if form == "induced":
        x, y = tilde_coeffs(r, n, m)
        return lam * x * nm - lam * y * mn - r.number(n - m) * target
    if form == "literal":
        w = omega(r, 1, n + m) / (omega(r, 1, n) * omega(r, 1, m))
        chi_t = r(theta ** (n - m), theta ** (m - n)) / theta_number(theta, m - n) * w
        x = lam ** (m - n) * theta ** (n - m) * chi_t
        y = lam ** (m - n) * theta ** (m - n) * chi_t
        return x * nm - y * mn - r(theta ** (m - n), theta ** (n - m)) * target
    raise ValueError(f"unknown form {form!r}")


def d14_equivalence_report(r: RFunction, n: int, k) -> dict:
    """The rescaled generator against two readings of its dilation form."""
    base = r.base
    p, q = base.p, base.q
    w = omega(r, 1, n)
    lhs = half_power(base, "q", -(k + n + 1)) * pq_number(base, k + n + 1) * w
    a = ((p / q) ** (k + 1) - 1) / (p - q) * w
    b = ((p / q) ** (k + n + 1) - 1) / (p - q) * w
    return {"lhs": lhs, "variant_a": a, "variant_b": b}


def t_central_table(r: RFunction, n_range: Iterable[int], degrees: Iterable[int] = (0,), normalization=1) -> list[dict]:
    """``[t_n, t_-n]`` residual against the weight-one central-charge formula."""
    base = r.base
    c = as_scalar(normalization)
    rows = []
    for n in n_range:
        for k in degrees:
            row = {"n": n, "degree": k}
            try:
                tn, tm = delta1_generator(r, n, "t"), delta1_generator(r, -n, "t")
                nm, mn = _pair(tn, tm, k)
                N1 = k + 1
                pref = pq_number(base, -2 * n) * half_power(base, "p", N1 + n) * half_power(base, "q", -N1 + n) * k1(r, n, -n)
                row["residual"] = nm - mn - pref * delta1_generator(r, 0, "t").at(k)
                lead = c * half_power(base, "p", Fraction(N1, 2) + n) * half_power(base, "q", Fraction(N1, 2) - n)
                row["prediction"] = lead / (base.p ** n + base.q ** n) * r.number(n - 1) * r.number(n) * r.number(n + 1)
                row["status"] = "ok"
            except DomainError as exc:
                row.update(status="skipped", reason=str(exc))
            rows.append(row)
    return rows


# --- alpha constants -------------------------------------------------------------

@dataclass(frozen=True)
class AlphaConstant:
    family: str
    closed_form: Fraction
    partial_sums: tuple

    def partial(self, n: int) -> Fraction:
        return self.partial_sums[n]


def _check_region(family: str, base: BaseParams):
    p, q = base.p, base.q
    conditions = {
        "JS": [(p * q < 1, "|pq| < 1")],
        "CJ": [(p / q < 1, "|p/q| < 1"), (p * q < 1, "|pq| < 1")],
        "Quesne": [(q / p < 1, "|q/p| < 1"), (p * q < 1, "|pq| < 1")],
        "HN": [(q / p < 1, "|q/p| < 1")],
    }
    if family not in conditions:
        raise ValueError(f"no alpha constant for {family!r}; expected one of {ALPHA_FAMILIES}")
    for ok, text in conditions[family]:
        if not ok:
            raise DomainError(f"{family} alpha needs {text}")


def alpha_closed_form(family: str, base: BaseParams) -> Fraction:
    p, q, g, mu, nu = base.p, base.q, base.g, base.mu, base.nu
    if family == "JS":
        return p * q / (p * q - 1)
    if family == "CJ":
        return (p - q) / (1 / p - q) * (q / (q - p) - p * q / (1 - p * q) - p ** 2 / (1 - p ** 2))
    if family == "Quesne":
        return (p - q) / (q - 1 / p) * (-q ** 2 / (1 - q ** 2) + p / (p - q) - p * q / (1 - p * q))
    if family == "HN":
        P = lambda e: half_power(base, "p", e)
        Q = lambda e: half_power(base, "q", e)
        inner = (Q(nu) / (P(mu) - Q(nu)) + Q(nu + 1) / (P(mu + 1) - Q(nu + 1))
                 - Q(nu + 2) / (P(mu - 1) - Q(nu + 2)) + Q(nu + 2) / (P(mu) - Q(nu + 2)))
        return g * (p - q) / (q - 1 / p) * inner
    raise ValueError(f"no alpha constant for {family!r}")


def alpha_term(family: str, base: BaseParams, n: int) -> Fraction:
    """Weight-one generator weight ``-(pq)^(n+1) [n+1]_family / [n+1]``."""
    x = n + 1
    return -half_power(base, "pq", x) * family_number(base, family, x) / pq_number(base, x)


def kdv_alpha(family: str, base: BaseParams, terms: int) -> AlphaConstant:
    """Partial sums over ``n = 0..terms`` and the printed closed form."""
    _check_region(family, base)
    sums, acc = [], Fraction(0)
    for n in range(terms + 1):
        acc += alpha_term(family, base, n)
        sums.append(acc)
    return AlphaConstant(family, alpha_closed_form(family, base), tuple(sums))


def js_alpha_bound(base: BaseParams, N: int) -> Fraction:
    pq = base.pq
    return pq ** (N + 2) / (1 - pq)


# --- deformed current ------------------------------------------------------------

def _cos_sin(x: Fraction, precision: Fraction) -> tuple[Fraction, Fraction]:
    """Taylor approximants of ``cos x`` and ``sin x``, each within ``precision``."""
    c, s = Fraction(0), Fraction(0)
    term, i = Fraction(1), 0
    while True:
        if i % 4 == 0:
            c += term
        elif i % 4 == 1:
            s += term
        elif i % 4 == 2:
            c -= term
        else:
            s -= term
        i += 1
        term = term * x / i
        # alternating tails are bounded by the first omitted term once |x| < i
        if abs(term) < precision and abs(x) < i:
            return c, s


def current_partial(mode_coeffs: Mapping[int, Fraction], x_samples: Iterable, precision=Fraction(1, 10 ** 30)) -> list[tuple[Fraction, Fraction]]:
    """``v(x) = sum_n t_n exp(-i n x)`` as exact ``(re, im)`` pairs.

    Every cosine and sine is replaced by a rational approximant within
    ``precision``; used for reports only.
    """
    precision = as_scalar(precision)
    out = []
    for x in x_samples:
        x = as_scalar(x)
        re, im = Fraction(0), Fraction(0)
        for n, t in sorted(mode_coeffs.items()):
            t = as_scalar(t)
            if not t:
                continue
            c, s = _cos_sin(n * x, precision)
            re += t * c
            im -= t * s
        out.append((re, im))
    return out
