"""Laurent polynomials in z and ladder operators acting on them.

A ladder operator sends ``z**k`` to ``coeff(k) * z**(k + shift)``.  Every
operator used by the library has this form, so identities between operators
reduce to exact scalar identities degree by degree.
"""

from __future__ import annotations

from collections.abc import Mapping
from fractions import Fraction
from typing import Callable, Iterator, Optional

from .errors import DomainError
from .rexpr import RFunction
from .scalar import BaseParams, as_scalar, half_power, normalize_degree, pq_number

Degree = int


class LaurentPoly(Mapping):
    """Immutable finite map degree -> nonzero coefficient."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping] = None):
        clean = {}
        for degree, coeff in (terms or {}).items():
            coeff = as_scalar(coeff)
            if coeff:
                degree = normalize_degree(degree)
                clean[degree] = clean.get(degree, 0) + coeff
        self._terms = {d: c for d, c in clean.items() if c}

    @classmethod
    def monomial(cls, degree, coeff=1) -> "LaurentPoly":
        return cls({degree: coeff})

    def __getitem__(self, degree) -> Fraction:
        return self._terms[degree]

    def coeff(self, degree) -> Fraction:
        return self._terms.get(degree, Fraction(0))

    def __iter__(self) -> Iterator:
        return iter(sorted(self._terms))

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self._terms)
        for d, c in other._terms.items():
            out[d] = out.get(d, 0) + c
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({d: -c for d, c in self._terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def scale(self, factor) -> "LaurentPoly":
        factor = as_scalar(factor)
        return LaurentPoly({d: factor * c for d, c in self._terms.items()})

    __rmul__ = scale

    def is_zero(self) -> bool:
        return not self._terms

    def __repr__(self):
        if not self._terms:
            return "LaurentPoly(0)"
        body = " + ".join(f"({c})z^{d}" for d, c in sorted(self._terms.items()))
        return f"LaurentPoly({body})"


Coeff = Callable[[Degree], Fraction]


class LadderOperator:
    """``z**k -> coeff(k) z**(k + shift)``, extended linearly."""

    __slots__ = ("shift", "coeff", "name")

    def __init__(self, shift, coeff: Coeff, name: str = "O"):
        self.shift = normalize_degree(shift)
        self.coeff = coeff
        self.name = name

    def at(self, k) -> Fraction:
        return self.coeff(k)

    def apply(self, poly: LaurentPoly) -> LaurentPoly:
        out = {}
        for d, c in poly.items():
            value = self.coeff(d)
            if value:
                out[d + self.shift] = c * value
        return LaurentPoly(out)

    __call__ = apply

    def __matmul__(self, inner: "LadderOperator") -> "LadderOperator":
        return compose(self, inner)

    def __add__(self, other: "LadderOperator") -> "LadderOperator":
        if self.shift != other.shift:
            raise DomainError(f"cannot add ladder operators with shifts {self.shift} and {other.shift}")
        a, b = self.coeff, other.coeff
        return LadderOperator(self.shift, lambda k: a(k) + b(k), f"({self.name} + {other.name})")

    def __neg__(self) -> "LadderOperator":
        a = self.coeff
        return LadderOperator(self.shift, lambda k: -a(k), f"-{self.name}")

    def __sub__(self, other: "LadderOperator") -> "LadderOperator":
        return self + (-other)

    def scaled(self, factor) -> "LadderOperator":
        factor = as_scalar(factor)
        a = self.coeff
        return LadderOperator(self.shift, lambda k: factor * a(k), f"{factor}*{self.name}")

    def __rmul__(self, factor) -> "LadderOperator":
        return self.scaled(factor)

    def __repr__(self):
        return f"LadderOperator({self.name}, shift={self.shift})"


def compose(outer: LadderOperator, inner: LadderOperator) -> LadderOperator:
    """``outer ∘ inner``: apply ``inner`` first."""
    a, b, d = outer.coeff, inner.coeff, inner.shift

    def coeff(k):
        first = b(k)
        return first * a(k + d) if first else first

    return LadderOperator(inner.shift + outer.shift, coeff, f"{outer.name}∘{inner.name}")


def apply(op: LadderOperator, poly: LaurentPoly) -> LaurentPoly:
    return op.apply(poly)


def identity() -> LadderOperator:
    return LadderOperator(0, lambda k: Fraction(1), "I")


def diagonal(fn: Coeff, name: str = "D") -> LadderOperator:
    return LadderOperator(0, fn, name)


def multiplication(power: int) -> LadderOperator:
    """Multiplication by ``z**power``."""
    return LadderOperator(power, lambda k: Fraction(1), f"z^{power}")


def dilation(base: BaseParams, which="P") -> LadderOperator:
    """``phi(z) -> phi(c z)`` as the diagonal ``k -> c**k``.

    ``which`` is ``"P"``, ``"Q"``, ``"ratio"`` (c = p/q) or an explicit scalar.
    """
    if which == "P":
        return LadderOperator(0, lambda k: half_power(base, "p", k), "P")
    if which == "Q":
        return LadderOperator(0, lambda k: half_power(base, "q", k), "Q")
    if which == "ratio":
        return LadderOperator(0, lambda k: half_power(base, "p", k) / half_power(base, "q", k), "P/Q")
    c = as_scalar(which)
    if c == 0:
        raise DomainError("dilation factor must be nonzero")
    return LadderOperator(0, lambda k: c ** k, f"dil({c})")


def pq_derivative(base: BaseParams) -> LadderOperator:
    if base.p == base.q:
        raise DomainError("the (p,q)-derivative needs p != q")
    return LadderOperator(-1, lambda k: pq_number(base, k), "D_pq")


def r_derivative(r: RFunction, mode: str = "canonical") -> LadderOperator:
    """The R(p,q)-derivative on monomials.

    ``canonical``: ``z**k -> -(pq)**k R(p**k, q**k) z**(k-1)``, with constants
    annihilated.  ``clean``: ``z**k -> R(p**k, q**k) z**(k-1)``.
    """
    base = r.base
    if base.p == base.q:
        raise DomainError("the R(p,q)-derivative needs p != q")
    if mode == "canonical":
        def coeff(k):
            if k == 0:
                return Fraction(0)
            return -half_power(base, "pq", k) * r.number(k)
    elif mode == "clean":
        def coeff(k):
            return r.number(k)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return LadderOperator(-1, coeff, f"D_R[{mode}]")


def leibniz_oracle(r: RFunction, a: int, b: int) -> Fraction:
    """Coefficient of ``D_R(z**a z**b)`` from the Leibniz form ``K h z**-1 {f(pz)g(pz) - f(qz)g(qz)}``.

    ``h`` is evaluated at the total degree with the sign convention of the
    monomial formula, i.e. ``(p - q) / (p**-N - q**-N) * R(p**N, q**N)``.
    """
    base = r.base
    p, q = base.p, base.q
    n = a + b
    if n == 0:
        raise DomainError("the Leibniz prefactor is 0/0 at total degree 0")
    brace = p ** a * p ** b - q ** a * q ** b
    h = (p - q) / (p ** -n - q ** -n) * r(p ** n, q ** n)
    return brace / (p - q) * h


def r5_ordering_report(r: RFunction, n: int) -> dict:
    """The three competing monomial readings of the R-derivative at ``z**n``."""
    base = r.base
    out = {"monomial_formula": r_derivative(r).at(n), "left_factor": r.number(n)}
    try:
        out["right_factor"] = pq_number(base, n) * r.number(n - 1) / pq_number(base, n - 1)
    except (ZeroDivisionError, DomainError) as exc:
        out["right_factor"] = f"undefined: {exc}"
    return out
