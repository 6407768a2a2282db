"""Exact scalars: rationals, half-integer powers of p and q, and the deformed number families.

Every value in the library is a :class:`fractions.Fraction`.  Half-integer
powers stay rational because the base parameters can be supplied through
their square roots ``s = sqrt(p)`` and ``t = sqrt(q)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from .errors import DomainError

Scalar = Fraction
Number = Union[int, Fraction, str]

FAMILIES = ("JS", "CJ", "Quesne", "HN", "HB")

ZERO = Fraction(0)
ONE = Fraction(1)


def as_scalar(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact scalar")


def parse_rational(text: str) -> Fraction:
    """Parse ``"2/3"``, ``"-1"``, ``"1/36"`` (a Unicode minus sign is accepted).

    Decimal notation is refused; the library never rounds.
    """
    cleaned = text.strip().replace("−", "-")
    num, sep, den = cleaned.partition("/")
    if not _is_int(num) or (sep and not _is_int(den, signed=False)):
        raise ValueError(f"malformed rational {text!r}")
    value = Fraction(int(num), int(den) if sep else 1)
    return value


def _is_int(text, signed=True):
    text = text.strip()
    if signed and text[:1] in "+-":
        text = text[1:]
    return text.isdigit() and text.isascii()


def format_scalar(x: Fraction) -> str:
    """Exact numerator/denominator form used in every report."""
    x = as_scalar(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def half_integer(x) -> Fraction:
    x = as_scalar(x)
    if x.denominator not in (1, 2):
        raise DomainError(f"exponent {x} is not a half-integer")
    return x


def normalize_degree(x):
    """Integral degrees as ``int``, half-integral ones as ``Fraction``."""
    x = half_integer(x)
    return x.numerator if x.denominator == 1 else x


def exact_sqrt(x: Fraction) -> Optional[Fraction]:
    x = as_scalar(x)
    if x < 0:
        return None
    a, b = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


def rational_power(base: Fraction, e, root: Optional[Fraction] = None) -> Fraction:
    """``base**e`` for a half-integer ``e``; ``root`` is a known square root of ``base``."""
    base, e = as_scalar(base), half_integer(e)
    if base == 0 and e < 0:
        raise DomainError("negative exponent of a zero base")
    if e.denominator == 1:
        return base ** e.numerator
    if root is None:
        root = exact_sqrt(base)
        if root is None:
            raise DomainError(f"{base}^{e} is not rational (no exact square root of {base})")
    return root ** e.numerator


@dataclass(frozen=True)
class BaseParams:
    """Deformation parameters.

    ``p`` and ``q`` are the deformation bases; ``s``/``t`` are their square
    roots when rational (filled in automatically for perfect squares).  ``mu``,
    ``nu`` and ``g`` are the extra parameters of the HN and HB families.
    ``p == q`` is allowed at construction so that
    the guards of the number families can be exercised.
    """

    p: Fraction
    q: Fraction
    mu: Fraction = ZERO
    nu: Fraction = ZERO
    g: Fraction = ONE
    s: Optional[Fraction] = field(default=None, compare=False)
    t: Optional[Fraction] = field(default=None, compare=False)

    def __post_init__(self):
        for name in ("p", "q", "mu", "nu", "g"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        if self.p <= 0 or self.q <= 0:
            raise DomainError("base parameters p and q must be positive")
        for root_name, square_name in (("s", "p"), ("t", "q")):
            root, square = getattr(self, root_name), getattr(self, square_name)
            if root is None:
                root = exact_sqrt(square)
            else:
                root = as_scalar(root)
                if root <= 0 or root * root != square:
                    raise DomainError(f"{root_name}={root} is not the positive square root of {square_name}={square}")
            object.__setattr__(self, root_name, root)

    @classmethod
    def from_roots(cls, s, t, mu=0, nu=0, g=1) -> "BaseParams":
        s, t = as_scalar(s), as_scalar(t)
        if s <= 0 or t <= 0:
            raise DomainError("square-root parameters s and t must be positive")
        return cls(p=s * s, q=t * t, mu=mu, nu=nu, g=g, s=s, t=t)

    @property
    def pq(self) -> Fraction:
        return self.p * self.q

    @property
    def has_roots(self) -> bool:
        return self.s is not None and self.t is not None

    def swapped(self) -> "BaseParams":
        """The same parameters with the roles of p and q exchanged."""
        return replace(self, p=self.q, q=self.p, s=self.t, t=self.s)

    def power(self, which: str, e) -> Fraction:
        return half_power(self, which, e)

    def describe(self) -> dict:
        out = {"p": self.p, "q": self.q}
        if self.has_roots:
            out.update(s=self.s, t=self.t)
        out.update(mu=self.mu, nu=self.nu, g=self.g)
        return out


def half_power(base: BaseParams, which: str, e) -> Fraction:
    """``p**e``, ``q**e`` or ``(pq)**e`` for a half-integer ``e``, exact."""
    if which == "p":
        return rational_power(base.p, e, base.s)
    if which == "q":
        return rational_power(base.q, e, base.t)
    if which == "pq":
        root = base.s * base.t if base.has_roots else None
        return rational_power(base.pq, e, root)
    raise ValueError(f"unknown base {which!r}; expected 'p', 'q' or 'pq'")


def _require_distinct(base: BaseParams, what: str):
    if base.p == base.q:
        raise DomainError(f"{what} is undefined at p = q (division by p - q)")


@lru_cache(maxsize=65536)
def pq_number(base: BaseParams, x) -> Fraction:
    """The (p,q)-number ``(p**x - q**x) / (p - q)``."""
    _require_distinct(base, "[x]_{p,q}")
    x = half_integer(x)
    return (half_power(base, "p", x) - half_power(base, "q", x)) / (base.p - base.q)


def _quesne(base: BaseParams, x: Fraction) -> Fraction:
    den = base.q - 1 / base.p
    if den == 0:
        raise DomainError("Quesne-type number needs q != 1/p (pq != 1)")
    return (half_power(base, "p", x) - half_power(base, "q", -x)) / den


@lru_cache(maxsize=65536)
def family_number(base: BaseParams, family: str, x) -> Fraction:
    """Closed form of the named deformed number at a half-integer ``x``.

    JS      (p^x - q^x) / (p - q)
    CJ      (p^-x - q^x) / (p^-1 - q)
    Quesne  (p^x - q^-x) / (q - p^-1)
    HN      g q^(x nu) / p^(x mu) * Quesne
    HB      g (q^nu / p^mu)^x * Quesne
    """
    x = half_integer(x)
    _require_distinct(base, f"{family} number")
    if family == "JS":
        return pq_number(base, x)
    if family == "CJ":
        den = 1 / base.p - base.q
        if den == 0:
            raise DomainError("CJ number needs 1/p != q (pq != 1)")
        return (half_power(base, "p", -x) - half_power(base, "q", x)) / den
    if family == "Quesne":
        return _quesne(base, x)
    if family == "HN":
        weight = half_power(base, "q", x * base.nu) / half_power(base, "p", x * base.mu)
        return base.g * weight * _quesne(base, x)
    if family == "HB":
        ratio = half_power(base, "q", base.nu) / half_power(base, "p", base.mu)
        return base.g * rational_power(ratio, x) * _quesne(base, x)
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def family_factorial(base: BaseParams, family: str, n: int) -> Fraction:
    if n < 0:
        raise DomainError("factorial needs n >= 0")
    out = ONE
    for i in range(1, n + 1):
        out *= family_number(base, family, i)
    return out
