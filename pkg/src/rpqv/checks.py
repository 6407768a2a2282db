"""Registry of grid checks run by the command-line front end.

Every check evaluates one grid point to an exact scalar.  ``asserted`` checks
pass when that scalar is zero (or when ``expect`` says otherwise);
``recorded`` checks only report the value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Callable, Optional

from . import central, delta1, emt, virasoro
from .errors import DomainError
from .rexpr import RFunction, family_closed_form
from .scalar import BaseParams, half_power

AXES = ("delta", "n", "m", "k", "degree")
ASSERTED, RECORDED = "asserted", "recorded"


@dataclass
class Context:
    r: Optional[RFunction]
    base: BaseParams
    convention: str = "output"
    normalization: Fraction = Fraction(1)
    c2_hat: Fraction = Fraction(1)


@dataclass(frozen=True)
class Check:
    id: str
    anchor: str
    axes: tuple
    kind: str
    fn: Callable
    degeneracy: str = "points raising a domain error are skipped with its message"
    needs_r: bool = True
    distinct_nm: bool = False
    # optional (ctx, point, value) -> bool for checks whose expected value is not zero
    expect: Optional[Callable] = None
    defaults: dict = field(default_factory=dict)
    preconditions: str = ""


def _abs(x):
    return x if x >= 0 else -x


def _excess(err, bound):
    return max(Fraction(0), err - bound)


def _js_omega(ctx, pt):
    if ctx.r.family != "JS":
        raise DomainError("closed form -(pq)^(delta(n+1)) is for JS only")
    d = pt["delta"]
    return virasoro.omega(ctx.r, d, pt["n"]) + half_power(ctx.base, "pq", d * (pt["n"] + 1))


def _classical(ctx, pt):
    fam = ctx.r.family or "JS"
    eps = Fraction(1, 10 ** pt["degree"])
    n, m = pt["n"], pt["m"]
    err = _abs(virasoro.classical_limit_probe(fam, n, m, eps) - (n - m))
    return _excess(err, virasoro.classical_limit_bound(n, m, eps))


def _classical_monotone(ctx, pt):
    """Number of consecutive epsilons (10^-3 .. 10^-6) where the error fails to shrink."""
    fam = ctx.r.family or "JS"
    n, m = pt["n"], pt["m"]
    errs = [_abs(virasoro.classical_limit_probe(fam, n, m, Fraction(1, 10 ** e)) - (n - m)) for e in (3, 4, 5, 6)]
    bad = sum(1 for a, b in zip(errs, errs[1:]) if not (b < a or a == b == 0))
    return Fraction(bad)


def _kdv(ctx, pt):
    fam = ctx.r.family
    N = pt["degree"]
    a = delta1.kdv_alpha(fam, ctx.base, N)
    bound = delta1.js_alpha_bound(ctx.base, N) if fam == "JS" else Fraction(1, 10 ** 12)
    return _excess(_abs(a.partial(N) - a.closed_form), bound)


def _two_term(ctx, pt):
    m = pt["m"]
    seq = emt.solve_two_term(ctx.base, ctx.c2_hat, max(m, 2))
    return emt.two_term_residual(ctx.base, seq, m)


def _exponent(ctx, pt):
    m = pt["m"]
    seq = emt.exponent_candidate(ctx.base, pt["n"], range(m - 1, m + 1))
    return emt.two_term_residual(ctx.base, seq, m)


def _c0_probe(ctx, pt):
    c0 = Fraction(pt["n"])
    seq = emt.CentralSequence({0: c0, 1: Fraction(3, 7)})
    return emt.recursion_residual("pq", ctx.base, seq, 0, 1)


def _symmetric_probe(ctx, pt):
    """A candidate with ``c_n = c_-n = 1`` against the ``(n, -n)`` instance."""
    n = pt["n"]
    seq = emt.CentralSequence({n: Fraction(1), -n: Fraction(1), 0: Fraction(0)})
    return emt.recursion_residual("pq", ctx.base, seq, n, -n)


def _asym_probe(ctx, pt):
    n = pt["n"]
    seq = emt.CentralSequence({n: Fraction(1), -n: Fraction(2), 0: Fraction(0)})
    return emt.recursion_residual("pq", ctx.base, seq, n, -n)


@lru_cache(maxsize=None)
def _seeded_grid():
    return tuple(central.seeded_grid())


def _seeded(kind):
    def fn(ctx, pt):
        grid = _seeded_grid()
        g = grid[pt["n"]]
        r = g["r"]
        if kind == "jacobi":
            args = (r, g["delta"], g["n"], g["m"], g["k"], g["degree"])
            return central.jacobi_residual(*args) - central.jacobi_oracle(*args)
        args = (r, g["delta"], g["n"], g["m"])
        return central.cyclic_center_residual(*args) - central.cyclic_center_oracle(*args)
    return fn


def _gamma_half(ctx, pt):
    g = central.gamma_identity_check(ctx.r, Fraction(1, 2), pt["k"], pt["degree"])
    return g.proportionality


def _g2g3(ctx, pt):
    return central.gamma_identity_check(ctx.r, pt["delta"], pt["k"], pt["degree"]).g2_or_g3


def _scaled_induced(ctx, pt):
    lam, _ = virasoro.lambda_theta(ctx.base)
    n, m, k = pt["n"], pt["m"], pt["k"]
    return delta1.scaled_bracket_check(ctx.r, n, m, k) - delta1.tilde_bracket_check(ctx.r, n, m, k) / lam


def _infinitesimal(ctx, pt):
    rep = emt.emt_infinitesimal_consistency(ctx.r, False, pt["n"], pt["m"])
    return rep.central_constraint - rep.recursion_form


_NM = ("n", "m")
_NMK = ("n", "m", "k")
_DNMK = ("delta", "n", "m", "k")

CHECKS: dict[str, Check] = {}


def _add(*args, **kwargs):
    c = Check(*args, **kwargs)
    CHECKS[c.id] = c


_add("bracket_P1", "(P1): weighted X~, Y~ bracket, N read at the output degree", _DNMK, ASSERTED,
     lambda c, p: virasoro.check_bracket_P1(c.r, p["delta"], p["n"], p["m"], p["k"], c.convention),
     degeneracy="n or m = 0 skipped ([n]=0 denominator); n = m skipped; omega 0/0 skipped",
     distinct_nm=True, defaults={"delta": [2, 3], "n": range(-3, 4), "m": range(-3, 4), "k": range(-3, 4)})
_add("bracket_P1_literal", "(P1) with the printed X~, Y~ (no weight ratio on the right side)", _DNMK, RECORDED,
     lambda c, p: virasoro.check_bracket_P1(c.r, p["delta"], p["n"], p["m"], p["k"], c.convention, literal=True),
     distinct_nm=True, defaults={"delta": [2], "n": range(-2, 3), "m": range(-2, 3), "k": range(-1, 2)})
_add("pq_bracket", "(P2) generators e_n with the weight-free X, Y", _DNMK, ASSERTED,
     lambda c, p: virasoro.check_pq_bracket(c.base, p["delta"], p["n"], p["m"], p["k"], c.convention),
     needs_r=False, distinct_nm=True,
     defaults={"delta": [2, 3], "n": range(-3, 4), "m": range(-3, 4), "k": range(-3, 4)})
_add("witt_form", "(e4)/(5): Witt-form bracket with chi", _DNMK, ASSERTED,
     lambda c, p: virasoro.check_witt_form(c.r, p["delta"], p["n"], p["m"], p["k"]), distinct_nm=True,
     defaults={"delta": [2, 3], "n": range(-3, 4), "m": range(-3, 4), "k": range(-3, 4)})
_add("number_tower", "builtin R(p^n, q^n) against the closed-form family numbers", ("n",), ASSERTED,
     lambda c, p: c.r.number(p["n"]) - family_closed_form(c.r, p["n"]), defaults={"n": range(-6, 7)})
_add("e12", "(e12): [x] = lambda^(1-x) [x]_theta", ("n",), ASSERTED,
     lambda c, p: virasoro.e12_residual(c.base, p["n"]), needs_r=False, defaults={"n": range(-6, 7)})
_add("js_omega", "(A1): JS weight -(pq)^(delta(n+1))", ("delta", "n"), ASSERTED, _js_omega,
     defaults={"delta": [Fraction(1, 2), 1, 2, 3], "n": range(-3, 4)})
_add("classical_limit", "[n-m] at p=1, q=1-10^-degree within (n-m)^2 eps", ("n", "m", "degree"), ASSERTED,
     _classical, defaults={"n": range(-3, 4), "m": range(-3, 4), "degree": [3, 4, 5, 6]})
_add("classical_limit_monotone", "classical-limit error shrinks as eps goes 10^-3 .. 10^-6", _NM, ASSERTED,
     _classical_monotone, defaults={"n": range(-3, 4), "m": range(-3, 4)})
_add("delta1_d4", "(d4): weight-one bracket with chi^", _NMK, ASSERTED,
     lambda c, p: delta1.delta1_bracket_check(c.r, p["n"], p["m"], p["k"]), distinct_nm=True,
     defaults={"n": range(-2, 4), "m": range(-2, 4), "k": range(-2, 3)})
_add("delta1_d15", "(d15): tilde generators, y = p^(m-n) chi^_nm", _NMK, ASSERTED,
     lambda c, p: delta1.tilde_bracket_check(c.r, p["n"], p["m"], p["k"]), distinct_nm=True,
     defaults={"n": range(-2, 4), "m": range(-2, 4), "k": range(-2, 3)})
_add("delta1_d15_literal", "(d15) with y = p^(m-n) chi^_mn as printed", _NMK, RECORDED,
     lambda c, p: delta1.tilde_bracket_check(c.r, p["n"], p["m"], p["k"], literal=True), distinct_nm=True,
     defaults={"n": range(-2, 4), "m": range(-2, 4), "k": range(-2, 3)})
_add("delta1_d17", "(d17): plain commutator of tilde generators", _NMK, ASSERTED,
     lambda c, p: delta1.tilde_bracket_check(c.r, p["n"], p["m"], p["k"], form="d17"), distinct_nm=True,
     defaults={"n": range(-2, 4), "m": range(-2, 4), "k": range(-2, 3)})
for _rel in ("d23", "d25", "d27"):
    _add(f"su11_{_rel}", f"({_rel}): su(1,1) relation among Lt_-1, Lt_0, Lt_1", ("k",), ASSERTED,
         (lambda rel: lambda c, p: delta1.su11_check(c.r, rel, p["k"]))(_rel), defaults={"k": range(-2, 3)})
_add("scaled_d29", "(d29), induced reading: residual equals the (d15) residual over lambda", _NMK, ASSERTED,
     _scaled_induced, distinct_nm=True, defaults={"n": range(-2, 3), "m": range(-2, 3), "k": range(-2, 3)})
_add("scaled_d29_literal", "(d29) as printed, chi~ read as chi^ at base (theta, 1/theta)", _NMK, RECORDED,
     lambda c, p: delta1.scaled_bracket_check(c.r, p["n"], p["m"], p["k"], form="literal"), distinct_nm=True,
     defaults={"n": range(-2, 3), "m": range(-2, 3), "k": range(-2, 3)})
_add("kdv_alpha", "alpha partial sums against the closed forms", ("degree",), ASSERTED, _kdv,
     preconditions="JS |pq|<1; CJ |p/q|<1 and |pq|<1; Quesne |q/p|<1 and |pq|<1; HN |q/p|<1; "
                   "degree is the truncation N; bound (pq)^(N+2)/(1-pq) for JS and 1e-12 otherwise",
     defaults={"degree": [5, 10, 20]})
_add("emt_t2", "(t2): weight-two (p,q) bracket", _NMK, ASSERTED,
     lambda c, p: emt.emt_bracket_check(c.base, p["n"], p["m"], p["k"]), needs_r=False, distinct_nm=True,
     defaults={"n": range(-3, 4), "m": range(-3, 4), "k": range(-2, 3)})
_add("emt_rpq", "(t19) with weights K_nm on X~2, Y~2", _NMK, ASSERTED,
     lambda c, p: emt.emt_rpq_bracket_check(c.r, p["n"], p["m"], p["k"]), distinct_nm=True,
     defaults={"n": range(-3, 4), "m": range(-3, 4), "k": range(-2, 3)})
_add("emt_rpq_literal", "(t19) with the printed K_nm on the right side", _NMK, RECORDED,
     lambda c, p: emt.emt_rpq_bracket_check(c.r, p["n"], p["m"], p["k"], literal=True), distinct_nm=True,
     defaults={"n": range(-2, 3), "m": range(-2, 3), "k": range(-1, 2)})
_add("emt_two_term", "two-term recursion for c^_m solved from c^_2", ("m",), ASSERTED, _two_term,
     needs_r=False, defaults={"m": range(2, 11)})
_add("emt_exponent_pin", "candidate (pq)^(n m)[m-1][m][m+1]/(p^m+q^m) solves the two-term recursion iff n = -2",
     _NM, ASSERTED, _exponent, needs_r=False, expect=lambda c, p, v: (v == 0) == (p["n"] == -2),
     defaults={"n": [-2, 1], "m": range(3, 11)})
_add("emt_c0_forced", "(t11) at (n,m) = (0,1) with c_0 = n: nonzero iff c_0 != 0", ("n",), ASSERTED,
     _c0_probe, needs_r=False, expect=lambda c, p, v: (v != 0) == (p["n"] != 0), defaults={"n": range(-2, 3)})
_add("emt_symmetry_violation", "(t11) at (n,-n) with c_n = 1, c_-n = 2: nonzero", ("n",), ASSERTED,
     _asym_probe, needs_r=False, expect=lambda c, p, v: v != 0, defaults={"n": range(1, 5)})
_add("emt_symmetry_forced", "(t11) at (n,-n) is solved by c_n = c_-n = 1", ("n",), ASSERTED,
     _symmetric_probe, needs_r=False, defaults={"n": range(1, 5)})
_add("emt_infinitesimal", "(t21)/(t22) expanded on a generic tensor against (t23)", _NM, ASSERTED,
     _infinitesimal, distinct_nm=True, defaults={"n": range(-2, 3), "m": range(-2, 3)})
_add("jacobi_J3", "(J3): weighted cyclic double-bracket sum minus its raw-composition oracle",
     ("delta", "n", "m", "k", "degree"), ASSERTED,
     lambda c, p: (central.jacobi_residual(c.r, p["delta"], p["n"], p["m"], p["k"], p["degree"])
                   - central.jacobi_oracle(c.r, p["delta"], p["n"], p["m"], p["k"], p["degree"])),
     defaults={"delta": [2], "n": range(-3, 4), "m": range(-3, 4), "k": range(-3, 4), "degree": [0]})
_add("jacobi_J3_value", "(J3) cyclic sum value", ("delta", "n", "m", "k", "degree"), RECORDED,
     lambda c, p: central.jacobi_residual(c.r, p["delta"], p["n"], p["m"], p["k"], p["degree"]),
     defaults={"delta": [2], "n": range(-3, 4), "m": range(-3, 4), "k": range(-3, 4), "degree": [0]})
_add("jacobi_seeded", "(J3) checker against its oracle on the seeded grid (n indexes the grid)", ("n",),
     ASSERTED, _seeded("jacobi"), needs_r=False, defaults={"n": range(20)})
_add("cyclic_center", "(ce) with C^R from (ce2) minus its oracle", ("delta", "n", "m"), ASSERTED,
     lambda c, p: (central.cyclic_center_residual(c.r, p["delta"], p["n"], p["m"], c.normalization)
                   - central.cyclic_center_oracle(c.r, p["delta"], p["n"], p["m"], c.normalization)),
     defaults={"delta": [2], "n": range(-3, 4), "m": range(-3, 4)})
_add("cyclic_center_value", "(ce) residual with C^R from (ce2)", ("delta", "n", "m"), RECORDED,
     lambda c, p: central.cyclic_center_residual(c.r, p["delta"], p["n"], p["m"], c.normalization),
     defaults={"delta": [2], "n": range(-3, 4), "m": range(-3, 4)})
_add("cyclic_center_seeded", "(ce) checker against its oracle on the seeded grid (n indexes the grid)", ("n",),
     ASSERTED, _seeded("cyclic"), needs_r=False, defaults={"n": range(20)})
_add("gamma_half", "weight 1/2: X^_k + (pq)^(k/2) Y^_k", ("k", "degree"), ASSERTED, _gamma_half,
     defaults={"k": range(-4, 5), "degree": [1]})
_add("gamma_g2_g3", "(g2)/(g3) values on z^degree, normalized by Gamma", ("delta", "k", "degree"), RECORDED,
     _g2g3, defaults={"delta": [Fraction(1, 2), 2], "k": range(-4, 5), "degree": [1]})
_add("special_case", "printed X~ of the named family minus the generic weighted X~", ("delta", "n", "m"), RECORDED,
     lambda c, p: (lambda rep: rep["printed"] - rep["generic"])(virasoro.special_case_report(c.r, p["delta"], p["n"], p["m"])),
     distinct_nm=True, defaults={"delta": [2], "n": range(-2, 3), "m": range(-2, 3)})
_add("item7", "theta-form prefactor T_n(lambda)", ("delta", "n"), RECORDED,
     lambda c, p: virasoro.item7_report(c.base, c.r, p["delta"], p["n"])["T"],
     defaults={"delta": [2], "n": range(-2, 3)})


def catalog() -> dict:
    out = {}
    for cid, c in sorted(CHECKS.items()):
        out[cid] = {
            "anchor": c.anchor,
            "kind": c.kind,
            "axes": list(c.axes),
            "grid": {a: [str(v) for v in c.defaults[a]] for a in c.axes if a in c.defaults},
            "degeneracy": c.degeneracy + ("; n = m skipped" if c.distinct_nm and "n = m" not in c.degeneracy else ""),
            "deformation": "required" if c.needs_r else "base parameters only",
        }
        if c.preconditions:
            out[cid]["preconditions"] = c.preconditions
    return out
