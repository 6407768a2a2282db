"""Acceptance suite: one PASS/FAIL line per criterion, each at its stated tolerance."""

import itertools
import json
import time
from fractions import Fraction as F
from pathlib import Path

import pytest

from rpqv import central, delta1, emt, virasoro
from rpqv.cli import main
from rpqv.errors import DegenerateIndexError, ParseError
from rpqv.findings import central_findings, write_findings
from rpqv.rexpr import BUILTINS, MALFORMED_CORPUS, builtin, custom, family_closed_form, parse_r, to_source
from rpqv.scalar import BaseParams

FAMILIES = ("JS", "CJ", "Quesne", "HN", "HB")
ROOT = Path(__file__).resolve().parent.parent
ST = BaseParams.from_roots(F(1, 2), F(1, 3), mu=1, nu=F(1, 2), g=F(3, 2))


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\nCRITERION {number} {'PASS' if ok else 'FAIL'}: {title}: {detail}")
        assert ok, detail
    return emit


def test_bracket_suite(report):
    start = time.perf_counter()
    checked = skipped = bad = 0
    for fam in FAMILIES:
        r = builtin(fam, ST)
        for delta, n, m, k in itertools.product((2, 3), range(-3, 4), range(-3, 4), range(-3, 4)):
            if n == m or n == 0 or m == 0:
                continue
            try:
                lhs, rhs = virasoro.bracket_sides(r, delta, n, m, k)
            except DegenerateIndexError:
                skipped += 1
                continue
            checked += 1
            bad += lhs != rhs
    elapsed = time.perf_counter() - start
    pin = virasoro.pq_bracket_sides(BaseParams(2, 1), 2, 2, 1, 0)
    t2 = emt.emt_bracket_sides(BaseParams(2, 1), 2, 1, 0)
    ok = bad == 0 and pin == (-16830, -16830) and t2 == (-16830, -16830) and elapsed < 30
    report(1, "bracket suite", ok,
           f"{checked} points exact, {bad} nonzero, {skipped} skipped (omega 0/0); "
           f"pin sides {pin[0]} / {pin[1]}, t2 sides {t2[0]} / {t2[1]}; {elapsed:.1f}s")


def test_weight_one_suite(report):
    bad = checked = 0
    for b in (BaseParams(2, 3), BaseParams(F(1, 4), F(1, 9))):
        js = builtin("JS", b)
        for n, m, k in itertools.product(range(-2, 4), range(-2, 4), range(-2, 3)):
            if n == m:
                continue
            for v in (delta1.delta1_bracket_check(js, n, m, k), delta1.tilde_bracket_check(js, n, m, k),
                      delta1.tilde_bracket_check(js, n, m, k, form="d17")):
                checked += 1
                bad += v != 0
        for rel, k in itertools.product(("d23", "d25", "d27"), range(-2, 3)):
            checked += 1
            bad += delta1.su11_check(js, rel, k) != 0
    pin = delta1.delta1_bracket_sides(builtin("JS", BaseParams(2, 3)), 1, 0, 0)
    report(2, "weight-one suite", bad == 0 and pin == (-1620, -1620), f"{checked} residuals, {bad} nonzero; pin sides {pin[0]} / {pin[1]}")


def test_number_tower_suite(report):
    bad = 0
    for name in BUILTINS:
        r = builtin(name, ST)
        bad += sum(r.number(n) != family_closed_form(r, n) for n in range(-6, 7))
    e12 = sum(virasoro.e12_residual(ST, x) != 0 for x in range(-6, 7))
    js = builtin("JS", ST)
    om = sum(virasoro.omega(js, d, n) != -((ST.s * ST.t) ** int(2 * d * (n + 1)))
             for d in (F(1, 2), 1, 2, 3) for n in range(-3, 4))
    report(3, "number tower", bad == e12 == om == 0, f"closed-form mismatches {bad}, e12 {e12}, JS omega {om}")


def test_classical_limit_suite(report):
    violations, nonmonotone = [], 0
    for n, m in itertools.product(range(-3, 4), range(-3, 4)):
        errs = []
        for e in (3, 4, 5, 6):
            eps = F(1, 10 ** e)
            err = abs(virasoro.classical_limit_probe("JS", n, m, eps) - (n - m))
            errs.append(err)
            if err > virasoro.classical_limit_bound(n, m, eps):
                violations.append((n - m, e))
        nonmonotone += any(not (b < a or a == b == 0) for a, b in zip(errs, errs[1:]))
    diffs = sorted({d for d, _ in violations})
    report(4, "classical limit", not violations and not nonmonotone,
           f"{len(violations)} bound violations (n-m in {diffs}; error there is eps/(1-eps) > eps), "
           f"{nonmonotone} non-monotone pairs")


def test_alpha_suite(report):
    lines, ok = [], True
    js_base = BaseParams.from_roots(F(1, 2), F(1, 3))
    for N in (5, 10, 20):
        a = delta1.kdv_alpha("JS", js_base, N)
        good = abs(a.partial(N) - a.closed_form) <= delta1.js_alpha_bound(js_base, N)
        ok &= good
        lines.append(f"JS N={N} {'ok' if good else 'off'}")
    cases = (("CJ", BaseParams(F(1, 9), F(1, 4))), ("Quesne", BaseParams(F(1, 4), F(1, 9))),
             ("HN", BaseParams.from_roots(F(1, 2), F(1, 3), mu=1, nu=1, g=F(3, 2))))
    for fam, b in cases:
        a = delta1.kdv_alpha(fam, b, 40)
        gap = abs(a.partial(40) - a.closed_form)
        good = gap <= F(1, 10 ** 12)
        ok &= good
        lines.append(f"{fam} |S40 - closed| = {float(gap):.3g}")
    report(5, "alpha constants", ok, "; ".join(lines))


def test_emt_suite(report):
    b = BaseParams.from_roots(F(1, 2), F(1, 3))
    seq = emt.solve_two_term(b, F(1), 10)
    two_term = all(emt.two_term_residual(b, seq, m) == 0 for m in range(3, 11))
    c0_forced = (emt.recursion_residual("pq", b, emt.CentralSequence({0: F(1), 1: F(2)}), 0, 1) != 0
                 and emt.recursion_residual("pq", b, emt.CentralSequence({0: F(0), 1: F(2)}), 0, 1) == 0)
    violating = all(emt.recursion_residual("pq", b, emt.CentralSequence({n: F(1), -n: F(2), 0: F(0)}), n, -n) != 0
                    for n in range(1, 5))
    # c_n = c_-n forced means the symmetric candidate satisfies the (n, -n) instance
    ratios = [emt.forced_ratio("pq", b, n) for n in range(1, 5)]
    symmetric = all(r == 1 for r in ratios)
    cand = {a: emt.exponent_candidate(b, a, range(2, 11)) for a in (-2, 1)}
    pin = (all(emt.two_term_residual(b, cand[-2], m) == 0 for m in range(3, 11))
           and any(emt.two_term_residual(b, cand[1], m) != 0 for m in range(3, 11)))
    ok = two_term and c0_forced and violating and symmetric and pin
    report(6, "energy-momentum recursions", ok,
           f"two-term {two_term}, c0 forced {c0_forced}, violating candidates nonzero {violating}, "
           f"c_n = c_-n forced {symmetric} (forced c_-1/c_1 = {ratios[0]} = -(pq)^-3), exponent pin {pin}")


def test_checker_oracle_suite(report, tmp_path):
    grid = central.seeded_grid()
    jac = sum(central.jacobi_residual(g["r"], g["delta"], g["n"], g["m"], g["k"], g["degree"])
              != central.jacobi_oracle(g["r"], g["delta"], g["n"], g["m"], g["k"], g["degree"]) for g in grid)
    cyc = sum(central.cyclic_center_residual(g["r"], g["delta"], g["n"], g["m"])
              != central.cyclic_center_oracle(g["r"], g["delta"], g["n"], g["m"]) for g in grid)
    js = builtin("JS", BaseParams.from_roots(F(1, 2), F(1, 3)))
    prop = sum(central.gamma_identity_check(js, F(1, 2), k, 2).proportionality != 0 for k in range(-4, 5))
    paths = []
    for i in range(2):
        path = tmp_path / f"findings{i}.jsonl"
        write_findings(path, central_findings(js))
        paths.append(path.read_bytes())
    stable = paths[0] == paths[1] and len(paths[0]) > 0
    ok = len(grid) == 20 and jac == cyc == prop == 0 and stable
    report(7, "checker-oracle equivalence", ok,
           f"{len(grid)} seeded points, Jacobi mismatches {jac}, cyclic mismatches {cyc}, "
           f"half-weight proportionality failures {prop}, findings reproducible {stable}")


def test_parser_suite(report):
    mismatch = 0
    for name in BUILTINS:
        native = builtin(name, ST)
        parsed = custom(native.source(), ST)
        mismatch += sum(parsed.number(n) != native.number(n) for n in range(-6, 7))
    positioned = 0
    for text, cls in MALFORMED_CORPUS:
        try:
            parse_r(text)
        except cls as exc:
            positioned += isinstance(exc, ParseError) and f"position {exc.position}" in str(exc)
    samples = ["(u - v)/(p - q)", "g*v^(1/2)/u^(-3/2)*(u*v - 1)", "-(u - v)^2 - -u", "u/(v/p)*q - (1 - u)"]
    stable = all(to_source(parse_r(to_source(parse_r(s)))) == to_source(parse_r(s)) for s in samples)
    ok = mismatch == 0 and positioned == len(MALFORMED_CORPUS) == 12 and stable
    report(8, "parser", ok, f"source/native mismatches {mismatch}, positioned errors {positioned}/12, round trip {stable}")


def test_cli_suite(report, tmp_path):
    outs, codes = [], []
    for i in range(2):
        out = tmp_path / f"ref{i}.json"
        codes.append(main(["run", "--config", str(ROOT / "configs" / "reference.ini"), "--out", str(out)]))
        data = json.loads(out.read_text())
        data.pop("timestamp")
        outs.append(json.dumps(data, sort_keys=True))
    stable = outs[0] == outs[1]
    summary = json.loads(outs[0])["summary"]
    failing = [c for c, v in summary["per_check"].items() if v["fail"]]
    bad_code = main(["run", "--config", str(ROOT / "configs" / "failing.ini"), "--out", str(tmp_path / "f.json")])
    ok = stable and codes == [0, 0] and bad_code == 1
    report(9, "command line", ok,
           f"byte-stable {stable}, reference exit {codes[0]} (failing checks: {', '.join(failing) or 'none'}), "
           f"toggled-convention exit {bad_code}")
