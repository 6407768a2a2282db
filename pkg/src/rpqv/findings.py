"""Report-only values, written one JSON object per line."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Optional

from .central import cyclic_center_residual, gamma_identity_check
from .errors import DomainError
from .rexpr import RFunction
from .scalar import format_scalar


def _plain(value):
    if isinstance(value, Fraction):
        return format_scalar(value)
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def record(kind: str, r: Optional[RFunction], point: dict, value, status: str = "recorded", reason: str = "") -> dict:
    out = {"kind": kind, "deformation": r.name if r is not None else None,
           "base": _plain(r.base.describe()) if r is not None else None,
           "point": _plain(point), "value": _plain(value), "status": status}
    if reason:
        out["reason"] = reason
    return out


def dumps(rec: dict) -> str:
    return json.dumps(rec, sort_keys=True, ensure_ascii=False)


def write_findings(path, records: Iterable[dict]) -> int:
    lines = [dumps(rec) for rec in records]
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    return len(lines)


def read_findings(path) -> Iterator[dict]:
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                yield json.loads(line)


def central_findings(r: RFunction, ks: Iterable[int] = range(-4, 5), degree: int = 1,
                     pairs: Iterable[tuple] = ((1, 2), (2, 1), (1, -3), (2, -1)), normalization=1) -> list[dict]:
    """Gamma-identity values (weights 1/2 and 2) and cyclic-center residuals."""
    out = []
    for delta in (Fraction(1, 2), 2):
        for k in ks:
            point = {"delta": delta, "k": k, "degree": degree}
            try:
                g = gamma_identity_check(r, delta, k, degree)
            except DomainError as exc:
                out.append(record("gamma_identity", r, point, None, "skipped", str(exc)))
                continue
            out.append(record("gamma_identity", r, point, {"g1": g.g1, "g2_or_g3": g.g2_or_g3}))
    for delta in (2, 3):
        for n, m in pairs:
            point = {"delta": delta, "n": n, "m": m}
            try:
                value = cyclic_center_residual(r, delta, n, m, normalization)
            except DomainError as exc:
                out.append(record("cyclic_center", r, point, None, "skipped", str(exc)))
                continue
            out.append(record("cyclic_center", r, point, value))
    return out
