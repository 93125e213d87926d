"""Known modular pairs of small level, stored as a fixture, and their consistency checks."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .criteria import (
    ModularTriplet,
    check_ad,
    check_condition_i,
    check_condition_ii,
    disc_K,
    enumerate_candidate_K,
)
from .quaternion_alg import quat_discriminant
from .rational_arith import factorize

__all__ = ["RowReport", "load_fixture", "verify_fixture", "verify_row"]

OK, FAIL, UNVERIFIED = "ok", "FAIL", "stored, unverified"


@dataclass(frozen=True)
class RowReport:
    index: int
    L: int
    degree: int
    status: str
    detail: str

    def line(self) -> str:
        return f"row {self.index:2d}  L={self.L:<5d} deg={self.degree}  {self.status}: {self.detail}"


def load_fixture(path: str | Path | None = None) -> dict:
    if path is None:
        text = resources.files("modquat").joinpath("data/table1.json").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return json.loads(text)


def _verify_rational(row: dict, t: ModularTriplet) -> list[str]:
    problems = []
    if sorted(P.p for P in t.disc) != sorted(row["D_norms"]):
        problems.append("stored triplet disagrees with the D column")
    if disc_K(t.d) != row["disc_K"]:
        problems.append(f"d = {t.d} gives disc(K) = {disc_K(t.d)}")
    got = quat_discriminant(t.d, t.m)
    if got != t.disc:
        problems.append(f"disc(-{t.d}, {t.m.x}) = {[P.p for P in got]}")
    for check in (check_condition_i, check_condition_ii, check_ad):
        v = check(t)
        if v.is_excluded:
            problems.append(f"{v.witness.criterion} fired: {v.witness.reason}")
    bound = max(t.d, 20)
    if t.d not in enumerate_candidate_K(t.field, t.disc, t.m, bound):
        problems.append(f"d = {t.d} missing from the candidate list up to {bound}")
    return problems


def _verify_norm_level(row: dict) -> list[str]:
    """Primes of D over odd p not dividing N(m) must have p = 3 mod 4."""
    problems = []
    for q in row["D_norms"]:
        (p, _), = factorize(q)[1]
        if p == 2 or row["norm_m"] % p == 0:
            continue
        if p % 4 != 3:
            problems.append(f"prime of norm {q} away from 2m lies over {p} = 1 mod 4")
    return problems


def verify_row(index: int, row: dict) -> RowReport:
    L, deg = row["L"], row["degree"]
    if deg > 2:
        return RowReport(index, L, deg, UNVERIFIED, "degree above 2")
    stored = row.get("triplet")
    if deg == 1:
        problems = _verify_rational(row, ModularTriplet.from_json(stored))
        detail = "discriminant matches; conditions i, ii, ad silent; d among candidates"
    elif stored is not None:
        t = ModularTriplet.from_json(stored)
        expected = row.get("expect_excluded")
        v = check_condition_i(t)
        problems = []
        if t.m.norm() != row["norm_m"] or sorted(P.q for P in t.disc) != sorted(row["D_norms"]):
            problems.append("stored triplet disagrees with the norm columns")
        if t.field.disc_F != row["disc_F"]:
            problems.append("stored field disagrees with disc(F)")
        if expected and (not v.is_excluded or v.witness.criterion != expected):
            problems.append(f"expected {expected} to fire, got {v.status}")
        detail = f"{expected} fires as expected" if expected else "explicit triplet consistent"
    else:
        problems = _verify_norm_level(row)
        detail = "condition ii consistent at norm level"
    if problems:
        return RowReport(index, L, deg, FAIL, "; ".join(problems))
    return RowReport(index, L, deg, OK, detail)


def verify_fixture(fixture: dict) -> list[RowReport]:
    return [verify_row(i, row) for i, row in enumerate(fixture["rows"], start=1)]
