"""Necessary conditions on candidate endomorphism data (D, m, d).

A triplet names a quaternion discriminant D over F, a totally positive
square-free m in R_F and a square-free d >= 1 standing for K = Q(sqrt -d).
Every check below is a necessary condition for the triplet to come from a
modular abelian variety: a check either passes, does not apply, or
excludes the triplet with a witness that can be re-evaluated in isolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .quad_field import (
    QQ,
    AlgInt,
    FieldDesc,
    PrimeIdealF,
    class_number_is_one,
    contains_sqrt,
    decompose_prime,
    exceeds_at_some_embedding,
    factor_element,
    is_principal,
    is_square_in_F,
    is_totally_positive,
    valuation,
    weil_box,
)
from .quaternion_alg import (
    QuatDisc,
    a_ell_ideal,
    check_SY,
    quat_discriminant,
    splits_in_F_zeta_n,
    symbol_ne_one,
)
from .rational_arith import (
    factorize,
    is_prime,
    is_squarefree,
    kronecker,
    ord2,
    primes_up_to,
)

__all__ = [
    "EXCLUDED",
    "NOT_APPLICABLE",
    "NO_OBSTRUCTION",
    "PASS",
    "ExceptionalSet",
    "ModularTriplet",
    "RunOptions",
    "Verdict",
    "Witness",
    "check_ad",
    "check_condition_i",
    "check_condition_ii",
    "check_eq1",
    "check_forced_K",
    "check_prop_unr",
    "check_sy",
    "check_theorem_MaIn",
    "check_theorem_Sh",
    "compute_exceptional_set",
    "compute_kappa_B",
    "disc_K",
    "enumerate_candidate_K",
    "forced_K",
    "run_all",
]

EXCLUDED = "Excluded"
NO_OBSTRUCTION = "NoObstructionFound"
NOT_APPLICABLE = "NotApplicable"
PASS = "Pass"  # a single check that did not fire; never the result of run_all

FULL, REDUCED = "full", "reduced"

DEFAULT_ELL_BOUND = 100


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class Witness:
    """What fired: the criterion id plus the auxiliary primes needed to replay it."""

    criterion: str
    reason: str
    ell: int | None = None
    prime_ideal: PrimeIdealF | None = None
    extra: tuple[tuple[str, int | None], ...] = ()

    def to_json(self) -> dict:
        out: dict = {"criterion": self.criterion, "reason": self.reason}
        if self.ell is not None:
            out["ell"] = self.ell
        if self.prime_ideal is not None:
            out["prime_ideal"] = self.prime_ideal.to_json()
        if self.extra:
            out["extra"] = dict(self.extra)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> Witness:
        P = obj.get("prime_ideal")
        return cls(
            criterion=obj["criterion"],
            reason=obj["reason"],
            ell=obj.get("ell"),
            prime_ideal=None if P is None else _prime_from_json(P),
            extra=tuple(sorted(obj.get("extra", {}).items())),
        )


def _prime_from_json(obj: dict) -> PrimeIdealF:
    kind = obj.get("kind", "split")
    f = 2 if kind == "inert" else 1
    return PrimeIdealF(obj["p"], kind, obj.get("root"), f)


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: Witness | None = None
    bound: int | None = None
    unmet: str | None = None

    @classmethod
    def excluded(cls, criterion: str, reason: str, ell: int | None = None,
                 prime_ideal: PrimeIdealF | None = None, **extra: int | None) -> Verdict:
        return cls(EXCLUDED, Witness(criterion, reason, ell, prime_ideal, tuple(sorted(extra.items()))))

    @classmethod
    def passed(cls) -> Verdict:
        return cls(PASS)

    @classmethod
    def not_applicable(cls, unmet: str) -> Verdict:
        return cls(NOT_APPLICABLE, unmet=unmet)

    @classmethod
    def no_obstruction(cls, bound: int) -> Verdict:
        return cls(NO_OBSTRUCTION, bound=bound)

    @property
    def is_excluded(self) -> bool:
        return self.status == EXCLUDED

    def to_json(self) -> dict:
        out: dict = {"status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.bound is not None:
            out["bound"] = self.bound
        if self.unmet is not None:
            out["unmet"] = self.unmet
        return out

    @classmethod
    def from_json(cls, obj: dict) -> Verdict:
        w = obj.get("witness")
        return cls(
            obj["status"],
            None if w is None else Witness.from_json(w),
            obj.get("bound"),
            obj.get("unmet"),
        )


# ---------------------------------------------------------------------------
# the triplet


def disc_K(d: int) -> int:
    """Discriminant of Q(sqrt -d) for square-free d >= 1."""
    return -d if -d % 4 == 1 else -4 * d


def _has_square_factor(m: AlgInt) -> bool:
    """Whether beta^2 | m for a non-unit beta found by the cheap tests.

    Detects rational square factors and squares of principal primes.
    Squares built only from non-principal primes are not detected.
    """
    if any(e >= 2 for _, e in factorize(m.content())[1]):
        return True
    if m.field.degree == 1:
        return False
    return any(e >= 2 and is_principal(m.field, P) for P, e in factor_element(m))


@dataclass(frozen=True)
class ModularTriplet:
    """Candidate data (D, m, d); K = Q(sqrt -d) and E = F(sqrt m) are implicit."""

    field: FieldDesc
    disc: QuatDisc
    m: AlgInt
    d: int
    assume_locally_maximal: bool = True

    def __post_init__(self) -> None:
        if self.m.field != self.field or self.disc.field != self.field:
            raise ValueError("m, disc and field disagree")
        if not len(self.disc):
            raise ValueError("the discriminant must be nontrivial")
        for P in self.disc:
            if P not in decompose_prime(self.field, P.p):
                raise ValueError(f"{P} is not a prime ideal of {self.field}")
        if self.d < 1 or not is_squarefree(self.d):
            raise ValueError(f"d must be a square-free integer >= 1, got {self.d}")
        if self.m.is_zero() or not is_totally_positive(self.m):
            raise ValueError(f"m = {self.m} is not totally positive")
        if _has_square_factor(self.m):
            raise ValueError(f"m = {self.m} is not square-free")

    @property
    def disc_K(self) -> int:
        return disc_K(self.d)

    def divides_2m(self, P: PrimeIdealF) -> bool:
        return P.p == 2 or valuation(self.m, P) > 0

    def eligible_primes(self) -> list[PrimeIdealF]:
        """Primes of D not dividing 2m, in canonical order."""
        return [P for P in self.disc if not self.divides_2m(P)]

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "m": {"x": self.m.x, "y": self.m.y},
            "disc": [P.to_json() for P in self.disc],
            "d": self.d,
            "assume_locally_maximal": self.assume_locally_maximal,
        }

    @classmethod
    def from_json(cls, obj: dict) -> ModularTriplet:
        F = FieldDesc.from_json(obj["field"])
        m = obj["m"]
        primes = []
        for entry in obj["disc"]:
            kind = entry.get("kind") or ("split" if F.degree == 1 else None)
            if kind is None:
                raise ValueError(f"prime {entry} needs a kind over {F}")
            P = _prime_from_json({**entry, "kind": kind})
            match = [Q for Q in decompose_prime(F, P.p) if Q == P]
            if not match:
                raise ValueError(f"{entry} is not a prime ideal of {F}")
            primes.append(match[0])
        return cls(
            F,
            QuatDisc(F, tuple(primes)),
            AlgInt(F, m["x"], m.get("y", 0)),
            obj["d"],
            obj.get("assume_locally_maximal", True),
        )


# ---------------------------------------------------------------------------
# exceptional sets


@dataclass(frozen=True)
class ExceptionalSet:
    ell: int
    field: FieldDesc
    variant: str
    members: frozenset[PrimeIdealF]

    def __contains__(self, P: object) -> bool:
        return P in self.members

    def __iter__(self) -> Iterator[PrimeIdealF]:
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def rational_primes(self) -> list[int]:
        return sorted({P.p for P in self.members})

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "ell": self.ell,
            "variant": self.variant,
            "members": [P.to_json() for P in self],
        }


def exceptional_values(F: FieldDesc, ell: int, variant: str = FULL) -> Iterator[AlgInt]:
    """The nonzero values a^2 - s*ell (and a^4 - 4a^2 ell + ell^2) over the Weil box."""
    for a in weil_box(F, ell):
        a2 = a * a
        for s in range(5):
            v = a2 - s * ell
            if not v.is_zero():
                yield v
        if variant == FULL:
            v = a2 * a2 - 4 * ell * a2 + ell * ell
            if not v.is_zero():
                yield v


@lru_cache(maxsize=4096)
def compute_exceptional_set(F: FieldDesc, ell: int, variant: str = FULL) -> ExceptionalSet:
    """Primes over ell together with every prime dividing a nonzero exceptional value."""
    if variant not in (FULL, REDUCED):
        raise ValueError(f"unknown variant {variant!r}")
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    members = set(decompose_prime(F, ell))
    seen: set[AlgInt] = set()
    for v in exceptional_values(F, ell, variant):
        if v in seen or -v in seen:
            continue
        seen.add(v)
        members.update(P for P, _ in factor_element(v))
    return ExceptionalSet(ell, F, variant, frozenset(members))


# ---------------------------------------------------------------------------
# kappa(B) and the forced imaginary field


def _cyclotomic_orders(F: FieldDesc) -> tuple[int, ...]:
    """n >= 3 with zeta_n + 1/zeta_n in F."""
    extra = {2: (8,), 3: (12,), 5: (5, 10)}.get(F.D, ()) if F.degree == 2 else ()
    return tuple(sorted((3, 4, 6) + extra))


def compute_kappa_B(B: QuatDisc) -> int:
    """lcm of 2 and the orders n whose cyclotomic extension splits no relevant prime of B."""
    F = B.field
    ells = B.rational_primes()
    out = 2
    for n in _cyclotomic_orders(F):
        ok = True
        for ell in ells:
            a_ell = set(a_ell_ideal(F, ell).primes())
            if any(splits_in_F_zeta_n(P, n, F) for P in B if P not in a_ell):
                ok = False
                break
        if ok:
            out = math.lcm(out, n)
    return out


def forced_K(P: PrimeIdealF, kappa_B: int) -> int | None:
    """The prime N under P when K is forced to be Q(sqrt -N), else None."""
    if ord2(2 * kappa_B) <= ord2(P.q + 1):
        return P.p
    return None


# ---------------------------------------------------------------------------
# single checks


def _maximal(t: ModularTriplet) -> bool:
    return t.assume_locally_maximal


def check_condition_i(t: ModularTriplet) -> Verdict:
    """Odd part of (m) must divide D; with class number one, (m) itself must."""
    if not _maximal(t):
        return Verdict.not_applicable("assume_locally_maximal")
    fac = factor_element(t.m)
    for P, e in fac:
        if e % 2 and P not in t.disc:
            return Verdict.excluded("condition_i", f"{P} divides the odd part of (m) but not D", prime_ideal=P)
    if class_number_is_one(t.field):
        for P, e in fac:
            if e >= 2:
                return Verdict.excluded(
                    "condition_i", f"{P}^{e} divides (m) although h(F) = 1", prime_ideal=P
                )
    return Verdict.passed()


def check_condition_ii(t: ModularTriplet) -> Verdict:
    """Primes of D away from 2m must lie over primes N = 3 mod 4."""
    if not _maximal(t):
        return Verdict.not_applicable("assume_locally_maximal")
    for P in t.eligible_primes():
        if P.p % 4 == 1:
            return Verdict.excluded("condition_ii", f"{P} lies over {P.p} = 1 mod 4", prime_ideal=P)
    return Verdict.passed()


def check_ad(t: ModularTriplet) -> Verdict:
    """Primes of D away from 2m must divide d."""
    for P in t.eligible_primes():
        if t.d % P.p:
            return Verdict.excluded("ad", f"{P} lies over {P.p}, which does not divide d = {t.d}", prime_ideal=P)
    return Verdict.passed()


def check_eq1(t: ModularTriplet) -> Verdict:
    """D must be the discriminant of (-d, m / F)."""
    actual = quat_discriminant(t.d, t.m)
    if actual != t.disc:
        got = ", ".join(map(str, actual)) or "none"
        return Verdict.excluded("eq1", f"(-{t.d}, m) ramifies at [{got}], not at D")
    return Verdict.passed()


def check_sy(t: ModularTriplet) -> Verdict:
    """Over Q the product of D must be m or m*N for a prime N."""
    if t.field.degree != 1:
        return Verdict.not_applicable("field_is_Q")
    if not check_SY(t.disc, t.m.x):
        return Verdict.excluded("SY", f"D = {t.disc.norm()} is neither m nor m*N")
    return Verdict.passed()


def _prop_unr_hypotheses(t: ModularTriplet) -> str | None:
    fac = factor_element(t.m)
    if any(e > 1 for _, e in fac):
        return "m_ideal_squarefree"
    if not (t.m == t.field(3) or exceeds_at_some_embedding(t.m, 4)):
        return "m_is_3_or_large"
    if not any(P.f % 2 for P in t.eligible_primes()):
        return "odd_degree_prime_away_from_2m"
    return None


def _unramified_support(t: ModularTriplet) -> set[int]:
    return set(factorize(t.disc.norm() * t.field.disc_F)[1].primes())


def check_prop_unr(t: ModularTriplet) -> Verdict:
    """K may only ramify at primes dividing N(D) * disc(F)."""
    if not _maximal(t):
        return Verdict.not_applicable("assume_locally_maximal")
    unmet = _prop_unr_hypotheses(t)
    if unmet:
        return Verdict.not_applicable(unmet)
    allowed = _unramified_support(t)
    for p in factorize(t.disc_K)[1].primes():
        if p not in allowed:
            return Verdict.excluded(
                "prop_unr", f"K ramifies at {p}, which does not divide N(D) disc(F) = {t.disc.norm() * t.field.disc_F}",
                ell=p,
            )
    return Verdict.passed()


def check_forced_K(t: ModularTriplet, kappa_B: int | None = None) -> Verdict:
    """If some prime of D forces K = Q(sqrt -N), d must equal N."""
    if not _maximal(t):
        return Verdict.not_applicable("assume_locally_maximal")
    eligible = t.eligible_primes()
    if not eligible:
        return Verdict.not_applicable("prime_of_D_away_from_2m")
    kappa = compute_kappa_B(t.disc) if kappa_B is None else kappa_B
    for P in eligible:
        N = forced_K(P, kappa)
        if N is not None and N != t.d:
            return Verdict.excluded("forced_K", f"{P} forces K = Q(sqrt -{N}) but d = {t.d}", prime_ideal=P)
    return Verdict.passed()


def _mixed_cyclotomic(F: FieldDesc) -> bool:
    # zeta_n + 1/zeta_n lies in F for some n outside {1, 2, 3, 4, 6}
    return F.degree == 2 and F.D in (2, 3, 5)


def _quartic_generators(F: FieldDesc, ell: int) -> list[tuple[AlgInt, AlgInt]]:
    """(a^2, symbol argument) for a^2 = ell(2 +- sqrt 3) when that is a square in F."""
    if F.degree != 2 or F.D != 3:
        return []
    r3 = F.sqrt_D()
    out = []
    for sign in (1, -1):
        a2 = (F(2) + r3 * sign) * ell
        if is_square_in_F(a2):
            # 49 (-1 -+ 4 sqrt3 / 7) = -49 -+ 28 sqrt 3
            out.append((a2, F(-49) - r3 * (28 * sign)))
    return out


def _bullets_hold(t: ModularTriplet, ell: int, use_reduced: bool) -> str | None:
    """Name of the first alternative that rescues the triplet at ell, or None."""
    F = t.field

    def all_nonsplit(arg: AlgInt, skip_over: int | None) -> bool:
        return all(symbol_ne_one(arg, P) for P in t.disc if P.p != skip_over)

    if all_nonsplit(F(-ell), None):
        return "minus_ell"
    if contains_sqrt(F, 2 * ell) and all_nonsplit(F(-1), ell):
        return "sqrt_2ell"
    if (contains_sqrt(F, ell) or contains_sqrt(F, 3 * ell)) and all_nonsplit(F(-3), ell):
        return "sqrt_ell_or_3ell"
    if not use_reduced:
        for _, arg in _quartic_generators(F, ell):
            # primes over 7 are not covered by the symbol of -49 -+ 28 sqrt 3
            if all(symbol_ne_one(arg, P) for P in t.disc if P.p not in (ell, 7)):
                return "quartic"
    return None


def check_theorem_MaIn(t: ModularTriplet, P0: PrimeIdealF, ell: int, use_reduced: bool = False) -> Verdict:
    """Either P0 is exceptional for ell or some local non-splitting alternative holds."""
    if not _maximal(t):
        return Verdict.not_applicable("assume_locally_maximal")
    if P0 not in t.disc or t.divides_2m(P0):
        return Verdict.not_applicable("P0_in_D_away_from_2m")
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    if kronecker(t.disc_K, ell) == -1:
        return Verdict.not_applicable("ell_splits_or_ramifies_in_K")
    if _mixed_cyclotomic(t.field):
        return Verdict.not_applicable("no_extra_cyclotomic_subfield")
    variant = REDUCED if use_reduced else FULL
    if P0 in compute_exceptional_set(t.field, ell, variant):
        return Verdict.passed()
    if _bullets_hold(t, ell, use_reduced):
        return Verdict.passed()
    return Verdict.excluded(
        "MaIn",
        f"{P0} is not exceptional for ell = {ell} and some prime of D splits in every allowed extension",
        ell=ell,
        prime_ideal=P0,
        reduced=int(use_reduced),
    )


# ---------------------------------------------------------------------------
# candidate imaginary quadratic fields


def enumerate_candidate_K(F: FieldDesc, D: QuatDisc, m: AlgInt, d_bound: int) -> list[int]:
    """Square-free d <= d_bound compatible with the discriminant, ramification and forcing rules."""
    out = []
    kappa = compute_kappa_B(D)
    for d in range(1, d_bound + 1):
        if not is_squarefree(d):
            continue
        t = ModularTriplet(F, D, m, d)
        if quat_discriminant(d, m) != D:
            continue
        if check_ad(t).is_excluded or check_prop_unr(t).is_excluded:
            continue
        if check_forced_K(t, kappa).is_excluded:
            continue
        out.append(d)
    return out


# ---------------------------------------------------------------------------
# the (M, N) sieve over Q


@lru_cache(maxsize=None)
def _is_exceptional_Q(N: int, ell: int) -> bool:
    return PrimeIdealF(N) in compute_exceptional_set(QQ, ell, FULL)


def _first_d_N_witness(M: int, N: int, ells: Iterable[int]) -> int | None:
    for ell in ells:
        if ell == N:
            continue
        if kronecker(ell, N) == 1 and not _is_exceptional_Q(N, ell) and kronecker(-ell, M) == 1:
            return ell
    return None


def _first_d_MN_witness(M: int, N: int, ells: Iterable[int]) -> int | None:
    for ell in ells:
        if ell == 2:
            continue
        if kronecker(-M * N, ell) == 1 and not _is_exceptional_Q(N, ell):
            return ell
    return None


def check_theorem_Sh(M: int, N: int, ell_bound: int = DEFAULT_ELL_BOUND) -> Verdict:
    """Decide the pair (D = MN, m = M) over Q up to ell_bound."""
    for x in (M, N):
        if x % 2 == 0 or not is_prime(x):
            raise ValueError(f"{x} is not an odd prime")
    if M == N:
        raise ValueError("M and N must differ")
    if N % 4 != 3:
        return Verdict.excluded("Sh_gate_Nmod4", f"N = {N} is not 3 mod 4")
    if kronecker(-N, M) != -1:
        return Verdict.excluded("Sh_gate_symbol", f"(-{N}/{M}) != -1")
    ells = primes_up_to(ell_bound)
    if M % 4 == 3:
        ell = _first_d_N_witness(M, N, (p for p in ells if p != 2))
        if ell is None:
            return Verdict.no_obstruction(ell_bound)
        return Verdict.excluded(
            "Sh_i", f"({ell}/{N}) = 1, {N} not exceptional for {ell}, (-{ell}/{M}) = 1", ell=ell
        )
    ell_N = _first_d_N_witness(M, N, ells)
    if ell_N is None:
        return Verdict.no_obstruction(ell_bound)
    if N % 8 != 3:
        return Verdict.excluded(
            "Sh_ii", f"d = N refuted at ell = {ell_N}; d = MN refuted by N = {N % 8} mod 8",
            ell=ell_N, ell_d_N=ell_N, ell_d_MN=None,
        )
    ell_MN = _first_d_MN_witness(M, N, ells)
    if ell_MN is None:
        return Verdict.no_obstruction(ell_bound)
    return Verdict.excluded(
        "Sh_ii", f"d = N refuted at ell = {ell_N}; d = MN refuted at ell = {ell_MN}",
        ell=max(ell_N, ell_MN), ell_d_N=ell_N, ell_d_MN=ell_MN,
    )


# ---------------------------------------------------------------------------
# orchestration


@dataclass(frozen=True)
class RunOptions:
    ell_bound: int = DEFAULT_ELL_BOUND
    check_eq1: bool = False
    check_sy: bool = False


def _reduced_mode(t: ModularTriplet, P0: PrimeIdealF, kappa: int) -> bool:
    return kappa % 4 == 0 and forced_K(P0, kappa) == t.d


def run_all(t: ModularTriplet, options: RunOptions | None = None) -> Verdict:
    """Run every check in a fixed order; the first exclusion wins."""
    opts = options or RunOptions()
    kappa = compute_kappa_B(t.disc)
    steps = [
        lambda: check_condition_i(t),
        lambda: check_condition_ii(t),
        lambda: check_ad(t),
        lambda: check_prop_unr(t),
        lambda: check_forced_K(t, kappa),
    ]
    if opts.check_eq1:
        steps.append(lambda: check_eq1(t))
    if opts.check_sy:
        steps.append(lambda: check_sy(t))
    for step in steps:
        v = step()
        if v.is_excluded:
            return v
    if not _maximal(t):
        return Verdict.not_applicable("assume_locally_maximal")
    eligible = t.eligible_primes()
    if eligible and not _mixed_cyclotomic(t.field):
        reduced = {P: _reduced_mode(t, P, kappa) for P in eligible}
        for ell in primes_up_to(opts.ell_bound):
            if kronecker(t.disc_K, ell) == -1:
                continue
            for P0 in eligible:
                v = check_theorem_MaIn(t, P0, ell, reduced[P0])
                if v.is_excluded:
                    return v
    return Verdict.no_obstruction(opts.ell_bound)
