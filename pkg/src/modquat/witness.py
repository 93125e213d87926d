"""Re-check exclusion witnesses without the production symbol and set code.

Symbols are recomputed by listing squares modulo p, and exceptional-set
membership by scanning the bounded trace values for divisibility.
Quadratic-field checks fall back to re-running the named criterion with
the named parameters after dropping the memoized exceptional sets.
"""

from __future__ import annotations

import math

from .criteria import (
    EXCLUDED,
    ModularTriplet,
    Verdict,
    check_ad,
    check_condition_i,
    check_condition_ii,
    check_eq1,
    check_forced_K,
    check_prop_unr,
    check_sy,
    check_theorem_MaIn,
    compute_exceptional_set,
)
from .quad_field import PrimeIdealF, divides, weil_box

__all__ = ["brute_legendre", "brute_is_exceptional_Q", "replay_sh", "replay_triplet"]


def brute_legendre(a: int, p: int) -> int:
    """(a/p) for an odd prime p by listing the squares mod p."""
    a %= p
    if a == 0:
        return 0
    return 1 if a in {x * x % p for x in range(1, p)} else -1


def _brute_is_local_square_Q(c: int, p: int) -> bool:
    v = 0
    while c % p == 0:
        c //= p
        v += 1
    if v % 2:
        return False
    if p == 2:
        return c % 8 == 1
    return brute_legendre(c, p) == 1


def brute_is_exceptional_Q(N: int, ell: int, quartic: bool = True) -> bool:
    """N in the exceptional set of ell over Q, by direct divisibility of every value."""
    if N == ell:
        return True
    r = math.isqrt(4 * ell)
    for a in range(-r, r + 1):
        values = [a * a - s * ell for s in range(5)]
        if quartic:
            values.append(a**4 - 4 * a * a * ell + ell * ell)
        if any(v != 0 and v % N == 0 for v in values):
            return True
    return False


def _brute_kronecker_2(a: int) -> int:
    # (a/2) for odd a
    return 1 if a % 8 in (1, 7) else -1


def _d_N_witness_holds(M: int, N: int, ell: int) -> bool:
    sym_ell_N = _brute_kronecker_2(N) if ell == 2 else brute_legendre(ell, N)
    return (
        ell != N
        and sym_ell_N == 1
        and not brute_is_exceptional_Q(N, ell)
        and brute_legendre(-ell, M) == 1
    )


def _d_MN_witness_holds(M: int, N: int, ell: int) -> bool:
    return ell % 2 == 1 and brute_legendre(-M * N, ell) == 1 and not brute_is_exceptional_Q(N, ell)


def replay_sh(M: int, N: int, verdict: Verdict) -> bool:
    """True iff the exclusion claimed for the pair (M, N) recomputes."""
    if verdict.status != EXCLUDED:
        return False
    w = verdict.witness
    extra = dict(w.extra)
    if w.criterion == "Sh_gate_Nmod4":
        return N % 4 != 3
    if w.criterion == "Sh_gate_symbol":
        return N % 4 == 3 and brute_legendre(-N, M) != -1
    if w.criterion == "Sh_i":
        return M % 4 == 3 and w.ell % 2 == 1 and _d_N_witness_holds(M, N, w.ell)
    if w.criterion == "Sh_ii":
        if M % 4 != 1 or not _d_N_witness_holds(M, N, extra["ell_d_N"]):
            return False
        ell_MN = extra.get("ell_d_MN")
        if ell_MN is None:
            return N % 8 != 3
        return _d_MN_witness_holds(M, N, ell_MN)
    return False


def _brute_kronecker(a: int, ell: int) -> int:
    if ell == 2:
        return 0 if a % 2 == 0 else _brute_kronecker_2(a)
    return brute_legendre(a, ell)


def _replay_MaIn_Q(t: ModularTriplet, P0: PrimeIdealF, ell: int, reduced: bool) -> bool:
    N = P0.p
    if N == 2 or t.m.x % N == 0 or _brute_kronecker(t.disc_K, ell) == -1:
        return False
    if brute_is_exceptional_Q(N, ell, quartic=not reduced):
        return False

    def rescued(arg: int, skip: int | None) -> bool:
        return all(not _brute_is_local_square_Q(arg, P.p) for P in t.disc if P.p != skip)

    if rescued(-ell, None):
        return False
    # over Q only sqrt(2 ell) for ell = 2 and sqrt(3 ell) for ell = 3 are rational
    if ell == 2 and rescued(-1, 2):
        return False
    if ell == 3 and rescued(-3, 3):
        return False
    return True


def _replay_MaIn_quadratic(t: ModularTriplet, P0: PrimeIdealF, ell: int, reduced: bool) -> bool:
    for a in weil_box(t.field, ell):
        a2 = a * a
        values = [a2 - s * ell for s in range(5)]
        if not reduced:
            values.append(a2 * a2 - 4 * ell * a2 + ell * ell)
        if any(not v.is_zero() and divides(P0, v) for v in values):
            return False
    if P0.p == ell:
        return False
    compute_exceptional_set.cache_clear()
    return check_theorem_MaIn(t, P0, ell, reduced).status == EXCLUDED


_REPLAYERS = {
    "condition_i": check_condition_i,
    "condition_ii": check_condition_ii,
    "ad": check_ad,
    "prop_unr": check_prop_unr,
    "forced_K": check_forced_K,
    "eq1": check_eq1,
    "SY": check_sy,
}


def replay_triplet(t: ModularTriplet, verdict: Verdict) -> bool:
    """True iff the exclusion claimed for the triplet recomputes."""
    if verdict.status != EXCLUDED:
        return False
    w = verdict.witness
    if w.criterion == "MaIn":
        if w.prime_ideal not in t.disc:
            return False
        reduced = bool(dict(w.extra).get("reduced", 0))
        if t.field.degree == 1:
            return _replay_MaIn_Q(t, w.prime_ideal, w.ell, reduced)
        return _replay_MaIn_quadratic(t, w.prime_ideal, w.ell, reduced)
    check = _REPLAYERS.get(w.criterion)
    if check is None:
        return False
    again = check(t)
    return again.status == EXCLUDED and again.witness == w
