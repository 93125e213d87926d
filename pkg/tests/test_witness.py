import dataclasses
import random

import pytest

from modquat.criteria import (
    ModularTriplet,
    RunOptions,
    Verdict,
    check_theorem_Sh,
    compute_exceptional_set,
    run_all,
)
from modquat.quad_field import QQ, FieldDesc, PrimeIdealF, decompose_prime
from modquat.quaternion_alg import QuatDisc, quat_discriminant
from modquat.rational_arith import primes_up_to
from modquat.witness import brute_is_exceptional_Q, brute_legendre, replay_sh, replay_triplet


def test_brute_helpers():
    assert brute_legendre(-3, 7) == 1 and brute_legendre(3, 7) == -1 and brute_legendre(14, 7) == 0
    for ell in primes_up_to(40):
        members = set(compute_exceptional_set(QQ, ell).rational_primes())
        for N in primes_up_to(400):
            assert brute_is_exceptional_Q(N, ell) == (N in members), (N, ell)


def _sh_pairs(bound=200):
    odd = primes_up_to(bound)[1:]
    return [(M, N) for M in odd for N in odd if M != N]


def test_every_sh_exclusion_replays():
    excluded = 0
    for M, N in _sh_pairs():
        v = check_theorem_Sh(M, N)
        if v.is_excluded:
            excluded += 1
            assert replay_sh(M, N, v), (M, N, v)
    assert excluded > 1500


def _bump(v: Verdict, **changes) -> Verdict:
    return dataclasses.replace(v, witness=dataclasses.replace(v.witness, **changes))


def test_tampered_sh_witness_is_rejected():
    v = check_theorem_Sh(3, 199)
    assert replay_sh(3, 199, v)
    assert not replay_sh(3, 199, _bump(v, ell=7))
    assert not replay_sh(3, 199, _bump(v, criterion="Sh_gate_Nmod4"))
    assert not replay_sh(3, 7, check_theorem_Sh(3, 7))
    # (-5/11) = -1, so the same witness does not certify (11, 199)
    assert not replay_sh(11, 199, v)


def test_sh_ii_witness_replays_and_tampering_fails():
    found = 0
    for M, N in _sh_pairs(150):
        v = check_theorem_Sh(M, N)
        if v.is_excluded and v.witness.criterion == "Sh_ii":
            found += 1
            extra = dict(v.witness.extra)
            if extra["ell_d_MN"] is not None:
                extra["ell_d_MN"] = 2  # the d = MN branch only uses odd ell
                assert not replay_sh(M, N, _bump(v, extra=tuple(sorted(extra.items()))))
    assert found


def _random_triplets(F, count, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        y = rng.randint(-20, 20) if F.degree == 2 else 0
        m = F(rng.randint(1, 200), y)
        d = rng.randint(1, 200)
        try:
            disc = quat_discriminant(d, m)
            if not len(disc):
                continue
            # perturb d half the time so more criteria fire
            out.append(ModularTriplet(F, disc, m, d if rng.random() < 0.5 else rng.randint(1, 200)))
        except ValueError:
            continue
    return out


@pytest.mark.parametrize("D", [1, 6, 13])
def test_run_all_exclusions_replay(D):
    F = QQ if D == 1 else FieldDesc.quadratic(D)
    criteria = set()
    for t in _random_triplets(F, 150, D):
        v = run_all(t, RunOptions(ell_bound=60, check_eq1=True, check_sy=True))
        if v.is_excluded:
            criteria.add(v.witness.criterion)
            assert replay_triplet(t, v), (t, v)
    assert len(criteria) >= 3


def test_MaIn_witness_replays_over_Q():
    t = ModularTriplet(QQ, QuatDisc(QQ, (PrimeIdealF(3), PrimeIdealF(199))), QQ(3), 199)
    v = run_all(t)
    assert v.witness.criterion == "MaIn" and replay_triplet(t, v)
    assert not replay_triplet(t, _bump(v, ell=3))
    assert not replay_triplet(t, _bump(v, prime_ideal=PrimeIdealF(7)))
    assert not replay_triplet(t, Verdict.no_obstruction(100))


def test_tampered_triplet_witness_is_rejected():
    F = FieldDesc.quadratic(5)
    (P2,) = decompose_prime(F, 2)
    t = ModularTriplet(F, QuatDisc(F, (P2, PrimeIdealF(11, "split", 4))), F(8, 9), 1)
    v = run_all(t)
    assert v.witness.criterion == "condition_i" and replay_triplet(t, v)
    assert not replay_triplet(t, _bump(v, prime_ideal=P2))
    assert not replay_triplet(t, _bump(v, criterion="unknown"))
