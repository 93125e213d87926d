import random
from itertools import product

import pytest

from modquat.quad_field import QQ, FieldDesc, PrimeIdealF, decompose_prime, divides, is_local_square
from modquat.quaternion_alg import (
    QuatDisc,
    a_ell_ideal,
    check_SY,
    hilbert_symbol,
    hilbert_symbol_Q2,
    hilbert_symbol_Q2_bruteforce,
    quat_discriminant,
    ramified_places,
    splits_in_F_zeta_n,
    symbol_ne_one,
)
from modquat.rational_arith import factorize, primes_up_to
from oracles import hilbert_Q2_solubility, legendre_brute, two_adic_root

Q5 = FieldDesc.quadratic(5)


def _places(F, a, b):
    ps = {2}
    for n in (a.norm(), b.norm()):
        ps.update(factorize(n)[1].primes())
    return [P for p in sorted(ps) for P in decompose_prime(F, p)]


def _product_of_symbols(a, b):
    F = a.field
    out = 1
    for P in _places(F, a, b):
        out *= hilbert_symbol(a, b, P)
    for i in range(F.degree):
        out *= hilbert_symbol(a, b, i)
    return out


@pytest.mark.parametrize("p, expected", [(2, -1), (3, -1), (5, 1)])
def test_hilbert_examples(p, expected):
    assert hilbert_symbol(-3, 6, PrimeIdealF(p)) == expected


def test_hilbert_rejects_zero():
    with pytest.raises(ValueError):
        hilbert_symbol(0, 3, PrimeIdealF(3))
    with pytest.raises(ValueError):
        hilbert_symbol_Q2(4, 0)


def test_q2_formula_against_solubility():
    rng = random.Random(12)
    for _ in range(300):
        a = rng.choice([-1, 1]) * rng.randint(1, 400)
        b = rng.choice([-1, 1]) * rng.randint(1, 400)
        assert hilbert_symbol_Q2(a, b) == hilbert_Q2_solubility(a, b), (a, b)


def test_q2_formula_against_bruteforce_thousand():
    rng = random.Random(13)
    for _ in range(1000):
        a = rng.choice([-1, 1]) * rng.randint(1, 10**6)
        b = rng.choice([-1, 1]) * rng.randint(1, 10**6)
        assert hilbert_symbol_Q2(a, b) == hilbert_symbol_Q2_bruteforce(a, b), (a, b)


def test_odd_symbol_over_Q_against_tame_formula():
    for p in primes_up_to(60)[1:]:
        for a in range(-30, 31):
            for b in (-7, -3, -1, 2, 5, 6, p, -p, 3 * p):
                if a == 0:
                    continue
                # tame formula with brute-force Legendre symbols
                va, ua, vb, ub = 0, a, 0, b
                while ua % p == 0:
                    ua //= p
                    va += 1
                while ub % p == 0:
                    ub //= p
                    vb += 1
                sign = -1 if (va * vb * (p - 1) // 2) % 2 else 1
                expected = sign * legendre_brute(ua, p) ** vb * legendre_brute(ub, p) ** va
                assert hilbert_symbol(a, b, PrimeIdealF(p)) == expected, (a, b, p)


def test_reciprocity_over_Q():
    rng = random.Random(1)
    for _ in range(1000):
        a = QQ(rng.choice([-1, 1]) * rng.randint(1, 10**5))
        b = QQ(rng.choice([-1, 1]) * rng.randint(1, 10**5))
        assert _product_of_symbols(a, b) == 1


@pytest.mark.parametrize("D", [2, 3, 5, 6, 7, 13, 17, 41])
def test_reciprocity_over_quadratic_fields(D):
    F = FieldDesc.quadratic(D)
    rng = random.Random(D)
    n = 1000 if D == 5 else 150
    for _ in range(n):
        a = F(rng.randint(-300, 300), rng.randint(-300, 300))
        b = F(rng.randint(-300, 300), rng.randint(-300, 300))
        if a.is_zero() or b.is_zero():
            continue
        assert _product_of_symbols(a, b) == 1, (a, b)
        ramified_places(a, b)  # raises on a parity failure


@pytest.mark.parametrize("D", [2, 3, 5, 7, 17])
def test_symbol_identities(D):
    F = FieldDesc.quadratic(D)
    rng = random.Random(100 + D)
    places = [P for p in (2, 3, 5, 7) for P in decompose_prime(F, p)] + [0, 1]
    for _ in range(60):
        a, b, c = (F(rng.randint(-60, 60), rng.randint(-60, 60)) for _ in range(3))
        if a.is_zero() or b.is_zero() or c.is_zero():
            continue
        for v in places:
            ab = hilbert_symbol(a, b, v)
            assert ab == hilbert_symbol(b, a, v)
            assert hilbert_symbol(a, b * c, v) == ab * hilbert_symbol(a, c, v)
            assert hilbert_symbol(a, -a, v) == 1
            assert hilbert_symbol(a, b * b, v) == 1
            if not (a - 1).is_zero():
                assert hilbert_symbol(a, 1 - a, v) == 1


@pytest.mark.parametrize("D", [17, 41, 33])
def test_split_dyadic_symbol_matches_Q2(D):
    # a prime over 2 with residue degree 1 and e = 1 has completion Q_2
    F = FieldDesc.quadratic(D)
    k = 60
    rng = random.Random(D)
    for P in decompose_prime(F, 2):
        r = two_adic_root(F, P.root, k)
        for _ in range(300):
            a = F(rng.randint(-500, 500), rng.randint(-500, 500))
            b = F(rng.randint(-500, 500), rng.randint(-500, 500))
            if a.is_zero() or b.is_zero():
                continue
            ia = (a.x + a.y * r) % 2**k
            ib = (b.x + b.y * r) % 2**k
            # valuations stay far below the precision for these sizes
            assert ia and ib and ia % 2**30 and ib % 2**30
            assert hilbert_symbol(a, b, P) == hilbert_symbol_Q2(ia, ib), (a, b, P)


def _solubility_quadratic(a, b, P, width=4):
    """1 if a x^2 + b y^2 is a nonzero local square for some small (x, y) not both in P."""
    F = a.field
    grid = [F(x, y) for x in range(width) for y in range(width)]
    for x, y in product(grid, repeat=2):
        if divides(P, x) and divides(P, y):
            continue
        c = a * x * x + b * y * y
        if not c.is_zero() and is_local_square(c, P):
            return 1
    return -1


@pytest.mark.parametrize("D", [2, 3, 5, 6, 7])
def test_nonsplit_dyadic_symbol_against_solubility(D):
    # a found solution proves +1; conversely small solutions exist whenever the pairing says +1
    F = FieldDesc.quadratic(D)
    (P,) = decompose_prime(F, 2)
    units = [F(x, y) for x in range(-2, 3) for y in range(-2, 3) if F(x, y).norm() % 2]
    elems = units + [u * F(2) for u in units[:4]] + [F(0, 1), F(1, 1)]
    for a in elems:
        for b in elems:
            assert hilbert_symbol(a, b, P) == _solubility_quadratic(a, b, P), (a, b)


def test_discriminant_examples():
    P2, P3, P5 = PrimeIdealF(2), PrimeIdealF(3), PrimeIdealF(5)
    assert quat_discriminant(3, QQ(6), QQ).primes == (P2, P3)
    assert quat_discriminant(1, QQ(3), QQ).primes == (P2, P3)
    assert quat_discriminant(7, QQ(15), QQ).primes == (P3, P5)
    assert quat_discriminant(3, QQ(2)).primes == (P2, P3)
    assert quat_discriminant(1, QQ(1)).primes == ()


def test_discriminant_validation():
    with pytest.raises(ValueError):
        quat_discriminant(4, QQ(3))
    with pytest.raises(ValueError):
        quat_discriminant(3, QQ(-3))
    with pytest.raises(ValueError):
        quat_discriminant(3, Q5(1, 8))
    with pytest.raises(ValueError):
        quat_discriminant(3, QQ(6), Q5)


@pytest.mark.parametrize("D", [1, 2, 3, 5, 13])
def test_discriminants_have_even_size(D):
    F = QQ if D == 1 else FieldDesc.quadratic(D)
    rng = random.Random(D)
    count = 0
    while count < 50:
        m = F(rng.randint(1, 200), rng.randint(-50, 50) if F.degree == 2 else 0)
        d = rng.randint(1, 200)
        try:
            disc = quat_discriminant(d, m)
        except ValueError:
            continue
        # -d < 0 < m at every real place, so only finite places ramify
        assert len(disc) % 2 == 0
        assert ramified_places(F(-d), m)[1] == []
        count += 1


def test_quat_disc_container():
    disc = QuatDisc(QQ, (PrimeIdealF(3), PrimeIdealF(2)))
    assert disc.primes == (PrimeIdealF(2), PrimeIdealF(3))
    assert disc.norm() == 6 and disc.rational_primes() == [2, 3]
    assert PrimeIdealF(3) in disc and len(disc) == 2
    with pytest.raises(ValueError):
        QuatDisc(QQ, (PrimeIdealF(3), PrimeIdealF(3)))


def test_a_ell_examples():
    assert a_ell_ideal(QQ, 5).primes() == [PrimeIdealF(5)]
    assert a_ell_ideal(Q5, 11).primes() == list(decompose_prime(Q5, 11))
    assert len(a_ell_ideal(Q5, 2)) == 0
    assert len(a_ell_ideal(Q5, 5)) == 0  # ramified: local degree 2


def test_splits_examples():
    assert splits_in_F_zeta_n(PrimeIdealF(5), 4)
    assert not splits_in_F_zeta_n(PrimeIdealF(3), 4)
    (P2,) = decompose_prime(Q5, 2)
    assert splits_in_F_zeta_n(P2, 3, Q5)
    Q6 = FieldDesc.quadratic(6)
    (P3,) = decompose_prime(Q6, 3)
    assert splits_in_F_zeta_n(P3, 3, Q6)
    with pytest.raises(ValueError):
        splits_in_F_zeta_n(PrimeIdealF(5), 2)
    with pytest.raises(ValueError):
        splits_in_F_zeta_n(PrimeIdealF(5), 5)


@pytest.mark.parametrize(
    "F, orders",
    [(QQ, (3, 4, 6)), (FieldDesc.quadratic(2), (3, 4, 6, 8)), (FieldDesc.quadratic(3), (3, 4, 6, 12)),
     (Q5, (3, 4, 5, 6, 10)), (FieldDesc.quadratic(13), (3, 4, 6))],
    ids=str,
)
def test_splitting_matches_residue_count_away_from_n(F, orders):
    # for P prime to n: P splits in F(zeta_n) iff n divides q - 1
    for p in primes_up_to(300):
        for P in decompose_prime(F, p):
            for n in orders:
                if n % p == 0:
                    continue
                assert splits_in_F_zeta_n(P, n, F) == ((P.q - 1) % n == 0), (P, n)


def test_check_SY_examples():
    disc = QuatDisc(QQ, (PrimeIdealF(2), PrimeIdealF(3)))
    assert check_SY(disc, 6)
    assert check_SY(disc, 2)
    assert not check_SY(disc, 30)
    assert not check_SY(disc, 5)
    with pytest.raises(ValueError):
        check_SY(QuatDisc(Q5, ()), 1)


def test_symbol_ne_one_over_Q():
    for p in primes_up_to(100)[1:]:
        for a in (-1, -2, -3, -7, -11):
            if a % p:
                assert symbol_ne_one(QQ(a), PrimeIdealF(p)) == (legendre_brute(a, p) == -1)
    assert symbol_ne_one(QQ(-1), PrimeIdealF(2))
    assert not symbol_ne_one(QQ(-7), PrimeIdealF(2))
