"""Slow, independent reference implementations used only by the tests.

Nothing here calls the production symbol, valuation or enumeration code;
shared inputs are limited to the plain data classes.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import sympy

from modquat.quad_field import AlgInt, FieldDesc, PrimeIdealF


@lru_cache(maxsize=None)
def squares_mod(n: int) -> frozenset[int]:
    return frozenset(x * x % n for x in range(n))


def legendre_brute(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if a in squares_mod(p) else -1


def minpoly_roots_brute(F: FieldDesc, p: int) -> list[int]:
    """Roots mod p of the minimal polynomial of w, by trying every residue."""
    if F.D % 4 == 1:
        t, n = 1, (F.D - 1) // 4
    else:
        t, n = 0, F.D
    return [r for r in range(p) if (r * r - t * r - n) % p == 0]


def primes_over_brute(F: FieldDesc, p: int) -> list[PrimeIdealF]:
    if F.degree == 1:
        return [PrimeIdealF(p)]
    roots = minpoly_roots_brute(F, p)
    disc_F = F.D if F.D % 4 == 1 else 4 * F.D
    if len(roots) == 2 and disc_F % p:
        return [PrimeIdealF(p, "split", r, 1) for r in roots]
    if not roots:
        return [PrimeIdealF(p, "inert", None, 2)]
    return [PrimeIdealF(p, "ramified", None, 1)]


def in_prime_brute(alpha: AlgInt, P: PrimeIdealF) -> bool:
    """alpha in P, by the congruence description of P."""
    p = P.p
    if alpha.field.degree == 1:
        return alpha.x % p == 0
    if P.kind == "inert":
        return alpha.x % p == 0 and alpha.y % p == 0
    roots = minpoly_roots_brute(alpha.field, p)
    r = P.root if P.kind == "split" else roots[0]
    return (alpha.x + alpha.y * r) % p == 0


def _embeddings_sq(F: FieldDesc, x: int, y: int) -> list[tuple[Fraction, Fraction]]:
    """tau(a)^2 = A + B sqrt(D) for both embeddings, as (A, B)."""
    if F.D % 4 == 1:
        # a = (2x + y) / 2 + (y / 2) sqrt D
        u, v = Fraction(2 * x + y, 2), Fraction(y, 2)
    else:
        u, v = Fraction(x), Fraction(y)
    return [(u * u + v * v * F.D, 2 * u * v * s) for s in (1, -1)]


def _le(A: Fraction, B: Fraction, D: int, bound: int) -> bool:
    """A + B sqrt D <= bound, decided exactly."""
    c = bound - A  # need B sqrt D <= c
    if B <= 0:
        return c >= 0 or c * c <= B * B * D
    return c >= 0 and B * B * D <= c * c


def weil_box_brute(F: FieldDesc, ell: int, margin: int = 3) -> list[AlgInt]:
    """|tau(a)| <= 2 sqrt(ell) everywhere, scanning a box strictly larger than needed."""
    r = math.isqrt(4 * ell) + margin
    if F.degree == 1:
        return [AlgInt(F, x) for x in range(-r, r + 1) if x * x <= 4 * ell]
    out = []
    ry = 2 * r
    for y in range(-ry, ry + 1):
        for x in range(-2 * r - ry, 2 * r + ry + 1):
            if all(_le(A, B, F.D, 4 * ell) for A, B in _embeddings_sq(F, x, y)):
                out.append(AlgInt(F, x, y))
    return out


def exceptional_set_brute(F: FieldDesc, ell: int, quartic: bool = True) -> frozenset[PrimeIdealF]:
    members = set(primes_over_brute(F, ell))
    for a in weil_box_brute(F, ell):
        a2 = a * a
        values = [a2 - s * ell for s in range(5)]
        if quartic:
            values.append(a2 * a2 - 4 * ell * a2 + ell * ell)
        for v in values:
            if v.is_zero():
                continue
            for p in sympy.factorint(abs(v.norm())):
                members.update(P for P in primes_over_brute(F, p) if in_prime_brute(v, P))
    return frozenset(members)


def is_q2_square_brute(c: int) -> bool:
    if c == 0:
        return True
    v = 0
    while c % 2 == 0:
        c //= 2
        v += 1
    return v % 2 == 0 and c % 8 == 1


def hilbert_Q2_solubility(a: int, b: int, mod: int = 64) -> int:
    """(a, b)_2 from primitive solutions of z^2 = a x^2 + b y^2 with x, y mod 2^6."""
    while a % 4 == 0:
        a //= 4
    while b % 4 == 0:
        b //= 4
    if is_q2_square_brute(-a * b):
        return 1
    for x in range(mod):
        for y in range(mod):
            if x % 2 == 0 and y % 2 == 0:
                continue
            c = a * x * x + b * y * y
            if c and is_q2_square_brute(c):
                return 1
    return -1


def two_adic_root(F: FieldDesc, r0: int, k: int) -> int:
    """Root of the minimal polynomial of w in Z_2, congruent to r0 mod 2, known mod 2^k."""
    t, n = 1, (F.D - 1) // 4  # only called for D = 1 mod 8
    r = r0
    for j in range(1, k):
        mod = 2 ** (j + 1)
        if (r * r - t * r - n) % mod:
            r += 2**j
    assert (r * r - t * r - n) % 2**k == 0
    return r


def fundamental_unit_brute(D: int) -> tuple[int, int]:
    """Smallest unit x + y w > 1, by scanning y upwards."""
    t, n = (1, (D - 1) // 4) if D % 4 == 1 else (0, D)
    w = (1 + math.sqrt(D)) / 2 if t else math.sqrt(D)
    y = 1
    while True:
        found = []
        for sign in (1, -1):
            # x^2 + t x y - n y^2 = sign
            disc = t * t * y * y + 4 * (n * y * y + sign)
            s = math.isqrt(disc)
            if s * s == disc:
                found += [(r - t * y) // 2 for r in (s, -s) if (r - t * y) % 2 == 0]
        found = [x for x in found if x + y * w > 1]
        if found:
            return min(found), y
        y += 1


def has_element_of_norm(D: int, target: int, y_bound: int) -> bool:
    t, n = (1, (D - 1) // 4) if D % 4 == 1 else (0, D)
    for y in range(0, y_bound + 1):
        for sign in (1, -1):
            disc = t * t * y * y + 4 * (n * y * y + sign * target)
            if disc >= 0:
                s = math.isqrt(disc)
                if s * s == disc and (s - t * y) % 2 == 0:
                    return True
    return False


def class_number_one_brute(D: int) -> bool:
    """Bounded search for generators of every prime ideal below the Minkowski bound."""
    disc_F = D if D % 4 == 1 else 4 * D
    x, y = fundamental_unit_brute(D)
    eps = x + y * ((1 + math.sqrt(D)) / 2 if D % 4 == 1 else math.sqrt(D))
    F = FieldDesc.quadratic(D)
    for p in sympy.primerange(2, math.isqrt(disc_F) // 2 + 2):
        if 4 * p * p > disc_F:
            break
        if any(P.kind != "inert" for P in primes_over_brute(F, p)):
            y_bound = int(2 * math.sqrt(p * eps) / math.sqrt(D)) + 2
            if not has_element_of_norm(D, p, y_bound):
                return False
    return True
