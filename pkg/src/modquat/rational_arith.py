"""Exact integer arithmetic over the rationals.

Primality, factorization, Kronecker symbols, modular square roots and
square-free decomposition.  Everything here is a pure function of its
arguments, deterministic and arbitrary precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

__all__ = [
    "Factorization",
    "factorize",
    "is_prime",
    "kronecker",
    "legendre",
    "next_prime",
    "primes_up_to",
    "sqrt_mod",
    "squarefree_decompose",
    "squarefree_part",
    "is_squarefree",
    "ord2",
    "valuation_int",
]

# (bound, number of leading prime bases) proven sufficient below bound
# (Jaeschke 1993; Sorenson & Webster 2015).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_TIERS = (
    (3_474_749_660_383, 6),
    (341_550_071_728_321, 7),
    (3_825_123_056_546_413_051, 9),
    (318_665_857_834_031_151_167_461, 12),
    (3_317_044_064_679_887_385_961_981, 13),
)
_MR_LIMIT = _MR_TIERS[-1][0]

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _miller_rabin(n: int, base: int) -> bool:
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Deterministic primality test.

    Miller-Rabin with a proven base set below ~3.3e24, trial division
    above it (inputs that large are outside the intended desk scale).
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    for bound, k in _MR_TIERS:
        if n < bound:
            return all(_miller_rabin(n, b) for b in _MR_BASES[:k])
    r = math.isqrt(n)
    for f in range(53, r + 1, 2):
        if n % f == 0:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite n (deterministic seeds)."""
    for c in range(1, 200):
        y, r, q, g = 2, 1, 1, 1
        m = 64
        x = ys = 0
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"failed to split {n}")


def _factor_into(n: int, acc: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        acc[n] = acc.get(n, 0) + 1
        return
    d = _pollard_brent(n)
    _factor_into(d, acc)
    _factor_into(n // d, acc)


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of a positive integer as sorted (prime, exponent) pairs."""

    entries: tuple[tuple[int, int], ...] = ()

    def value(self) -> int:
        out = 1
        for p, e in self.entries:
            out *= p**e
        return out

    def primes(self) -> list[int]:
        return [p for p, _ in self.entries]

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


_TRIAL_BOUND = 10_000


@lru_cache(maxsize=1)
def _trial_primes() -> list[int]:
    return primes_up_to(_TRIAL_BOUND)


@lru_cache(maxsize=65536)
def _factor_abs(n: int) -> Factorization:
    acc: dict[int, int] = {}
    for p in _trial_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            acc[p] = e
            if n > 1 and is_prime(n):
                break
    else:
        # cofactor has no prime factor below the trial bound
        _factor_into(n, acc)
        return Factorization(tuple(sorted(acc.items())))
    if n > 1:
        acc[n] = acc.get(n, 0) + 1
    return Factorization(tuple(sorted(acc.items())))


def factorize(n: int) -> tuple[int, Factorization]:
    """Factor a nonzero integer into ``(sign, Factorization of |n|)``."""
    if n == 0:
        raise ValueError("cannot factor zero")
    return (1 if n > 0 else -1), _factor_abs(abs(n))


def valuation_int(n: int, p: int) -> int:
    """Exponent of p in the nonzero integer n."""
    if n == 0:
        raise ValueError("valuation of zero is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def ord2(n: int) -> int:
    """2-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("ord2 of zero is infinite")
    return (n & -n).bit_length() - 1


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), the standard completion of the Jacobi symbol.

    (a/0) is 1 for a = +-1 and 0 otherwise; (a/-1) is -1 for a < 0;
    (a/2) is 0 for even a, 1 for a = +-1 mod 8 and -1 for a = +-3 mod 8.
    """
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = ord2(n)
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 == 1 and a % 8 in (3, 5):
            result = -result
        n >>= v
    # n odd positive: Jacobi symbol
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def legendre(a: int, p: int) -> int:
    """Legendre symbol for an odd prime p."""
    if p < 3 or p % 2 == 0:
        raise ValueError(f"Legendre symbol needs an odd prime, got {p}")
    return kronecker(a, p)


def sqrt_mod(a: int, p: int) -> int | None:
    """Square root of a modulo an odd prime p, the smaller of the two roots.

    Returns None when a is a non-residue.
    """
    if p < 3 or p % 2 == 0:
        raise ValueError(f"sqrt_mod needs an odd prime, got {p}")
    a %= p
    if a == 0:
        return 0
    if kronecker(a, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        # Tonelli-Shanks; the first non-residue is found deterministically
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while kronecker(z, p) != -1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    return min(r, p - r)


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write n = s**2 * f with f square-free; returns (s, f)."""
    if n < 1:
        raise ValueError("squarefree_decompose needs n >= 1")
    s, f = 1, 1
    for p, e in factorize(n)[1]:
        s *= p ** (e // 2)
        if e % 2:
            f *= p
    return s, f


def squarefree_part(n: int) -> int:
    """Signed square-free kernel: n = s**2 * squarefree_part(n)."""
    if n == 0:
        raise ValueError("zero has no square-free part")
    return (1 if n > 0 else -1) * squarefree_decompose(abs(n))[1]


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(e == 1 for _, e in factorize(n)[1])


def primes_up_to(bound: int) -> list[int]:
    """All primes p <= bound, by sieve."""
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(bound) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, bound + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    c = max(n + 1, 2)
    while not is_prime(c):
        c += 1
    return c
