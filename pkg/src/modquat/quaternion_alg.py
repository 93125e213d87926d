"""Ramification data of quaternion algebras (a, b / F).

Local Hilbert symbols at every place of F, the reduced discriminant of
(-d, m / F), the ideal a_l, and splitting of primes in F(zeta_n).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Union

from .quad_field import (
    AlgInt,
    FieldDesc,
    IdealFactorization,
    PrimeIdealF,
    QQ,
    decompose_prime,
    is_local_square,
    is_totally_positive,
    local_strip,
    uniformizer_element,
    unit_character,
    valuation,
)
from .rational_arith import factorize, is_prime, is_squarefree, ord2

__all__ = [
    "QuatDisc",
    "ReciprocityError",
    "a_ell_ideal",
    "check_SY",
    "hilbert_symbol",
    "hilbert_symbol_Q2",
    "hilbert_symbol_Q2_bruteforce",
    "quat_discriminant",
    "ramified_places",
    "splits_in_F_zeta_n",
    "symbol_ne_one",
]

Place = Union[PrimeIdealF, int]


class ReciprocityError(ArithmeticError):
    """The local symbols of a global algebra failed Hilbert reciprocity."""


@dataclass(frozen=True)
class QuatDisc:
    """Reduced discriminant: the set of finite primes where B ramifies."""

    field: FieldDesc
    primes: tuple[PrimeIdealF, ...]

    def __post_init__(self) -> None:
        ordered = tuple(sorted(set(self.primes)))
        if len(ordered) != len(self.primes):
            raise ValueError("discriminant primes must be distinct")
        object.__setattr__(self, "primes", ordered)

    def norm(self) -> int:
        out = 1
        for P in self.primes:
            out *= P.q
        return out

    def rational_primes(self) -> list[int]:
        return sorted({P.p for P in self.primes})

    def __contains__(self, P: object) -> bool:
        return P in self.primes

    def __iter__(self):
        return iter(self.primes)

    def __len__(self) -> int:
        return len(self.primes)

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "primes": [P.to_json() for P in self.primes]}


# ---------------------------------------------------------------------------
# Hilbert symbols over Q_2


def _split2(n: int) -> tuple[int, int]:
    v = ord2(n)
    return v, n >> v


def hilbert_symbol_Q2(a: int, b: int) -> int:
    """(a, b)_2 by the classical epsilon/omega exponent formula."""
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol arguments must be nonzero")
    alpha, u = _split2(a)
    beta, w = _split2(b)
    eps = lambda t: ((t - 1) // 2) % 2  # noqa: E731
    omg = lambda t: ((t * t - 1) // 8) % 2  # noqa: E731
    e = eps(u) * eps(w) + alpha * omg(w) + beta * omg(u)
    return -1 if e % 2 else 1


def _is_q2_square(c: int) -> bool:
    v, u = _split2(c)
    return v % 2 == 0 and u % 8 == 1


def hilbert_symbol_Q2_bruteforce(a: int, b: int, depth: int = 6) -> int:
    """(a, b)_2 by direct solubility of z^2 = a x^2 + b y^2 over Z_2.

    After removing square factors a and b have valuation 0 or 1.  If -ab is
    a square the form is isotropic and the symbol is 1; otherwise a
    primitive solution, if any, has x or y odd and 2-adic valuation of
    a x^2 + b y^2 at most 3, so residues mod 2^depth decide it.
    """
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol arguments must be nonzero")
    va, ua = _split2(a)
    vb, ub = _split2(b)
    a, b = ua << (va % 2), ub << (vb % 2)
    if _is_q2_square(-a * b):
        return 1
    mod = 1 << depth
    for x in range(mod):
        # (x, y) not both even
        for y in range(0 if x % 2 else 1, mod, 1 if x % 2 else 2):
            c = a * x * x + b * y * y
            if c != 0 and _is_q2_square(c):
                return 1
    return -1


# ---------------------------------------------------------------------------
# dyadic places of a quadratic field: square classes and the Hilbert pairing


class _DyadicPairing:
    """Square-class group of F_P (P over 2) with its Hilbert pairing.

    The class group F_P^*/F_P^*2 has F_2-dimension 2 + [F_P : Q_2].  A basis
    is found among small elements; for each basis element a the norm group
    of F_P(sqrt a) is spanned by values z^2 - a x^2 and has index 2, which
    gives one row of the pairing matrix.
    """

    def __init__(self, F: FieldDesc, P: PrimeIdealF) -> None:
        self.F, self.P = F, P
        self.dim = 2 + P.e * P.f
        self.pi = uniformizer_element(F, P)
        self.basis: list[AlgInt] = []
        self.classes: list[tuple[int, AlgInt, int]] = []  # (parity, rep, bits)
        self._build_basis()
        self.matrix = [[self._pair_basis(i, j) for j in range(self.dim)] for i in range(self.dim)]
        for i in range(self.dim):
            for j in range(self.dim):
                if self.matrix[i][j] != self.matrix[j][i]:
                    raise ReciprocityError(f"asymmetric dyadic pairing at {P}")

    def _normal(self, c: AlgInt) -> tuple[int, AlgInt]:
        v, u = local_strip(c, self.P)
        return v % 2, (u * self.pi if v % 2 else u)

    def _same_class(self, c1: AlgInt, c2: AlgInt) -> bool:
        return is_local_square(c1 * c2, self.P)

    def _candidates(self):
        F = self.F
        ys = range(8) if F.degree == 2 else (0,)
        units = []
        for x in range(8):
            for y in ys:
                c = AlgInt(F, x, y)
                if not c.is_zero() and valuation(c, self.P) == 0:
                    units.append(c)
        yield from units
        for u in units:
            yield u * self.pi

    def _build_basis(self) -> None:
        self.classes = [(0, self.F.one(), 0)]
        for c in self._candidates():
            par, c = self._normal(c)
            if any(p == par and self._same_class(c, r) for p, r, _ in self.classes):
                continue
            bit = 1 << len(self.basis)
            self.basis.append(c)
            self.classes += [((p + par) % 2, r * c, bits | bit) for p, r, bits in self.classes]
            if len(self.basis) == self.dim:
                return
        raise ReciprocityError(f"square-class basis incomplete at {self.P}")

    def coords(self, c: AlgInt) -> int:
        par, c = self._normal(c)
        for p, r, bits in self.classes:
            if p == par and self._same_class(c, r):
                return bits
        raise ReciprocityError(f"element {c} matched no square class at {self.P}")

    @lru_cache(maxsize=None)
    def _norm_group(self, i: int) -> frozenset[int]:
        a = self.basis[i]
        F = self.F
        span = {0}
        target = 1 << (self.dim - 1)
        for radius in (2, 4, 8):
            rng = range(-radius, radius + 1)
            ys = rng if F.degree == 2 else (0,)
            for zx, zy, xx, xy in product(rng, ys, rng, ys):
                z, x = AlgInt(F, zx, zy), AlgInt(F, xx, xy)
                val = z * z - a * x * x
                if val.is_zero():
                    continue
                bits = self.coords(val)
                if bits not in span:
                    span |= {s ^ bits for s in span}
                    if len(span) == target:
                        return frozenset(span)
        raise ReciprocityError(f"norm group search incomplete at {self.P}")

    def _pair_basis(self, i: int, j: int) -> int:
        return 1 if (1 << j) in self._norm_group(i) else -1

    def symbol(self, a: AlgInt, b: AlgInt) -> int:
        ca, cb = self.coords(a), self.coords(b)
        sign = 1
        for i in range(self.dim):
            if not ca >> i & 1:
                continue
            for j in range(self.dim):
                if cb >> j & 1:
                    sign *= self.matrix[i][j]
        return sign


@lru_cache(maxsize=None)
def _dyadic_pairing(F: FieldDesc, P: PrimeIdealF) -> _DyadicPairing:
    return _DyadicPairing(F, P)


# ---------------------------------------------------------------------------
# the general local symbol


def _as_alg(F: FieldDesc, a: Union[AlgInt, int]) -> AlgInt:
    return a if isinstance(a, AlgInt) else AlgInt(F, a, 0)


def hilbert_symbol(a: Union[AlgInt, int], b: Union[AlgInt, int], place: Place, F: FieldDesc | None = None) -> int:
    """Local Hilbert symbol (a, b)_v with v a prime ideal or a real embedding index."""
    if F is None:
        F = a.field if isinstance(a, AlgInt) else b.field if isinstance(b, AlgInt) else QQ
    a, b = _as_alg(F, a), _as_alg(F, b)
    if a.is_zero() or b.is_zero():
        raise ValueError("Hilbert symbol arguments must be nonzero")
    if isinstance(place, int):
        neg = a.embedding_sign(place) < 0 and b.embedding_sign(place) < 0
        return -1 if neg else 1
    P = place
    if P.p != 2:
        alpha, u = local_strip(a, P)
        beta, w = local_strip(b, P)
        out = 1
        if alpha * beta % 2 and (P.q - 1) // 2 % 2:
            out = -out
        if beta % 2:
            out *= unit_character(u, P)
        if alpha % 2:
            out *= unit_character(w, P)
        return out
    if F.degree == 1:
        return hilbert_symbol_Q2(a.x, b.x)
    return _dyadic_pairing(F, P).symbol(a, b)


def _candidate_primes(a: AlgInt, b: AlgInt) -> list[PrimeIdealF]:
    F = a.field
    ps = {2}
    for n in (a.norm(), b.norm()):
        ps.update(factorize(n)[1].primes())
    return [P for p in sorted(ps) for P in decompose_prime(F, p)]


def ramified_places(a: AlgInt, b: AlgInt) -> tuple[list[PrimeIdealF], list[int]]:
    """Finite and real places where (a, b / F) ramifies; reciprocity enforced."""
    F = a.field
    finite = [P for P in _candidate_primes(a, b) if hilbert_symbol(a, b, P) == -1]
    real = [i for i in range(F.degree) if hilbert_symbol(a, b, i) == -1]
    if (len(finite) + len(real)) % 2:
        raise ReciprocityError(
            f"odd number of ramified places for ({a}, {b}) over {F}: {finite}, real {real}"
        )
    return finite, real


def quat_discriminant(d: int, m: AlgInt, F: FieldDesc | None = None) -> QuatDisc:
    """Reduced discriminant of (-d, m / F) for square-free d >= 1 and totally positive m."""
    if F is not None and F != m.field:
        raise ValueError(f"m lies in {m.field}, not {F}")
    if d < 1 or not is_squarefree(d):
        raise ValueError(f"d must be a square-free positive integer, got {d}")
    if not is_totally_positive(m):
        raise ValueError(f"m = {m} is not totally positive")
    F = m.field
    finite, real = ramified_places(AlgInt(F, -d), m)
    if real:
        raise ReciprocityError("(-d, m) ramified at a real place although m >> 0")
    return QuatDisc(F, tuple(finite))


def a_ell_ideal(F: FieldDesc, ell: int) -> IdealFactorization:
    """Product of the primes over ell with odd local degree [F_L : Q_ell]."""
    out = [(P, 1) for P in decompose_prime(F, ell) if P.e * P.f % 2 == 1]
    return IdealFactorization(tuple(out))


def _zeta_generator(F: FieldDesc, n: int) -> AlgInt:
    """delta with F(zeta_n) = F(sqrt delta), given zeta_n + 1/zeta_n in F."""
    # zeta_n is a root of x^2 - c x + 1 with c = zeta_n + 1/zeta_n, so
    # delta = c^2 - 4 up to squares
    if n in (3, 6):
        return F(-3)
    if n in (4, 8, 12):
        # F contains sqrt 2 (n = 8) or sqrt 3 (n = 12), so F(zeta_n) = F(i)
        return F(-1)
    if n in (5, 10) and F.degree == 2 and F.D == 5:
        # 4(c^2 - 4) with c = (-1 + sqrt 5)/2 is -10 - 2 sqrt 5
        return AlgInt(F, -8, -4)
    raise ValueError(f"zeta_{n} + 1/zeta_{n} does not lie in {F}")


def splits_in_F_zeta_n(P: PrimeIdealF, n: int, F: FieldDesc = QQ) -> bool:
    """Whether P splits in the quadratic extension F(zeta_n)/F.

    Requires zeta_n + 1/zeta_n in F.  Exact at every prime, including
    those dividing n: P splits iff the generator is a square in F_P.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    return is_local_square(_zeta_generator(F, n), P)


def check_SY(disc: QuatDisc, m: int) -> bool:
    """Whether the product of the primes of disc equals m or m*N for a prime N not dividing m."""
    if disc.field.degree != 1:
        raise ValueError("this check applies over Q only")
    prod = disc.norm()
    if prod == m:
        return True
    if m <= 0 or prod % m:
        return False
    N = prod // m
    return is_prime(N) and m % N != 0


def symbol_ne_one(a: AlgInt, P: PrimeIdealF) -> bool:
    """(a / P) != 1 read as: P does not split in F(sqrt a).

    Valid for a that is not a square in F (every caller passes a totally
    negative a).  At odd P prime to a this is the residue symbol; at
    dyadic P it is the local square test in F_P.
    """
    return not is_local_square(a, P)

