"""Exact arithmetic in F = Q or a real quadratic field Q(sqrt D).

Elements of the ring of integers are stored in the integral basis
{1, w} with w = (1 + sqrt D)/2 when D = 1 mod 4 and w = sqrt D otherwise.
No floating point is used anywhere: comparisons between real embeddings
are decided by sign analysis of u + v*sqrt(D) with integer u, v.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Union

from .rational_arith import (
    factorize,
    is_prime,
    is_squarefree,
    kronecker,
    sqrt_mod,
    squarefree_part,
    valuation_int,
)

__all__ = [
    "AlgInt",
    "FieldDesc",
    "IdealFactorization",
    "PrimeIdealF",
    "QQ",
    "class_number_is_one",
    "contains_sqrt",
    "decompose_prime",
    "enumerate_bounded",
    "factor_element",
    "fundamental_unit",
    "is_local_square",
    "is_principal",
    "is_square_in_F",
    "is_totally_positive",
    "local_strip",
    "residue_symbol",
    "valuation",
]

SPLIT, INERT, RAMIFIED = "split", "inert", "ramified"
_KIND_ORDER = {SPLIT: 0, INERT: 1, RAMIFIED: 2}


def _sign_surd(u: int, v: int, D: int) -> int:
    """Sign of u + v*sqrt(D) for square-free D > 1."""
    if u >= 0 and v >= 0:
        return 0 if u == 0 and v == 0 else 1
    if u <= 0 and v <= 0:
        return -1
    # opposite signs: compare u^2 with v^2 D
    diff = u * u - v * v * D
    if diff == 0:
        return 0  # impossible for irrational sqrt(D) unless u = v = 0
    return (1 if u > 0 else -1) if diff > 0 else (1 if v > 0 else -1)


@dataclass(frozen=True)
class FieldDesc:
    """The base field: Q (degree 1) or Q(sqrt D) with D > 1 square-free."""

    degree: int = 1
    D: int | None = None

    def __post_init__(self) -> None:
        if self.degree == 1:
            if self.D is not None:
                raise ValueError("a degree-1 field carries no D")
        elif self.degree == 2:
            if self.D is None or self.D <= 1 or not is_squarefree(self.D):
                raise ValueError(f"D must be a square-free integer > 1, got {self.D}")
        else:
            raise ValueError(f"only degree 1 and 2 are supported, got {self.degree}")

    @classmethod
    def quadratic(cls, D: int) -> FieldDesc:
        return cls(2, D)

    @property
    def disc_F(self) -> int:
        if self.degree == 1:
            return 1
        return self.D if self.D % 4 == 1 else 4 * self.D

    @property
    def w_trace(self) -> int:
        """t in w^2 = t*w + n."""
        return 1 if self.degree == 2 and self.D % 4 == 1 else 0

    @property
    def w_const(self) -> int:
        """n in w^2 = t*w + n."""
        if self.degree == 1:
            return 0
        return (self.D - 1) // 4 if self.D % 4 == 1 else self.D

    def minpoly(self, x: int) -> int:
        """Value of the minimal polynomial of w at the integer x."""
        return x * x - self.w_trace * x - self.w_const

    def __call__(self, x: int, y: int = 0) -> AlgInt:
        return AlgInt(self, x, y)

    def one(self) -> AlgInt:
        return AlgInt(self, 1, 0)

    def w(self) -> AlgInt:
        if self.degree == 1:
            raise ValueError("Q has no generator w")
        return AlgInt(self, 0, 1)

    def sqrt_D(self) -> AlgInt:
        """sqrt(D) as an integral element."""
        return AlgInt(self, -1, 2) if self.D % 4 == 1 else AlgInt(self, 0, 1)

    @property
    def num_real_places(self) -> int:
        return self.degree

    def to_json(self) -> dict:
        return {"degree": 1} if self.degree == 1 else {"degree": 2, "D": self.D}

    @classmethod
    def from_json(cls, obj: dict) -> FieldDesc:
        deg = obj.get("degree", 1)
        return cls(deg, obj.get("D") if deg == 2 else None)

    def __str__(self) -> str:
        return "Q" if self.degree == 1 else f"Q(sqrt{self.D})"


QQ = FieldDesc(1)


@dataclass(frozen=True)
class AlgInt:
    """Integral element x + y*w of R_F."""

    field: FieldDesc
    x: int
    y: int = 0

    def __post_init__(self) -> None:
        if self.field.degree == 1 and self.y != 0:
            raise ValueError("elements of Q have y = 0")

    def _coerce(self, other: Union[AlgInt, int]) -> AlgInt:
        if isinstance(other, AlgInt):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, int):
            return AlgInt(self.field, other, 0)
        return NotImplemented

    def __add__(self, other: Union[AlgInt, int]) -> AlgInt:
        o = self._coerce(other)
        return AlgInt(self.field, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self) -> AlgInt:
        return AlgInt(self.field, -self.x, -self.y)

    def __sub__(self, other: Union[AlgInt, int]) -> AlgInt:
        return self + (-self._coerce(other))

    def __rsub__(self, other: int) -> AlgInt:
        return self._coerce(other) - self

    def __mul__(self, other: Union[AlgInt, int]) -> AlgInt:
        o = self._coerce(other)
        F = self.field
        bd = self.y * o.y
        return AlgInt(
            F,
            self.x * o.x + bd * F.w_const,
            self.x * o.y + self.y * o.x + bd * F.w_trace,
        )

    __rmul__ = __mul__

    def __pow__(self, e: int) -> AlgInt:
        if e < 0:
            raise ValueError("negative powers are not integral")
        out, base = self.field.one(), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_rational(self) -> bool:
        return self.y == 0

    def conj(self) -> AlgInt:
        return AlgInt(self.field, self.x + self.y * self.field.w_trace, -self.y)

    def norm(self) -> int:
        F = self.field
        return self.x * self.x + self.x * self.y * F.w_trace - F.w_const * self.y * self.y

    def trace(self) -> int:
        return 2 * self.x + self.y * self.field.w_trace

    def content(self) -> int:
        return math.gcd(self.x, self.y)

    def exact_div(self, n: int) -> AlgInt:
        """Divide by a rational integer that divides both coordinates."""
        if self.x % n or self.y % n:
            raise ArithmeticError(f"{self} is not divisible by {n}")
        return AlgInt(self.field, self.x // n, self.y // n)

    def surd(self) -> tuple[int, int]:
        """(u, v) with self = (u + v*sqrt D)/2."""
        if self.field.degree == 1:
            return 2 * self.x, 0
        if self.field.D % 4 == 1:
            return 2 * self.x + self.y, self.y
        return 2 * self.x, 2 * self.y

    def embedding_sign(self, index: int) -> int:
        """Sign under the real embedding sending sqrt D to +sqrt D (0) or -sqrt D (1)."""
        if self.field.degree == 1:
            if index != 0:
                raise ValueError("Q has a single real place")
            return (self.x > 0) - (self.x < 0)
        u, v = self.surd()
        return _sign_surd(u, v if index == 0 else -v, self.field.D)

    def to_json(self) -> dict:
        return {"x": self.x, "y": self.y}

    @classmethod
    def from_json(cls, F: FieldDesc, obj: dict | int) -> AlgInt:
        if isinstance(obj, int):
            return cls(F, obj, 0)
        return cls(F, int(obj["x"]), int(obj.get("y", 0)))

    def __str__(self) -> str:
        if self.field.degree == 1 or self.y == 0:
            return str(self.x)
        u, v = self.surd()
        if u % 2 == 0 and v % 2 == 0:
            return f"{u // 2}{v // 2:+d}*sqrt{self.field.D}"
        return f"({u}{v:+d}*sqrt{self.field.D})/2"


@dataclass(frozen=True)
class PrimeIdealF:
    """A prime ideal of R_F above the rational prime p.

    ``root`` is the residue of w modulo the ideal and is stored only for
    split primes, where it tells the two conjugates apart.
    """

    p: int
    kind: str = SPLIT
    root: int | None = None
    f: int = field(default=1, compare=False)

    @property
    def q(self) -> int:
        return self.p**self.f

    @property
    def e(self) -> int:
        return 2 if self.kind == RAMIFIED else 1

    def sort_key(self) -> tuple[int, int, int]:
        return (self.p, _KIND_ORDER[self.kind], -1 if self.root is None else self.root)

    def __lt__(self, other: PrimeIdealF) -> bool:
        return self.sort_key() < other.sort_key()

    def is_dyadic(self) -> bool:
        return self.p == 2

    def to_json(self) -> dict:
        out: dict = {"p": self.p, "kind": self.kind}
        if self.root is not None:
            out["root"] = self.root
        return out

    def __str__(self) -> str:
        if self.root is not None:
            return f"P{self.p}[w={self.root}]"
        if self.kind == SPLIT:
            return f"({self.p})"
        return f"P{self.p}({self.kind})"


@dataclass(frozen=True)
class IdealFactorization:
    """Factorization of an ideal as (PrimeIdealF, exponent) pairs in canonical order."""

    entries: tuple[tuple[PrimeIdealF, int], ...] = ()

    def norm(self) -> int:
        out = 1
        for P, e in self.entries:
            out *= P.q**e
        return out

    def primes(self) -> list[PrimeIdealF]:
        return [P for P, _ in self.entries]

    def exponent(self, P: PrimeIdealF) -> int:
        for Q, e in self.entries:
            if Q == P:
                return e
        return 0

    def __iter__(self) -> Iterator[tuple[PrimeIdealF, int]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


# ---------------------------------------------------------------------------
# prime decomposition and valuations


@lru_cache(maxsize=None)
def decompose_prime(F: FieldDesc, p: int) -> tuple[PrimeIdealF, ...]:
    """Prime ideals of R_F above the rational prime p, in canonical order."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if F.degree == 1:
        return (PrimeIdealF(p, SPLIT, None, 1),)
    k = kronecker(F.disc_F, p)
    if k == 0:
        return (PrimeIdealF(p, RAMIFIED, None, 1),)
    if k == -1:
        return (PrimeIdealF(p, INERT, None, 2),)
    roots = sorted(_roots_mod_p(F, p))
    return tuple(PrimeIdealF(p, SPLIT, r, 1) for r in roots)


def _roots_mod_p(F: FieldDesc, p: int) -> list[int]:
    t, n = F.w_trace, F.w_const
    if p == 2:
        return [r for r in range(2) if (r * r - t * r - n) % 2 == 0]
    # x^2 - t x - n = 0  <=>  (2x - t)^2 = t^2 + 4n = disc_F
    s = sqrt_mod(F.disc_F, p)
    if s is None:
        return []
    inv2 = (p + 1) // 2
    return sorted({(t + s) * inv2 % p, (t - s) * inv2 % p})


def ramified_root(F: FieldDesc, P: PrimeIdealF) -> int:
    """The double root of the minimal polynomial of w modulo a ramified prime."""
    p = P.p
    if F.D % 4 == 1:
        return (p + 1) // 2 % p
    if p == 2:
        return F.D % 2
    return 0


def residue_root(F: FieldDesc, P: PrimeIdealF) -> int | None:
    """Image of w in the residue field when that field is F_p, else None."""
    if F.degree == 1 or P.kind == INERT:
        return None
    if P.kind == SPLIT:
        return P.root
    return ramified_root(F, P)


def _check_prime_of(F: FieldDesc, P: PrimeIdealF) -> None:
    if P not in decompose_prime(F, P.p):
        raise ValueError(f"{P} is not a prime ideal of {F}")


def valuation(alpha: AlgInt, P: PrimeIdealF) -> int:
    """Exact P-adic valuation of the nonzero element alpha."""
    if alpha.is_zero():
        raise ValueError("valuation of zero is infinite")
    F, p = alpha.field, P.p
    k = valuation_int(alpha.content(), p)
    if F.degree == 1 or P.kind == INERT:
        return k
    beta = alpha.exact_div(p**k) if k else alpha
    if P.kind == SPLIT:
        if (beta.x + beta.y * P.root) % p:
            return k
        return k + valuation_int(beta.norm(), p)
    # ramified: p = P^2 and a primitive element has valuation 0 or 1
    return 2 * k + valuation_int(beta.norm(), p)


def divides(P: PrimeIdealF, alpha: AlgInt) -> bool:
    if alpha.is_zero():
        return True
    return valuation(alpha, P) > 0


def factor_element(alpha: AlgInt) -> IdealFactorization:
    """Prime ideal factorization of the principal ideal (alpha)."""
    if alpha.is_zero():
        raise ValueError("cannot factor zero")
    F = alpha.field
    out: list[tuple[PrimeIdealF, int]] = []
    for p, _ in factorize(alpha.norm())[1]:
        for P in decompose_prime(F, p):
            v = valuation(alpha, P)
            if v:
                out.append((P, v))
    return IdealFactorization(tuple(out))


# ---------------------------------------------------------------------------
# residue fields


def _fq_mul(a: tuple[int, int], b: tuple[int, int], F: FieldDesc, p: int) -> tuple[int, int]:
    bd = a[1] * b[1]
    return (
        (a[0] * b[0] + bd * F.w_const) % p,
        (a[0] * b[1] + a[1] * b[0] + bd * F.w_trace) % p,
    )


def _fq_pow(a: tuple[int, int], e: int, F: FieldDesc, p: int) -> tuple[int, int]:
    out = (1, 0)
    while e:
        if e & 1:
            out = _fq_mul(out, a, F, p)
        a = _fq_mul(a, a, F, p)
        e >>= 1
    return out


def residue(alpha: AlgInt, P: PrimeIdealF) -> int | tuple[int, int]:
    """Image of alpha in k(P): an int mod p, or a pair (a, b) = a + b*w in F_p[w]."""
    r = residue_root(alpha.field, P)
    if alpha.field.degree == 1:
        return alpha.x % P.p
    if r is None:
        return (alpha.x % P.p, alpha.y % P.p)
    return (alpha.x + alpha.y * r) % P.p


def _euler_criterion(alpha: AlgInt, P: PrimeIdealF) -> int:
    p = P.p
    res = residue(alpha, P)
    e = (P.q - 1) // 2
    if isinstance(res, tuple):
        if res == (0, 0):
            return 0
        val = _fq_pow(res, e, alpha.field, p)
        if val == (1, 0):
            return 1
        if val == (p - 1, 0):
            return -1
        raise ArithmeticError("Euler criterion produced a non +-1 value")
    if res == 0:
        return 0
    val = pow(res, e, p)
    return 1 if val == 1 else -1


def residue_symbol(alpha: AlgInt, P: PrimeIdealF, denominator: int = 1) -> int:
    """Quadratic residue symbol (beta / P) for beta = alpha / denominator.

    P must be odd.  The symbol of beta equals that of denominator**2 * beta,
    so it is computed for denominator * alpha; the denominator must be a
    unit at P.
    """
    if P.p == 2:
        raise ValueError("quadratic residue symbol is undefined at a dyadic prime")
    if denominator % P.p == 0:
        raise ValueError(f"denominator {denominator} is not a unit at {P}")
    _check_prime_of(alpha.field, P)
    return _euler_criterion(alpha * denominator, P)


# ---------------------------------------------------------------------------
# local structure at a prime: uniformizers, unit parts, local squares


@lru_cache(maxsize=None)
def _uniformizer(F: FieldDesc, P: PrimeIdealF) -> AlgInt | None:
    """An element of valuation 1 at P (None when p itself is one)."""
    if F.degree == 1 or P.kind == INERT:
        return None
    r = residue_root(F, P)
    for cand in (r, r + P.p):
        pi = AlgInt(F, -cand, 1)
        if valuation(pi, P) == 1:
            return pi
    raise ArithmeticError(f"no uniformizer found at {P}")


def _divide_by_uniformizer(c: AlgInt, P: PrimeIdealF) -> AlgInt:
    """An integral element in the square class of c/pi (c must lie in P).

    Computes c * conj(pi) / p * (N(pi)/p), which equals c/pi times the
    square of the rational P-unit N(pi)/p.
    """
    F, p = c.field, P.p
    pi = _uniformizer(F, P)
    if pi is None:
        return c.exact_div(p)
    c0, rem = divmod(pi.norm(), p)
    if rem:
        raise ArithmeticError("uniformizer norm not divisible by p")
    return (c * pi.conj()).exact_div(p) * c0


def local_strip(c: AlgInt, P: PrimeIdealF) -> tuple[int, AlgInt]:
    """(v, u) with v = v_P(c) and u a P-unit in the square class of c / pi**v."""
    v = valuation(c, P)
    u = c
    for _ in range(v):
        u = _divide_by_uniformizer(u, P)
    return v, u


def uniformizer_element(F: FieldDesc, P: PrimeIdealF) -> AlgInt:
    pi = _uniformizer(F, P)
    return F(P.p) if pi is None else pi


def _is_dyadic_unit_square(u: AlgInt, P: PrimeIdealF) -> bool:
    """u a unit at a dyadic P: square iff u = s^2 mod P^(2e+1)."""
    F = u.field
    target = 2 * P.e + 1
    ys = range(4) if F.degree == 2 else (0,)
    for x in range(4):
        for y in ys:
            s = AlgInt(F, x, y)
            d = u - s * s
            if d.is_zero() or valuation(d, P) >= target:
                return True
    return False


def is_local_square(c: AlgInt, P: PrimeIdealF) -> bool:
    """Whether the nonzero element c is a square in the completion F_P."""
    if c.is_zero():
        raise ValueError("zero is excluded")
    v, u = local_strip(c, P)
    if v % 2:
        return False
    if P.p == 2:
        return _is_dyadic_unit_square(u, P)
    return _euler_criterion(u, P) == 1


def unit_character(u: AlgInt, P: PrimeIdealF) -> int:
    """Quadratic character of the residue of the P-unit u (odd P)."""
    val = _euler_criterion(u, P)
    if val == 0:
        raise ValueError("not a unit")
    return val


# ---------------------------------------------------------------------------
# positivity, bounded enumeration, square roots


def is_totally_positive(alpha: AlgInt) -> bool:
    return all(alpha.embedding_sign(i) > 0 for i in range(alpha.field.degree))


def exceeds_at_some_embedding(alpha: AlgInt, bound: int) -> bool:
    """Whether tau(alpha) > bound for some real embedding tau."""
    return any((alpha - bound).embedding_sign(i) > 0 for i in range(alpha.field.degree))


def _within_box(u: int, v: int, D: int, bound_sq: int) -> bool:
    # (|u| + |v| sqrt D)^2 <= 4 * bound_sq
    rest = 4 * bound_sq - u * u - v * v * D
    return rest >= 0 and 4 * u * u * v * v * D <= rest * rest


def enumerate_bounded(F: FieldDesc, bound_sq: int) -> list[AlgInt]:
    """All a in R_F with tau(a)^2 <= bound_sq at every real embedding.

    For the Weil bound |tau(a)| <= 2 sqrt(l) pass bound_sq = 4*l.
    Order: by y, then by x, ascending.
    """
    if bound_sq < 0:
        return []
    if F.degree == 1:
        r = math.isqrt(bound_sq)
        return [AlgInt(F, x) for x in range(-r, r + 1)]
    D = F.D
    out = []
    if D % 4 == 1:
        vmax = math.isqrt(4 * bound_sq // D)
        umax = math.isqrt(4 * bound_sq)
        for y in range(-vmax, vmax + 1):
            lo = -umax + ((-umax - y) % 2)
            for u in range(lo, umax + 1, 2):
                if _within_box(u, y, D, bound_sq):
                    out.append(AlgInt(F, (u - y) // 2, y))
    else:
        ymax = math.isqrt(bound_sq // D)
        xmax = math.isqrt(bound_sq)
        for y in range(-ymax, ymax + 1):
            for x in range(-xmax, xmax + 1):
                if _within_box(2 * x, 2 * y, D, bound_sq):
                    out.append(AlgInt(F, x, y))
    return out


def weil_box(F: FieldDesc, ell: int) -> list[AlgInt]:
    """Integral a with |tau(a)| <= 2 sqrt(ell) at every embedding."""
    return enumerate_bounded(F, 4 * ell)


def contains_sqrt(F: FieldDesc, n: int) -> bool:
    """Whether sqrt(n) lies in F for a nonzero integer n."""
    if n == 0:
        raise ValueError("n must be nonzero")
    if n < 0:
        return False
    s = squarefree_part(n)
    return s == 1 or (F.degree == 2 and s == F.D)


def is_square_in_F(alpha: AlgInt) -> bool:
    """Whether alpha = beta^2 for some beta in F."""
    F = alpha.field
    if alpha.is_zero():
        return True
    if alpha.is_rational():
        return alpha.x > 0 and contains_sqrt(F, alpha.x)
    N = alpha.norm()
    if N < 0:
        return False
    n = math.isqrt(N)
    if n * n != N:
        return False
    # beta^2 - T beta + s = 0 with s = N(beta) = +-n, T^2 = Tr(alpha) + 2s
    for s in (n, -n):
        t2 = alpha.trace() + 2 * s
        if t2 <= 0:
            continue
        T = math.isqrt(t2)
        if T * T != t2:
            continue
        for t in (T, -T):
            num = alpha + s
            if num.x % t or num.y % t:
                continue
            beta = num.exact_div(t)
            if beta * beta == alpha:
                return True
    return False


# ---------------------------------------------------------------------------
# units and principality


@lru_cache(maxsize=None)
def fundamental_unit(F: FieldDesc) -> AlgInt:
    """The fundamental unit > 1 (under sqrt D -> +sqrt D), via continued fractions of w."""
    if F.degree == 1:
        return F.one()
    D = F.D
    s = math.isqrt(D)
    # xi0 = w + k is reduced: xi0 > 1 and -1 < conj(xi0) < 0
    if D % 4 == 1:
        k = (s - 1) // 2  # floor(-conj(w)) = floor((sqrt D - 1)/2)
        P0, Q0 = 1 + 2 * k, 2
    else:
        k = s
        P0, Q0 = k, 1
    P, Q = P0, Q0
    q_prev2, q_prev1 = 1, 0  # q_{-2}, q_{-1}
    n = 0
    while True:
        a = (P + s) // Q
        q_prev2, q_prev1 = q_prev1, a * q_prev1 + q_prev2
        P = a * Q - P
        Q = (D - P * P) // Q
        n += 1
        if (P, Q) == (P0, Q0):
            break
    # eps = q_{n-1} * xi0 + q_{n-2}, xi0 = w + k
    eps = AlgInt(F, q_prev1 * k + q_prev2, q_prev1)
    if abs(eps.norm()) != 1 or eps.embedding_sign(0) <= 0:
        raise ArithmeticError(f"continued fraction failed for D = {D}")
    return eps


def _form_is_reduced(a: int, b: int, disc: int, s: int) -> bool:
    return 0 < b <= s and 2 * abs(a) + b > s and 2 * abs(a) - b <= s


def _rho(a: int, b: int, c: int, disc: int, s: int) -> tuple[int, int, int]:
    """One reduction step (a, b, c) -> (c, r, (r^2 - disc)/(4c))."""
    m = 2 * abs(c)
    if abs(c) > s:
        r = (-b) % m
        if r > abs(c):
            r -= m
    else:
        # largest r <= s with r = -b mod 2|c|
        r = s - ((s + b) % m)
    return c, r, (r * r - disc) // (4 * c)


def _reduce_form(a: int, b: int, c: int, disc: int, s: int) -> tuple[int, int, int]:
    for _ in range(10_000):
        if _form_is_reduced(a, b, disc, s):
            return a, b, c
        a, b, c = _rho(a, b, c, disc, s)
    raise ArithmeticError("form reduction did not terminate")


@lru_cache(maxsize=None)
def _principal_cycle(F: FieldDesc) -> frozenset[tuple[int, int, int]]:
    disc = F.disc_F
    s = math.isqrt(disc)
    b0 = disc % 2
    c0 = (b0 * b0 - disc) // 4
    forms: set[tuple[int, int, int]] = set()
    for start in ((1, b0, c0), (-1, b0, -c0)):
        f0 = _reduce_form(*start, disc, s)
        f = f0
        while True:
            forms.add(f)
            f = _rho(*f, disc, s)
            if f == f0:
                break
    return frozenset(forms)


def is_principal(F: FieldDesc, P: PrimeIdealF) -> bool:
    """Whether the prime ideal P of R_F is principal (wide sense)."""
    if F.degree == 1 or P.kind == INERT:
        return True
    disc, p = F.disc_F, P.p
    s = math.isqrt(disc)
    if p == 2:
        b = next(b for b in range(4) if b % 2 == disc % 2 and (b * b - disc) % 8 == 0)
    else:
        b = sqrt_mod(disc, p)
        if b % 2 != disc % 2:
            b += p
    # P and its conjugate are principal together, so either square root works
    form = _reduce_form(p, b, (b * b - disc) // (4 * p), disc, s)
    return form in _principal_cycle(F)


@lru_cache(maxsize=None)
def class_number_is_one(F: FieldDesc) -> bool:
    """h(F) = 1, by testing every prime ideal below the Minkowski bound."""
    if F.degree == 1:
        return True
    disc = F.disc_F
    p = 2
    while 4 * p * p <= disc:
        if is_prime(p):
            for P in decompose_prime(F, p):
                if not is_principal(F, P):
                    return False
        p += 1
    return True
