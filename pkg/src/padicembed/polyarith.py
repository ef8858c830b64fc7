"""Exact univariate polynomials over Z and Q.

Coefficients are stored little-endian (index = exponent); the zero
polynomial is the empty tuple.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Sequence

from . import gfp
from .errors import DegreeTooSmall, NotPrimitiveContent, ZeroPolynomial
from .primes import iter_primes


@dataclass(frozen=True, init=False)
class IntPolynomial:
    """Integer polynomial sum(coeffs[i] * x**i)."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "IntPolynomial":
        f = cls([1])
        for r in roots:
            f = f * cls([-r, 1])
        return f

    @classmethod
    def monomial(cls, n: int, c: int = 1) -> "IntPolynomial":
        return cls([0] * n + [c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __call__(self, x):
        return evaluate(self, x)

    def __neg__(self):
        return IntPolynomial(-a for a in self.coeffs)

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = IntPolynomial([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __floordiv__(self, other):
        return exact_div(self, _coerce(other))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> list[str]:
        return [str(a) for a in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence) -> "IntPolynomial":
        return cls(int(a) for a in data)


def _coerce(x) -> IntPolynomial:
    if isinstance(x, IntPolynomial):
        return x
    if isinstance(x, int):
        return IntPolynomial([x])
    raise TypeError(f"cannot coerce {type(x).__name__} to IntPolynomial")


X = IntPolynomial([0, 1])


@dataclass(frozen=True)
class RatPolynomial:
    """numerator / denominator with gcd(content(numerator), denominator) == 1."""

    numerator: IntPolynomial
    denominator: int = 1

    def __post_init__(self):
        if self.denominator == 0:
            raise ZeroDivisionError("zero denominator")
        num, den = self.numerator, self.denominator
        if den < 0:
            num, den = -num, -den
        g = math.gcd(content(num), den)
        if g > 1:
            num = IntPolynomial(a // g for a in num.coeffs)
            den //= g
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    @classmethod
    def from_fractions(cls, coeffs: Iterable) -> "RatPolynomial":
        fr = [Fraction(c) for c in coeffs]
        den = math.lcm(*(c.denominator for c in fr)) if fr else 1
        return cls(IntPolynomial(int(c * den) for c in fr), den)

    def to_fractions(self) -> list[Fraction]:
        return [Fraction(a, self.denominator) for a in self.numerator.coeffs]

    @property
    def degree(self) -> int:
        return self.numerator.degree


# ---------------------------------------------------------------- basics

def evaluate(f: IntPolynomial, x):
    """Horner evaluation; works for any ring element x."""
    acc = 0
    for a in reversed(f.coeffs):
        acc = acc * x + a
    return acc


def content(f: IntPolynomial) -> int:
    return reduce(math.gcd, f.coeffs, 0)


def primitive_part(f: IntPolynomial) -> IntPolynomial:
    """f / content(f), normalised to a positive leading coefficient."""
    c = content(f)
    if c == 0:
        return f
    if f.leading < 0:
        c = -c
    return IntPolynomial(a // c for a in f.coeffs)


def height(f: IntPolynomial) -> int:
    return max((abs(a) for a in f.coeffs), default=0)


def length(f: IntPolynomial) -> int:
    return sum(abs(a) for a in f.coeffs)


def derivative(f: IntPolynomial) -> IntPolynomial:
    return IntPolynomial(i * a for i, a in enumerate(f.coeffs) if i)


def pseudo_divmod(f: IntPolynomial, g: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
    """(q, r) with lc(g)^(deg f - deg g + 1) * f = q*g + r."""
    if not g:
        raise ZeroPolynomial("division by the zero polynomial")
    df, dg = f.degree, g.degree
    if df < dg:
        return IntPolynomial(), f
    lc = g.leading
    r = list(f.coeffs)
    q = [0] * (df - dg + 1)
    for k in range(df - dg, -1, -1):
        c = r[k + dg]
        q = [a * lc for a in q]
        q[k] += c
        r = [a * lc for a in r]
        for j, b in enumerate(g.coeffs):
            r[k + j] -= c * b
    return IntPolynomial(q), IntPolynomial(r[:dg])


def pseudo_remainder(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    return pseudo_divmod(f, g)[1]


def exact_div(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """f / g in Z[x]; ArithmeticError if the division is not exact."""
    if not g:
        raise ZeroPolynomial("division by the zero polynomial")
    r = list(f.coeffs)
    dg = g.degree
    if f.degree < dg:
        if f:
            raise ArithmeticError(f"{g} does not divide {f}")
        return IntPolynomial()
    q = [0] * (f.degree - dg + 1)
    lc = g.leading
    for k in range(f.degree - dg, -1, -1):
        c, rem = divmod(r[k + dg], lc)
        if rem:
            raise ArithmeticError(f"{g} does not divide {f}")
        q[k] = c
        if c:
            for j, b in enumerate(g.coeffs):
                r[k + j] -= c * b
    if any(r):
        raise ArithmeticError(f"{g} does not divide {f}")
    return IntPolynomial(q)


def gcd(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """gcd in Z[x] with positive leading coefficient (primitive PRS)."""
    if not f:
        return primitive_part(g) * content(g) if g else IntPolynomial()
    if not g:
        return primitive_part(f) * content(f)
    c = math.gcd(content(f), content(g))
    a, b = primitive_part(f), primitive_part(g)
    if a.degree < b.degree:
        a, b = b, a
    while b:
        r = pseudo_remainder(a, b)
        a, b = b, primitive_part(r) if r else r
    return primitive_part(a) * c


def squarefree_decomposition(f: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    """Primitive squarefree factors with multiplicities of the primitive part of f.

    The product of g**e over the output equals primitive_part(f).
    """
    P = primitive_part(f)
    if P.degree < 1:
        return []
    g = gcd(P, derivative(P))
    w = exact_div(P, g)
    out = []
    i = 1
    while w.degree > 0:
        y = gcd(w, g)
        z = exact_div(w, y)
        if z.degree > 0:
            out.append((primitive_part(z), i))
        g = exact_div(g, y)
        w = y
        i += 1
    return out


def squarefree_part(f: IntPolynomial) -> IntPolynomial:
    out = IntPolynomial([1])
    for g, _ in squarefree_decomposition(f):
        out = out * g
    return out


# ---------------------------------------------------------------- resultants

def resultant(f: IntPolynomial, g: IntPolynomial) -> int:
    """Res(f, g) by the subresultant polynomial remainder sequence."""
    if not f or not g:
        raise ZeroPolynomial("resultant of the zero polynomial")
    A, B = f, g
    s = 1
    if A.degree < B.degree:
        A, B = B, A
        if A.degree % 2 and B.degree % 2:
            s = -1
    if B.degree == 0:
        return s * B.leading ** A.degree
    ca, cb = content(A), content(B)
    t = ca ** B.degree * cb ** A.degree
    A = IntPolynomial(a // ca for a in A.coeffs)
    B = IntPolynomial(b // cb for b in B.coeffs)
    g_, h = 1, 1
    while True:
        delta = A.degree - B.degree
        if A.degree % 2 and B.degree % 2:
            s = -s
        R = pseudo_remainder(A, B)
        A = B
        if not R:
            return 0
        div = g_ * h ** delta
        B = IntPolynomial(r // div for r in R.coeffs)
        g_ = A.leading
        if delta == 0:
            pass
        elif delta == 1:
            h = g_
        else:
            h = g_ ** delta // h ** (delta - 1)
        if B.degree <= 0:
            break
    dA = A.degree
    if dA == 0:
        last = 1
    elif dA == 1:
        last = B.leading
    else:
        last = B.leading ** dA // h ** (dA - 1)
    return s * t * last


def sylvester_matrix(f: IntPolynomial, g: IntPolynomial) -> list[list[int]]:
    m, n = f.degree, g.degree
    size = m + n
    fc, gc = f.coeffs[::-1], g.coeffs[::-1]
    rows = []
    for i in range(n):
        rows.append([0] * i + list(fc) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(gc) + [0] * (size - n - 1 - i))
    return rows


def discriminant(f: IntPolynomial) -> int:
    d = f.degree
    if d < 1:
        raise DegreeTooSmall("discriminant needs degree >= 1")
    if d == 1:
        return 1
    res = resultant(f, derivative(f))
    q, r = divmod(res, f.leading)
    if r:
        raise ArithmeticError("Res(f, f') not divisible by lc(f)")
    return -q if (d * (d - 1) // 2) % 2 else q


def discriminant_bound_holds(f: IntPolynomial, disc: int | None = None) -> bool:
    """Exact test of |disc| < d^(2d) H^(2d-2) for d >= 2."""
    d = f.degree
    if disc is None:
        disc = discriminant(f)
    return abs(disc) < d ** (2 * d) * height(f) ** (2 * d - 2)


# ---------------------------------------------------------------- cyclotomics

@lru_cache(maxsize=1024)
def cyclotomic(m: int) -> IntPolynomial:
    """The m-th cyclotomic polynomial, by exact division of x^m - 1."""
    if m < 1:
        raise ValueError("m must be positive")
    f = IntPolynomial.monomial(m) - 1
    for e in range(1, m):
        if m % e == 0:
            f = exact_div(f, cyclotomic(e))
    return f


# ---------------------------------------------------------------- irreducibility

class Irreducibility(str, enum.Enum):
    PROVEN = "Proven"
    UNKNOWN = "Unknown"


def _subset_sums(degrees: list[int], d: int) -> set[int]:
    sums = {0}
    for k in degrees:
        sums |= {s + k for s in sums if s + k <= d}
    return {s for s in sums if 0 < s < d}


def check_irreducible(f: IntPolynomial, max_primes: int = 40) -> Irreducibility:
    """Sound-but-incomplete irreducibility test over Q via factor degree patterns.

    A factorization over Q of degree k would give a factor of degree k mod every
    good prime, so an empty intersection of the possible factor degrees proves
    irreducibility.
    """
    if content(f) != 1:
        raise NotPrimitiveContent(f"content of {f} is {content(f)}")
    d = f.degree
    if d < 1:
        raise DegreeTooSmall("irreducibility needs degree >= 1")
    if d == 1:
        return Irreducibility.PROVEN
    disc = discriminant(f)
    if disc == 0:
        return Irreducibility.UNKNOWN
    bad = disc * f.leading
    possible = set(range(1, d))
    used = 0
    for p in iter_primes():
        if bad % p == 0:
            continue
        pattern = gfp.distinct_degree(gfp.reduce(f.coeffs, p), p)
        degrees = [k for k, count in pattern for _ in range(count)]
        possible &= _subset_sums(degrees, d)
        if not possible:
            return Irreducibility.PROVEN
        used += 1
        if used >= max_primes:
            return Irreducibility.UNKNOWN
    raise AssertionError("unreachable")
