"""Dense polynomials over F_p as little-endian lists of residues."""
from __future__ import annotations

import random

Poly = list  # list[int], trimmed, little-endian


def trim(a: Poly) -> Poly:
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce(coeffs, p: int) -> Poly:
    return trim([c % p for c in coeffs])


def deg(a: Poly) -> int:
    return len(a) - 1


def add(a: Poly, b: Poly, p: int) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out)


def sub(a: Poly, b: Poly, p: int) -> Poly:
    return add(a, [(-c) % p for c in b], p)


def mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % p for c in out])


def monic(a: Poly, p: int) -> Poly:
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def divmod_(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], trim(r)
    inv = pow(b[-1], -1, p)
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1 - db, -1, -1):
        c = r[i + db] * inv % p
        q[i] = c
        if c:
            for j, y in enumerate(b):
                r[i + j] = (r[i + j] - c * y) % p
    return trim(q), trim(r[:db])


def rem(a: Poly, b: Poly, p: int) -> Poly:
    return divmod_(a, b, p)[1]


def gcd(a: Poly, b: Poly, p: int) -> Poly:
    """Monic gcd (empty list when both are zero)."""
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def powmod(base: Poly, e: int, mod: Poly, p: int) -> Poly:
    result: Poly = [1]
    base = rem(base, mod, p)
    while e:
        if e & 1:
            result = rem(mul(result, base, p), mod, p)
        e >>= 1
        if e:
            base = rem(mul(base, base, p), mod, p)
    return result


def derivative(a: Poly, p: int) -> Poly:
    return trim([(i * c) % p for i, c in enumerate(a)][1:])


def evaluate(a: Poly, x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def linear_part(f: Poly, p: int) -> Poly:
    """gcd(x^p - x, f): the product of the distinct linear factors of f."""
    f = monic(f, p)
    if len(f) <= 1:
        return [1]
    xp = powmod([0, 1], p, f, p)
    return gcd(sub(xp, [0, 1], p), f, p)


def split_linear(g: Poly, p: int, rng: random.Random) -> list[int]:
    """Roots of a monic squarefree g that splits into linear factors over F_p.

    Cantor-Zassenhaus equal-degree splitting for odd p.
    """
    if len(g) <= 1:
        return []
    if len(g) == 2:
        return [(-g[0]) % p]
    if p == 2:
        return [x for x in (0, 1) if evaluate(g, x, p) == 0]
    while True:
        delta = rng.randrange(p)
        h = powmod([delta, 1], (p - 1) // 2, g, p)
        d = gcd(sub(h, [1], p), g, p)
        if 0 < deg(d) < deg(g):
            q, _ = divmod_(g, d, p)
            return split_linear(d, p, rng) + split_linear(monic(q, p), p, rng)


def distinct_degree(f: Poly, p: int) -> list[tuple[int, int]]:
    """Degree pattern of a squarefree f as (factor degree, count) pairs."""
    f = monic(f, p)
    pattern = []
    h: Poly = [0, 1]
    k = 0
    while deg(f) >= 2 * (k + 1):
        k += 1
        h = powmod(h, p, f, p)
        g = gcd(sub(h, [0, 1], p), f, p)
        if deg(g) > 0:
            pattern.append((k, deg(g) // k))
            f, _ = divmod_(f, g, p)
            h = rem(h, f, p)
    if deg(f) > 0:
        pattern.append((deg(f), 1))
    return pattern
