"""Independent brute-force references used by the tests.

Nothing here calls the package's search code: roots are found by scanning
residues, lifts by scanning digits, valuations by direct modular arithmetic.
"""
from fractions import Fraction

import sympy


def poly_eval(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def deriv(coeffs):
    return [i * c for i, c in enumerate(coeffs)][1:]


def brute_roots(coeffs, p):
    return [a for a in range(p) if poly_eval(coeffs, a) % p == 0]


def brute_simple_roots(coeffs, p):
    d = deriv(coeffs)
    return [a for a in brute_roots(coeffs, p) if poly_eval(d, a) % p]


def brute_count(coeffs, L, q):
    return sum(1 for j in range(1, L + 1) if poly_eval(coeffs, j) % q == 0)


def brute_least_simple_root_prime(coeffs, Q=1, limit=10**5):
    for p in sympy.primerange(2, limit):
        if Q % p == 0 or all(c % p == 0 for c in coeffs):
            continue
        roots = brute_simple_roots(coeffs, p)
        if roots:
            return p, roots[0]
    return None


def vp(n, p):
    if n == 0:
        return None
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def lift_by_digits(coeffs, p, a, k):
    eta, q = a, p
    for _ in range(k - 1):
        eta = next(eta + t * q for t in range(p) if poly_eval(coeffs, eta + t * q) % (q * p) == 0)
        q *= p
    return eta


def brute_unit_embedding(coeffs, elements, p_limit=10**4, k=8):
    """Least prime p admitting a simple root eta of f such that every element
    (coordinate list of Fractions) and its inverse are p-adic units, with
    p not dividing disc * lc * denominators. Returns (p, eta mod p, valuations)."""
    x = sympy.Symbol("x")
    f = sympy.Poly(list(reversed(coeffs)), x)
    disc = int(sympy.discriminant(f))
    lead = coeffs[-1]
    polys = []
    for coords in elements:
        g = sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in coords])), x)
        inv = sympy.invert(g.as_expr(), f.as_expr(), x)
        polys.append([Fraction(c) for c in coords])
        ic = sympy.Poly(inv, x).all_coeffs()[::-1]
        ic += [0] * (len(coeffs) - 1 - len(ic))
        polys.append([Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in ic])
    for p in sympy.primerange(2, p_limit):
        if disc % p == 0 or lead % p == 0:
            continue
        if any(c.denominator % p == 0 for cs in polys for c in cs):
            continue
        roots = brute_simple_roots(coeffs, p)
        if not roots:
            continue
        eta = lift_by_digits(coeffs, p, roots[0], k)
        q = p ** k
        vals = []
        for cs in polys:
            val = sum(c * eta ** j for j, c in enumerate(cs))
            num = val.numerator % q
            vals.append((vp(num, p) if num else k) - vp(val.denominator, p))
        return p, roots[0], vals
    return None


def delta_by_definition(m):
    fac = sympy.factorint(m)
    ell = max(fac)
    e = fac[ell]
    q = m // ell ** e
    return int(sympy.totient(q)) if ell % q == 1 % q else 1
