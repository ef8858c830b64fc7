"""Prime iteration, primality testing and integer factorization."""
from __future__ import annotations

import math
import random
from functools import lru_cache
from itertools import islice
from typing import Iterator

from .errors import FactorizationTimeout

SEGMENT_SIZE = 1 << 20

# deterministic Miller-Rabin below this bound with bases 2..17
_MR_DETERMINISTIC_LIMIT = 341_550_071_728_321
_MR_BASES = (2, 3, 5, 7, 11, 13, 17)


@lru_cache(maxsize=8)
def small_primes(limit: int) -> tuple[int, ...]:
    """All primes <= limit by the sieve of Eratosthenes."""
    if limit < 2:
        return ()
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(range(i * i, limit + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def iter_primes(start: int = 2, stop: int | None = None,
                segment_size: int = SEGMENT_SIZE) -> Iterator[int]:
    """Yield primes p with start <= p <= stop (unbounded if stop is None).

    Uses a segmented sieve; base primes are extended as segments advance.
    """
    lo = max(2, start)
    base: tuple[int, ...] = ()
    base_limit = 0
    while stop is None or lo <= stop:
        hi = lo + segment_size  # exclusive
        if stop is not None:
            hi = min(hi, stop + 1)
        root = math.isqrt(hi - 1)
        if root > base_limit:
            base_limit = max(root, 2 * base_limit, 1024)
            base = small_primes(base_limit)
        seg = bytearray([1]) * (hi - lo)
        for q in base:
            if q * q >= hi:
                break
            first = max(q * q, ((lo + q - 1) // q) * q)
            if first >= hi:
                continue
            seg[first - lo :: q] = bytes(len(range(first, hi, q)))
        for i, flag in enumerate(seg):
            if flag:
                yield lo + i
        lo = hi


def nth_prime(n: int) -> int:
    """The n-th prime, 1-indexed (nth_prime(1) == 2)."""
    if n < 1:
        raise ValueError("n must be positive")
    return next(islice(iter_primes(), n - 1, None))


def first_primes(n: int) -> list[int]:
    return list(islice(iter_primes(), n))


def _miller_rabin(n: int, a: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
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


def _strong_lucas(n: int) -> bool:
    if math.isqrt(n) ** 2 == n:
        return False
    # Selfridge parameter choice
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    inv2 = (n + 1) // 2
    U, V, Qk = 1, P, Q % n
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (P * U + V) * inv2 % n, (D * U + P * V) * inv2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_prime(n: int) -> bool:
    """Deterministic below 3.4e14; Baillie-PSW probable prime above."""
    if n < 2:
        return False
    for q in small_primes(200):
        if n % q == 0:
            return n == q
    if n < 40_000:
        return True
    if n < _MR_DETERMINISTIC_LIMIT:
        return all(_miller_rabin(n, a) for a in _MR_BASES)
    return _miller_rabin(n, 2) and _strong_lucas(n)


def pollard_brent(n: int, rng: random.Random, max_iter: int = 200_000) -> int | None:
    """One nontrivial factor of composite n, or None when the budget runs out."""
    if n % 2 == 0:
        return 2
    spent = 0
    while spent < max_iter:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1 and spent < max_iter:
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
            spent += r
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def factorint(n: int, trial_bound: int = 10**6, rho_iterations: int = 200_000,
              seed: int = 0, strict: bool = False) -> tuple[dict[int, int], list[int]]:
    """Factor |n|.

    Returns ``(factors, unfactored)``: ``factors`` maps primes to exponents and
    ``unfactored`` lists composite cofactors the effort cap could not split.
    With ``strict=True`` a leftover cofactor raises FactorizationTimeout.
    """
    n = abs(n)
    factors: dict[int, int] = {}
    if n < 2:
        return factors, []
    for q in small_primes(trial_bound):
        if q * q > n:
            break
        if n % q == 0:
            e = 0
            while n % q == 0:
                n //= q
                e += 1
            factors[q] = e
    if n == 1:
        return factors, []
    rng = random.Random(seed)
    stack, unfactored = [n], []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = pollard_brent(m, rng, rho_iterations)
        if d is None:
            unfactored.append(m)
        else:
            stack += [d, m // d]
    if unfactored and strict:
        raise FactorizationTimeout(f"could not factor cofactor(s) {unfactored}")
    return dict(sorted(factors.items())), sorted(unfactored)


def prime_divisors(n: int, **kwargs) -> list[int]:
    factors, rest = factorint(n, strict=True, **kwargs)
    return sorted(factors)


def radical(n: int) -> int:
    """Product of the distinct primes dividing n."""
    return math.prod(prime_divisors(n)) if abs(n) > 1 else 1


def euler_phi(n: int) -> int:
    result = n
    for q in prime_divisors(n):
        result -= result // q
    return result


def valuation(n: int, p: int) -> int:
    """Exponent of p in the nonzero integer n."""
    if n == 0:
        raise ValueError("valuation of zero is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v
