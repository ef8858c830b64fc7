"""Polynomials modulo primes: roots, simple-root prime searches, congruence
counts N(L, q), the value product W(L) and cyclotomic root counts."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Sequence

import mpmath

from . import gfp, heights
from .errors import (InequalityViolated, InternalAssertionFailed, PreconditionViolated,
                     SearchExhausted, ZeroReduction)
from .polyarith import IntPolynomial, content, derivative, discriminant, height
from .primes import euler_phi, factorint, is_prime, iter_primes, radical

DEFAULT_SEED = 0
DEFAULT_P_MAX = 10**8
_SCAN_BELOW = 50


@dataclass(frozen=True)
class SimpleRootWitness:
    p: int
    a: int
    simple: bool = True


def _eval_mod(f: IntPolynomial, x: int, q: int) -> int:
    acc = 0
    for c in reversed(f.coeffs):
        acc = (acc * x + c) % q
    return acc


def roots_mod_p(f: IntPolynomial, p: int, seed: int = DEFAULT_SEED) -> list[int]:
    """Sorted roots of f in F_p."""
    fp = gfp.reduce(f.coeffs, p)
    if not fp:
        raise ZeroReduction(f"{f} vanishes modulo {p}")
    if len(fp) == 1:
        return []
    if p < _SCAN_BELOW:
        return [a for a in range(p) if gfp.evaluate(fp, a, p) == 0]
    g = gfp.linear_part(fp, p)
    if len(g) <= 1:
        return []
    rng = random.Random(seed * 1_000_003 + p)
    return sorted(gfp.split_linear(g, p, rng))


def simple_root_mod_p(f: IntPolynomial, p: int, seed: int = DEFAULT_SEED) -> SimpleRootWitness | None:
    """Smallest root a of f mod p with f'(a) != 0 mod p, if any."""
    df = derivative(f)
    for a in roots_mod_p(f, p, seed):
        if _eval_mod(df, a, p):
            return SimpleRootWitness(p, a, True)
    return None


def smallest_simple_root_prime(f: IntPolynomial, Q: int = 1, p_max: int = DEFAULT_P_MAX,
                               seed: int = DEFAULT_SEED) -> SimpleRootWitness:
    """Least prime p <= p_max, p not dividing Q, at which f has a simple root."""
    if Q < 1:
        raise PreconditionViolated("Q must be positive")
    for p in iter_primes(2, p_max):
        if Q % p == 0 or all(c % p == 0 for c in f.coeffs):
            continue
        w = simple_root_mod_p(f, p, seed)
        if w is not None:
            return w
    raise SearchExhausted(p_max)


# ------------------------------------------------------------------ constructive prime

@dataclass(frozen=True)
class GenericPrimeResult:
    witness: SimpleRootWitness
    case: int
    bound: int
    radical_disc: int
    point: int

    @property
    def case_tag(self) -> str:
        return {1: "constant-term", 2: "unit-constant", 3: "shared-constant"}[self.case]


def _first_prime_factor(v: int, avoid: int, effort: int) -> int | None:
    factors, _ = factorint(v, trial_bound=10**5, rho_iterations=effort)
    usable = [q for q in factors if avoid % q]
    return min(usable) if usable else None


def generic_prime(f: IntPolynomial, effort: int = 50_000) -> GenericPrimeResult:
    """A prime with a simple root of f, found by evaluating f at multiples of
    the radical M of the discriminant, within the matching explicit bound.

    Cases: a_0 coprime to M with |a_0| > 1 (bound H), |a_0| = 1 (bound
    2H(dM)^d), gcd(a_0, M) > 1 (bound 2H(dHM)^d).
    """
    d = f.degree
    if d < 2:
        raise PreconditionViolated("needs degree >= 2")
    H = height(f)
    a0 = f.coeffs[0]
    if a0 == 0:
        raise PreconditionViolated("f(0) = 0, so f is reducible")
    M = radical(discriminant(f))
    df = derivative(f)

    def accept(p, point, case, bound):
        a = point % p
        if _eval_mod(f, a, p) or not _eval_mod(df, a, p):
            raise InternalAssertionFailed(f"{point} is not a simple root of {f} mod {p}")
        if p > bound:
            raise InternalAssertionFailed(f"prime {p} exceeds the case bound {bound}")
        return GenericPrimeResult(SimpleRootWitness(p, a, True), case, bound, M, point)

    if math.gcd(a0, M) == 1 and abs(a0) > 1:
        p = min(factorint(a0, strict=True)[0])
        return accept(p, 0, 1, H)

    if abs(a0) == 1:
        case, bound, step, target = 2, 2 * H * (d * M) ** d, M, 1
    else:
        case, bound, step, target = 3, 2 * H * (d * H * M) ** d, a0 * M, abs(a0)
    points = [0] + [s * i * step for i in range(1, d + 1) for s in (1, -1)]
    for budget in (effort, effort * 20):
        for x0 in points:
            v = f(x0)
            if abs(v) == target:
                continue
            if case == 3:
                v //= a0
            p = _first_prime_factor(v, M, budget)
            if p is not None:
                return accept(p, x0, case, bound)
    raise InternalAssertionFailed(f"no usable evaluation point for {f}")


# ------------------------------------------------------------------ congruence counts

def count_roots_N(f: IntPolynomial, L: int, q: int) -> int:
    """#{1 <= j <= L : f(j) = 0 mod q}, using the period q of j -> f(j) mod q."""
    if q < 1 or L < 0:
        raise ValueError("need q >= 1 and L >= 0")
    if L <= q:
        return sum(1 for j in range(1, L + 1) if _eval_mod(f, j, q) == 0)
    hits = [j for j in range(1, q + 1) if _eval_mod(f, j, q) == 0]
    full, rest = divmod(L, q)
    return full * len(hits) + sum(1 for j in hits if j <= rest)


@dataclass(frozen=True)
class LemmaCheck:
    name: str
    k: int
    L: int | None
    lhs: float
    rhs: float
    passed: bool


@dataclass
class CongruenceReport:
    f: IntPolynomial
    ell: int
    distinct_roots: int
    checks: list[LemmaCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def verify_congruence_lemmas(f: IntPolynomial, ell: int, k_max: int, L_list: Sequence[int],
                             strict: bool = True) -> CongruenceReport:
    """Brute-force the three bounds on N(ell^k) and N(L, ell^k) by integer comparisons:

    N(ell^k) <= m ell^(k-1) with m distinct complex roots,
    N(ell^k) <= 2 ell^(k(1-1/d)),
    |N(L, ell^k) - (L / ell^k) N(ell^k)| < d.
    """
    if content(f) % ell == 0:
        raise PreconditionViolated(f"content of {f} is divisible by {ell}")
    d = f.degree
    m = heights.distinct_root_count(f)
    report = CongruenceReport(f, ell, m)
    for k in range(1, k_max + 1):
        q = ell ** k
        N = count_roots_N(f, q, q)
        report.checks.append(LemmaCheck("distinct", k, None, N, m * ell ** (k - 1),
                                        N <= m * ell ** (k - 1)))
        report.checks.append(LemmaCheck("power", k, None, N, 2 * q ** (1 - 1 / d),
                                        N ** d <= 2 ** d * ell ** (k * (d - 1))))
        for L in L_list:
            NL = count_roots_N(f, L, q)
            report.checks.append(LemmaCheck("uniform", k, L,
                                            abs(NL - L * N / q), d,
                                            abs(q * NL - L * N) < d * q))
    if strict and not report.passed:
        bad = [c for c in report.checks if not c.passed]
        raise InequalityViolated(f"congruence bounds fail for {f} at {ell}: {bad}")
    return report


# ------------------------------------------------------------------ W(L) and its prime divisors

@dataclass
class DivisorProfile:
    f: IntPolynomial
    L: int
    W_factorization: dict[int, int]
    K_ell: dict[int, int]
    unfactored: list[int]
    zeros: int

    @property
    def omega(self) -> int:
        """Distinct primes of W(L); a lower bound when cofactors stayed unfactored."""
        return len(self.W_factorization) + len(self.unfactored)

    @property
    def omega_exact(self) -> bool:
        return not self.unfactored

    @property
    def W(self) -> int:
        return value_product(self.f, self.L)


def value_product(f: IntPolynomial, L: int) -> int:
    """W(L) = prod_{j=1..L} max(1, |f(j)|)."""
    return math.prod(max(1, abs(f(j))) for j in range(1, L + 1))


def _coprime_refine(values: list[int]) -> list[int]:
    """Pairwise coprime integers > 1 whose prime support equals that of the input."""
    out: list[int] = []
    for v in values:
        pending = [v]
        while pending:
            x = pending.pop()
            if x == 1:
                continue
            for i, y in enumerate(out):
                g = math.gcd(x, y)
                if g > 1:
                    out.pop(i)
                    pending += [g, x // g, y // g]
                    break
            else:
                out.append(x)
    return [x for x in out if x > 1]


def divisor_profile(f: IntPolynomial, L: int, trial_bound: int = 10**6,
                    rho_iterations: int = 100_000, cross_check: int = 25) -> DivisorProfile:
    if L < 1 or not f:
        raise PreconditionViolated("need L >= 1 and f nonzero")
    exps: dict[int, int] = {}
    kmax: dict[int, int] = {}
    leftovers: list[int] = []
    zeros = 0
    for j in range(1, L + 1):
        v = f(j)
        if v == 0:
            zeros += 1
            continue
        factors, rest = factorint(v, trial_bound=trial_bound, rho_iterations=rho_iterations, seed=j)
        for q, e in factors.items():
            exps[q] = exps.get(q, 0) + e
            kmax[q] = max(kmax.get(q, 0), e)
        leftovers += rest
    cofactors = []
    for c in _coprime_refine(leftovers):
        for q in exps:
            while c % q == 0:
                c //= q
        if c > 1:
            cofactors.append(c)
    profile = DivisorProfile(f, L, dict(sorted(exps.items())), dict(sorted(kmax.items())),
                             _coprime_refine(cofactors), zeros)
    d, H = f.degree, height(f)
    for q, K in profile.K_ell.items():
        if q ** K > 2 * H * L ** max(d, 0):
            raise InternalAssertionFailed(f"{q}^{K} exceeds 2 H L^d")
    primes = list(profile.W_factorization)
    sample = primes[:cross_check] + primes[-1:]
    for q in dict.fromkeys(sample):
        K = profile.K_ell[q]
        total = sum(count_roots_N(f, L, q ** k) for k in range(1, K + 1)) - K * zeros
        if total != profile.W_factorization[q]:
            raise InternalAssertionFailed(f"exponent of {q} in W({L}) disagrees with congruence counts")
    return profile


@dataclass
class ProductOmegaReport:
    f: IntPolynomial
    L: int
    product_hypothesis_met: bool
    product_passed: bool | None
    log_W: float
    log_product_bound: float
    omega: int
    omega_exact: bool
    omega_rhs: float
    c1: float
    c2: float

    @property
    def omega_ratio(self) -> float:
        return self.omega / self.omega_rhs


def log_plus(x: float) -> float:
    return max(1.0, math.log(x)) if x > 0 else 1.0


def product_lower_bound_holds(f: IntPolynomial, L: int, W: int | None = None) -> bool:
    """Exact test of W(L) >= (L/5)^(dL/18), i.e. W^18 5^(dL) >= L^(dL)."""
    d = f.degree
    if W is None:
        W = value_product(f, L)
    return W ** 18 * 5 ** (d * L) >= L ** (d * L)


def verify_product_and_omega_lemmas(f: IntPolynomial, L: int, c1: float = 0.05, c2: float = 0.05,
                                    profile: DivisorProfile | None = None) -> ProductOmegaReport:
    """Exact product lower bound (when L >= 51(2d+1)) and a report-only
    comparison of omega(W(L)) with min(c1 L / log+ H, L^(c2/d))."""
    d, H = f.degree, height(f)
    W = value_product(f, L)
    met = L >= 51 * (2 * d + 1)
    passed = product_lower_bound_holds(f, L, W) if met else None
    if passed is False:
        raise InequalityViolated(f"W({L}) below (L/5)^(dL/18) for {f}")
    with mpmath.workprec(128):
        log_W = float(mpmath.log(W)) if W > 1 else 0.0
        log_bound = float(mpmath.mpf(d * L) / 18 * mpmath.log(mpmath.mpf(L) / 5))
    prof = profile or divisor_profile(f, L)
    rhs = min(c1 * L / log_plus(H), L ** (c2 / d))
    return ProductOmegaReport(f, L, met, passed, log_W, log_bound, prof.omega, prof.omega_exact,
                              rhs, c1, c2)


# ------------------------------------------------------------------ cyclotomic counts

def largest_prime_power(m: int) -> tuple[int, int]:
    """(P(m), e) with P(m) the largest prime factor of m and P(m)^e || m."""
    if m < 2:
        raise ValueError("m must be >= 2")
    factors, _ = factorint(m, strict=True)
    ell = max(factors)
    return ell, factors[ell]


def delta(m: int) -> int:
    ell, e = largest_prime_power(m)
    q = m // ell ** e
    return euler_phi(q) if (ell - 1) % q == 0 else 1


def cyclotomic_criterion(m: int, ell: int) -> bool:
    """True iff Phi_m has a root (equivalently splits) modulo the prime ell."""
    e = 0
    q = m
    while q % ell == 0:
        q //= ell
        e += 1
    return (ell - 1) % q == 0


@dataclass(frozen=True)
class CyclotomicCount:
    value: int
    exact: bool


def cyclotomic_root_count(m: int, ell: int, k: int = 1) -> CyclotomicCount:
    """N(ell^k) for Phi_m from the splitting criterion.

    Exact for k = 1 and for ell not dividing m (roots are simple and lift
    uniquely); for ell | m and k >= 2 the value is the upper bound
    phi(m / ell^e) ell^(k-1).
    """
    if m <= 2:
        raise PreconditionViolated("m must exceed 2")
    if not is_prime(ell):
        raise PreconditionViolated(f"{ell} is not prime")
    q = m
    while q % ell == 0:
        q //= ell
    if not cyclotomic_criterion(m, ell):
        return CyclotomicCount(0, True)
    if q == m:
        return CyclotomicCount(euler_phi(m), True)
    if k == 1:
        return CyclotomicCount(euler_phi(q), True)
    return CyclotomicCount(euler_phi(q) * ell ** (k - 1), False)


# ------------------------------------------------------------------ prime-avoiding window

@dataclass(frozen=True)
class WindowReport:
    L: int
    found: bool
    prime: int | None
    point: int | None
    value_bound: int


def root_prime_window(f: IntPolynomial, Q: int, C0: float = 1.0, c0: float = 1.0) -> WindowReport:
    """Scan f(1..L) for a prime p not dividing Q with f(j) = 0 mod p, where
    L = ceil(C0 d log Q log+ H + (log Q)^(c0 d)); C0 and c0 are user knobs."""
    if Q < 3:
        raise PreconditionViolated("Q must be >= 3")
    d, H = f.degree, height(f)
    lq = math.log(Q)
    L = math.ceil(C0 * d * lq * log_plus(H) + lq ** (c0 * d))
    best = None
    for j in range(1, L + 1):
        v = f(j)
        if v == 0:
            continue
        factors, _ = factorint(v, trial_bound=10**5, rho_iterations=20_000)
        for q in factors:
            if Q % q and (best is None or q < best[0]):
                best = (q, j)
    return WindowReport(L, best is not None, best[0] if best else None, best[1] if best else None,
                        2 * H * L ** d)
