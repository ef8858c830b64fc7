"""Complex roots with a posteriori error bounds, Mahler measures and heights.

Roots are polished in double precision (Aberth iteration) and then in
extended precision with mpmath until every inclusion disc
``D(z_i, n |f(z_i)| / |a_n prod_{j != i}(z_i - z_j)|)`` is smaller than the
tolerance and the discs are pairwise disjoint, so each disc holds exactly one
root. Repeated roots are removed beforehand by an exact squarefree
decomposition.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .errors import DegreeTooSmall, InequalityViolated, NoConvergence, ZeroPolynomial
from .polyarith import IntPolynomial, height, squarefree_decomposition

DEFAULT_TOL = 1e-12
HEIGHT_SLACK = 1e-6
_MAX_ROUNDS = 7


@dataclass(frozen=True)
class RootCluster:
    center: complex
    radius: float
    multiplicity: int


@dataclass(frozen=True)
class MahlerEstimate:
    value: float
    abs_error: float
    source_poly: IntPolynomial

    @property
    def lower(self) -> float:
        return self.value - self.abs_error

    @property
    def upper(self) -> float:
        return self.value + self.abs_error


@dataclass(frozen=True)
class SandwichReport:
    """Both sides of H 2^-d <= M <= H sqrt(d+1) for one polynomial."""

    poly: IntPolynomial
    height: int
    mahler: MahlerEstimate
    lower_bound: float
    upper_bound: float

    @property
    def passed(self) -> bool:
        return (self.lower_bound <= self.mahler.upper + HEIGHT_SLACK
                and self.mahler.lower <= self.upper_bound + HEIGHT_SLACK)


def _aberth_double(coeffs: list[int], iters: int = 500) -> np.ndarray:
    n = len(coeffs) - 1
    c = np.array(coeffs[::-1], dtype=complex)
    c = c / c[0]
    dc = np.polyder(c)
    # Fujiwara bound on root moduli
    radius = 2 * max(abs(c[k]) ** (1.0 / k) for k in range(1, n + 1))
    radius = radius if radius > 0 else 1.0
    angles = 2 * np.pi * (np.arange(n) + 0.25) / n
    z = 0.5 * radius * np.exp(1j * angles)
    for _ in range(iters):
        p = np.polyval(c, z)
        dp = np.polyval(dc, z)
        with np.errstate(all="ignore"):
            ratio = p / dp
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            s = (1 / diff).sum(axis=1)
            w = ratio / (1 - ratio * s)
        w = np.where(np.isfinite(w), w, 0)
        z = z - w
        if np.all(np.abs(w) <= 1e-15 * np.maximum(1, np.abs(z))):
            break
    return z


def _inclusion_radii(coeffs, z):
    n = len(coeffs) - 1
    lead = coeffs[-1]
    radii = []
    for i, zi in enumerate(z):
        val = mpmath.mpf(0)
        for a in reversed(coeffs):
            val = val * zi + a
        denom = lead
        for j, zj in enumerate(z):
            if j != i:
                denom *= zi - zj
        if denom == 0:
            return None
        radii.append(n * abs(val) / abs(denom))
    return radii


def _polish(coeffs, z, tol):
    """Aberth steps in the current mpmath precision until corrections fall below tol."""
    n = len(coeffs) - 1
    dcoeffs = [i * a for i, a in enumerate(coeffs)][1:]
    for _ in range(200):
        biggest = mpmath.mpf(0)
        new = []
        for i, zi in enumerate(z):
            p = mpmath.polyval(coeffs[::-1], zi)
            dp = mpmath.polyval(dcoeffs[::-1], zi)
            if dp == 0:
                new.append(zi)
                continue
            ratio = p / dp
            s = mpmath.fsum(1 / (zi - zj) for j, zj in enumerate(z) if j != i and zi != zj)
            w = ratio / (1 - ratio * s)
            biggest = max(biggest, abs(w))
            new.append(zi - w)
        z = new
        if biggest < tol * mpmath.mpf(2) ** -20:
            break
    return z


def _squarefree_roots(g: IntPolynomial, tol: float) -> list[tuple[complex, float]]:
    coeffs = list(g.coeffs)
    n = g.degree
    if n == 1:
        root = Fraction(-coeffs[0], coeffs[1])
        return [(complex(float(root)), 0.0)]
    start = _aberth_double(coeffs)
    scale_bits = max(1, int(math.log2(max(abs(a) for a in coeffs) + 1)))
    bits = 64 + 2 * scale_bits + 4 * n
    for _ in range(_MAX_ROUNDS):
        with mpmath.workprec(bits):
            z = [mpmath.mpc(complex(s)) for s in start]
            z = _polish(coeffs, z, tol)
            radii = _inclusion_radii(coeffs, z)
            if radii is not None and max(radii) <= tol:
                disjoint = all(
                    abs(z[i] - z[j]) > radii[i] + radii[j]
                    for i in range(n) for j in range(i + 1, n)
                )
                if disjoint:
                    return [(complex(zi), float(r)) for zi, r in zip(z, radii)]
            start = [complex(zi) for zi in z]
        bits *= 2
    raise NoConvergence(f"root certificate failed for {g} at tolerance {tol}")


def root_clusters(f: IntPolynomial, tol: float = DEFAULT_TOL) -> list[RootCluster]:
    """Distinct roots of f with certified radii and exact multiplicities."""
    if f.degree < 1:
        raise DegreeTooSmall("root finding needs degree >= 1")
    out = []
    for g, e in squarefree_decomposition(f):
        for z, r in _squarefree_roots(g, tol):
            out.append(RootCluster(z, r, e))
    return out


def complex_roots(f: IntPolynomial, tol: float = DEFAULT_TOL) -> list[complex]:
    """All deg(f) complex roots, repeated by multiplicity, each within tol of a true root."""
    return [c.center for c in root_clusters(f, tol) for _ in range(c.multiplicity)]


def cluster_roots(roots: list[complex], radius: float) -> list[list[complex]]:
    """Group approximations lying within ``radius`` of each other (single linkage)."""
    groups: list[list[complex]] = []
    for z in roots:
        hits = [g for g in groups if any(abs(z - w) <= radius for w in g)]
        merged = [z]
        for g in hits:
            merged += g
            groups.remove(g)
        groups.append(merged)
    return groups


def distinct_root_count(f: IntPolynomial, tol: float = DEFAULT_TOL) -> int:
    return len(cluster_roots(complex_roots(f, tol), 2 * tol))


def mahler_measure(f: IntPolynomial, tol: float = DEFAULT_TOL) -> MahlerEstimate:
    if not f:
        raise ZeroPolynomial("Mahler measure of the zero polynomial")
    lead = abs(f.leading)
    if f.degree == 0:
        return MahlerEstimate(float(lead), 0.0, f)
    clusters = root_clusters(f, tol)
    with mpmath.workprec(113):
        value = lo = hi = mpmath.mpf(lead)
        for c in clusters:
            m = abs(mpmath.mpc(c.center))
            e = c.multiplicity
            value *= max(1, m) ** e
            lo *= max(1, m - c.radius) ** e
            hi *= max(1, m + c.radius) ** e
        err = max(hi - value, value - lo)
    # rounding of the float conversion
    err += abs(value) * 4e-16 * (f.degree + 1)
    return MahlerEstimate(float(value), float(err), f)


def abs_log_height(min_poly: IntPolynomial, tol: float = DEFAULT_TOL) -> float:
    """Absolute logarithmic height of a root of the (irreducible) min_poly."""
    if min_poly.degree < 1:
        raise DegreeTooSmall("height needs a polynomial of degree >= 1")
    return math.log(mahler_measure(min_poly, tol).value) / min_poly.degree


def rational_height(q) -> float:
    """h(a/b) = log max(|a|, |b|) for a reduced fraction; h(0) = 0."""
    q = Fraction(q)
    if q == 0:
        return 0.0
    return math.log(max(abs(q.numerator), q.denominator))


def check_height_mahler_inequality(f: IntPolynomial, tol: float = DEFAULT_TOL) -> SandwichReport:
    d = f.degree
    H = height(f)
    M = mahler_measure(f, tol)
    report = SandwichReport(f, H, M, H * 2.0 ** -d, H * math.sqrt(d + 1))
    if not report.passed:
        raise InequalityViolated(
            f"H 2^-d <= M <= H sqrt(d+1) fails for {f}: "
            f"{report.lower_bound} <= {M.value} +/- {M.abs_error} <= {report.upper_bound}")
    return report


def phase_sorted(roots: list[complex]) -> list[complex]:
    """Deterministic ordering by (real, imag) for display and tests."""
    return sorted(roots, key=lambda z: (round(z.real, 9), round(z.imag, 9), cmath.phase(z)))
