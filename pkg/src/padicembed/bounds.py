"""Explicit and parameterised prime and height bounds, evaluated in log space.

Bounds with fully explicit constants are marked ``asserted``; an empirical
value that violates one raises. Bounds stated only up to unspecified absolute
constants are evaluated with user constants (default 1, exponents taken
literally) and are reported, never asserted.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

import mpmath

from .errors import InequalityViolated, MissingInput, NotPrimePair, PreconditionViolated
from .numfield import NumberField, min_poly_of_element
from .polyarith import IntPolynomial, height
from .primes import euler_phi, first_primes, is_prime, iter_primes

_PREC = 96
EPS = 1e-9


def _log_plus(x) -> mpmath.mpf:
    x = mpmath.mpf(x)
    return max(mpmath.mpf(1), mpmath.log(x)) if x > 0 else mpmath.mpf(1)


def _log(x) -> mpmath.mpf:
    x = mpmath.mpf(x)
    return mpmath.log(x) if x > 0 else mpmath.ninf


def _log_sum(*logs) -> mpmath.mpf:
    finite = [t for t in logs if t != mpmath.ninf]
    if not finite:
        return mpmath.ninf
    top = max(finite)
    return top + mpmath.log(mpmath.fsum(mpmath.exp(t - top) for t in finite))


@dataclass(frozen=True)
class BoundSpec:
    inputs: tuple[str, ...]
    log_value: Callable
    asserted: bool
    direction: str = "upper"
    description: str = ""


def _generic_prime(v, c):
    case, H, d = int(v["case"]), v["H"], v["d"]
    if case == 1:
        return _log(H)
    M = v["M"]
    base = d * M if case == 2 else d * H * M
    return mpmath.log(2 * H) + d * _log(base)


def _omega(v, c):
    L, H, d = v["L"], v["H"], v["d"]
    return min(_log(c["c1"] * L / _log_plus(H)), c["c2"] / d * _log(L))


def _expo(c, base):
    return c["c"] * c["exponent_scale"] * base


BOUNDS: dict[str, BoundSpec] = {
    # constant-free statements
    "generic_prime": BoundSpec(
        ("case", "H", "d"), _generic_prime, True,
        description="simple-root prime from multiples of rad(disc): H, 2H(dM)^d or 2H(dHM)^d"),
    "mahler_upper": BoundSpec(
        ("H", "d"), lambda v, c: _log(v["H"]) + mpmath.log(v["d"] + 1) / 2, True,
        description="M(f) <= H sqrt(d+1)"),
    "mahler_lower": BoundSpec(
        ("H", "d"), lambda v, c: _log(v["H"]) - v["d"] * mpmath.log(2), True, "lower",
        description="M(f) >= H 2^-d"),
    "primitive_height": BoundSpec(
        ("m", "d", "sum_h_alpha"),
        lambda v, c: _log(math.log(v["m"] * (v["d"] // 2)) + v["sum_h_alpha"]), True,
        description="h(b_1 a_1 + ... + b_m a_m) <= log(m floor(d/2)) + sum h(a_i)"),
    "coefficient_height": BoundSpec(
        ("d", "h_beta", "h_alpha"),
        lambda v, c: _log(v["d"] * v["h_beta"] + 3 * v["d"] ** 2 * v["h_alpha"] + 2 * v["d"] ** 2), True,
        description="log b and h(a_i/b) below d h(beta) + 3d^2 h(alpha) + 2d^2"),
    "discriminant": BoundSpec(
        ("d", "H"), lambda v, c: 2 * v["d"] * _log(v["d"]) + (2 * v["d"] - 2) * _log(v["H"]), True,
        description="|disc f| < d^(2d) H^(2d-2)"),
    "product_lower": BoundSpec(
        ("d", "L"), lambda v, c: mpmath.mpf(v["d"] * v["L"]) / 18 * _log(mpmath.mpf(v["L"]) / 5), True,
        "lower", description="prod_{j<=L} max(1,|f(j)|) >= (L/5)^(dL/18) for L >= 51(2d+1)"),
    "root_count_distinct": BoundSpec(
        ("m", "ell", "k"), lambda v, c: _log(v["m"]) + (v["k"] - 1) * _log(v["ell"]), True,
        description="N(ell^k) <= m ell^(k-1)"),
    "root_count_power": BoundSpec(
        ("d", "ell", "k"),
        lambda v, c: mpmath.log(2) + v["k"] * (1 - mpmath.mpf(1) / v["d"]) * _log(v["ell"]), True,
        description="N(ell^k) <= 2 ell^(k(1-1/d))"),
    # statements with unspecified absolute constants
    "omega_lower": BoundSpec(
        ("L", "H", "d"), _omega, False, "lower",
        description="omega(W(L)) >= min(c1 L / log+ H, L^(c2/d))"),
    "embedding_prime": BoundSpec(
        ("d", "m", "n", "sum_h_alpha", "sum_h_beta"),
        lambda v, c: (v["d"] * _log(v["m"]) + v["d"] * v["sum_h_alpha"]
                      + _expo(c, v["d"] ** 2) * _log(v["d"] * v["n"] * v["sum_h_alpha"]
                                                   + v["d"] * v["sum_h_beta"]
                                                   + v["d"] * v["n"] * _log_plus(v["m"]))),
        False, description="m^d exp(d sum h(a_i)) (dn sum h(a_i) + d sum h(b_i) + dn log+ m)^(c d^2)"),
    "embedding_prime_generators": BoundSpec(
        ("d", "m", "sum_h_alpha"),
        lambda v, c: (v["d"] * v["sum_h_alpha"]
                      + _expo(c, v["d"] ** 2) * _log(v["d"] * v["m"] * v["sum_h_alpha"] + v["d"] * v["m"])),
        False, description="exp(d sum h(a_i)) (dm sum h(a_i) + dm)^(c d^2)"),
    "embedding_prime_integral": BoundSpec(
        ("d", "h_alpha"),
        lambda v, c: v["d"] * v["h_alpha"] + _expo(c, v["d"] ** 2) * _log(v["d"] * v["h_alpha"] + v["d"]),
        False, description="exp(d h(alpha)) (d h(alpha) + d)^(c d^2)"),
    "embedding_prime_discriminant": BoundSpec(
        ("d", "n", "abs_disc", "sum_h_beta", "real_embedding"),
        lambda v, c: (_log(v["abs_disc"]) / 2
                      + _expo(c, v["d"] ** 2) * _log(v["n"] * _log(v["abs_disc"]) + v["d"] * v["sum_h_beta"])),
        False, description="sqrt|D_K| (n log|D_K| + d sum h(b_i))^(c d^2), fields with a real embedding"),
    "embedding_prime_cyclotomic": BoundSpec(
        ("m", "n", "sum_h_beta"),
        lambda v, c: _expo(c, euler_phi(v["m"]) * v["delta"]) * _log(
            euler_phi(v["m"]) * v["sum_h_beta"] + euler_phi(v["m"]) * v["n"]),
        False, description="(d sum h(b_i) + dn)^(c d delta(m)) with d = phi(m)"),
    "embedding_denominator": BoundSpec(
        ("d", "n", "h_alpha", "sum_h_beta"),
        lambda v, c: v["d"] * v["h_alpha"] + _expo(c, v["d"] ** 2) * _log(
            v["d"] * v["n"] * v["h_alpha"] + v["d"] * v["sum_h_beta"] + v["d"] * v["n"]),
        False, description="exp(d h(alpha)) (dn h(alpha) + d sum h(b_i) + dn)^(c d^2)"),
    "root_prime_avoiding": BoundSpec(
        ("d", "H", "Q"),
        lambda v, c: _log_sum(
            v["d"] * _log(c["C"]) + _log(v["H"])
            + v["d"] * _log(v["d"] * _log(v["Q"]) * _log_plus(v["H"])),
            _log(v["H"]) + _expo(c, v["d"] ** 2) * _log(_log(v["Q"]))),
        False, description="C^d H (d log Q log+ H)^d + H (log Q)^(c d^2)"),
    "simple_root_prime": BoundSpec(
        ("d", "H"),
        lambda v, c: _log(v["H"]) + _expo(c, v["d"] ** 2) * _log(v["d"] * _log_plus(v["H"])),
        False, description="H (d log+ H)^(c d^2)"),
}

DEFAULT_CONSTANTS = {"c": 1.0, "C": 1.0, "exponent_scale": 1.0, "c1": 0.05, "c2": 0.05}


@dataclass(frozen=True)
class BoundReport:
    name: str
    inputs: dict
    constants: dict
    log_bound: float
    asserted: bool
    direction: str = "upper"
    empirical_value: float | None = None
    description: str = ""

    @property
    def bound_value(self) -> float:
        if self.log_bound > 709:
            return math.inf
        if self.log_bound == -math.inf:
            return 0.0
        return math.exp(self.log_bound)

    @property
    def margin(self) -> float | None:
        """empirical / bound, when both are finite and the bound is nonzero."""
        if self.empirical_value is None or not math.isfinite(self.bound_value) or self.bound_value == 0:
            return None
        return self.empirical_value / self.bound_value

    @property
    def passed(self) -> bool | None:
        if self.empirical_value is None:
            return None
        e = self.empirical_value
        if self.direction == "upper":
            if e <= 0:
                return True
            return math.log(e) <= self.log_bound + EPS * max(1.0, abs(self.log_bound))
        if self.log_bound == -math.inf:
            return True
        if e <= 0:
            return False
        return math.log(e) >= self.log_bound - EPS * max(1.0, abs(self.log_bound))

    def to_json(self) -> dict:
        def num(x):
            return x if x is None or math.isfinite(x) else ("inf" if x > 0 else "-inf")
        return {
            "name": self.name,
            "description": self.description,
            "inputs": {k: (str(v) if isinstance(v, int) and abs(v) > 2**53 else v)
                       for k, v in sorted(self.inputs.items())},
            "constants": dict(sorted(self.constants.items())),
            "asserted": self.asserted,
            "direction": self.direction,
            "log_bound": num(self.log_bound),
            "bound_value": num(self.bound_value),
            "empirical_value": self.empirical_value,
            "margin": self.margin,
            "passed": self.passed,
        }


def evaluate_bound(name: str, inputs: Mapping, constants: Mapping | None = None,
                   empirical: float | None = None) -> BoundReport:
    """Evaluate a named bound; asserted bounds raise when the empirical value violates them."""
    if name not in BOUNDS:
        raise MissingInput(f"unknown bound {name!r}; known: {sorted(BOUNDS)}")
    spec = BOUNDS[name]
    missing = [k for k in spec.inputs if k not in inputs]
    if name == "generic_prime" and int(inputs.get("case", 1)) != 1 and "M" not in inputs:
        missing.append("M")
    if missing:
        raise MissingInput(f"bound {name!r} needs inputs {missing}")
    values = dict(inputs)
    if name == "embedding_prime_discriminant" and not values["real_embedding"]:
        raise PreconditionViolated("the discriminant form needs a field with a real embedding")
    if name == "embedding_prime_cyclotomic" and "delta" not in values:
        from .modular import delta
        values["delta"] = delta(int(values["m"]))
    consts = {**DEFAULT_CONSTANTS, **(constants or {})}
    with mpmath.workprec(_PREC):
        log_bound = float(spec.log_value(values, consts))
    report = BoundReport(name, values, consts if not spec.asserted else {}, log_bound,
                         spec.asserted, spec.direction,
                         None if empirical is None else float(empirical), spec.description)
    if spec.asserted and report.passed is False:
        raise InequalityViolated(f"{name}: empirical {empirical} violates bound {report.bound_value}")
    return report


# ------------------------------------------------------------------ sharpness examples

@dataclass(frozen=True)
class PrimeProductReport:
    n: int
    R: int
    betas: tuple[int, ...]
    sum_heights: float
    p: int
    p_nR: int

    @property
    def passed(self) -> bool:
        return self.p > self.p_nR

    @property
    def ratio(self) -> float:
        return self.p / self.sum_heights


def sharpness_primes(n: int, R: int) -> PrimeProductReport:
    """beta_i = prod_{r<R} p_{nr+i}: every prime up to p_{nR} divides some beta_i,
    so the least prime making all beta_i units exceeds p_{nR}."""
    if n < 1 or R < 1:
        raise PreconditionViolated("n and R must be positive")
    ps = first_primes(n * R)
    betas = tuple(math.prod(ps[n * r + i] for r in range(R)) for i in range(n))
    p = next(q for q in iter_primes(2) if all(b % q for b in betas))
    return PrimeProductReport(n, R, betas, sum(math.log(b) for b in betas), p, ps[-1])


@dataclass(frozen=True)
class QuadraticSample:
    a: Fraction
    b: Fraction
    min_poly: IntPolynomial
    height: int


@dataclass
class QuadraticReport:
    k: int
    t: int
    threshold: Fraction
    asserted: bool
    samples: list[QuadraticSample] = field(default_factory=list)

    @property
    def min_height(self) -> int:
        return min(s.height for s in self.samples)

    @property
    def passed(self) -> bool:
        return all(s.height > self.threshold for s in self.samples)


def quadratic_sample(K: NumberField, a, b) -> QuadraticSample:
    alpha = K.element([Fraction(a), Fraction(b)])
    mp = min_poly_of_element(alpha)
    return QuadraticSample(Fraction(a), Fraction(b), mp, height(mp))


def sharpness_quadratic(k: int, t: int, samples: int = 200, seed: int = 0,
                        max_entry: int = 20) -> QuadraticReport:
    """Primitive elements a + b sqrt(k^2 - t^2) of the splitting field of
    x^2 - 2kx + t^2 have minimal polynomials of height above k/3.

    The inequality is asserted for k >= 15 and only reported below.
    """
    if not (k > t >= 1):
        raise PreconditionViolated("need k > t >= 1")
    if not (is_prime(k - t) and is_prime(k + t)):
        raise NotPrimePair(f"{k - t} and {k + t} must both be prime")
    K = NumberField([-(k * k - t * t), 0, 1])
    rng = random.Random(seed)
    report = QuadraticReport(k, t, Fraction(k, 3), k >= 15)

    def draw():
        return Fraction(rng.randint(-max_entry, max_entry), rng.randint(1, max_entry))

    report.samples.append(quadratic_sample(K, 0, 1))
    while len(report.samples) < samples:
        b = draw()
        if b:
            report.samples.append(quadratic_sample(K, draw(), b))
    if report.asserted and not report.passed:
        worst = min(report.samples, key=lambda s: s.height)
        raise InequalityViolated(f"H = {worst.height} <= k/3 for a + b beta with a={worst.a}, b={worst.b}")
    return report
