import math

import pytest
import sympy

from padicembed import bounds, heights
from padicembed.errors import InequalityViolated, MissingInput, NotPrimePair, PreconditionViolated
from padicembed.numfield import NumberField, element_height
from padicembed.polyarith import IntPolynomial as P
from padicembed.primes import nth_prime


def test_integral_generator_bound_quadratic():
    rep = bounds.evaluate_bound("embedding_prime_integral", {"d": 2, "h_alpha": 0.5 * math.log(2)},
                                empirical=7)
    # exponent taken literally as d^2 = 4: exp(log 2) * (log 2 + 2)^4
    assert abs(rep.bound_value - 2 * (math.log(2) + 2) ** 4) < 1e-9
    assert not rep.asserted and rep.passed
    half = bounds.evaluate_bound("embedding_prime_integral", {"d": 2, "h_alpha": 0.5 * math.log(2)},
                                 {"c": 0.5}, empirical=7)
    assert abs(half.bound_value - 2 * (math.log(2) + 2) ** 2) < 1e-9      # ~14.5
    assert abs(half.margin - 7 / half.bound_value) < 1e-12


def test_generic_prime_bound_asserted():
    rep = bounds.evaluate_bound("generic_prime", {"case": 2, "H": 1, "d": 2, "M": 2}, empirical=5)
    assert rep.asserted and rep.bound_value == pytest.approx(32) and rep.passed
    with pytest.raises(InequalityViolated):
        bounds.evaluate_bound("generic_prime", {"case": 2, "H": 1, "d": 2, "M": 2}, empirical=33)


def test_cyclotomic_bound_uses_delta():
    Z = NumberField.cyclotomic(5)
    h = element_height(Z.gen + 1)
    x = sympy.Symbol("x")
    mp = sympy.Poly(sympy.minimal_polynomial(1 + sympy.exp(2 * sympy.pi * sympy.I / 5), x), x)
    oracle = P([int(c) for c in reversed(mp.all_coeffs())])
    assert oracle == P([1, -2, 4, -3, 1])
    assert abs(h - math.log(heights.mahler_measure(oracle).value) / 4) < 1e-12
    assert abs(h - 0.2406) < 1e-4
    rep = bounds.evaluate_bound("embedding_prime_cyclotomic", {"m": 5, "n": 1, "sum_h_beta": h},
                                empirical=11)
    assert rep.inputs["delta"] == 1
    assert abs(rep.log_bound - 4 * math.log(4 * h + 4)) < 1e-9


def test_missing_inputs_and_unknown_names():
    with pytest.raises(MissingInput):
        bounds.evaluate_bound("embedding_prime", {"d": 2})
    with pytest.raises(MissingInput):
        bounds.evaluate_bound("no_such_bound", {})
    with pytest.raises(MissingInput):
        bounds.evaluate_bound("generic_prime", {"case": 3, "H": 2, "d": 2})
    with pytest.raises(PreconditionViolated):
        bounds.evaluate_bound("embedding_prime_discriminant",
                              {"d": 2, "n": 1, "abs_disc": 8, "sum_h_beta": 1, "real_embedding": False})


def test_huge_bounds_stay_finite_in_log_space():
    rep = bounds.evaluate_bound("simple_root_prime", {"d": 32, "H": 10**50})
    assert math.isfinite(rep.log_bound) and rep.bound_value == math.inf
    assert rep.to_json()["bound_value"] == "inf"


_REPORT_ONLY = {
    "embedding_prime": {"d": 4, "m": 2, "n": 3, "sum_h_alpha": 1.0, "sum_h_beta": 2.0},
    "embedding_prime_generators": {"d": 4, "m": 2, "sum_h_alpha": 1.0},
    "embedding_prime_integral": {"d": 3, "h_alpha": 0.7},
    "embedding_prime_discriminant": {"d": 3, "n": 2, "abs_disc": 23, "sum_h_beta": 1.5, "real_embedding": True},
    "embedding_prime_cyclotomic": {"m": 7, "n": 2, "sum_h_beta": 1.2},
    "embedding_denominator": {"d": 3, "n": 2, "h_alpha": 0.4, "sum_h_beta": 1.1},
    "root_prime_avoiding": {"d": 3, "H": 20, "Q": 1000},
    "simple_root_prime": {"d": 3, "H": 20},
}
_HEIGHT_KEYS = {"sum_h_alpha", "sum_h_beta", "h_alpha", "H", "n", "m", "Q", "abs_disc"}


@pytest.mark.parametrize("name", sorted(_REPORT_ONLY))
def test_report_only_bounds_are_monotone(name):
    base = _REPORT_ONLY[name]
    assert not bounds.BOUNDS[name].asserted
    b0 = bounds.evaluate_bound(name, base).log_bound
    for key in set(base) & _HEIGHT_KEYS:
        if name == "embedding_prime_cyclotomic" and key == "m":
            continue
        bumped = dict(base)
        bumped[key] = base[key] * 2 if isinstance(base[key], int) else base[key] + 0.5
        assert bounds.evaluate_bound(name, bumped).log_bound >= b0 - 1e-12, key


def test_asserted_flags():
    asserted = {n for n, s in bounds.BOUNDS.items() if s.asserted}
    assert asserted == {"generic_prime", "mahler_upper", "mahler_lower", "primitive_height",
                        "coefficient_height", "discriminant", "product_lower",
                        "root_count_distinct", "root_count_power"}


@pytest.mark.parametrize("n,R,p,p_nR", [(2, 3, 17, 13), (1, 1, 3, 2), (3, 4, 41, 37)])
def test_sharpness_primes_examples(n, R, p, p_nR):
    r = bounds.sharpness_primes(n, R)
    assert (r.p, r.p_nR) == (p, p_nR) and r.passed


def test_sharpness_primes_betas():
    assert bounds.sharpness_primes(2, 3).betas == (110, 273)


def test_sharpness_primes_all_small():
    for n in range(1, 21):
        for R in range(1, 200 // n + 1):
            r = bounds.sharpness_primes(n, R)
            assert r.passed and r.p == nth_prime(n * R + 1)


def test_sharpness_quadratic_examples():
    K = NumberField([-35, 0, 1])
    assert bounds.quadratic_sample(K, 0, 1).min_poly == P([-35, 0, 1])
    s = bounds.quadratic_sample(K, "1/2", "1/2")
    assert s.min_poly == P([-17, -2, 2]) and s.height == 17
    r = bounds.sharpness_quadratic(6, 1, 30)
    assert not r.asserted and r.passed
    r = bounds.sharpness_quadratic(15, 2, 200)
    assert r.asserted and r.passed and r.min_height > 5 and len(r.samples) == 200


def test_sharpness_quadratic_validation():
    with pytest.raises(NotPrimePair):
        bounds.sharpness_quadratic(10, 1, 5)
    with pytest.raises(PreconditionViolated):
        bounds.sharpness_quadratic(2, 5, 5)
