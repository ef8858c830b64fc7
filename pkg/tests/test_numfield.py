import itertools
import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from padicembed import heights, numfield as nf
from padicembed.errors import (DivisionByZero, FieldMismatch, NotGenerating,
                               PreconditionViolated, ZeroElement)
from padicembed.polyarith import IntPolynomial as P

x = sympy.Symbol("x")


def small_fractions(num, den):
    return st.builds(Fraction, st.integers(-num, num), st.integers(1, den))


@pytest.fixture(scope="module")
def quad():
    return nf.NumberField([-2, 0, 1])


@pytest.fixture(scope="module")
def biquad():
    K = nf.NumberField([1, 0, -10, 0, 1])
    a = K.gen
    return K, (a ** 3 - 9 * a) / 2, (11 * a - a ** 3) / 2


def test_arithmetic_in_quadratic_field(quad):
    a = quad.gen
    assert (a * a).coords == (2, 0)
    assert a.inverse().coords == (0, Fraction(1, 2))
    assert nf.element_arithmetic(a, None, "inv").coords == (0, Fraction(1, 2))
    assert nf.element_arithmetic(a, None, "pow", 5) == a ** 5 == 4 * a
    assert (1 / a) * a == quad.one


def test_biquadratic_square_roots(biquad):
    K, s2, s3 = biquad
    assert s2 * s2 == K.rational(2)
    assert s3 * s3 == K.rational(3)
    assert s2 + s3 == K.gen


def test_zero_inverse_and_field_mismatch(quad, biquad):
    with pytest.raises(DivisionByZero):
        quad.zero.inverse()
    with pytest.raises(FieldMismatch):
        quad.gen + biquad[0].gen


def test_reducible_polynomial_rejected():
    with pytest.raises(PreconditionViolated):
        nf.NumberField([-1, 0, 1])
    K = nf.NumberField([1, 0, 0, 0, 1])     # proven by root subsets, not degree patterns
    assert K.irreducibility == "proven"


def test_root_subset_prover_is_sound():
    rng = random.Random(5)
    for _ in range(150):
        f = P([rng.randint(-6, 6) for _ in range(rng.randint(3, 7))])
        if f.degree < 2 or f.coeffs[0] == 0:
            continue
        if nf.irreducible_by_root_subsets(f):
            assert sympy.Poly(list(reversed(f.coeffs)), x).is_irreducible


@pytest.mark.parametrize("coords,expected", [
    ((0, 1), [-2, 0, 1]), ((Fraction(1, 2), 0), [-1, 2]), ((3, 1), [7, -6, 1]),
])
def test_min_poly_examples(quad, coords, expected):
    assert nf.min_poly_of_element(quad.element(coords)) == P(expected)


def test_min_poly_of_sqrt2_in_biquadratic(biquad):
    assert nf.min_poly_of_element(biquad[1]) == P([-2, 0, 1])


def _random_field_element(rng, K):
    return K.element(Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(K.degree))


def test_min_poly_annihilates_multiplication_matrix():
    rng = random.Random(11)
    for f in ([1, 0, -10, 0, 1], [-2, 0, 0, 1], [1, 1, 1, 1, 1], [3, 1, 1]):
        K = nf.NumberField(f)
        for _ in range(5):
            beta = _random_field_element(rng, K)
            mp = nf.min_poly_of_element(beta)
            A = sympy.Matrix(nf.multiplication_matrix(beta))
            val = sympy.zeros(K.degree)
            for c in reversed(mp.coeffs):
                val = val * A + c * sympy.eye(K.degree)
            assert val == sympy.zeros(K.degree)
            assert sympy.Poly(list(reversed(mp.coeffs)), x).is_irreducible


@given(st.lists(small_fractions(8, 6), min_size=3, max_size=3),
       st.lists(small_fractions(8, 6), min_size=3, max_size=3))
def test_field_axioms_in_cubic_field(u, v):
    K = nf.NumberField([-2, 0, 0, 1])
    a, b = K.element(u), K.element(v)
    assert a * b == b * a
    assert (a + b) * a == a * a + b * a
    if not b.is_zero():
        assert (a / b) * b == a


def test_primitive_from_generators_biquadratic(biquad):
    K, s2, s3 = biquad
    prim = nf.primitive_from_generators(nf.GeneratorSet(K, [s2, s3]))
    assert prim.coefficients == (1, 1)
    assert prim.min_poly == P([1, 0, -10, 0, 1])
    expected_h = math.log((math.sqrt(2) + math.sqrt(3)) ** 2) / 4
    assert abs(prim.height - expected_h) < 1e-9
    assert abs(prim.height_bound - (math.log(4) + 0.5 * math.log(2) + 0.5 * math.log(3))) < 1e-9
    assert prim.height <= prim.height_bound


def test_primitive_first_tuple_is_brute_force_first(biquad):
    K, s2, s3 = biquad
    order = list(nf.coefficient_tuples(4, 2))
    assert len(order) == 25 and len(set(order)) == 25
    first = next(b for b in order
                 if sympy.Poly(list(reversed(nf.min_poly_of_element(b[0] * s2 + b[1] * s3).coeffs)), x).degree() == 4
                 and (b[0] * s2 + b[1] * s3) != K.zero)
    assert first == (1, 1)


def test_single_generator(quad):
    prim = nf.primitive_from_generators(nf.GeneratorSet(quad, [quad.gen]))
    assert prim.coefficients == (1,) and prim.element == quad.gen


def test_generating_tuple_count_meets_lower_bound(biquad):
    K, s2, s3 = biquad
    gs = nf.GeneratorSet(K, [s2, s3])
    S = len(nf.coefficient_range(4))
    assert nf.count_generating_tuples(gs) >= S ** (gs.m - 1) * (S - K.degree + 1)


def test_not_generating():
    K = nf.NumberField([1, 0, -10, 0, 1])
    s2 = (K.gen ** 3 - 9 * K.gen) / 2
    with pytest.raises(NotGenerating):
        nf.primitive_from_generators(nf.GeneratorSet(K, [s2]))


def test_generator_degree_precondition(quad):
    with pytest.raises(PreconditionViolated):
        nf.GeneratorSet(quad, [quad.rational(3)])


def test_power_basis_coords_examples(biquad):
    K, s2, _ = biquad
    assert nf.power_basis_coords(s2) == (2, (0, -9, 0, 1))
    assert nf.power_basis_coords(K.gen) == (1, (0, 1, 0, 0))
    assert nf.power_basis_coords(K.rational(Fraction(3, 4))) == (4, (3, 0, 0, 0))
    with pytest.raises(ZeroElement):
        nf.power_basis_coords(K.zero)


@given(st.lists(small_fractions(50, 30), min_size=4, max_size=4))
def test_power_basis_normalisation(coords):
    K = nf.NumberField([1, 0, -10, 0, 1])
    beta = K.element(coords)
    if beta.is_zero():
        return
    b, a = nf.power_basis_coords(beta)
    assert b >= 1 and math.gcd(b, *a) == 1
    assert all(Fraction(ai, b) == c for ai, c in zip(a, beta.coords))


def test_coefficient_certificate_sqrt2(biquad):
    K, s2, _ = biquad
    rep = nf.coefficient_height_certificate(s2)
    assert rep.passed
    assert abs(rep.coefficient_heights[1] - math.log(9)) < 1e-12
    assert abs(rep.uniform_bound - (4 * 0.5 * math.log(2) + 48 * rep.alpha_height + 32)) < 1e-9
    assert 60 < rep.uniform_bound < 61


def test_coefficient_certificate_random_quartics():
    rng = random.Random(2)
    fields = [[1, 0, -10, 0, 1], [1, 1, 1, 1, 1], [-2, 0, 0, 0, 1], [3, -1, 0, 1, 1], [5, 0, 2, 0, 1]]
    for f in fields:
        K = nf.NumberField(f)
        for _ in range(10):
            beta = _random_field_element(rng, K)
            if not beta.is_zero():
                assert nf.coefficient_height_certificate(beta).passed


def test_vandermonde_reconstruction(biquad, quad):
    K, s2, _ = biquad
    rep = nf.vandermonde_solve_check(s2)
    assert rep.exact == (0, Fraction(-9, 2), 0, Fraction(1, 2))
    assert max(abs(r - float(e)) for r, e in zip(rep.reconstructed, rep.exact)) < 1e-8
    assert nf.vandermonde_solve_check(K.one).exact == (1, 0, 0, 0)
    assert nf.vandermonde_solve_check(quad.gen).exact == (0, 1)


def test_rebase_preserves_arithmetic(biquad):
    K, s2, s3 = biquad
    prim = nf.primitive_from_generators(nf.GeneratorSet(K, [s2, s3]))
    L, (i2, i3) = nf.rebase([s2, s3], prim.element)
    assert i2 * i2 == L.rational(2) and i3 * i3 == L.rational(3)
    assert i2 + i3 == L.gen


def test_field_spec_round_trip(biquad):
    K, s2, s3 = biquad
    data = nf.dump_field_spec(K, {"sqrt2": s2, "sqrt3": s3})
    assert data["elements"]["sqrt2"] == {"num": ["0", "-9", "0", "1"], "den": "2"}
    K2, els = nf.load_field_spec(data)
    assert K2 == K and els["sqrt2"] == s2 and els["sqrt3"] == s3


def test_embeddings_are_roots(biquad):
    K = biquad[0]
    for z in K.embeddings():
        assert abs(K.defining_poly(z)) < 1e-8
