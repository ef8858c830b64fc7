import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import brute_unit_embedding, lift_by_digits, poly_eval
from padicembed import padic
from padicembed.errors import NotSimpleRoot, PrecisionExhausted, SearchExhausted, ZeroElement, ZeroValuation
from padicembed.numfield import NumberField
from padicembed.polyarith import IntPolynomial as P
from padicembed.verify import random_irreducible


@pytest.fixture(scope="module")
def Q2():
    return NumberField([-2, 0, 1])


def test_hensel_examples():
    f = P([-2, 0, 1])
    assert padic.hensel_lift(f, 7, 3, 2).residue == 10
    assert padic.hensel_lift(f, 7, 4, 2).residue == 39
    assert padic.hensel_lift(P([-12345, 1]), 13, 12345 % 13, 5).residue == 12345 % 13 ** 5


def test_hensel_rejects_non_simple_roots():
    with pytest.raises(NotSimpleRoot):
        padic.hensel_lift(P([1, 0, 1]), 2, 1, 4)
    with pytest.raises(NotSimpleRoot):
        padic.hensel_lift(P([-2, 0, 1]), 7, 2, 4)


@given(st.integers(1, 40), st.sampled_from([(P([-2, 0, 1]), 7, 3), (P([1, 1, 1, 1, 1]), 11, 3),
                                            (P([3, -5, 0, 7]), 5, None)]))
def test_hensel_lift_matches_digit_scan(k, case):
    f, p, a = case
    if a is None:
        a = next(r for r in range(p) if poly_eval(f.coeffs, r) % p == 0)
    eta = padic.hensel_lift(f, p, a, k)
    assert poly_eval(f.coeffs, eta.residue) % p ** k == 0
    if k <= 12:
        assert eta.residue == lift_by_digits(list(f.coeffs), p, a, k)


@pytest.mark.parametrize("x,p,v", [(Fraction(28, 3), 7, 1), (1, 5, 0), (Fraction(9, 49), 7, -2)])
def test_rational_valuation(x, p, v):
    assert padic.rational_valuation(x, p) == v


def test_rational_valuation_zero():
    with pytest.raises(ZeroValuation):
        padic.rational_valuation(0, 3)


def test_embed_element_examples(Q2):
    eta = padic.hensel_lift(Q2.defining_poly, 7, 3, 2)
    assert padic.embed_element(Q2, 7, eta, Q2.gen).valuation == 0
    one_plus = padic.embed_element(Q2, 7, eta, Q2.gen + 1)
    assert one_plus.residue == 11 and one_plus.valuation == 0
    assert padic.embed_element(Q2, 7, eta, Q2.rational(7)).valuation == 1
    assert padic.embed_element(Q2, 7, eta, Q2.rational(Fraction(1, 49))).valuation == -2
    with pytest.raises(ZeroElement):
        padic.embed_element(Q2, 7, eta, Q2.zero)


def test_embed_element_doubles_precision(Q2):
    eta = padic.hensel_lift(Q2.defining_poly, 7, 3, 1)
    img = padic.embed_element(Q2, 7, eta, Q2.rational(7 ** 5))
    assert img.valuation == 5 and img.k >= 6
    with pytest.raises(PrecisionExhausted):
        padic.embed_element(Q2, 7, eta, Q2.rational(7 ** 40), max_precision=16)


def test_embedding_is_multiplicative():
    K = NumberField([1, 1, 1, 1, 1])
    eta = padic.hensel_lift(K.defining_poly, 11, 3, 20)
    rng = random.Random(8)
    q = 11 ** 20
    for _ in range(30):
        b = K.element(Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(4))
        c = K.element(Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(4))
        if b.is_zero() or c.is_zero():
            continue
        sb, sc, sbc = (padic.embed_element(K, 11, eta, e) for e in (b, c, b * c))
        assert sbc.valuation == sb.valuation + sc.valuation
        shift = sb.scale + sc.scale - sbc.scale
        lhs = sb.residue * sc.residue % q
        rhs = sbc.residue * 11 ** shift % q if shift >= 0 else None
        if rhs is not None:
            keep = 11 ** (20 - max(sb.scale, sc.scale, 0) - shift)
            assert lhs % keep == rhs % keep


def test_find_embedding_examples(Q2):
    r = padic.find_embedding(Q2, {"alpha": Q2.gen})
    assert r.p == 7 and r.element_valuations == {"alpha": 0, "alpha^-1": 0}
    assert r.skipped_primes == [(2, "B"), (3, "A"), (5, "A")]
    assert r.eta.residue % 7 == 3
    Z5 = NumberField.cyclotomic(5)
    r = padic.find_embedding(Z5, {"1+z": Z5.gen + 1})
    assert r.p == 11 and set(r.element_valuations.values()) == {0}
    assert r.eta.residue % 11 == 3
    r = padic.find_embedding(Q2, {"7+a": Q2.gen + 7})
    assert r.p == 7 and set(r.element_valuations.values()) == {0}


def test_find_embedding_matches_oracle():
    rng = random.Random(21)
    for _ in range(12):
        f = random_irreducible(rng, rng.randint(2, 3), rng.randint(1, 9))
        K = NumberField(f)
        S = []
        while len(S) < 2:
            e = K.element(Fraction(rng.randint(-30, 30), rng.randint(1, 30)) for _ in range(K.degree))
            if not e.is_zero():
                S.append(e)
        r = padic.find_embedding(K, S)
        p, a, vals = brute_unit_embedding(list(f.coeffs), [list(e.coords) for e in S])
        assert (r.p, r.eta.residue % r.p) == (p, a)
        assert vals == [0] * len(vals)
        assert list(r.element_valuations.values()) == [0] * len(vals)


def test_find_embedding_skips_never_divide_conditions(Q2):
    r = padic.find_embedding(Q2, [Q2.gen + 3, Q2.rational(Fraction(5, 3))])
    assert r.p not in (2, 3, 5)
    reasons = dict(r.skipped_primes)
    assert reasons[3] == "C" and reasons[5] == "C"


def test_find_embedding_deterministic(Q2):
    S = [Q2.gen + 1, 3 * Q2.gen - 1]
    a, b = padic.find_embedding(Q2, S), padic.find_embedding(Q2, S)
    assert a.to_json() == b.to_json()


def test_find_embedding_errors(Q2):
    with pytest.raises(ZeroElement):
        padic.find_embedding(Q2, [Q2.zero])
    with pytest.raises(SearchExhausted):
        padic.find_embedding(Q2, [Q2.gen], p_max=5)


def test_find_embedding_bound_report(Q2):
    r = padic.find_embedding(Q2, [Q2.gen])
    rep = r.bound_comparison
    assert rep.name == "embedding_denominator" and not rep.asserted
    assert rep.empirical_value == 7 and rep.passed


def test_padic_digits_little_endian():
    x = padic.PAdicApprox.from_residue(7, 3, 10)
    assert x.digits() == [3, 1, 0]
    assert x.to_json()["valuation"] == 0
    assert padic.PAdicApprox.from_residue(7, 2, 49).to_json()["valuation"] == ">=2"
