"""Randomised self-verification of every constant-free inequality.

Each named check counts individual comparisons; a failure records the input
that broke it. Randomness is seeded so runs are reproducible.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import heights, modular, numfield, padic, polyarith
from .errors import PadicEmbedError
from .linalg import bareiss_det
from .polyarith import IntPolynomial

SCOPES = {
    # corpus sizes per check family
    "quick": {"sandwich": 60, "fields": 6, "elements": 6, "generic": 40, "disc": 150,
              "congruence": (12, 3, (10, 100)), "product": ("x", "x^2+1"), "embed": 8},
    "full": {"sandwich": 600, "fields": 30, "elements": 20, "generic": 400, "disc": 3000,
             "congruence": (1200, 4, (10, 100, 1000)), "product": ("x", "x^2+1", "x^2-2"), "embed": 60},
}
_PRODUCT_POLYS = {"x": [0, 1], "x^2+1": [1, 0, 1], "x^2-2": [-2, 0, 1]}


def random_poly(rng: random.Random, d: int, H: int) -> IntPolynomial:
    """Degree-d polynomial with coefficients in [-H, H], nonzero ends, height exactly H."""
    while True:
        c = [rng.randint(-H, H) for _ in range(d + 1)]
        c[rng.randrange(d + 1)] = rng.choice((-H, H))
        if c[0] and c[-1]:
            return IntPolynomial(c)


def random_irreducible(rng: random.Random, d: int, H: int) -> IntPolynomial:
    """Primitive polynomial of degree d and height <= H proven irreducible."""
    while True:
        f = polyarith.primitive_part(random_poly(rng, d, H))
        if polyarith.check_irreducible(f) is polyarith.Irreducibility.PROVEN:
            return f


def random_element(rng: random.Random, K: numfield.NumberField, num: int = 10, den: int = 5):
    while True:
        e = K.element(Fraction(rng.randint(-num, num), rng.randint(1, den)) for _ in range(K.degree))
        if not e.is_zero():
            return e


@dataclass
class SuiteSummary:
    scope: str
    counts: dict[str, list[int]] = field(default_factory=dict)
    failures: list[tuple[str, str]] = field(default_factory=list)

    def record(self, name: str, ok: bool, detail: str = "") -> None:
        c = self.counts.setdefault(name, [0, 0])
        c[1] += 1
        if ok:
            c[0] += 1
        else:
            self.failures.append((name, detail))

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def total(self) -> int:
        return sum(t for _, t in self.counts.values())

    def to_json(self) -> dict:
        return {"scope": self.scope, "ok": self.ok, "total_checks": self.total,
                "checks": {k: {"passed": p, "total": t} for k, (p, t) in sorted(self.counts.items())},
                "failures": [{"check": n, "detail": d} for n, d in self.failures[:50]]}


def _guard(summary: SuiteSummary, name: str, fn, detail: str) -> None:
    try:
        summary.record(name, bool(fn()), detail)
    except (PadicEmbedError, AssertionError, ArithmeticError) as exc:
        summary.record(name, False, f"{detail}: {exc}")


def _sylvester_discriminant(f: IntPolynomial) -> int:
    d = f.degree
    res = bareiss_det(polyarith.sylvester_matrix(f, polyarith.derivative(f)))
    q = res // f.leading
    return -q if (d * (d - 1) // 2) % 2 else q


def check_sandwich(s, rng, n):
    for _ in range(n):
        f = random_poly(rng, rng.randint(1, 8), rng.randint(1, 10**6))
        _guard(s, "height_mahler_sandwich",
               lambda: heights.check_height_mahler_inequality(f).passed, str(f))


def check_discriminants(s, rng, n):
    for _ in range(n):
        f = random_poly(rng, rng.randint(2, 6), rng.randint(1, 50))

        def ok():
            disc = polyarith.discriminant(f)
            return disc == _sylvester_discriminant(f) and polyarith.discriminant_bound_holds(f, disc)
        _guard(s, "discriminant_bound", ok, str(f))


def check_generic_prime(s, rng, n):
    for _ in range(n):
        f = random_irreducible(rng, rng.randint(2, 4), rng.randint(1, 100))

        def ok():
            r = modular.generic_prime(f)
            w = r.witness
            return (r.witness.p <= r.bound and f(w.a) % w.p == 0
                    and polyarith.derivative(f)(w.a) % w.p != 0)
        _guard(s, "generic_prime", ok, str(f))


def check_fields(s, rng, n_fields, n_elems):
    for _ in range(n_fields):
        f = random_irreducible(rng, rng.randint(2, 4), rng.randint(1, 12))
        K = numfield.NumberField(f)
        for _ in range(n_elems):
            beta = random_element(rng, K)
            _guard(s, "coefficient_height",
                   lambda: numfield.coefficient_height_certificate(beta).passed, f"{beta} in {f}")
        gens = [g for g in (random_element(rng, K) for _ in range(4))
                if numfield.element_degree(g) >= 2][:2]
        if gens:
            gs = numfield.GeneratorSet(K, gens)
            _guard(s, "primitive_height",
                   lambda: numfield.primitive_from_generators(gs) is not None, f"{gens} in {f}")


def check_congruences(s, rng, n, k_max, L_list):
    polys = [IntPolynomial([1, 0, 1]), IntPolynomial([-2, 0, 0, 1]), polyarith.cyclotomic(12)]
    polys += [random_poly(rng, rng.randint(1, 4), rng.randint(1, 20)) for _ in range(n)]
    for f in polys:
        for ell in (2, 3, 5, 7):
            if polyarith.content(f) % ell == 0:
                continue
            try:
                rep = modular.verify_congruence_lemmas(f, ell, k_max, list(L_list), strict=False)
            except PadicEmbedError as exc:
                s.record("root_count_distinct", False, f"{f} at {ell}: {exc}")
                continue
            for c in rep.checks:
                s.record(f"root_count_{c.name}", c.passed, f"{f} at {ell}^{c.k}, L={c.L}")


def check_products(s, names):
    for name in names:
        f = IntPolynomial(_PRODUCT_POLYS[name])
        L = 51 * (2 * f.degree + 1)
        _guard(s, "product_lower", lambda: modular.product_lower_bound_holds(f, L), f"{name}, L={L}")


def check_embeddings(s, rng, n):
    for _ in range(n):
        f = random_irreducible(rng, rng.randint(2, 4), rng.randint(1, 12))
        K = numfield.NumberField(f)
        S = [random_element(rng, K, 1000, 1000) for _ in range(rng.randint(1, 3))]

        def ok():
            r = padic.find_embedding(K, S, p_max=10**6)
            return all(v == 0 for v in r.element_valuations.values())
        _guard(s, "embedding_units", ok, f"{S} in {f}")


def run_verification_suite(scope: str = "quick", seed: int = 0) -> SuiteSummary:
    if scope not in SCOPES:
        raise ValueError(f"scope must be one of {sorted(SCOPES)}")
    cfg = SCOPES[scope]
    rng = random.Random(seed)
    s = SuiteSummary(scope)
    check_sandwich(s, rng, cfg["sandwich"])
    check_discriminants(s, rng, cfg["disc"])
    check_generic_prime(s, rng, cfg["generic"])
    check_fields(s, rng, cfg["fields"], cfg["elements"])
    check_congruences(s, rng, *cfg["congruence"])
    check_products(s, cfg["product"])
    check_embeddings(s, rng, cfg["embed"])
    return s
