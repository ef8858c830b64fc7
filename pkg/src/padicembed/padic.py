"""Embeddings K -> Q_p at finite precision.

An embedding is fixed by a simple root eta of the defining polynomial in Z_p,
obtained by Hensel lifting a simple root modulo p. Elements are mapped through
their power-basis coordinates and valuations are read off exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import bounds
from .errors import (InternalAssertionFailed, NotSimpleRoot, PrecisionExhausted,
                     PreconditionViolated, SearchExhausted, ZeroElement, ZeroValuation)
from .modular import DEFAULT_P_MAX, DEFAULT_SEED, simple_root_mod_p
from .numfield import (FieldElement, NumberField, coefficient_height_certificate, element_height,
                       power_basis_coords)
from .polyarith import IntPolynomial, derivative
from .primes import iter_primes, valuation

DEFAULT_PRECISION = 64
MAX_PRECISION = 1 << 10


@dataclass(frozen=True)
class PAdicApprox:
    """x = residue * p^(-scale), with residue known modulo p^k.

    ``valuation`` is v_p(x), or None when residue = 0, meaning v_p(x) >= k - scale.
    """

    p: int
    k: int
    residue: int
    valuation: int | None
    scale: int = 0

    @classmethod
    def from_residue(cls, p: int, k: int, residue: int, scale: int = 0) -> "PAdicApprox":
        residue %= p ** k
        v = valuation(residue, p) - scale if residue else None
        return cls(p, k, residue, v, scale)

    @property
    def is_unit(self) -> bool:
        return self.valuation == 0

    def digits(self) -> list[int]:
        """Base-p digits of the residue, least significant first."""
        out, r = [], self.residue
        for _ in range(self.k):
            r, q = divmod(r, self.p)
            out.append(q)
        return out

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "residue": str(self.residue), "scale": self.scale,
                "valuation": self.valuation if self.valuation is not None else f">={self.k - self.scale}",
                "digits": self.digits()}


def _eval_mod(f: IntPolynomial, x: int, q: int) -> int:
    acc = 0
    for c in reversed(f.coeffs):
        acc = (acc * x + c) % q
    return acc


def hensel_lift(f: IntPolynomial, p: int, a: int, k: int) -> PAdicApprox:
    """Lift a simple root a of f mod p to a root modulo p^k by Newton steps,
    doubling the precision each time."""
    if k < 1:
        raise PreconditionViolated("precision must be >= 1")
    df = derivative(f)
    if _eval_mod(f, a, p) or not _eval_mod(df, a, p):
        raise NotSimpleRoot(f"{a} is not a simple root of {f} modulo {p}")
    eta, prec = a % p, 1
    while prec < k:
        prec = min(2 * prec, k)
        q = p ** prec
        eta = (eta - _eval_mod(f, eta, q) * pow(_eval_mod(df, eta, q), -1, q)) % q
        if _eval_mod(f, eta, q):
            raise InternalAssertionFailed(f"Newton step lost the root modulo {p}^{prec}")
    return PAdicApprox.from_residue(p, k, eta)


def rational_valuation(x, p: int) -> int:
    x = Fraction(x)
    if x == 0:
        raise ZeroValuation("the valuation of 0 is infinite")
    return valuation(x.numerator, p) - valuation(x.denominator, p)


def embed_element(K: NumberField, p: int, eta: PAdicApprox, beta: FieldElement,
                  max_precision: int = MAX_PRECISION) -> PAdicApprox:
    """sigma(beta) = (1/b) sum a_j eta^j, retrying at doubled precision while the
    numerator vanishes modulo p^k."""
    if beta.field != K:
        raise PreconditionViolated("element belongs to another field")
    if beta.is_zero():
        raise ZeroElement("sigma(0) = 0 has no finite valuation")
    b, a = power_basis_coords(beta)
    vb = valuation(b, p)
    unit_b = b // p ** vb
    f = K.defining_poly
    k = eta.k
    root = eta
    while True:
        q = p ** k
        num = 0
        for c in reversed(a):
            num = (num * root.residue + c) % q
        if num:
            return PAdicApprox.from_residue(p, k, num * pow(unit_b, -1, q), vb)
        if k >= max_precision:
            raise PrecisionExhausted(f"sigma({beta}) vanishes modulo {p}^{k}")
        k = min(2 * k, max_precision)
        root = hensel_lift(f, p, eta.residue % p, k)


@dataclass
class EmbeddingResult:
    p: int
    eta: PAdicApprox
    element_valuations: dict[str, int]
    images: dict[str, PAdicApprox]
    denominators: dict[str, int]
    skipped_primes: list[tuple[int, str]]
    bound_comparison: bounds.BoundReport
    field: NumberField = field(repr=False)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "defining_poly": self.field.defining_poly.to_json(),
            "eta": self.eta.to_json(),
            "valuations": dict(self.element_valuations),
            "denominators": {k: str(v) for k, v in self.denominators.items()},
            "skipped_primes": [[q, reason] for q, reason in self.skipped_primes],
            "bound": self.bound_comparison.to_json(),
        }


def _with_inverses(S: Mapping[str, FieldElement]) -> dict[str, FieldElement]:
    out = dict(S)
    for name, beta in S.items():
        if beta.is_zero():
            raise ZeroElement(f"element {name} is zero")
        out[f"{name}^-1"] = beta.inverse()
    return out


def _reason(p: int, disc: int, lead: int, dens: Sequence[int]) -> str | None:
    if disc % p == 0:
        return "B"
    if lead % p == 0:
        return "lc"
    if any(b % p == 0 for b in dens):
        return "C"
    return None


def find_embedding(K: NumberField, S: Mapping[str, FieldElement] | Sequence[FieldElement],
                   p_max: int = DEFAULT_P_MAX, precision: int = DEFAULT_PRECISION,
                   bound_c: float = 1.0, seed: int = DEFAULT_SEED,
                   check_certificates: bool = True) -> EmbeddingResult:
    """Least prime p with an embedding sigma: K -> Q_p making every element of S
    and every inverse a p-adic unit.

    Primes are skipped when they divide the discriminant (B), the leading
    coefficient (lc) or a coordinate denominator (C), or when f has no simple
    root modulo p (A). Valuations of the result are re-verified exactly.
    """
    if not isinstance(S, Mapping):
        S = {f"b{i + 1}": beta for i, beta in enumerate(S)}
    if not S:
        raise PreconditionViolated("S must contain at least one element")
    full = _with_inverses(S)
    f = K.defining_poly
    dens = {}
    for name, beta in full.items():
        if check_certificates and K.degree >= 2:
            dens[name] = coefficient_height_certificate(beta).denominator
        else:
            dens[name] = power_basis_coords(beta)[0]
    disc, lead = K.discriminant, f.leading
    skipped: list[tuple[int, str]] = []
    for p in iter_primes(2, p_max):
        reason = _reason(p, disc, lead, dens.values())
        if reason is None:
            witness = simple_root_mod_p(f, p, seed)
            if witness is None:
                reason = "A"
        if reason is not None:
            skipped.append((p, reason))
            continue
        eta = hensel_lift(f, p, witness.a, precision)
        if _eval_mod(f, eta.residue, p ** precision):
            raise InternalAssertionFailed("lifted root does not satisfy f")
        images = {name: embed_element(K, p, eta, beta) for name, beta in full.items()}
        vals = {name: img.valuation for name, img in images.items()}
        bad = {name: v for name, v in vals.items() if v != 0}
        if bad:
            raise InternalAssertionFailed(f"non-unit images at p={p} despite conditions A-C: {bad}")
        report = embedding_bound_report(K, S, p, bound_c)
        return EmbeddingResult(p, eta, vals, images, dens, skipped, report, K)
    raise SearchExhausted(p_max)


def embedding_bound_report(K: NumberField, S: Mapping[str, FieldElement], p: int,
                           bound_c: float = 1.0) -> bounds.BoundReport:
    d = K.degree
    inputs = {"d": d, "n": len(S), "h_alpha": K.generator_height,
              "sum_h_beta": sum(element_height(b) for b in S.values())}
    return bounds.evaluate_bound("embedding_denominator", inputs, {"c": bound_c}, empirical=p)

