"""Estimator-style front end.

``PadicEmbedder.fit`` searches for the least prime p and the embedding
sigma: K -> Q_p that makes every training element a unit; ``transform`` maps
further elements through sigma. ``PrimitiveElementFinder.fit`` finds a
primitive element for a set of generators; ``transform`` rewrites elements
in its power basis.
"""
from __future__ import annotations

from typing import Mapping, Sequence

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .errors import FieldMismatch, PreconditionViolated, ZeroElement
from .modular import DEFAULT_P_MAX, DEFAULT_SEED
from .numfield import (FieldElement, GeneratorSet, NumberField, primitive_from_generators,
                       rebase)
from .padic import DEFAULT_PRECISION, embed_element, find_embedding


def check_elements(X, allow_zero: bool = False) -> dict[str, FieldElement]:
    """Validate a non-empty sequence or mapping of elements of one field.

    Returns a name -> element mapping; sequences get names b1, b2, ...
    """
    if isinstance(X, FieldElement):
        X = [X]
    if isinstance(X, Mapping):
        named = dict(X)
    elif isinstance(X, Sequence):
        named = {f"b{i + 1}": x for i, x in enumerate(X)}
    else:
        raise TypeError(f"expected a sequence or mapping of field elements, got {type(X).__name__}")
    if not named:
        raise PreconditionViolated("need at least one element")
    for name, x in named.items():
        if not isinstance(x, FieldElement):
            raise TypeError(f"{name} is not a field element")
        if not allow_zero and x.is_zero():
            raise ZeroElement(f"{name} is zero")
    check_same_field(named.values())
    return named


def check_same_field(elements) -> NumberField:
    fields = {x.field for x in elements}
    if len(fields) != 1:
        raise FieldMismatch("elements come from different fields")
    return fields.pop()


def check_positive(name: str, value: int) -> int:
    if int(value) != value or value < 1:
        raise PreconditionViolated(f"{name} must be a positive integer, got {value!r}")
    return int(value)


class PadicEmbedder(TransformerMixin, BaseEstimator):
    """Find an embedding of a number field into Q_p under which the fitted
    elements and their inverses are p-adic units.

    Parameters
    ----------
    p_max : search limit for the prime.
    precision : p-adic digits kept for the root eta.
    seed : seed for root splitting modulo p.
    bound_c : exponent constant for the reported prime bound.
    """

    def __init__(self, p_max: int = DEFAULT_P_MAX, precision: int = DEFAULT_PRECISION,
                 seed: int = DEFAULT_SEED, bound_c: float = 1.0):
        self.p_max = p_max
        self.precision = precision
        self.seed = seed
        self.bound_c = bound_c

    def fit(self, X, y=None):
        named = check_elements(X)
        check_positive("p_max", self.p_max)
        check_positive("precision", self.precision)
        self.field_ = check_same_field(named.values())
        self.result_ = find_embedding(self.field_, named, p_max=self.p_max,
                                      precision=self.precision, bound_c=self.bound_c,
                                      seed=self.seed)
        self.p_ = self.result_.p
        self.eta_ = self.result_.eta
        self.valuations_ = dict(self.result_.element_valuations)
        return self

    def transform(self, X):
        """Images sigma(x) as p-adic approximations, in input order."""
        check_is_fitted(self, "result_")
        named = check_elements(X)
        if check_same_field(named.values()) != self.field_:
            raise FieldMismatch("elements are not in the fitted field")
        return [embed_element(self.field_, self.p_, self.eta_, x) for x in named.values()]

    def valuations(self, X) -> list[int]:
        return [img.valuation for img in self.transform(X)]


class PrimitiveElementFinder(TransformerMixin, BaseEstimator):
    """Find b with alpha' = sum b_i alpha_i primitive; transform rewrites
    elements of the original field in the power basis of alpha'."""

    def __init__(self, slack: float = 1e-6):
        self.slack = slack

    def fit(self, X, y=None):
        gens = list(check_elements(X).values())
        K = check_same_field(gens)
        self.primitive_ = primitive_from_generators(GeneratorSet(K, gens), self.slack)
        self.coefficients_ = self.primitive_.coefficients
        self.min_poly_ = self.primitive_.min_poly
        self.source_field_ = K
        self.field_, _ = rebase([], self.primitive_.element, self.min_poly_)
        return self

    def transform(self, X):
        check_is_fitted(self, "primitive_")
        elems = list(check_elements(X, allow_zero=True).values())
        if check_same_field(elems) != self.source_field_:
            raise FieldMismatch("elements are not in the fitted field")
        _, images = rebase(elems, self.primitive_.element, self.min_poly_)
        return images
