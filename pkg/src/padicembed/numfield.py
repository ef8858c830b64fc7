"""Number fields Q(alpha) = Q[x]/(f) with exact element arithmetic.

Elements are rational coordinate vectors in the power basis 1, alpha, ...,
alpha^(d-1). Minimal polynomials come from the characteristic polynomial of
the multiplication matrix; no factorization over Q is needed because that
characteristic polynomial is a power of the minimal polynomial.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from . import heights, linalg
from .errors import (DivisionByZero, FieldMismatch, InequalityViolated, NotGenerating,
                     PreconditionViolated, ZeroElement)
from .polyarith import (Irreducibility, IntPolynomial, check_irreducible, content, cyclotomic,
                        derivative, discriminant, exact_div, gcd, primitive_part)

HEIGHT_SLACK = heights.HEIGHT_SLACK


# ------------------------------------------------------------------ Q[x] helpers

def _qtrim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _qdivmod(a: list, b: list) -> tuple[list, list]:
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], _qtrim(r)
    q = [Fraction(0)] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] / b[-1]
        q[k] = c
        if c:
            for j, y in enumerate(b):
                r[k + j] -= c * y
    return _qtrim(q), _qtrim(r[:db])


def _qmul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _qsub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return _qtrim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


# ------------------------------------------------------------------ irreducibility

_ROOT_SUBSET_MAX_DEGREE = 12


def _positive_divisors(n: int) -> list[int]:
    from .primes import factorint
    factors, _ = factorint(n, strict=True)
    divs = [1]
    for q, e in factors.items():
        divs = [d * q ** k for d in divs for k in range(e + 1)]
    return sorted(divs)


def irreducible_by_root_subsets(f: IntPolynomial) -> bool:
    """Prove f irreducible over Q from certified complex roots.

    A factor of degree k in Z[x] is c * prod_{i in I} (x - r_i) with |I| = k and
    c dividing lc(f), so all its coefficients are integers. Every such candidate
    is excluded when some coefficient is provably non-integral. Returns False
    when the test is inconclusive or f is reducible.
    """
    import mpmath

    d = f.degree
    if d <= 1:
        return d == 1
    if content(f) != 1 or discriminant(f) == 0:
        return False
    clusters = heights.root_clusters(f)
    roots = [(mpmath.mpc(c.center), c.radius + abs(c.center) * 2.0 ** -50) for c in clusters]
    divisors = _positive_divisors(abs(f.leading))
    with mpmath.workprec(113):
        for k in range(1, d // 2 + 1):
            for subset in itertools.combinations(roots, k):
                e = [mpmath.mpc(1)]
                maj = [mpmath.mpf(1)]
                maj_true = [mpmath.mpf(1)]
                for z, r in subset:
                    e = [a - (e[i - 1] * z if i else 0) for i, a in enumerate(e + [0])]
                    maj = [a + (maj[i - 1] * abs(z) if i else 0) for i, a in enumerate(maj + [0])]
                    maj_true = [a + (maj_true[i - 1] * (abs(z) + r) if i else 0)
                                for i, a in enumerate(maj_true + [0])]
                errs = [t - m + mpmath.mpf(2) ** -90 * t for t, m in zip(maj_true, maj)]
                for c in divisors:
                    excluded = False
                    for coeff, err in zip(e, errs):
                        val, bound = c * coeff, c * err
                        if abs(val.imag) > bound or abs(val.real - mpmath.nint(val.real)) > bound:
                            excluded = True
                            break
                    if not excluded:
                        return False
    return True


# ------------------------------------------------------------------ fields

def prove_irreducible(f: IntPolynomial) -> bool:
    """True when f is proven irreducible over Q by degree patterns or root subsets."""
    if f.degree < 1:
        return False
    if check_irreducible(f) is Irreducibility.PROVEN:
        return True
    return f.degree <= _ROOT_SUBSET_MAX_DEGREE and irreducible_by_root_subsets(f)


class NumberField:
    """K = Q[x]/(f) for an irreducible integer polynomial f.

    The defining polynomial is normalised to content 1 and a positive leading
    coefficient. Irreducibility must be proven by ``check_irreducible`` unless
    the caller passes ``assume_irreducible=True``.
    """

    def __init__(self, defining_poly: IntPolynomial | Sequence[int], assume_irreducible: bool = False):
        f = defining_poly if isinstance(defining_poly, IntPolynomial) else IntPolynomial(defining_poly)
        if f.degree < 1:
            raise PreconditionViolated("defining polynomial must have degree >= 1")
        f = primitive_part(f)
        if prove_irreducible(f):
            status = "proven"
        elif assume_irreducible:
            status = "asserted"
        else:
            raise PreconditionViolated(
                f"could not prove {f} irreducible; pass assume_irreducible=True to assert it")
        self.defining_poly = f
        self.irreducibility = status

    @classmethod
    def cyclotomic(cls, m: int) -> "NumberField":
        return cls(cyclotomic(m))

    def __repr__(self):
        return f"NumberField({self.defining_poly})"

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.defining_poly == other.defining_poly

    def __hash__(self):
        return hash(self.defining_poly)

    @property
    def degree(self) -> int:
        return self.defining_poly.degree

    @cached_property
    def discriminant(self) -> int:
        return discriminant(self.defining_poly)

    @cached_property
    def _monic(self) -> list[Fraction]:
        lc = self.defining_poly.leading
        return [Fraction(a, lc) for a in self.defining_poly.coeffs]

    @cached_property
    def _reduction_table(self) -> list[list[Fraction]]:
        """Coordinates of alpha^k for k = d .. 2d-2."""
        d = self.degree
        f = self._monic
        table = []
        cur = [-c for c in f[:d]]  # alpha^d
        for _ in range(max(0, d - 1)):
            table.append(cur)
            # multiply by alpha
            top = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            cur = [c - top * f[i] for i, c in enumerate(cur)]
        return table

    def element(self, coords: Iterable) -> "FieldElement":
        c = [Fraction(x) for x in coords]
        if len(c) > self.degree:
            return self._reduce(c)
        return FieldElement(self, tuple(c + [Fraction(0)] * (self.degree - len(c))))

    def rational(self, q) -> "FieldElement":
        return self.element([Fraction(q)])

    @property
    def gen(self) -> "FieldElement":
        if self.degree == 1:
            return self.rational(Fraction(-self.defining_poly.coeffs[0], self.defining_poly.coeffs[1]))
        return self.element([0, 1])

    @property
    def one(self) -> "FieldElement":
        return self.rational(1)

    @property
    def zero(self) -> "FieldElement":
        return self.rational(0)

    def _reduce(self, c: list) -> "FieldElement":
        d = self.degree
        low = list(c[:d]) + [Fraction(0)] * max(0, d - len(c))
        for k, ck in enumerate(c[d:]):
            if ck:
                row = self._reduction_table[k]
                for i in range(d):
                    low[i] += ck * row[i]
        return FieldElement(self, tuple(low))

    @cached_property
    def generator_height(self) -> float:
        """Absolute logarithmic height of alpha."""
        return heights.abs_log_height(self.defining_poly)

    def embeddings(self, tol: float = heights.DEFAULT_TOL) -> list[complex]:
        return heights.complex_roots(self.defining_poly, tol)


@dataclass(frozen=True)
class FieldElement:
    field: NumberField = field(repr=False)
    coords: tuple[Fraction, ...]

    def _check(self, other) -> "FieldElement":
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch("elements live in different fields")
        return other

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self.field._reduce(_qmul(list(self.coords), list(other.coords)))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        # extended Euclid of the coordinate polynomial against f over Q
        f = [Fraction(a) for a in self.field.defining_poly.coeffs]
        r0, r1 = f, _qtrim(list(self.coords))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _qdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _qsub(s0, _qmul(q, s1))
        if not r1:
            raise DivisionByZero("element is a zero divisor; defining polynomial is reducible")
        inv = r1[0]
        return self.field._reduce([c / inv for c in s1])

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __str__(self):
        terms = []
        for j, c in enumerate(self.coords):
            if not c:
                continue
            mono = "" if j == 0 else ("a" if j == 1 else f"a^{j}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"({c})*{mono}")
        return " + ".join(terms) or "0"

    def to_json(self) -> dict:
        b, a = power_basis_coords(self) if not self.is_zero() else (1, (0,) * self.field.degree)
        return {"num": [str(x) for x in a], "den": str(b)}


def element_arithmetic(a: FieldElement, b: FieldElement | None, op: str, exponent: int | None = None) -> FieldElement:
    """Dispatch helper: op in {add, sub, mul, inv, pow}."""
    if b is not None and a.field != b.field:
        raise FieldMismatch("elements live in different fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** exponent
    raise ValueError(f"unknown operation {op!r}")


# ------------------------------------------------------------------ minimal polynomials

def multiplication_matrix(beta: FieldElement) -> list[list[Fraction]]:
    """Matrix of x -> beta*x in the power basis (columns are beta*alpha^j)."""
    K = beta.field
    cols = []
    cur = beta
    for j in range(K.degree):
        cols.append(cur.coords)
        if j + 1 < K.degree:
            cur = cur * K.element([0, 1])
    return [[cols[j][i] for j in range(K.degree)] for i in range(K.degree)]


def _fraction_poly_to_int(coeffs_high_first: Sequence[Fraction]) -> IntPolynomial:
    low = [Fraction(c) for c in reversed(coeffs_high_first)]
    den = math.lcm(*(c.denominator for c in low))
    return primitive_part(IntPolynomial(int(c * den) for c in low))


def characteristic_polynomial(beta: FieldElement) -> IntPolynomial:
    """Primitive integer multiple of det(x I - M_beta)."""
    return _fraction_poly_to_int(linalg.charpoly(multiplication_matrix(beta)))


def min_poly_of_element(beta: FieldElement) -> IntPolynomial:
    """Minimal polynomial over Z: content 1, positive leading coefficient."""
    d = beta.field.degree
    if beta.is_rational():
        q = beta.coords[0]
        return IntPolynomial([-q.numerator, q.denominator])
    char = characteristic_polynomial(beta)
    g = gcd(char, derivative(char))
    minimal = primitive_part(exact_div(char, g))
    k = minimal.degree
    if d % k:
        raise ArithmeticError(f"minimal polynomial degree {k} does not divide {d}")
    if primitive_part(minimal ** (d // k)) != char:
        raise ArithmeticError("characteristic polynomial is not a power of the squarefree part")
    return minimal


def element_height(beta: FieldElement) -> float:
    if beta.is_zero():
        return 0.0
    return heights.abs_log_height(min_poly_of_element(beta))


def element_degree(beta: FieldElement) -> int:
    return min_poly_of_element(beta).degree


# ------------------------------------------------------------------ primitive elements

@dataclass
class GeneratorSet:
    field: NumberField
    generators: list[FieldElement]

    def __post_init__(self):
        if not self.generators:
            raise PreconditionViolated("at least one generator is required")
        for g in self.generators:
            if g.field != self.field:
                raise FieldMismatch("generator outside the ambient field")
            if element_degree(g) < 2:
                raise PreconditionViolated("every generator must have degree >= 2 over Q")

    @property
    def m(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class PrimitiveElement:
    element: FieldElement
    coefficients: tuple[int, ...]
    min_poly: IntPolynomial
    height: float
    height_bound: float
    generator_heights: tuple[float, ...]

    @property
    def mahler_bound(self) -> float:
        """(m floor(d/2))^d prod M(alpha_i)^(d/d_i), the multiplicative form of height_bound."""
        return math.exp(self.min_poly.degree * self.height_bound)


def coefficient_range(d: int) -> list[int]:
    """{-floor(d/2), ..., floor(d/2)} in search order 0, 1, -1, 2, -2, ..."""
    r = d // 2
    out = [0]
    for k in range(1, r + 1):
        out += [k, -k]
    return out


def coefficient_tuples(d: int, m: int) -> Iterator[tuple[int, ...]]:
    """Every tuple in S^m, by max-norm ascending, then lexicographic in search order."""
    values = coefficient_range(d)
    rank = {v: i for i, v in enumerate(values)}
    for norm in range(0, d // 2 + 1):
        allowed = [v for v in values if abs(v) <= norm]
        layer = [t for t in itertools.product(allowed, repeat=m) if max(map(abs, t)) == norm]
        layer.sort(key=lambda t: tuple(rank[v] for v in t))
        yield from layer


def _combine(gens: Sequence[FieldElement], b: Sequence[int]) -> FieldElement:
    acc = gens[0].field.zero
    for bi, g in zip(b, gens):
        if bi:
            acc = acc + g * bi
    return acc


def primitive_from_generators(gs: GeneratorSet, slack: float = HEIGHT_SLACK) -> PrimitiveElement:
    """First b in S^m (search order) with b_1 alpha_1 + ... + b_m alpha_m primitive.

    The height of the result is checked against
    log(m floor(d/2)) + sum h(alpha_i).
    """
    K = gs.field
    d = K.degree
    for b in coefficient_tuples(d, gs.m):
        cand = _combine(gs.generators, b)
        if cand.is_rational():
            continue
        mp = min_poly_of_element(cand)
        if mp.degree == d:
            break
    else:
        raise NotGenerating(f"no combination with coefficients in [-{d // 2}, {d // 2}] generates {K}")
    gen_heights = tuple(element_height(g) for g in gs.generators)
    h = heights.abs_log_height(mp)
    bound = math.log(gs.m * (d // 2)) + sum(gen_heights)
    if h > bound + slack:
        raise InequalityViolated(f"primitive element height {h} exceeds {bound}")
    return PrimitiveElement(cand, b, mp, h, bound, gen_heights)


def count_generating_tuples(gs: GeneratorSet) -> int:
    d = gs.field.degree
    return sum(
        1 for b in itertools.product(coefficient_range(d), repeat=gs.m)
        if element_degree(_combine(gs.generators, b)) == d
    )


# ------------------------------------------------------------------ power basis

def power_basis_coords(beta: FieldElement) -> tuple[int, tuple[int, ...]]:
    """(b, a) with beta = (a_0 + a_1 alpha + ... + a_{d-1} alpha^{d-1}) / b.

    b is the lcm of the coordinate denominators, so gcd(b, a_0, ..., a_{d-1}) = 1.
    """
    if beta.is_zero():
        raise ZeroElement("zero has no normalised power-basis expression")
    b = math.lcm(*(c.denominator for c in beta.coords))
    return b, tuple(int(c * b) for c in beta.coords)


@dataclass(frozen=True)
class CoefficientHeightReport:
    degree: int
    beta_height: float
    alpha_height: float
    denominator: int
    coefficient_heights: tuple[float, ...]
    per_index_bounds: tuple[float, ...]
    uniform_bound: float

    @property
    def log_denominator(self) -> float:
        return math.log(self.denominator)

    @property
    def passed(self) -> bool:
        s = HEIGHT_SLACK
        return (all(h <= bnd + s for h, bnd in zip(self.coefficient_heights, self.per_index_bounds))
                and all(h < self.uniform_bound + s for h in self.coefficient_heights)
                and self.log_denominator < self.uniform_bound + s)


def per_index_coefficient_bound(d: int, h_beta: float, h_alpha: float, i: int) -> float:
    return (d * h_beta + 3 * d * (d - 1) * h_alpha + d * math.log(math.comb(d - 1, i))
            + d * (d - 1) * math.log(2) + math.log(d))


def uniform_coefficient_bound(d: int, h_beta: float, h_alpha: float) -> float:
    return d * h_beta + 3 * d * d * h_alpha + 2 * d * d


def coefficient_height_certificate(beta: FieldElement) -> CoefficientHeightReport:
    """Check the coordinate heights and the common denominator of beta against
    the bounds in terms of h(beta) and h(alpha)."""
    K = beta.field
    d = K.degree
    if d < 2:
        raise PreconditionViolated("certificate needs a field of degree >= 2")
    b, _ = power_basis_coords(beta)
    hb = element_height(beta)
    ha = K.generator_height
    coeff_h = tuple(heights.rational_height(c) for c in beta.coords)
    report = CoefficientHeightReport(
        d, hb, ha, b, coeff_h,
        tuple(per_index_coefficient_bound(d, hb, ha, i) for i in range(d)),
        uniform_coefficient_bound(d, hb, ha),
    )
    if not report.passed:
        raise InequalityViolated(f"coefficient height bound fails for {beta}: {report}")
    return report


@dataclass(frozen=True)
class VandermondeReport:
    exact: tuple[Fraction, ...]
    reconstructed: tuple[complex, ...]
    max_error: float


def vandermonde_solve_check(beta: FieldElement, tol: float = 1e-8) -> VandermondeReport:
    """Recover the coordinates of beta from its conjugates with the explicit
    inverse of the Vandermonde matrix of the conjugates of alpha."""
    K = beta.field
    d = K.degree
    roots = K.embeddings()
    conj = [sum(complex(float(c)) * r ** j for j, c in enumerate(beta.coords)) for r in roots]
    out = []
    for j in range(1, d + 1):
        total = 0j
        for i in range(1, d + 1):
            others = [roots[k - 1] for k in range(1, d + 1) if k != i]
            e = [1 + 0j]  # elementary symmetric functions of the other roots
            for r in others:
                e = [a + (e[idx - 1] * r if idx else 0) for idx, a in enumerate(e + [0j])]
            sigma = e[d - j]
            den = 1 + 0j
            for m in range(1, i):
                den *= roots[i - 1] - roots[m - 1]
            for k in range(i + 1, d + 1):
                den *= roots[k - 1] - roots[i - 1]
            total += conj[i - 1] * (-1) ** (i + j) * sigma / den
        out.append(total)
    err = max(abs(z - float(c)) for z, c in zip(out, beta.coords))
    scale = max(1.0, max(abs(float(c)) for c in beta.coords))
    if err > tol * scale:
        raise InequalityViolated(f"Vandermonde reconstruction off by {err}")
    return VandermondeReport(beta.coords, tuple(out), err)


# ------------------------------------------------------------------ change of basis

def rebase(elements: Sequence[FieldElement], primitive: FieldElement,
           min_poly: IntPolynomial | None = None) -> tuple[NumberField, list[FieldElement]]:
    """Express elements in the power basis of a primitive element.

    Returns the field Q[y]/(min_poly(primitive)) and the images of the elements.
    """
    K = primitive.field
    d = K.degree
    mp = min_poly or min_poly_of_element(primitive)
    if mp.degree != d:
        raise NotGenerating("element is not primitive")
    L = NumberField(mp, assume_irreducible=True)
    powers = [K.one]
    for _ in range(d - 1):
        powers.append(powers[-1] * primitive)
    P = [[powers[j].coords[i] for j in range(d)] for i in range(d)]
    return L, [L.element(linalg.solve(P, list(e.coords))) for e in elements]


# ------------------------------------------------------------------ JSON field specs

def load_field_spec(data: Mapping, assume_irreducible: bool = False) -> tuple[NumberField, dict[str, FieldElement]]:
    """Parse ``{"defining_poly": [...], "elements": {name: {"num": [...], "den": "..."}}}``."""
    K = NumberField(IntPolynomial.from_json(data["defining_poly"]), assume_irreducible=assume_irreducible)
    elements = {}
    for name, spec in data.get("elements", {}).items():
        den = int(spec.get("den", 1))
        elements[name] = K.element(Fraction(int(a), den) for a in spec["num"])
    return K, elements


def dump_field_spec(K: NumberField, elements: Mapping[str, FieldElement]) -> dict:
    return {"defining_poly": K.defining_poly.to_json(),
            "elements": {name: e.to_json() for name, e in elements.items()}}
