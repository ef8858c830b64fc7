"""Command-line interface.

Every subcommand prints a short text report, or with ``--json`` a single JSON
object carrying ``schema_version``. Exit codes: 0 success, 1 verification
failure, 2 bad input, 3 generators do not generate, 4 prime search exhausted,
5 internal assertion.
"""
from __future__ import annotations

import argparse
import ast
import json
import math
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import bounds, heights, modular, numfield, padic, polyarith, verify
from .errors import (InequalityViolated, InternalAssertionFailed, NotGenerating,
                     PadicEmbedError, SearchExhausted)
from .numfield import FieldElement, NumberField
from .polyarith import IntPolynomial

SCHEMA_VERSION = 1
P_MAX_ENV = "PADICEMBED_P_MAX"
_GEN_NAMES = {"alpha", "a", "x", "z", "zeta", "theta"}


class InputError(ValueError):
    """Malformed command-line or file input (exit code 2)."""


@dataclass
class RunConfig:
    subcommand: str
    field_path: str | None = None
    elements: list[str] = field(default_factory=list)
    generators: list[str] = field(default_factory=list)
    p_max: int = modular.DEFAULT_P_MAX
    precision: int = padic.DEFAULT_PRECISION
    seed: int = modular.DEFAULT_SEED
    constants: dict = field(default_factory=lambda: {"c": 1.0, "C": 1.0})
    output: str = "text"

    def __post_init__(self):
        if self.p_max < 2 or self.precision < 1 or self.seed < 0:
            raise InputError("p_max, precision and seed must be positive")


# ------------------------------------------------------------------ parsing

def _eval_expr(text: str, var, make_const):
    """Evaluate +, -, *, /, ** over integer literals and one generator name."""
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise InputError(f"cannot parse {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return make_const(node.value)
        if isinstance(node, ast.Name) and node.id in _GEN_NAMES:
            return var
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise InputError("exponents must be integer literals")
                return ev(node.left) ** node.right.value
            left, right = ev(node.left), ev(node.right)
            ops = {ast.Add: lambda: left + right, ast.Sub: lambda: left - right,
                   ast.Mult: lambda: left * right, ast.Div: lambda: left / right}
            if type(node.op) in ops:
                return ops[type(node.op)]()
        raise InputError(f"unsupported syntax in {text!r}")

    return ev(tree)


def parse_poly(text: str) -> IntPolynomial:
    """``[a0, a1, ...]`` (JSON, little-endian) or an expression such as ``x^2 - 2``."""
    text = text.strip()
    if text.startswith("["):
        try:
            return IntPolynomial.from_json(json.loads(text))
        except (ValueError, TypeError) as exc:
            raise InputError(f"bad coefficient array {text!r}") from exc
    p = _eval_expr(text, polyarith.X, lambda c: IntPolynomial([c]))
    if not isinstance(p, IntPolynomial):
        raise InputError("polynomial expressions may not divide")
    return p


def parse_element(K: NumberField, text: str, named: dict[str, FieldElement]) -> FieldElement:
    text = text.strip()
    if text in named:
        return named[text]
    if text.startswith("["):
        try:
            return K.element(Fraction(c) for c in json.loads(text))
        except (ValueError, TypeError) as exc:
            raise InputError(f"bad coordinate array {text!r}") from exc
    return _eval_expr(text, K.gen, K.rational)


def _split(text: str | None) -> list[str]:
    if not text:
        return []
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
            continue
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        cur += ch
    out.append(cur)
    return [s.strip() for s in out if s.strip()]


def load_field(args) -> tuple[NumberField, dict[str, FieldElement]]:
    assume = getattr(args, "assume_irreducible", False)
    if getattr(args, "cyclotomic", None):
        return NumberField(polyarith.cyclotomic(args.cyclotomic), assume), {}
    if getattr(args, "poly", None):
        return NumberField(parse_poly(args.poly), assume), {}
    if not getattr(args, "field", None):
        raise InputError("give --field, --poly or --cyclotomic")
    try:
        data = json.loads(Path(args.field).read_text())
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot read field spec {args.field}: {exc}") from exc
    try:
        return numfield.load_field_spec(data, assume or bool(data.get("assume_irreducible")))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, PadicEmbedError):
            raise
        raise InputError(f"malformed field spec: {exc}") from exc


def _elements(K, named, spec: str | None) -> dict[str, FieldElement]:
    names = _split(spec) or list(named)
    if not names:
        raise InputError("no elements given")
    return {n: parse_element(K, n, named) for n in names}


def _p_max(args) -> int:
    if args.p_max is not None:
        return args.p_max
    return int(os.environ.get(P_MAX_ENV, modular.DEFAULT_P_MAX))


# ------------------------------------------------------------------ commands

def run_embed_pipeline(config: RunConfig, K: NumberField, named: dict[str, FieldElement]) -> dict:
    """Optional primitive-element step, then the prime search and bound report."""
    elements = _elements(K, named, ",".join(config.elements) or None)
    out: dict = {"field": K.defining_poly.to_json()}
    if config.generators:
        gens = [parse_element(K, g, named) for g in config.generators]
        prim = numfield.primitive_from_generators(numfield.GeneratorSet(K, gens))
        K, images = numfield.rebase(list(elements.values()), prim.element, prim.min_poly)
        elements = dict(zip(elements, images))
        out["primitive"] = _primitive_json(prim)
    result = padic.find_embedding(K, elements, p_max=config.p_max, precision=config.precision,
                                  bound_c=config.constants["c"], seed=config.seed)
    out.update(result.to_json())
    out["elements"] = {n: e.to_json() for n, e in elements.items()}
    return out


def _primitive_json(prim: numfield.PrimitiveElement) -> dict:
    return {"coefficients": list(prim.coefficients), "min_poly": prim.min_poly.to_json(),
            "height": prim.height, "height_bound": prim.height_bound,
            "generator_heights": list(prim.generator_heights)}


def cmd_embed(args):
    K, named = load_field(args)
    cfg = RunConfig("embed", args.field, _split(args.elements), _split(args.generators),
                    _p_max(args), args.precision, args.seed, {"c": args.bound_c, "C": 1.0},
                    "json" if args.json else "text")
    out = run_embed_pipeline(cfg, K, named)
    lines = [f"prime p = {out['p']}",
             f"eta = {out['eta']['residue']} mod {out['p']}^{out['eta']['k']}",
             "valuations: " + ", ".join(f"{k}={v}" for k, v in out["valuations"].items()),
             f"skipped primes: {len(out['skipped_primes'])}",
             f"bound (c={args.bound_c}): {out['bound']['bound_value']:.6g}"]
    if "primitive" in out:
        lines.insert(0, f"primitive element coefficients {out['primitive']['coefficients']}")
    return out, lines


def cmd_primitive(args):
    K, named = load_field(args)
    gens = [parse_element(K, g, named) for g in (_split(args.generators) or list(named))]
    prim = numfield.primitive_from_generators(numfield.GeneratorSet(K, gens))
    out = _primitive_json(prim)
    out["element"] = prim.element.to_json()
    return out, [f"coefficients {list(prim.coefficients)}",
                 f"minimal polynomial {prim.min_poly}",
                 f"h = {prim.height:.6f} <= {prim.height_bound:.6f}"]


def cmd_coords(args):
    K, named = load_field(args)
    out, lines = {}, []
    for name, beta in _elements(K, named, args.elements).items():
        b, a = numfield.power_basis_coords(beta)
        entry = {"b": str(b), "a": [str(x) for x in a]}
        if K.degree >= 2:
            rep = numfield.coefficient_height_certificate(beta)
            entry.update(h_beta=rep.beta_height, uniform_bound=rep.uniform_bound,
                         coefficient_heights=list(rep.coefficient_heights), passed=rep.passed)
        out[name] = entry
        lines.append(f"{name} = ({' + '.join(f'{x}*alpha^{i}' for i, x in enumerate(a))}) / {b}")
    return {"elements": out}, lines


def cmd_heights(args):
    f = parse_poly(args.poly)
    rep = heights.check_height_mahler_inequality(f, args.tol)
    out = {"poly": f.to_json(), "H": str(rep.height), "mahler": rep.mahler.value,
           "mahler_error": rep.mahler.abs_error, "lower_bound": rep.lower_bound,
           "upper_bound": rep.upper_bound, "passed": rep.passed}
    if numfield.prove_irreducible(f):
        out["h"] = heights.abs_log_height(f, args.tol)
    lines = [f"H = {rep.height}", f"M = {rep.mahler.value:.12g} +/- {rep.mahler.abs_error:.2g}",
             f"{rep.lower_bound:.6g} <= M <= {rep.upper_bound:.6g}: {rep.passed}"]
    if "h" in out:
        lines.append(f"h = {out['h']:.12g}")
    return out, lines


def cmd_simple_root_prime(args):
    f = parse_poly(args.poly)
    w = modular.smallest_simple_root_prime(f, args.Q, _p_max(args), args.seed)
    return {"p": w.p, "a": w.a, "simple": w.simple}, [f"p = {w.p}, root a = {w.a}"]


def cmd_generic_prime(args):
    f = parse_poly(args.poly)
    r = modular.generic_prime(f)
    rep = bounds.evaluate_bound("generic_prime", {"case": r.case, "H": polyarith.height(f),
                                                  "d": f.degree, "M": r.radical_disc},
                                empirical=r.witness.p)
    out = {"p": r.witness.p, "a": r.witness.a, "case": r.case, "case_tag": r.case_tag,
           "bound": str(r.bound), "radical_disc": str(r.radical_disc), "point": str(r.point),
           "passed": rep.passed}
    return out, [f"case {r.case} ({r.case_tag}): p = {r.witness.p}, root {r.witness.a}, bound {r.bound}"]


def cmd_verify_lemmas(args):
    f = parse_poly(args.poly)
    Ls = [int(x) for x in _split(args.L)]
    rep = modular.verify_congruence_lemmas(f, args.ell, args.k_max, Ls, strict=False)
    out = {"distinct_roots": rep.distinct_roots, "passed": rep.passed,
           "checks": [{"name": c.name, "k": c.k, "L": c.L, "lhs": c.lhs, "rhs": c.rhs,
                       "passed": c.passed} for c in rep.checks]}
    lines = [f"{c.name} k={c.k}" + (f" L={c.L}" if c.L else "") + f": {c.lhs:.6g} vs {c.rhs:.6g} "
             f"{'ok' if c.passed else 'FAIL'}" for c in rep.checks]
    ok = rep.passed
    if args.product_L:
        pr = modular.verify_product_and_omega_lemmas(f, args.product_L, args.c1, args.c2)
        out["product"] = {"L": pr.L, "hypothesis_met": pr.product_hypothesis_met,
                          "passed": pr.product_passed, "log_W": pr.log_W,
                          "log_bound": pr.log_product_bound, "omega": pr.omega,
                          "omega_exact": pr.omega_exact, "omega_rhs": pr.omega_rhs,
                          "omega_ratio": pr.omega_ratio}
        lines.append(f"product L={pr.L}: log W = {pr.log_W:.6g} vs {pr.log_product_bound:.6g} "
                     f"({'skipped' if pr.product_passed is None else pr.product_passed})")
        lines.append(f"omega = {pr.omega}{'' if pr.omega_exact else ' (lower bound)'}, "
                     f"ratio {pr.omega_ratio:.4g} (report only)")
    return out, lines, (0 if ok else 1)


def cmd_delta(args):
    ell, e = modular.largest_prime_power(args.m)
    out = {"m": args.m, "P": ell, "e": e, "delta": modular.delta(args.m)}
    lines = [f"P(m) = {ell}, e = {e}, delta = {out['delta']}"]
    if args.ell:
        c = modular.cyclotomic_root_count(args.m, args.ell, args.k)
        out.update(ell=args.ell, k=args.k, criterion=modular.cyclotomic_criterion(args.m, args.ell),
                   root_count=c.value, exact=c.exact)
        lines.append(f"N({args.ell}^{args.k}) {'=' if c.exact else '<='} {c.value}")
    return out, lines


def _load_inputs(text: str) -> dict:
    try:
        if text.strip().startswith("{"):
            return json.loads(text)
        return json.loads(Path(text).read_text())
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot read bound inputs: {exc}") from exc


def cmd_bounds(args):
    consts = {"c": args.c, "C": args.C, "exponent_scale": args.exponent_scale}
    rep = bounds.evaluate_bound(args.name, _load_inputs(args.inputs) if args.inputs else {},
                                consts, args.empirical)
    lines = [f"{rep.name}: {rep.description}", f"log bound = {rep.log_bound:.10g}",
             f"bound = {rep.bound_value:.6g}", f"asserted: {rep.asserted}"]
    if rep.empirical_value is not None:
        lines.append(f"empirical {rep.empirical_value:g}, margin {rep.margin}, passed {rep.passed}")
    return rep.to_json(), lines


def cmd_sharpness(args):
    if args.kind == "primes":
        r = bounds.sharpness_primes(args.n, args.R)
        out = {"n": r.n, "R": r.R, "betas": [str(b) for b in r.betas], "p": r.p, "p_nR": r.p_nR,
               "sum_heights": r.sum_heights, "ratio": r.ratio, "passed": r.passed}
        return out, [f"p = {r.p} > p_nR = {r.p_nR}: {r.passed}"], (0 if r.passed else 1)
    r = bounds.sharpness_quadratic(args.k, args.t, args.samples, args.seed)
    out = {"k": r.k, "t": r.t, "threshold": str(r.threshold), "asserted": r.asserted,
           "min_height": r.min_height, "samples": len(r.samples), "passed": r.passed}
    return out, [f"min H(alpha) = {r.min_height} vs k/3 = {float(r.threshold):.4g} "
                 f"over {len(r.samples)} samples: {r.passed}"], (0 if r.passed or not r.asserted else 1)


def cmd_verify_all(args):
    s = verify.run_verification_suite(args.scope, args.seed)
    lines = [f"{name}: {p}/{t}" for name, (p, t) in sorted(s.counts.items())]
    lines.append(f"total {s.total} checks, {'ok' if s.ok else 'FAILED'}")
    lines += [f"FAIL {n}: {d}" for n, d in s.failures[:20]]
    return s.to_json(), lines, (0 if s.ok else 1)


# ------------------------------------------------------------------ argument parser

def _field_args(p):
    p.add_argument("--field", help="field spec JSON file")
    p.add_argument("--poly", help="defining polynomial instead of --field")
    p.add_argument("--cyclotomic", type=int, metavar="M", help="use Q(zeta_M)")
    p.add_argument("--assume-irreducible", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="padicembed", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.add_argument("--json", action="store_true", help="emit one JSON object")
        p.add_argument("--seed", type=int, default=modular.DEFAULT_SEED)
        p.set_defaults(func=fn)
        return p

    p = add("embed", cmd_embed, help="find a prime and an embedding making elements units")
    _field_args(p)
    p.add_argument("--elements", help="comma-separated names, expressions or coordinate arrays")
    p.add_argument("--generators", help="generators for a primitive-element step first")
    p.add_argument("--p-max", type=int, default=None)
    p.add_argument("--precision", type=int, default=padic.DEFAULT_PRECISION)
    p.add_argument("--bound-c", type=float, default=1.0)

    p = add("primitive", cmd_primitive, help="primitive element from generators")
    _field_args(p)
    p.add_argument("--generators")

    p = add("coords", cmd_coords, help="power-basis coordinates with height certificate")
    _field_args(p)
    p.add_argument("--elements")

    p = add("heights", cmd_heights, help="height, Mahler measure and their sandwich")
    p.add_argument("--poly", required=True)
    p.add_argument("--tol", type=float, default=heights.DEFAULT_TOL)

    p = add("simple-root-prime", cmd_simple_root_prime, help="least prime with a simple root")
    p.add_argument("--poly", required=True)
    p.add_argument("--Q", type=int, default=1)
    p.add_argument("--p-max", type=int, default=None)

    p = add("generic-prime", cmd_generic_prime, help="constructive simple-root prime with bound")
    p.add_argument("--poly", required=True)

    p = add("verify-lemmas", cmd_verify_lemmas, help="brute-force root-count and product bounds")
    p.add_argument("--poly", required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--k-max", type=int, default=3)
    p.add_argument("--L", default="10,100")
    p.add_argument("--product-L", type=int, default=None)
    p.add_argument("--c1", type=float, default=0.05)
    p.add_argument("--c2", type=float, default=0.05)

    p = add("delta", cmd_delta, help="delta(m) and cyclotomic root counts")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--ell", type=int)
    p.add_argument("--k", type=int, default=1)

    p = add("bounds", cmd_bounds, help="evaluate a named bound")
    p.add_argument("--name", required=True, choices=sorted(bounds.BOUNDS))
    p.add_argument("--inputs", help="JSON object or path to a JSON file")
    p.add_argument("--empirical", type=float)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--C", type=float, default=1.0)
    p.add_argument("--exponent-scale", type=float, default=1.0)

    p = add("sharpness", cmd_sharpness, help="prime-product and quadratic examples")
    p.add_argument("kind", choices=["primes", "quadratic"])
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--R", type=int, default=3)
    p.add_argument("--k", type=int, default=15)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--samples", type=int, default=200)

    p = add("verify-all", cmd_verify_all, help="run the randomized verification suite")
    p.add_argument("--scope", choices=sorted(verify.SCOPES), default="quick")
    return ap


def _jsonable(x):
    if isinstance(x, float) and not math.isfinite(x):
        return "inf" if x > 0 else ("-inf" if x < 0 else "nan")
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    status = 0
    try:
        res = args.func(args)
        out, lines = res[0], res[1]
        if len(res) > 2:
            status = res[2]
    except (InputError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NotGenerating as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except SearchExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (InternalAssertionFailed, InequalityViolated) as exc:
        print(f"internal assertion: {exc}", file=sys.stderr)
        return 5
    except (PadicEmbedError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        payload = {"schema_version": SCHEMA_VERSION, "command": args.command, "result": out}
        print(json.dumps(_jsonable(payload), sort_keys=True))
    else:
        print("\n".join(lines))
    return status


if __name__ == "__main__":
    sys.exit(main())
