"""Substitution and reduction engine for birational models.

A map is a list of named intermediate quantities (rational expressions in the
source variables and earlier intermediates) followed by simultaneous bindings
of the target variables. The target equation is pulled back, cleared of
denominators and reduced modulo the source relations, which are monic in their
main variables and form a triangular system, so the normal form is zero exactly
when the pulled back numerator lies in the source ideal.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from ..cyclo import CycloNum
from ..elim import NotDivisible, exact_divide, normal_form
from ..mpoly import MPoly, RationalExpr, format_poly, parse_expr, parse_poly, substitute

__all__ = [
    "ResidueNonzero",
    "ExceptionalFactorAbsent",
    "DenominatorVanishes",
    "Presentation",
    "BirationalMap",
    "Certificate",
    "verify_birational_model",
    "proportionality",
    "membership_certificate",
]


class ResidueNonzero(AssertionError):
    def __init__(self, message, residue):
        super().__init__(message)
        self.residue = residue


class ExceptionalFactorAbsent(AssertionError):
    pass


class DenominatorVanishes(AssertionError):
    pass


@dataclass
class Presentation:
    """A curve given by relations, each monic in its designated main variable.

    Relations are applied in order, so the main variable of a later relation
    must not occur in an earlier one with degree at least its main degree.
    """

    name: str
    relations: list = field(default_factory=list)

    def reduce(self, f: MPoly) -> MPoly:
        return normal_form(f, self.relations)

    @property
    def variables(self) -> set:
        out = set()
        for rel, _ in self.relations:
            out.update(rel.vars)
        return out


def _as_rational(obj) -> RationalExpr:
    if isinstance(obj, str):
        return parse_expr(obj)
    return RationalExpr.coerce(obj)


@dataclass
class BirationalMap:
    name: str
    source: Presentation
    target: MPoly
    bindings: dict
    intermediates: list = field(default_factory=list)
    exceptional_factors: list = field(default_factory=list)
    params: dict | None = None


@dataclass
class Certificate:
    name: str
    ok: bool
    residue: str = "0"
    steps: list = field(default_factory=list)
    wall_time: float = 0.0
    params: dict | None = None

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status, "residue": self.residue, "steps": list(self.steps)}
        if self.params:
            out["params"] = {k: str(v) for k, v in self.params.items()}
        return out


def _specialize(expr: RationalExpr, params) -> RationalExpr:
    if not params:
        return expr
    return RationalExpr(expr.num.subs(params), expr.den.subs(params))


def _reduce_rational(expr: RationalExpr, src: Presentation, label: str) -> RationalExpr:
    num = src.reduce(expr.num)
    den = src.reduce(expr.den)
    if den.is_zero():
        raise DenominatorVanishes(f"denominator of {label} vanishes on {src.name}")
    return RationalExpr(num, den)


def _evaluate(expr: RationalExpr, env: dict) -> RationalExpr:
    # substitute already computed intermediates into num and den separately
    used = {k: val for k, val in env.items() if expr.num.degree(k) > 0 or expr.den.degree(k) > 0}
    if not used:
        return expr
    num = substitute(expr.num, used)
    den = substitute(expr.den, used)
    return RationalExpr(num.num * den.den, num.den * den.num)


def verify_birational_model(bmap: BirationalMap, strict: bool = False) -> Certificate:
    """Pull the target back along the map and reduce modulo the source relations.

    With ``strict`` a nonzero residue raises ResidueNonzero; otherwise the
    certificate records the failure and the residue.
    """
    t0 = time.perf_counter()
    src = bmap.source
    if bmap.params:
        src = Presentation(src.name, [(r.subs(bmap.params), v) for r, v in src.relations])
    clash = {name for name, _ in bmap.intermediates} & src.variables
    if clash:
        raise ValueError(f"intermediate names clash with source variables: {sorted(clash)}")
    steps = []
    env: dict = {}
    for name, raw in bmap.intermediates:
        val = _evaluate(_specialize(_as_rational(raw), bmap.params), env)
        env[name] = _reduce_rational(val, src, name)
        steps.append(f"{name} := {raw}")
    binds = {}
    for name, raw in bmap.bindings.items():
        val = _evaluate(_specialize(_as_rational(raw), bmap.params), env)
        binds[name] = _reduce_rational(val, src, name)
        steps.append(f"{name} -> {raw}")
    target = bmap.target.subs(bmap.params) if bmap.params else bmap.target
    pulled = substitute(target, binds)
    num = pulled.num
    for fac in bmap.exceptional_factors:
        fac = fac.subs(bmap.params) if bmap.params else fac
        try:
            num = exact_divide(num, fac)
        except NotDivisible:
            raise ExceptionalFactorAbsent(f"{format_poly(fac)} does not divide the pulled back numerator") from None
        steps.append(f"divided out {format_poly(fac)}")
    residue = src.reduce(num)
    steps.append(f"reduced modulo {src.name}")
    ok = residue.is_zero()
    cert = Certificate(
        bmap.name, ok, "0" if ok else format_poly(residue), steps,
        time.perf_counter() - t0, dict(bmap.params) if bmap.params else None,
    )
    if strict and not ok:
        raise ResidueNonzero(f"{bmap.name}: nonzero residue", residue)
    return cert


def proportionality(a: MPoly, b: MPoly):
    """The constant k with a = k*b, or None if there is none."""
    if a.is_zero() or b.is_zero():
        return None if a.is_zero() != b.is_zero() else CycloNum.coerce(1)
    (ea, ca), = [next(iter(sorted(a.terms.items())))]
    cb = b.terms.get(ea)
    if cb is None:
        return None
    k = CycloNum.coerce(ca) / CycloNum.coerce(cb)
    return k if a == b.scale(k) else None


def membership_certificate(name: str, poly, src: Presentation, params=None) -> Certificate:
    """A polynomial (or display string) vanishing identically on the source."""
    t0 = time.perf_counter()
    f = parse_poly(poly) if isinstance(poly, str) else poly
    rels = src.relations
    if params:
        f = f.subs(params)
        rels = [(r.subs(params), v) for r, v in rels]
    res = normal_form(f, rels)
    ok = res.is_zero()
    return Certificate(name, ok, "0" if ok else format_poly(res), [f"reduced modulo {src.name}"],
                       time.perf_counter() - t0, params)
