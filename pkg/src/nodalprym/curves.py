"""The nodal plane curves f_n = 0, their double covers w^2 = y^2 - xz,
and the action of the group generated by alpha, beta, gamma.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from gmpy2 import mpq

from .cyclo import CycloNum, root_of_unity
from .elim import (
    NotDivisible,
    distinct_root_count,
    exact_divide,
    resultant,
    squarefree_part,
    upoly_gcd,
)
from .mpoly import MPoly, symbols

__all__ = [
    "UnsupportedN",
    "RelationFailed",
    "NotSingular",
    "NotOrdinary",
    "NotDivisibleByX1Squared",
    "PalindromeFailed",
    "ExtraSingularity",
    "CurveFamily",
    "CoverPresentation",
    "Automorphism",
    "generate_group",
    "compose_actions",
    "alpha",
    "beta",
    "gamma",
    "param_names",
    "sample_params",
    "build_family",
    "build_cover",
    "verify_automorphisms",
    "certify_nodes",
    "blowup_node",
    "smoothness_scan",
]


class UnsupportedN(ValueError):
    pass


class RelationFailed(AssertionError):
    def __init__(self, word: str):
        super().__init__(f"group relation failed: {word}")
        self.word = word


class NotSingular(AssertionError):
    pass


class NotOrdinary(AssertionError):
    pass


class NotDivisibleByX1Squared(AssertionError):
    pass


class PalindromeFailed(AssertionError):
    pass


class ExtraSingularity(AssertionError):
    def __init__(self, witness):
        super().__init__(f"singular point outside the nodes: {witness}")
        self.witness = witness


x, y, z, w = symbols("x y z w")


def param_names(n: int) -> list[str]:
    return [f"a{i}" for i in range(2, n // 2 + 1)]


def sample_params(n: int, shift: int = 0) -> dict[str, mpq]:
    """A fixed rational point of parameter space, away from the special loci we know of."""
    return {f"a{i}": mpq(i - 1, 2 * i + 1) + shift for i in range(2, n // 2 + 1)}


def family_polynomial(n: int) -> MPoly:
    f = x ** n + z ** n + (n - 2) * y ** n - n * x * z * y ** (n - 2)
    for i in range(2, n // 2 + 1):
        a = MPoly.var(f"a{i}")
        f = f + a * ((x * z) ** i * y ** (n - 2 * i) - i * x * z * y ** (n - 2) + (i - 1) * y ** n)
    return f


@dataclass
class CurveFamily:
    n: int
    f: MPoly
    f_hat: MPoly
    nodes: list
    params: list
    level: int

    @property
    def genus_singular_model(self) -> int:
        return (self.n - 1) * (self.n - 2) // 2

    @property
    def geometric_genus(self) -> int:
        return self.genus_singular_model - len(self.nodes)


@dataclass
class CoverPresentation:
    base: CurveFamily
    relations: list  # (relation, main variable) pairs in reduction order

    @property
    def genus(self) -> int:
        n = self.base.n
        # two branch points over each node
        return 1 + (2 * self.base.geometric_genus - 2) + len(self.base.nodes)


@lru_cache(maxsize=None)
def build_family(n: int) -> CurveFamily:
    if n < 4:
        raise UnsupportedN(f"the family needs n >= 4, got {n}")
    f = family_polynomial(n)
    nodes = [(root_of_unity(n, i), CycloNum.coerce(1), root_of_unity(n, -i)) for i in range(n)]
    return CurveFamily(n=n, f=f, f_hat=f.subs({"y": 1}), nodes=nodes, params=param_names(n), level=n)


def cover_relation() -> MPoly:
    """w^2 - (1 - xz), the cover on the chart y = 1."""
    return w ** 2 - 1 + x * z


@lru_cache(maxsize=None)
def build_cover(n: int) -> CoverPresentation:
    fam = build_family(n)
    return CoverPresentation(base=fam, relations=[(cover_relation(), "w"), (fam.f_hat, "z")])


# -- automorphisms ----------------------------------------------------------------

@dataclass(frozen=True)
class Automorphism:
    """x -> zeta^j x, z -> zeta^-j z (diagonal) or x -> zeta^j z, z -> zeta^-j x (swap); w -> eps*w."""

    n: int
    swap: bool
    j: int
    eps: int = 1

    def __post_init__(self):
        object.__setattr__(self, "j", self.j % self.n)

    @property
    def c(self) -> CycloNum:
        return root_of_unity(self.n, self.j)

    @property
    def name(self) -> str:
        def apow(k):
            return "alpha" if k == 1 else f"alpha^{k}"

        if self.swap:
            k = (-self.j) % self.n
            parts = ["beta"] + ([apow(k)] if k else [])
        else:
            parts = [apow(self.j)] if self.j else []
        if self.eps == -1:
            parts.append("gamma")
        return "*".join(parts) if parts else "id"

    def __matmul__(self, other: "Automorphism") -> "Automorphism":
        """Composition self o other."""
        a, b = self.j, other.j
        if not self.swap and not other.swap:
            return Automorphism(self.n, False, a + b, self.eps * other.eps)
        if not self.swap and other.swap:
            return Automorphism(self.n, True, a + b, self.eps * other.eps)
        if self.swap and not other.swap:
            return Automorphism(self.n, True, a - b, self.eps * other.eps)
        return Automorphism(self.n, False, a - b, self.eps * other.eps)

    def __pow__(self, k: int) -> "Automorphism":
        out = Automorphism(self.n, False, 0, 1)
        for _ in range(k % self.order()):
            out = out @ self
        return out

    def order(self) -> int:
        if self.swap:
            return 2
        from math import gcd

        base = self.n // gcd(self.n, self.j)
        return base if self.eps == 1 or base % 2 == 0 else 2 * base

    def is_identity(self) -> bool:
        return not self.swap and self.j == 0 and self.eps == 1

    def action(self) -> dict[str, MPoly]:
        cz = self.c
        ci = root_of_unity(self.n, -self.j)
        if self.swap:
            xs, zs = z.scale(cz), x.scale(ci)
        else:
            xs, zs = x.scale(cz), z.scale(ci)
        return {"x": xs, "y": y, "z": zs, "w": w.scale(self.eps)}

    def affine_action(self) -> dict[str, MPoly]:
        act = self.action()
        del act["y"]
        return act

    def matrix(self):
        """2x2 matrix acting on the column (x, z)."""
        zero = CycloNum.coerce(0)
        if self.swap:
            return ((zero, self.c), (root_of_unity(self.n, -self.j), zero))
        return ((self.c, zero), (zero, root_of_unity(self.n, -self.j)))


def alpha(n: int, k: int = 1) -> Automorphism:
    return Automorphism(n, False, k)


def beta(n: int) -> Automorphism:
    return Automorphism(n, True, 0)


def gamma(n: int) -> Automorphism:
    return Automorphism(n, False, 0, -1)


def generate_group(gens) -> list[Automorphism]:
    gens = list(gens)
    n = gens[0].n
    seen = {Automorphism(n, False, 0, 1)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                k = g @ h
                if k not in seen:
                    seen.add(k)
                    nxt.append(k)
        frontier = nxt
    return sorted(seen, key=lambda g: (g.swap, g.j, -g.eps))


def compose_actions(outer: dict, inner: dict) -> dict:
    """Coordinates of outer(inner(p))."""
    return {v: e.subs(inner) for v, e in outer.items()}


def _action_key(act: dict) -> tuple:
    return tuple(str(act[v]) for v in ("x", "y", "z", "w"))


@dataclass
class GroupReport:
    n: int
    checks: dict = field(default_factory=dict)
    order: int = 0

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def verify_automorphisms(n: int) -> GroupReport:
    """Check invariance and the defining relations on coordinates."""
    fam = build_family(n)
    rel = w ** 2 - y ** 2 + x * z
    a, b, g = alpha(n).action(), beta(n).action(), gamma(n).action()
    ident = {"x": x, "y": y, "z": z, "w": w}
    rep = GroupReport(n)

    def check(word, ok):
        rep.checks[word] = bool(ok)
        if not ok:
            raise RelationFailed(word)

    for nm, act in (("alpha", a), ("beta", b), ("gamma", g)):
        check(f"f o {nm} = f", fam.f.subs(act) == fam.f)
        check(f"cover relation o {nm} = cover relation", rel.subs(act) == rel)
    an = ident
    for _ in range(n):
        an = compose_actions(a, an)
    check("alpha^n = id", _action_key(an) == _action_key(ident))
    check("beta^2 = id", _action_key(compose_actions(b, b)) == _action_key(ident))
    check("gamma^2 = id", _action_key(compose_actions(g, g)) == _action_key(ident))
    bab = compose_actions(b, compose_actions(a, b))
    ainv = ident
    for _ in range(n - 1):
        ainv = compose_actions(a, ainv)
    check("beta alpha beta = alpha^-1", _action_key(bab) == _action_key(ainv))
    for nm, act in (("alpha", a), ("beta", b)):
        check(
            f"gamma {nm} = {nm} gamma",
            _action_key(compose_actions(g, act)) == _action_key(compose_actions(act, g)),
        )
    if n % 2 == 0:
        # every reflection beta alpha^j is an involution, in particular the
        # one fixing x + zeta_{2^k}^{-1} z
        for j in range(n):
            aj = ident
            for _ in range(j):
                aj = compose_actions(a, aj)
            ba = compose_actions(b, aj)
            check(f"(beta alpha^{j})^2 = id", _action_key(compose_actions(ba, ba)) == _action_key(ident))
    # closure of the three generators on coordinates
    seen = {_action_key(ident): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for act in frontier:
            for gen in (a, b, g):
                new = compose_actions(gen, act)
                key = _action_key(new)
                if key not in seen:
                    seen[key] = new
                    nxt.append(new)
        frontier = nxt
    rep.order = len(seen)
    check("group order = 4n", rep.order == 4 * n)
    # the symbolic composition law agrees with coordinate composition
    for h1 in (alpha(n), beta(n), gamma(n), alpha(n, 2) @ beta(n)):
        for h2 in (alpha(n), beta(n), gamma(n)):
            lhs = (h1 @ h2).action()
            rhs = compose_actions(h1.action(), h2.action())
            check(f"compose {h1.name} o {h2.name}", _action_key(lhs) == _action_key(rhs))
    return rep


# -- nodes --------------------------------------------------------------------

@dataclass
class NodeCertificate:
    index: int
    point: tuple
    vanishes: bool
    gradient_vanishes: bool
    hessian_det: MPoly
    witness_params: dict
    witness_value: object

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "point": [str(c) for c in self.point],
            "vanishes": self.vanishes,
            "gradient_vanishes": self.gradient_vanishes,
            "hessian_det": str(self.hessian_det),
            "witness_params": {k: str(v) for k, v in self.witness_params.items()},
            "witness_value": str(self.witness_value),
        }


def hessian_at(n: int, point) -> tuple:
    """(f_xx, f_xz, f_zz) of the affine equation at a point of the y = 1 chart."""
    fh = build_family(n).f_hat
    px, _, pz = point
    at = {"x": MPoly.const(px), "z": MPoly.const(pz)}
    fx, fz = fh.derivative("x"), fh.derivative("z")
    return (
        fx.derivative("x").subs(at),
        fx.derivative("z").subs(at),
        fz.derivative("z").subs(at),
    )


def certify_nodes(n: int, params: dict | None = None) -> list[NodeCertificate]:
    fam = build_family(n)
    params = sample_params(n) if params is None else params
    grads = [fam.f.derivative(v) for v in ("x", "y", "z")]
    certs = []
    for i, pt in enumerate(fam.nodes):
        at = {"x": MPoly.const(pt[0]), "y": MPoly.const(pt[1]), "z": MPoly.const(pt[2])}
        van = fam.f.subs(at).is_zero()
        gvan = all(gr.subs(at).is_zero() for gr in grads)
        if not (van and gvan):
            raise NotSingular(f"P_{i} is not a singular point")
        hxx, hxz, hzz = hessian_at(n, pt)
        det = hxx * hzz - hxz * hxz
        val = det.subs(params)
        if val.is_zero():
            raise NotOrdinary(f"P_{i}: Hessian determinant vanishes at {params}")
        certs.append(NodeCertificate(i, pt, van, gvan, det, dict(params), val.const_value()))
    return certs


@dataclass
class BlowupShape:
    n: int
    f_local: MPoly
    p0: MPoly
    p1: MPoly
    q: MPoly
    chart_symmetric: bool

    def to_json(self) -> dict:
        return {"n": self.n, "p0": str(self.p0), "p1": str(self.p1), "chart_symmetric": self.chart_symmetric}


def blowup_node(n: int) -> BlowupShape:
    """Blow up P_0 = (1:1:1): f(1+x1, 1, 1+x1*s) = x1^2 * f_local(x1, s)."""
    fh = build_family(n).f_hat
    x1, s = symbols("x1 s")
    lifted = fh.subs({"x": 1 + x1, "z": 1 + x1 * s})
    try:
        f_local = exact_divide(lifted, x1 ** 2)
    except NotDivisible as exc:
        raise NotDivisibleByX1Squared(str(exc.remainder)) from None
    at0 = f_local.subs({"x1": 0})
    if at0.degree("s") != 2:
        raise PalindromeFailed(f"exceptional polynomial has degree {at0.degree('s')} in s")
    p0, p1, p2 = (at0.coeff("s", k) for k in range(3))
    if p0 != p2 or p0.is_zero() or p1.is_zero():
        raise PalindromeFailed(f"p0={p0}, p1={p1}, p2={p2}")
    q = exact_divide(f_local - at0, x1)
    # the other chart x - 1 = (z - 1)*t, written directly in the names (x1, s)
    other = exact_divide(fh.subs({"x": 1 + x1 * s, "z": 1 + x1}), x1 ** 2)
    sym = other == f_local
    return BlowupShape(n, f_local, p0, p1, q, sym)


# -- smoothness -----------------------------------------------------------------

@dataclass
class SmoothnessReport:
    n: int
    params: dict
    status: str  # pass | fail | skipped
    singular_x_polynomial: str = ""
    nodes_found: int = 0
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "params": {k: str(v) for k, v in self.params.items()},
            "status": self.status,
            "singular_x_polynomial": self.singular_x_polynomial,
            "nodes_found": self.nodes_found,
            "detail": self.detail,
        }


def smoothness_scan(n: int, params: dict | None = None, budget: int = 200) -> SmoothnessReport:
    """Find all singular points at a rational parameter point; pass iff they are the n nodes."""
    fam = build_family(n)
    params = sample_params(n) if params is None else params
    missing = [p for p in fam.params if p not in params]
    if missing:
        raise ValueError(f"smoothness_scan needs values for {missing}")
    if n * (n - 1) > budget:
        return SmoothnessReport(n, params, "skipped", detail=f"eliminant degree {n * (n - 1)} over budget {budget}")
    fh = fam.f_hat.subs(params)
    fx, fz = fh.derivative("x"), fh.derivative("z")
    r1 = resultant(fh, fz, "z")
    r2 = resultant(fx, fz, "z")
    g = upoly_gcd(r1.univariate("x"), r2.univariate("x"))
    sq = squarefree_part(g) if len(g) > 1 else g
    target = [mpq(-1)] + [mpq(0)] * (n - 1) + [mpq(1)]
    text = str(MPoly.from_univariate(sq, "x"))
    if len(sq) != len(target) or any(c != d for c, d in zip(sq, target)):
        return SmoothnessReport(n, params, "fail", text, detail="x-projection of the singular locus is not x^n - 1")
    found = 0
    for i, (px, _, pz) in enumerate(fam.nodes):
        polys = [p.subs({"x": MPoly.const(px)}).univariate("z") for p in (fh, fx, fz)]
        gz = upoly_gcd(upoly_gcd(polys[0], polys[1]), polys[2])
        expect = [-pz, CycloNum.coerce(1)]
        if len(gz) != 2 or gz[0] != expect[0]:
            return SmoothnessReport(n, params, "fail", text, found, detail=f"unexpected singular fibre over x=zeta^{i}")
        found += 1
    # the line at infinity y = 0 in the chart z = 1 (the point (1:0:0) is not on the curve)
    fy0 = fam.f.subs({**params, "y": 0, "z": 1})
    parts = [fam.f.derivative(v).subs({**params, "y": 0, "z": 1}) for v in ("x", "y", "z")]
    gi = fy0.univariate("x")
    for p in parts:
        gi = upoly_gcd(gi, p.univariate("x") if not p.is_zero() else [])
    if len(gi) > 1:
        return SmoothnessReport(n, params, "fail", text, found, detail="singular point at infinity")
    if distinct_root_count(fy0.univariate("x")) != n:
        return SmoothnessReport(n, params, "fail", text, found, detail="points at infinity collide")
    return SmoothnessReport(n, params, "pass", text, found)
