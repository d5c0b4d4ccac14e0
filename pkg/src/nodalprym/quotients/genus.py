"""Fixed points of automorphisms on the smooth models of C_n and its cover,
and quotient genera from the Hurwitz formula.

Points of the smooth model of C_n:
  * smooth points of the affine chart y = 1,
  * the n points at infinity (r : 0 : 1), r^n = -1,
  * two branch points over each node.
The cover w^2 = y^2 - xz has two points over every smooth point (xz = 1 on the
curve only at nodes) and one ramification point over each branch.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from ..curves import (
    Automorphism,
    alpha,
    beta,
    build_family,
    certify_nodes,
    gamma,
    generate_group,
    hessian_at,
    sample_params,
)
from ..cyclo import root_of_unity
from ..elim import bareiss_det, distinct_root_count, squarefree_part, upoly_divmod, upoly_eval
from ..mpoly import MPoly
from .invariants import sigma

__all__ = [
    "NonIntegralGenus",
    "FactorizationShapeFailed",
    "FixedPointData",
    "fixed_points",
    "fixed_point_data",
    "hurwitz_genus",
    "quotient_genus",
    "hyperelliptic_genus",
    "QuotientSpec",
    "diagram_specs",
    "genus_diagram",
    "base_genus",
    "cover_genus",
    "closed_form_genera",
]


class NonIntegralGenus(ArithmeticError):
    pass


class FactorizationShapeFailed(AssertionError):
    pass


@dataclass
class FixedPointData:
    auto: str
    level: str
    count: int
    affine: int
    infinity: int
    branches: int
    certificate: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "auto": self.auto,
            "level": self.level,
            "count": self.count,
            "affine": self.affine,
            "infinity": self.infinity,
            "branches": self.branches,
            "certificate": self.certificate,
        }


def _const(p: MPoly):
    return p.const_value() if not p.is_zero() else 0


def _binary_resultant(q1, q2):
    """Homogeneous resultant of two binary quadratics given as (a, b, c) for a d1^2 + b d1 d2 + c d2^2."""
    rows = [
        [q1[0], q1[1], q1[2], 0],
        [0, q1[0], q1[1], q1[2]],
        [q2[0], q2[1], q2[2], 0],
        [0, q2[0], q2[1], q2[2]],
    ]
    return _const(bareiss_det([[MPoly.const(e) for e in r] for r in rows]))


def _fixed_branches(n: int, auto: Automorphism, node, params) -> int:
    """0 or 2: an automorphism fixing a node either fixes or swaps its two branches."""
    hxx, hxz, hzz = (_const(h.subs(params)) for h in hessian_at(n, node))
    tangent = (hxx, 2 * hxz, hzz)
    (m11, m12), (m21, m22) = auto.matrix()
    # det(d, M d) = d1 (m21 d1 + m22 d2) - d2 (m11 d1 + m12 d2)
    eig = (m21, m22 - m11, -m12)
    if all(not e for e in eig):
        return 2
    return 2 if not _binary_resultant(tangent, eig) else 0


def _nodes_fixed(n: int, auto: Automorphism) -> list[int]:
    if auto.swap:
        return [i for i in range(n) if (2 * i - auto.j) % n == 0]
    return list(range(n)) if auto.j == 0 else []


def _affine_swap_points(n: int, auto: Automorphism, params) -> tuple[int, dict]:
    fh = build_family(n).f_hat.subs(params)
    c = auto.c
    phi = fh.subs({"x": MPoly.var("z").scale(c)}).univariate("z")
    rest = phi
    on_line = _nodes_fixed(n, auto)
    for i in on_line:
        zi = root_of_unity(n, -i)
        q, r = upoly_divmod(rest, [-zi, 1])
        q2, r2 = upoly_divmod(q, [-zi, 1])
        if r or r2:
            raise FactorizationShapeFailed(f"node {i} is not a double root on the fixed line")
        rest = q2
    for i in on_line:
        if not upoly_eval(rest, root_of_unity(n, -i)):
            raise FactorizationShapeFailed(f"fixed line is tangent to a branch at node {i}")
    count = distinct_root_count(rest)
    if count != len(rest) - 1:
        raise FactorizationShapeFailed("residual factor on the fixed line is not squarefree")
    return count, {"line_nodes": on_line, "residual_degree": len(rest) - 1}


def _infinity_points(n: int, auto: Automorphism, cover: bool) -> int:
    if auto.swap:
        # (r:0:1) -> (c^2/r : 0 : 1), w -> eps*c/r*w ; fixed iff r = lam*c, lam^2 = 1
        out = 0
        for lam in (1, -1):
            if lam ** n + 1 != 0:  # (lam c)^n = lam^n since c^n = 1
                continue
            if not cover:
                out += 1
            elif lam * auto.eps == 1:
                out += 2
        return out
    zj = root_of_unity(n, auto.j)
    if zj * zj != 1:
        return 0
    if not cover:
        return n
    return 2 * n if zj * auto.eps == 1 else 0


def fixed_points(auto: Automorphism, level: str = "base", params: dict | None = None) -> FixedPointData:
    """Number of fixed points of a nontrivial automorphism on the smooth base or cover model."""
    n = auto.n
    cover = level == "cover"
    params = sample_params(n) if params is None else params
    base_trivial = not auto.swap and auto.j == 0
    if base_trivial:
        if not cover or auto.eps == 1:
            raise ValueError("the identity has no finite fixed-point set")
        nodes = len(certify_nodes(n, params))
        return FixedPointData(auto.name, level, 2 * nodes, 0, 0, 2 * nodes, {"ramification": "w = 0"})
    cert: dict = {"params": {k: str(val) for k, val in params.items()}}
    if auto.swap:
        aff, info = _affine_swap_points(n, auto, params)
        cert.update(info)
    else:
        f00 = build_family(n).f_hat.subs(params).subs({"x": 0, "z": 0})
        if f00.is_zero():
            raise FactorizationShapeFailed("origin lies on the curve")
        aff = 0
    if cover:
        aff = 2 * aff if auto.eps == 1 else 0
    inf = _infinity_points(n, auto, cover)
    br = 0
    for i in _nodes_fixed(n, auto):
        node = build_family(n).nodes[i]
        br += _fixed_branches(n, auto, node, params)
    cert["fixed_nodes"] = _nodes_fixed(n, auto)
    return FixedPointData(auto.name, level, aff + inf + br, aff, inf, br, cert)


def fixed_point_data(n: int, auto: str, level: str = "base") -> FixedPointData:
    """Named entry point: auto in {beta, beta_alpha, alpha_half}."""
    if auto == "beta":
        g = beta(n)
    elif auto == "beta_alpha":
        g = sigma(n) if n != 4 else Automorphism(4, True, 2)
    elif auto == "alpha_half":
        if n % 2:
            raise ValueError("alpha_half needs even n")
        g = alpha(n, n // 2)
    else:
        raise ValueError(f"unknown automorphism {auto!r}")
    return fixed_points(g, level)


def hurwitz_genus(g_source: int, degree: int, ramification_count: int) -> int:
    """Solve 2 g_s - 2 = d (2 g_t - 2) + r for g_t."""
    num = 2 * g_source - 2 - ramification_count
    if num % (2 * degree):
        raise NonIntegralGenus(f"({g_source}, {degree}, {ramification_count}) gives a non-integral genus")
    g = num // (2 * degree) + 1
    if g < 0:
        raise NonIntegralGenus(f"negative genus from ({g_source}, {degree}, {ramification_count})")
    return g


@lru_cache(maxsize=None)
def base_genus(n: int) -> int:
    """Arithmetic genus minus the certified nodes (for n = 4 the model is two conics and this is 1 - chi/2)."""
    nodes = certify_nodes(n)
    return (n - 1) * (n - 2) // 2 - len(nodes)


@lru_cache(maxsize=None)
def cover_genus(n: int) -> int:
    """Hurwitz for the double cover branched at the fixed points of gamma."""
    r = fixed_points(gamma(n), "cover").count
    g = 2 * (2 * base_genus(n) - 2) + r
    if g % 2:
        raise NonIntegralGenus("odd ramification on the cover")
    return g // 2 + 1


def _hurwitz_group(g_top: int, group: list, level: str) -> tuple[int, int]:
    total = sum(fixed_points(h, level).count for h in group if not h.is_identity())
    num = 2 * g_top - 2 - total
    order = len(group)
    if num % (2 * order):
        raise NonIntegralGenus(f"group of order {order}: 2g-2-R = {num}")
    return num // (2 * order) + 1, total


def quotient_genus(n: int, gens, level: str = "cover") -> int:
    """Genus of the quotient of the smooth base (or cover) model by the group generated by gens."""
    gens = list(gens)
    if level == "base":
        gens = [Automorphism(g.n, g.swap, g.j, 1) for g in gens]
        group = [h for h in generate_group(gens)]
        return _hurwitz_group(base_genus(n), group, "base")[0]
    return _hurwitz_group(cover_genus(n), generate_group(gens), "cover")[0]


def hyperelliptic_genus(rhs: MPoly, var: str, params: dict | None = None) -> int:
    """floor((d - 1)/2) for y^2 = F(var), F squarefree at the sample parameters."""
    spec = rhs.subs(params or {})
    coeffs = spec.univariate(var)
    d = len(coeffs) - 1
    if len(squarefree_part(coeffs)) - 1 != d:
        raise FactorizationShapeFailed("right-hand side is not squarefree at the sample point")
    return (d - 1) // 2


@dataclass(frozen=True)
class QuotientSpec:
    name: str
    level: str
    gens: tuple


def diagram_specs(n: int) -> list[QuotientSpec]:
    """All quotients appearing in the genus diagrams for this n."""
    a, b, g = alpha(n), beta(n), gamma(n)
    out = [
        QuotientSpec("X", "base", (a,)),
        QuotientSpec("Xtilde", "cover", (a,)),
        QuotientSpec("Etilde", "cover", (a, b @ g)),
        QuotientSpec("Y", "base", (b,)),
        QuotientSpec("Ytilde", "cover", (b,)),
    ]
    if n == 4:
        s = Automorphism(4, True, 2)
        out += [QuotientSpec("W", "base", (s,)), QuotientSpec("Wtilde", "cover", (s,))]
    elif n % 2 == 0:
        s = sigma(n)
        h = alpha(n, n // 2)
        out += [
            QuotientSpec("Z", "base", (s,)),
            QuotientSpec("Ztilde", "cover", (s,)),
            QuotientSpec("Ytilde/tau1", "cover", (b, h)),
            QuotientSpec("Ytilde/tau2", "cover", (b, h @ g)),
            QuotientSpec("Ytilde/H", "cover", (b, h, g)),
            QuotientSpec("Ztilde/sigma1", "cover", (s, h)),
            QuotientSpec("Ztilde/sigma2", "cover", (s, h @ g)),
            QuotientSpec("Ztilde/H", "cover", (s, h, g)),
        ]
    return out


@lru_cache(maxsize=None)
def genus_diagram(n: int) -> dict[str, int]:
    """Genera of C, Ctilde and every diagram quotient, from fixed points and Hurwitz only."""
    out = {"C": base_genus(n), "Ctilde": cover_genus(n)}
    for spec in diagram_specs(n):
        out[spec.name] = quotient_genus(n, spec.gens, spec.level)
    return out


def closed_form_genera(n: int) -> dict[str, int]:
    """The general-n genus formulas for C, Ctilde and the alpha and beta quotients (n >= 5)."""
    if n < 5:
        raise ValueError("the closed forms need n >= 5")
    out = {
        "C": (n * n - 5 * n + 2) // 2,
        "Ctilde": n * n - 4 * n + 1,
        "X": (n - 3) // 2,
        "Xtilde": n - 3,
        "Etilde": (n - 2) // 2,
    }
    if n % 2:
        out["Y"], out["Ytilde"] = (n - 1) * (n - 5) // 4, (n - 1) * (n - 4) // 2
    else:
        out["Y"], out["Ytilde"] = (n - 2) * (n - 4) // 4, (n - 2) * (n - 3) // 2
    return out
