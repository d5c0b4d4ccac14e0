"""Invariant coordinates for the quotient curves and the models they cut out.

beta:        u = x + z,      v = xz,  g_n(u, v) = P_n(u, v) + tail
beta*alpha^m u = x + c z,    v = xz,  h_n(u, v) = Q_n(u, v) + tail,  c = zeta_{2^k}^-1
alpha:       t = xz,         s = x^n, s^2 + A(t) s + t^n = 0
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from gmpy2 import mpq

from ..cyclo import CycloNum, root_of_unity
from ..curves import Automorphism, build_family, sample_params
from ..elim import (
    NotDivisible,
    distinct_root_count,
    exact_divide,
    normal_form,
    solve_linear,
)
from ..mpoly import MPoly, substitute, symbols

__all__ = [
    "NoSolution",
    "DivisibilityFailed",
    "DegreeMismatch",
    "IdentityFailed",
    "InvarianceFailed",
    "MembershipFailed",
    "QuotientModel",
    "AlphaQuotient",
    "two_adic_split",
    "sigma",
    "newton_P",
    "twisted_Q",
    "parameter_tail",
    "A_poly",
    "quotient_alpha",
    "quotient_beta",
    "quotient_beta_alpha",
    "quotient_w4",
    "W4_DISPLAY",
]

x, z, w, u, v, s, t = symbols("x z w u v s t")


class NoSolution(AssertionError):
    pass


class DivisibilityFailed(AssertionError):
    pass


class DegreeMismatch(AssertionError):
    pass


class IdentityFailed(AssertionError):
    def __init__(self, message, residue=None):
        super().__init__(message)
        self.residue = residue


class InvarianceFailed(AssertionError):
    pass


class MembershipFailed(AssertionError):
    def __init__(self, message, residue=None):
        super().__init__(message)
        self.residue = residue


@dataclass
class QuotientModel:
    name: str
    equation: MPoly
    variables: tuple
    genus: int | None = None
    provenance: list = field(default_factory=list)

    def __post_init__(self):
        if self.equation.is_zero():
            raise ValueError(f"{self.name}: zero equation")

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "equation": str(self.equation),
            "variables": list(self.variables),
            "genus": self.genus,
            "provenance": list(self.provenance),
        }


def two_adic_split(n: int) -> tuple[int, int]:
    """n = 2^k * m with m odd."""
    k = 0
    while n % 2 == 0:
        n //= 2
        k += 1
    return k, n


def sigma(n: int) -> Automorphism:
    """The involution (x:y:z) -> (c z : y : c^-1 x) with c = zeta_{2^k}^-1, i.e. beta*alpha^m."""
    k, m = two_adic_split(n)
    if k == 0:
        raise ValueError("sigma needs even n")
    return Automorphism(n, True, -m)


@lru_cache(maxsize=None)
def newton_P(n: int) -> MPoly:
    """P_n(u, v) with P_n(x + z, xz) = x^n + z^n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    prev, cur = MPoly.const(2), u
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, u * cur - v * prev
    return cur


def _solve_weighted(n: int, c: CycloNum, X: str, Y: str) -> MPoly:
    # ansatz sum b_j X^(n-2j) Y^j, matched against x^n + z^n after X = x + c z, Y = xz
    js = list(range(n // 2 + 1))
    lin = x + z.scale(c)
    cols = [(lin ** (n - 2 * j)) * (x * z) ** j for j in js]
    target = x ** n + z ** n
    rows, rhs = [], []
    for a in range(n + 1):
        mono = {"x": a, "z": n - a}
        rows.append([_coeff_of(col, mono) for col in cols])
        rhs.append(_coeff_of(target, mono))
    sol = solve_linear(rows, rhs)
    if sol is None:
        raise NoSolution(f"no weighted invariant of degree {n} for c = {c}")
    out = MPoly()
    for j, b in zip(js, sol):
        if b:
            out = out + MPoly.monomial(b, {X: n - 2 * j, Y: j})
    return out


def _coeff_of(f: MPoly, mono: dict):
    c = f.coeff("x", mono["x"]).coeff("z", mono["z"])
    return c.const_value() if not c.is_zero() else mpq(0)


@lru_cache(maxsize=None)
def twisted_Q(n: int, c: CycloNum | None = None, names: tuple = ("u", "v")) -> MPoly:
    """Q_n with Q_n(x + c z, xz) = x^n + z^n, by undetermined coefficients.

    The default c is zeta_{2^k}^-1 where 2^k is the exact power of two in n.
    """
    if c is None:
        k, _ = two_adic_split(n)
        if k == 0:
            raise ValueError("twisted_Q needs even n")
        c = root_of_unity(2 ** k, -1)
    X, Y = names
    q = _solve_weighted(n, c, X, Y)
    check = substitute(q, {X: x + z.scale(c), Y: x * z}).num
    if check != x ** n + z ** n:
        raise NoSolution(f"substitution identity fails for n = {n}")
    return q


def parameter_tail(n: int, var: MPoly = v) -> MPoly:
    """(n-2) - n v + sum a_i (v^i - i v + i - 1)."""
    out = (n - 2) - n * var
    for i in range(2, n // 2 + 1):
        out = out + MPoly.var(f"a{i}") * (var ** i - i * var + (i - 1))
    return out


def A_poly(n: int) -> MPoly:
    """A(t) = n(1-t) - 2 + sum a_i (t^i - i t + i - 1)."""
    out = n * (1 - t) - 2
    for i in range(2, n // 2 + 1):
        out = out + MPoly.var(f"a{i}") * (t ** i - i * t + (i - 1))
    return out


def _cover_version(g: MPoly) -> MPoly:
    return g.subs({"v": 1 - w ** 2})


@dataclass
class AlphaQuotient:
    n: int
    raw: MPoly
    A: MPoly
    f0: MPoly
    X_model: QuotientModel
    Xtilde_model: QuotientModel
    Etilde_model: QuotientModel
    separable_at: dict
    witness_roots: int

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "A": str(self.A),
            "f0": str(self.f0),
            "models": [m.to_json() for m in (self.X_model, self.Xtilde_model, self.Etilde_model)],
            "separable_at": {k: str(val) for k, val in self.separable_at.items()},
        }


@lru_cache(maxsize=None)
def quotient_alpha(n: int) -> AlphaQuotient:
    fam = build_family(n)
    A = A_poly(n)
    raw = s ** 2 + s * A + t ** n
    # s = x^n, t = xz pulls the raw model back to x^n * f_hat
    back = substitute(raw, {"s": x ** n, "t": x * z}).num
    if back != x ** n * fam.f_hat:
        raise IdentityFailed("s^2 + A s + t^n does not pull back to x^n f_hat")
    num = A * A * mpq(1, 4) - t ** n
    try:
        f0 = exact_divide(num, (t - 1) ** 2)
    except NotDivisible as exc:
        raise DivisibilityFailed("A^2/4 - t^n is not divisible by (t-1)^2") from exc
    if f0.degree("t") != n - 2:
        raise DegreeMismatch(f"deg f0 = {f0.degree('t')}, expected {n - 2}")
    params = sample_params(n)
    spec = f0.subs(params)
    roots = distinct_root_count(spec.univariate("t"))
    if roots != n - 2:
        raise DegreeMismatch(f"f0 is not separable at {params}")
    trace = [
        "s = x^n, t = xz: s^2 + A(t)s + t^n = x^n f_hat",
        "u = (s + A/2)/(t - 1): u^2 = (A^2/4 - t^n)/(t - 1)^2 = f0(t)",
    ]
    U, W = symbols("U W")
    Xm = QuotientModel(f"X_{n}", u ** 2 - f0, ("u", "t"), provenance=trace)
    Xt = QuotientModel(
        f"Xtilde_{n}", u ** 2 - f0.subs({"t": 1 - w ** 2}), ("u", "w"),
        provenance=trace + ["t = 1 - w^2"],
    )
    Et = QuotientModel(
        f"Etilde_{n}", U ** 2 - W * f0.subs({"t": 1 - W}), ("U", "W"),
        provenance=trace + ["t = 1 - w^2", "(W, U) = (w^2, u w), quotient by w -> -w"],
    )
    return AlphaQuotient(n, raw, A, f0, Xm, Xt, Et, params, roots)


def _check_identity(name: str, g: MPoly, lin: MPoly, n: int):
    fam = build_family(n)
    back = substitute(g, {"u": lin, "v": x * z}).num
    if back != fam.f_hat:
        raise IdentityFailed(f"{name}(u, xz) differs from f_hat", residue=back - fam.f_hat)


@lru_cache(maxsize=None)
def quotient_beta(n: int) -> tuple[QuotientModel, QuotientModel]:
    """Y_n: g_n(u, v) = 0 and Ytilde_n: g_n(u, 1 - w^2) = 0."""
    g = newton_P(n) + parameter_tail(n)
    _check_identity("g", g, x + z, n)
    trace = ["u = x + z, v = xz", "g(x + z, xz) = f_hat checked"]
    Y = QuotientModel(f"Y_{n}", g, ("u", "v"), provenance=trace)
    Yt = QuotientModel(f"Ytilde_{n}", _cover_version(g), ("u", "w"), provenance=trace + ["v = 1 - w^2"])
    return Y, Yt


def _invariance(n: int, auto: Automorphism, lin: MPoly):
    act = auto.affine_action()
    for name, inv in (("u", lin), ("v", x * z)):
        if inv.subs(act) != inv:
            raise InvarianceFailed(f"{name} is not invariant under {auto.name}")


@lru_cache(maxsize=None)
def quotient_beta_alpha(n: int, rescaled: bool = False) -> tuple[QuotientModel, QuotientModel]:
    """Z_n: h_n(u, v) = 0 and Ztilde_n: h_n(u, 1 - w^2) = 0.

    With ``rescaled`` the variable u is replaced by zeta_{2^(k+1)}^3 u (used for the
    printed n = 8 form with rational u-part).
    """
    k, m = two_adic_split(n)
    if k == 0 or n < 6:
        raise ValueError("quotient_beta_alpha needs even n >= 6")
    auto = sigma(n)
    c = auto.c
    lin = x + z.scale(c)
    _invariance(n, auto, lin)
    h = twisted_Q(n) + parameter_tail(n)
    _check_identity("h", h, lin, n)
    trace = [f"u = x + ({c}) z, v = xz, invariant under {auto.name}", "h(u, xz) = f_hat checked"]
    if rescaled:
        r = root_of_unity(2 ** (k + 1), 3)
        h = h.subs({"u": u.scale(r)})
        trace.append(f"u -> ({r}) u")
    tag = "_rescaled" if rescaled else ""
    Z = QuotientModel(f"Z_{n}{tag}", h, ("u", "v"), provenance=trace)
    Zt = QuotientModel(f"Ztilde_{n}{tag}", _cover_version(h), ("u", "w"), provenance=trace + ["v = 1 - w^2"])
    return Z, Zt


W4_DISPLAY = "4*u^2 + u^4 - 4*u^2*w^2 + 2*w^4 + a2*w^4"


@lru_cache(maxsize=None)
def quotient_w4(params: tuple = ()) -> QuotientModel:
    """Wtilde_4 for the involution beta*alpha^2 : (x:y:z) -> (-z:y:-x).

    The model is derived from the weighted invariant with c = -1 and checked to
    lie in the ideal of the cover by reduction.
    """
    from ..mpoly import parse_poly

    n = 4
    auto = Automorphism(n, True, 2)
    lin = x - z
    _invariance(n, auto, lin)
    h = twisted_Q(n, CycloNum.coerce(-1)) + parameter_tail(n)
    _check_identity("h", h, lin, n)
    model = _cover_version(h)
    display = parse_poly(W4_DISPLAY)
    if model != display:
        raise MembershipFailed("derived W4 model differs from the stored display", residue=model - display)
    spec = dict(params)
    rels = [(r.subs(spec), var) for r, var in _cover_relations(n)]
    res = normal_form(display.subs(spec).subs({"u": lin}), rels)
    if not res.is_zero():
        raise MembershipFailed("W4 equation is not in the cover ideal", residue=res)
    return QuotientModel(
        "Wtilde_4", model, ("u", "w"), genus=None,
        provenance=["u = x - z, w^2 = 1 - xz", "reduces to 0 modulo w^2 - 1 + xz and f_4(x,1,z)"],
    )


def _cover_relations(n: int):
    from ..curves import build_cover

    return build_cover(n).relations
