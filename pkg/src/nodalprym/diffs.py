"""Bases of holomorphic differentials on C_n and its double cover, and the
pullback actions of the automorphism group on them.

Every basis element is a polynomial multiplier M(x, z) of a gauge form:
dx/f_z on the base and dx/(w f_z) on the cover (chart y = 1, f = f_hat).

    Omega(r, s)       (xz - 1) x^r z^s       r + s <= n - 5      base
    Theta(i)          x^i - z^(n-i)          3 <= i <= n - 3     base
    TildeOmega(r, s)  (1 - xz) x^r z^s       r + s <= n - 4      cover, = w x^r z^s dx/f_z
    TildeTheta(i)     x^i - z^(n-i)          2 <= i <= n - 2     cover

Pullbacks are computed on these representatives: g^*(M dx/(w f_z)) is
(M o g) R dx/(w f_z) with R = (x'_x f_z - x'_z f_x) / (eps f_z o g), using
dz = -(f_x/f_z) dx. For the automorphisms here R is a constant; the image is
then written back in the basis by sparse elimination.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from .curves import Automorphism, alpha, beta, build_cover, build_family, gamma
from .cyclo import CycloNum, format_cyclo, root_of_unity
from .elim import normal_form, rank
from .mpoly import MPoly, format_poly
from .quotients.birational import proportionality

__all__ = [
    "CountMismatch",
    "RouteMismatch",
    "DimensionMismatch",
    "GaugeNotConstant",
    "NotSignedPermutation",
    "DiffIndex",
    "DiffElement",
    "basis_indices",
    "basis",
    "basis_counts",
    "prym_pair_count",
    "pullback",
    "action_images",
    "signed_permutation",
    "EigenReport",
    "eigenspace_table",
    "ehat_basis",
]

x, z, w = MPoly.var("x"), MPoly.var("z"), MPoly.var("w")


class CountMismatch(AssertionError):
    pass


class RouteMismatch(AssertionError):
    pass


class DimensionMismatch(AssertionError):
    pass


class GaugeNotConstant(AssertionError):
    pass


class NotSignedPermutation(AssertionError):
    pass


KINDS = ("Omega", "Theta", "TildeOmega", "TildeTheta")


@dataclass(frozen=True, order=True)
class DiffIndex:
    kind: str
    a: int
    b: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind.endswith("Omega") and self.b is None:
            raise ValueError("Omega indices need two integers")

    @property
    def level(self) -> str:
        return "cover" if self.kind.startswith("Tilde") else "base"

    def valid_for(self, n: int) -> bool:
        if self.kind == "Omega":
            return self.a >= 0 and self.b >= 0 and self.a + self.b <= n - 5
        if self.kind == "Theta":
            return 3 <= self.a <= n - 3
        if self.kind == "TildeOmega":
            return self.a >= 0 and self.b >= 0 and self.a + self.b <= n - 4
        return 2 <= self.a <= n - 2

    def multiplier(self, n: int) -> MPoly:
        if self.kind == "Omega":
            return (x * z - 1) * x ** self.a * z ** self.b
        if self.kind == "TildeOmega":
            return (1 - x * z) * x ** self.a * z ** self.b
        return x ** self.a - z ** (n - self.a)

    def __str__(self):
        if self.b is None:
            return f"{self.kind}({self.a})"
        return f"{self.kind}({self.a},{self.b})"


def _is_zero(c) -> bool:
    return not c


@dataclass
class DiffElement:
    """A formal combination of basis indices, optionally with its multiplier."""

    n: int
    coeffs: dict
    multiplier: MPoly | None = None

    def __post_init__(self):
        self.coeffs = {k: v for k, v in self.coeffs.items() if not _is_zero(v)}
        levels = {k.level for k in self.coeffs}
        if len(levels) > 1:
            raise ValueError("a differential lives on one level")
        for k in self.coeffs:
            if not k.valid_for(self.n):
                raise ValueError(f"{k} is not a basis index for n = {self.n}")

    @classmethod
    def basis_element(cls, n: int, idx: DiffIndex) -> "DiffElement":
        return cls(n, {idx: CycloNum.coerce(1)}, idx.multiplier(n))

    @property
    def level(self) -> str:
        return next(iter(self.coeffs)).level if self.coeffs else "cover"

    def formal_multiplier(self) -> MPoly:
        out = MPoly()
        for k, c in self.coeffs.items():
            out = out + k.multiplier(self.n).scale(c)
        return out

    def concrete(self) -> MPoly:
        return self.multiplier if self.multiplier is not None else self.formal_multiplier()

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "DiffElement") -> "DiffElement":
        keys = set(self.coeffs) | set(other.coeffs)
        zero = CycloNum.coerce(0)
        out = {k: self.coeffs.get(k, zero) + other.coeffs.get(k, zero) for k in keys}
        return DiffElement(self.n, out, self.concrete() + other.concrete())

    def scale(self, c) -> "DiffElement":
        return DiffElement(self.n, {k: v * c for k, v in self.coeffs.items()}, self.concrete().scale(c))

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({format_cyclo(CycloNum.coerce(c))})*{k}" for k, c in sorted(self.coeffs.items()))


# -- index sets --------------------------------------------------------------

def basis_indices(n: int, level: str) -> list[DiffIndex]:
    out = []
    if level == "base":
        for r in range(max(n - 4, 0)):
            for s in range(n - 4 - r):
                out.append(DiffIndex("Omega", r, s))
        out += [DiffIndex("Theta", i) for i in range(3, n - 2)]
    else:
        for r in range(max(n - 3, 0)):
            for s in range(n - 3 - r):
                out.append(DiffIndex("TildeOmega", r, s))
        out += [DiffIndex("TildeTheta", i) for i in range(2, n - 1)]
    return out


def basis(n: int, level: str = "cover") -> list[DiffElement]:
    return [DiffElement.basis_element(n, k) for k in basis_indices(n, level)]


def prym_pair_count(n: int) -> int:
    """#{(r, s): 0 <= r < s, r + s <= n - 4}."""
    return sum(1 for r in range(n) for s in range(r + 1, n) if r + s <= n - 4)


def basis_counts(n: int) -> dict:
    """Sizes of the two bases, checked against the closed forms and the Hurwitz genera."""
    if n < 4:
        raise ValueError("n >= 4")
    from .quotients.genus import base_genus, cover_genus

    dim_c = len(basis_indices(n, "base"))
    dim_p = len(basis_indices(n, "cover"))
    out = {"n": n, "dim_C": dim_c, "dim_Prym": dim_p, "dim_cover": dim_c + dim_p}
    if dim_p != n * (n - 3) // 2 or dim_p != cover_genus(n) - base_genus(n):
        raise CountMismatch(f"n={n}: cover basis has {dim_p} elements, expected n(n-3)/2 = {n * (n - 3) // 2}")
    if n == 4:
        # two conics: the closed form (n^2-5n+2)/2 = -1 is outside its domain, the range is empty
        if dim_c != 0:
            raise CountMismatch("n=4: base index set should be empty")
        out["formula_domain"] = "closed form for dim_C needs n >= 5"
        return out
    if dim_c != (n * n - 5 * n + 2) // 2 or dim_c != base_genus(n):
        raise CountMismatch(f"n={n}: base basis has {dim_c} elements, expected {(n * n - 5 * n + 2) // 2}")
    return out


# -- decomposition into the basis ----------------------------------------------

class _Echelon:
    """Sparse row echelon form of the basis multipliers, keyed by leading monomial."""

    def __init__(self, n: int, level: str):
        self.n = n
        self.rows: dict = {}  # monomial -> (poly with that leading term, combination)
        for k in basis_indices(n, level):
            poly, combo = self._reduce(k.multiplier(n), {k: CycloNum.coerce(1)})
            if poly.is_zero():
                raise CountMismatch(f"{k} is dependent on earlier basis elements")
            lead = max(poly.terms)
            self.rows[lead] = (poly, combo)

    def _reduce(self, poly: MPoly, combo: dict):
        combo = dict(combo)
        while not poly.is_zero():
            lead = max(poly.terms)
            row = self.rows.get(lead)
            if row is None:
                break
            rpoly, rcombo = row
            c = CycloNum.coerce(poly.terms[lead]) / CycloNum.coerce(rpoly.terms[lead])
            poly = poly - rpoly.scale(c)
            for k, v in rcombo.items():
                combo[k] = combo.get(k, CycloNum.coerce(0)) - v * c
        return poly, combo

    def coordinates(self, poly: MPoly) -> dict | None:
        """Coefficients c_k with poly = sum c_k M_k, or None if poly is not in the span."""
        rest, combo = self._reduce(poly, {})
        if not rest.is_zero():
            return None
        return {k: -v for k, v in combo.items() if v}


@lru_cache(maxsize=None)
def _echelon(n: int, level: str) -> _Echelon:
    return _Echelon(n, level)


# -- pullbacks -------------------------------------------------------------------

@lru_cache(maxsize=None)
def _gauge_factor(auto: Automorphism, level: str):
    """The constant R with g^*(gauge form) = R * gauge form."""
    fh = build_family(auto.n).f_hat
    act = auto.affine_action()
    xp = act["x"]
    fx, fz = fh.derivative("x"), fh.derivative("z")
    num = xp.derivative("x") * fz - xp.derivative("z") * fx
    den = fz.subs(act)
    if level == "cover" and auto.eps == -1:
        den = -den
    k = proportionality(num, den)
    if k is None:
        raise GaugeNotConstant(f"{auto.name}: pullback of the gauge form is not a constant multiple")
    return k


def _index_action(auto: Automorphism, idx: DiffIndex):
    """Eigenvalue of a diagonal automorphism on a basis index, from the index alone."""
    zeta = root_of_unity(auto.n, auto.j)
    e = 1 if idx.level == "base" else auto.eps
    if idx.kind.endswith("Omega"):
        return zeta ** ((idx.a - idx.b) % auto.n) * e
    return zeta ** (idx.a % auto.n) * e


def pullback(auto: Automorphism, element: DiffElement, check: bool = True) -> DiffElement:
    """g^* of a differential, by substitution on its multiplier (and by the index rule for diagonal g)."""
    n = auto.n
    if element.n != n:
        raise ValueError("automorphism and differential belong to different n")
    level = element.level
    M = element.concrete()
    if check and element.multiplier is not None:
        diff = M - element.formal_multiplier()
        if not normal_form(diff, build_cover(n).relations).is_zero():
            raise RouteMismatch("concrete multiplier disagrees with its formal combination")
    R = _gauge_factor(auto, level)
    image = M.subs(auto.affine_action()).scale(R)
    image = normal_form(image, build_cover(n).relations)
    coords = _echelon(n, level).coordinates(image)
    if coords is None:
        raise RouteMismatch(f"{auto.name}^* of {element} leaves the span of the basis: {format_poly(image)}")
    out = DiffElement(n, coords, image)
    if check and not auto.swap:
        zero = CycloNum.coerce(0)
        expected = {k: v * _index_action(auto, k) for k, v in element.coeffs.items()}
        keys = set(expected) | set(out.coeffs)
        bad = [k for k in keys if expected.get(k, zero) != out.coeffs.get(k, zero)]
        if bad:
            raise RouteMismatch(f"{auto.name}^* disagrees with the index rule at {', '.join(map(str, sorted(bad)))}")
    return out


def action_images(auto: Automorphism, level: str = "cover") -> dict:
    """Image of every basis element under g^*."""
    return {k: pullback(auto, DiffElement.basis_element(auto.n, k)) for k in basis_indices(auto.n, level)}


def signed_permutation(auto: Automorphism, level: str = "cover") -> dict:
    """g^* as idx -> (idx', coefficient); raises unless every image is a single basis element."""
    out = {}
    for k, img in action_images(auto, level).items():
        if len(img.coeffs) != 1:
            raise NotSignedPermutation(f"{auto.name}^* {k} = {img}")
        (k2, c), = img.coeffs.items()
        out[k] = (k2, c)
    return out


def _matrix(images: dict, order: list) -> list[list]:
    pos = {k: i for i, k in enumerate(order)}
    mat = [[CycloNum.coerce(0)] * len(order) for _ in order]
    for k, img in images.items():
        for k2, c in img.coeffs.items():
            mat[pos[k2]][pos[k]] = CycloNum.coerce(c)
    return mat


def _eigen_dim(mat: list[list], value, cols: list[int] | None = None) -> int:
    size = len(mat)
    cols = list(range(size)) if cols is None else cols
    shifted = [[mat[i][j] - (value if i == j else 0) for j in cols] for i in cols]
    return len(cols) - rank(shifted)


def _root_exponent(n: int, c) -> int:
    for k in range(n):
        if root_of_unity(n, k) == c:
            return k
    raise RouteMismatch(f"{format_cyclo(CycloNum.coerce(c))} is not an n-th root of unity")


# -- eigenspace bookkeeping -------------------------------------------------------

@dataclass
class EigenReport:
    n: int
    alpha_exponents: dict
    alpha_fixed_dim: int
    beta_on_complement: dict
    prym_counts: dict
    theta_cancellation: bool | None
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c["ok"] for c in self.checks)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "alpha_exponents": {str(k): v for k, v in sorted(self.alpha_exponents.items())},
            "alpha_fixed_dim": self.alpha_fixed_dim,
            "beta_on_complement": dict(self.beta_on_complement),
            "prym_counts": dict(self.prym_counts),
            "theta_cancellation": self.theta_cancellation,
            "checks": list(self.checks),
        }


def eigenspace_table(n: int, strict: bool = True) -> EigenReport:
    """Eigenvalue multiplicities of alpha, beta and sigma on the cover basis, with the dimension identities."""
    if n < 5:
        raise ValueError("eigenspace bookkeeping needs n >= 5")
    from .quotients.genus import genus_diagram
    from .quotients.invariants import sigma

    genera = genus_diagram(n)
    order = basis_indices(n, "cover")
    checks = []

    def check(cid, ok, witness):
        checks.append({"id": cid, "ok": bool(ok), "witness": witness})

    a_imgs = action_images(alpha(n), "cover")
    exps = Counter()
    for k, img in a_imgs.items():
        (k2, c), = img.coeffs.items()
        exps[_root_exponent(n, c)] += 1
    fixed = exps.get(0, 0)
    target = (n - 2) // 2
    check("alpha_fixed_dim", fixed == target == genera["Etilde"],
          f"{fixed} fixed, floor((n-2)/2) = {target}, g(Etilde) = {genera['Etilde']}")
    check("alpha_conjugation_symmetry", all(exps[k] == exps[(-k) % n] for k in exps),
          "multiplicity of zeta^k equals that of zeta^-k")

    ehat = ehat_basis(n)
    fixed_idx = {k for k, img in a_imgs.items() if img.coeffs[k] == 1}
    spans = all(set(e.coeffs) <= fixed_idx for e in ehat)
    ehat_rank = rank([[CycloNum.coerce(e.coeffs.get(k, 0)) for k in order] for e in ehat])
    check("ehat_spans_alpha_fixed", spans and ehat_rank == fixed, f"rank {ehat_rank} of {len(ehat)} elements")

    g_gamma = action_images(gamma(n), "cover")
    check("gamma_minus_one", all(img.coeffs == {k: -1} for k, img in g_gamma.items()), "gamma^* = -1 on the cover basis")

    b_imgs = action_images(beta(n), "cover")
    bmat = _matrix(b_imgs, order)
    comp = [i for i, k in enumerate(order) if k not in fixed_idx]
    plus, minus = _eigen_dim(bmat, 1, comp), _eigen_dim(bmat, -1, comp)
    beta_b = {"plus": plus, "minus": minus, "dim": len(comp)}
    if n % 2:
        check("beta_balance", plus == minus and plus + minus == len(comp), f"+1: {plus}, -1: {minus}")

    pairs = prym_pair_count(n)
    prym_y = _eigen_dim(bmat, 1)
    expected_y = pairs + n // 2 - 1
    counts = {"Y": prym_y}
    check("prym_Y_count", prym_y == expected_y == genera["Ytilde"] - genera["Y"],
          f"beta-invariants {prym_y}, pairs {pairs} + {n // 2 - 1}, g(Ytilde) - g(Y) = {genera['Ytilde'] - genera['Y']}")
    theta_ok = None
    if n % 2 == 0:
        s = sigma(n)
        s_imgs = action_images(s, "cover")
        smat = _matrix(s_imgs, order)
        prym_z = _eigen_dim(smat, 1)
        expected_z = pairs + n // 2 - 2
        counts["Z"] = prym_z
        check("prym_Z_count", prym_z == expected_z == genera["Ztilde"] - genera["Z"],
              f"sigma-invariants {prym_z}, pairs {pairs} + {n // 2 - 2}, g(Ztilde) - g(Z) = {genera['Ztilde'] - genera['Z']}")
        mid = DiffElement.basis_element(n, DiffIndex("TildeTheta", n // 2))
        theta_ok = (mid + pullback(s, mid)).is_zero()
        check("theta_mid_cancellation", theta_ok, f"TildeTheta({n // 2}) + {s.name}^* TildeTheta({n // 2})")
        check("prym_total", fixed + prym_y + prym_z == n * (n - 3) // 2,
              f"{fixed} + {prym_y} + {prym_z} = {n * (n - 3) // 2}")
        for name, imgs in (("beta", b_imgs), ("sigma", s_imgs)):
            mat = _matrix(imgs, order)
            sq = [[sum((mat[i][k] * mat[k][j] for k in range(len(order))), CycloNum.coerce(0))
                   for j in range(len(order))] for i in range(len(order))]
            check(f"{name}_involutive", all(sq[i][j] == (1 if i == j else 0)
                                             for i in range(len(order)) for j in range(len(order))), "square is the identity")
    else:
        check("prym_total", fixed + 2 * prym_y == n * (n - 3) // 2, f"{fixed} + 2*{prym_y} = {n * (n - 3) // 2}")
    report = EigenReport(n, dict(exps), fixed, beta_b, counts, theta_ok, checks)
    if strict and not report.ok:
        bad = [c for c in checks if not c["ok"]]
        raise DimensionMismatch(f"n={n}: {bad[0]['id']} failed ({bad[0]['witness']})")
    return report


def ehat_basis(n: int) -> list[DiffElement]:
    """w (xz - 1)^j dx/f_z for 0 <= j <= floor((n-4)/2), written in the cover basis."""
    if n < 5:
        raise ValueError("n >= 5")
    from .quotients.genus import genus_diagram

    out = []
    ech = _echelon(n, "cover")
    for j in range((n - 4) // 2 + 1):
        mult = (1 - x * z) * (x * z - 1) ** j
        coords = ech.coordinates(mult)
        if coords is None:
            raise CountMismatch(f"j={j} is outside the span of the cover basis")
        out.append(DiffElement(n, coords, mult))
    if len(out) != (n - 2) // 2 or len(out) != genus_diagram(n)["Etilde"]:
        raise CountMismatch(f"n={n}: {len(out)} elements against g(Etilde) = {genus_diagram(n)['Etilde']}")
    return out
