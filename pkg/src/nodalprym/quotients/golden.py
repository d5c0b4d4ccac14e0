"""Golden models for n = 4..8: printed displays, the maps that produce them,
and their certification against the derived quotient models.

Each display is checked twice where possible: as a pulled back identity on the
source curve (engine certificate), and against the derivation pipeline. When a
display only differs from the pipeline by a typesetting slip that is allowed to
be reported as such, the status is ``pass-with-errata`` and the delta is kept.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from gmpy2 import mpq

from ..curves import build_cover, build_family
from ..cyclo import CycloNum, root_of_unity
from ..elim import discriminant
from ..mpoly import MPoly, format_poly, parse_expr, parse_poly
from .birational import (
    BirationalMap,
    Certificate,
    Presentation,
    membership_certificate,
    proportionality,
    verify_birational_model,
)
from .invariants import (
    A_poly,
    quotient_alpha,
    quotient_beta,
    quotient_beta_alpha,
    quotient_w4,
    sigma,
    two_adic_split,
    W4_DISPLAY,
)

__all__ = [
    "GoldenResult",
    "DISPLAYS",
    "PRINTED_GENERA",
    "golden_models",
    "delta_h_check",
    "f0_identity",
    "hyperelliptic_checks",
    "GOLDEN_NS",
    "CORPUS_ROOT",
    "corpus_entries",
    "read_corpus_file",
    "render_corpus_file",
    "write_corpus",
]

GOLDEN_NS = (4, 5, 6, 7, 8)

# Genus squares of the commutative diagrams, as printed.
PRINTED_GENERA = {
    4: {"Ytilde": 1, "Wtilde": 1},
    5: {"Ctilde": 6, "Xtilde": 2, "Etilde": 1, "C": 1, "X": 1, "Ytilde": 2, "Y": 0},
    6: {"Ctilde": 13, "Xtilde": 3, "Etilde": 2, "C": 4, "X": 1, "Ytilde": 6, "Y": 2, "Ztilde": 4, "Z": 1},
    7: {"Ctilde": 22, "Xtilde": 4, "Etilde": 2, "C": 8, "X": 2, "Ytilde": 9, "Y": 3},
    8: {"Ctilde": 33, "Xtilde": 5, "Etilde": 3, "C": 13, "X": 2, "Ytilde": 15, "Y": 6, "Ztilde": 13, "Z": 5},
}

# Displays as printed, in parser syntax; a stands for a2 when n = 5.
DISPLAYS = {
    5: {
        "f0": "-t^3 + (a2^2-8)/4*t^2 - (a2^2+5*a2+6)/2*t + (a2+3)^2/4",
        "E": "-(4*a2+15)/4*x^3 + 5*(a2+4)/2*x^2 + (a2^2-20)/4*x + 1",
        "Y": "3 + a2 + T1^5 - 5*T2 - 2*a2*T2 - 5*T1^3*T2 + a2*T2^2 + 5*T1*T2^2",
        "t1": "(-5-2*a2-5*T1^3+2*a2*T2+10*T1*T2)/(-1+T1+T1^2)",
        "conic": "-25 - 8*a2 + t1^2 + 10*T1 + 4*a2*T1 - 5*T1^2",
        "param_t1": "(25 + 5*a2 - 10*x - 6*a2*x + 5*x^2 + a2*x^2)/(5-x^2)",
        "param_T1": "(a2 - 10*x - 2*a2*x + 2*x^2 + a2*x^2)/(-5+x^2)",
        "inverse": "(t1-a2-5)/(T1-a2-2)",
        "g": "(5+5*a2+a2^2)*x^4 - 2*(5+a2)*(5+2*a2)*x^3 + 2*(50+20*a2+3*a2^2)*x^2"
             " - 2*(5+a2)*(-5+2*a2)*x + (-25-5*a2+a2^2)",
        "w2_num": "-(-10 - a2 + a2*x)",
        "w2_den": "(x^2-5)^2*(-25 - 5*a2 + 5*x + 3*a2*x)",
        "y_C": "(-25 - 5*a2 + 5*x + 3*a2*x)*(x^2-5)*w",
        "h": "-(3*a2*x + 5*x - 25 - 5*a2)*(a2*x - a2 - 10)",
        "delta_h": "2^30*5^5*(15+4*a2)^2*(-25-5*a2+a2^2)^14",
    },
    6: {
        "f0": "(-2+a3)*(2+a3)/4*t^4 + (-4+a2*a3+a3^2)/2*t^3 + (-12+a2^2-12*a3-3*a3^2)/4*t^2"
              " - (2+a2+a3)*(4+a2+2*a3)/2*t + (4+a2+2*a3)^2/4",
        "Etilde": "(-2+a3)*(2+a3)/4*x^5 + (12-a2*a3-3*a3^2)/2*x^4"
                  " + (-60+a2^2-12*a3+6*a2*a3+9*a3^2)/4*x^3 + (20+3*a2+10*a3)*x^2 + (-6-a2-3*a3)*x",
        "g": "u^6-6*u^4*v+9*u^2*v^2+a3*v^3-2*v^3+v^2*a2-2*v*a2-3*v*a3-6*v+a2+2*a3+4",
        "Y": "(x^3-6*x^2+9*x+a3-2)*(4*x^3-12*x^2+6*x-(a2+3*a3)*x+a3-2)",
        "Y_map_y": "u*(-2-a3+3*u^4+u^6+(6+3*a3-6*u^2-6*u^4)*v+(-3-3*a3+9*u^2)*v^2-(2+a3)*v^3)/(v-1)^3",
        "tau1": "(3*x^2-6*x-3-a2-3*a3)*(x^3-6*x^2+9*x-2+a3)",
        "tau1_map_y": "((2-a3)*w^6+9*(u^2-1)*w^4+6*(u^2-1)^2*w^2+(u^2-1)^3)/w^5",
        "tau2_t": "(-4-12*X+(-6+a2+3*a3)*X^2+(-2+a3)*X^3)/(-1-6*X-9*X^2+(-2+a3)*X^3)",
        "tau2": "X*((3+a2+3*a3)*X^2-6*X-3)*((-2+a3)*X^3-9*X^2-1-6*X-1)",
        "h": "u^6+6*u^4*v+9*u^2*v^2+2*v^3-6*v+4+v^2*a2-2*v*a2-3*v*a3-6*v+a2+2*a3+4",
        "Z": "-((3*a3+6)*t+a2+3*a3+6)*((a3+2)*t^3+9*t^2+6*t+1)",
        "sigma1": "t*(-3-18*t+(-21+a2+3*a3)*t^2)*(1+6*t+9*t^2+(2+a3)*t^3)",
        "h26": "X^6+6*X^4*Y+9*X^2*Y^2-6*X^4*Y^2-18*X^2*Y^3+9*X^2*Y^4+6*Y^5-2*Y^6+a2*Y^5+3*a3*Y^5-a3*Y^6",
        "sigma2_q": "6+36*t+a2+9*a2*t+3*a3+18*a3*t",
        "sigma2": "t*((36+9*a2+18*a3)*t+3*a3+a2+6)*((18+3*a2+9*a3)*t^2-1)",
    },
    7: {
        # "-+" before the t term is read as "-"
        "f0": "-t^5 + (-8+a3^2)/4*t^4 + (-6+a2*a3+a3^2)/2*t^3 + (-16+a2^2-14*a3-3*a3^2)/4*t^2"
              " - (2+a2+a3)*(5+a2+2*a3)/2*t + (5+a2+2*a3)^2/4",
        "Etilde": "(-7+a3^2/4)*x^5 + (21-a2*a3/2-3*a3^2/2)*x^4"
                  " + (-35+a2^2/4-7*a3/2+3*a2*a3/2+9*a3^2/4)*x^3 + (35+7*a2/2+23*a3/2)*x^2 + (-35/4-a2-3*a3)*x",
        "g": "u^7-7*u^5*v+14*u^3*v^2-7*u*v^3+v^3*a3+v^2*a2-2*v*a2-3*v*a3-7*v+a2+2*a3+5",
    },
    8: {
        "f0": "(a4*t^2+2*t^2+a3*t+2*a4*t+4*t+a2+2*a3+3*a4+6)"
              "*(a4*t^4-2*t^4+a3*t^3+a2*t^2-2*a2*t-3*a3*t-4*a4*t-8*t+a2+2*a3+3*a4+6)/4",
        "g": "u^8-8*v-8*u^6*v+20*u^4*v^2-16*u^2*v^3+2*v^4+6+a2-2*a2*v+a2*v^2+2*a3-3*a3*v+a3*v^3"
             "+3*a4-4*a4*v+a4*v^4",
        "h_raw": "-6-u^8+8*v+8*z8^7*u^6*v+20*z8^2*u^4*v^2-16*z8*u^2*v^3+2*v^4-a2*(v-1)^2"
                 "-a3*(v-1)^2*(v+2)-a3*(v-1)^2*(v^2+2*v+3)",
        "h": "-6+u^8+8*v+8*u^6*v+20*u^4*v^2+16*u^2*v^3+2*v^4-a2*(v-1)^2"
             "-a3*(v-1)^2*(v+2)-a3*(v-1)^2*(v^2+2*v+3)",
    },
    4: {
        "Wtilde": W4_DISPLAY,
        "E1": "(a2+2)*x^4+4*x^2+1",
        "E2": "(a2+2)*x^4-4*x^2+1",
    },
}

# The sigma_2 chain for n = 6 (only sketched in print): every step below is
# an explicit rational function of (u, w) on Ztilde_6.
SIGMA2_P = (
    "a2^3*t^3 + 9*a2^2*a3*t^3 + 18*a2^2*t^3 + 6*a2^2*t^2 + 27*a2*a3^2*t^3 + 81*a2*a3*t^3"
    " + 27*a2*a3*t^2 + 54*a2*t^3 + 54*a2*t^2 + 9*a2*t + 27*a3^3*t^3 + 108*a3^2*t^3"
    " + 27*a3^2*t^2 + 108*a3*t^3 + 108*a3*t^2 + 18*a3*t + a3 + 108*t^2 + 36*t + 2"
)


@dataclass
class GoldenResult:
    id: str
    n: int
    model: str
    anchor: str
    status: str
    equation: str
    certificates: list = field(default_factory=list)
    delta: str | None = None
    note: str | None = None
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status in ("pass", "pass-with-errata")

    def to_json(self) -> dict:
        out = {
            "id": self.id,
            "n": self.n,
            "model": self.model,
            "anchor": self.anchor,
            "status": self.status,
            "equation": self.equation,
            "certificates": [c.to_json() for c in self.certificates],
        }
        if self.delta is not None:
            out["delta"] = self.delta
        if self.note is not None:
            out["note"] = self.note
        return out


def _P(text: str) -> MPoly:
    return parse_poly(text)


def _src_C(n: int) -> Presentation:
    return Presentation(f"C_{n}", [(build_family(n).f_hat, "z")])


def _src_Ctilde(n: int) -> Presentation:
    return Presentation(f"Ctilde_{n}", list(build_cover(n).relations))


def _src_model(name: str, eq: MPoly, var: str = "u") -> Presentation:
    return Presentation(name, [(eq, var)])


def _status(certs, allowed_errata=False, pipeline_ok=True) -> str:
    if all(c.ok for c in certs):
        return "pass"
    if allowed_errata and pipeline_ok:
        return "pass-with-errata"
    return "fail"


def _poly_delta(display: MPoly, pipeline: MPoly) -> tuple[str, object]:
    """printed - k*pipeline for the constant k that leaves the fewest terms."""
    k = proportionality(display, pipeline)
    if k is not None:
        return "0", k
    best = None
    for e, c in display.terms.items():
        if e not in pipeline.terms:
            continue
        kk = CycloNum.coerce(c) / CycloNum.coerce(pipeline.terms[e])
        diff = display - pipeline.scale(kk)
        if best is None or len(diff) < len(best[0]):
            best = (diff, kk)
    if best is None:
        best = (display - pipeline, CycloNum.coerce(1))
    return format_poly(best[0]), best[1]


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        for r in res:
            r.wall_time = r.wall_time or (time.perf_counter() - t0) / len(res)
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# -- shared checks ----------------------------------------------------------------

def f0_identity(n: int, display: str | MPoly) -> tuple[bool, str]:
    """(A^2/4 - t^n)/(t-1)^2 compared with a display; returns (equal, delta)."""
    f0 = quotient_alpha(n).f0
    d = _P(display) if isinstance(display, str) else display
    diff = d - f0
    return diff.is_zero(), format_poly(diff)


def _f0_result(n: int) -> GoldenResult:
    disp = _P(DISPLAYS[n]["f0"])
    eq, delta = f0_identity(n, disp)
    # pulled back along u = (x^n + A(xz)/2)/(xz - 1), t = xz, the model vanishes on C_n
    A = A_poly(n).subs({"t": MPoly.var("x") * MPoly.var("z")})
    xn = MPoly.var("x") ** n
    u_expr = (xn + A.scale(mpq(1, 2))) / (MPoly.var("x") * MPoly.var("z") - 1)
    bmap = BirationalMap(
        f"n{n}.f0", _src_C(n), MPoly.var("u") ** 2 - disp,
        {"u": u_expr, "t": "x*z"},
    )
    cert = verify_birational_model(bmap)
    certs = [cert, Certificate(f"n{n}.f0.pipeline", eq, "0" if eq else delta)]
    return GoldenResult(f"n{n}.f0", n, "f0", "u^2=f^0_n(t)", _status(certs), format_poly(disp), certs,
                        None if eq else delta)


def _hyperelliptic_from_Xtilde(n: int, model: str, rhs: MPoly, xmap: str, ymap: str, anchor: str,
                               allowed_errata=False) -> GoldenResult:
    aq = quotient_alpha(n)
    src = _src_model(f"Xtilde_{n}", aq.Xtilde_model.equation)
    bmap = BirationalMap(f"n{n}.{model}", src, MPoly.var("y") ** 2 - rhs, {"x": xmap, "y": ymap})
    cert = verify_birational_model(bmap)
    certs = [cert]
    pipeline = aq.Etilde_model.equation.subs({"W": MPoly.var("x")})
    pipe_rhs = -(pipeline - pipeline.coeff("U", 2) * MPoly.var("U") ** 2)
    delta = None
    if xmap == "w^2":
        diff = rhs - pipe_rhs
        delta = None if diff.is_zero() else f"printed rhs - derived rhs = {format_poly(diff)}"
    status = _status(certs, allowed_errata)
    return GoldenResult(f"n{n}.{model}", n, model, anchor, status, format_poly(rhs), certs, delta)


def _display_on_curve(n: int, model: str, display: MPoly, lin: MPoly, anchor: str, pipeline: MPoly,
                      allowed_errata: bool, note: str | None = None) -> GoldenResult:
    """A display in (u, v) pulled back by u = lin, v = xz and reduced on C_n."""
    x, z = MPoly.var("x"), MPoly.var("z")
    src = _src_C(n)
    cert = verify_birational_model(BirationalMap(f"n{n}.{model}", src, display, {"u": lin, "v": x * z}))
    pcert = verify_birational_model(BirationalMap(f"n{n}.{model}.pipeline", src, pipeline, {"u": lin, "v": x * z}))
    delta, k = _poly_delta(display, pipeline)
    certs = [cert]
    status = _status(certs, allowed_errata, pcert.ok)
    if status == "pass-with-errata":
        certs.append(pcert)
    text = None if delta == "0" else f"printed - {k}*pipeline = {delta}"
    return GoldenResult(f"n{n}.{model}", n, model, anchor, status, format_poly(display if cert.ok else pipeline),
                        certs, text, note)


# -- per n ------------------------------------------------------------------------

def delta_h_check() -> tuple[bool, MPoly, MPoly, object]:
    """Discriminant of h(x) for n = 5 against the printed factorization.

    Returns (equal, computed, printed, ratio); the convention is
    disc = (-1)^(d(d-1)/2) res(h, h') / lc(h), so the ratio is 1 exactly.
    """
    d5 = DISPLAYS[5]
    h = _P(d5["h"]) * _P(d5["g"])
    disc = discriminant(h, "x")
    printed = _P(d5["delta_h"])
    k = proportionality(disc, printed)
    return disc == printed, disc, printed, k


@_timed
def _golden_5() -> list[GoldenResult]:
    d = DISPLAYS[5]
    out = [_f0_result(5)]
    out.append(_hyperelliptic_from_Xtilde(5, "E", _P(d["E"]), "1/w^2", "u/w^3", "E: y^2=-\\frac{1}{4}(4a+15)x^3"))
    # C: the chain through the conic and its rational parametrization
    Y, Yt = quotient_beta(5)
    g5 = _P(d["Y"]).subs({"T1": MPoly.var("u"), "T2": MPoly.var("v")})
    certs = [Certificate("n5.C.Y_display", g5 == Y.equation, "0" if g5 == Y.equation else format_poly(g5 - Y.equation))]
    y_src = _src_model("Y_5", Y.equation)
    t1 = d["t1"].replace("T1", "u").replace("T2", "v")
    certs.append(verify_birational_model(BirationalMap(
        "n5.C.conic", y_src, _P(d["conic"]), {"t1": t1, "T1": "u"})))
    certs.append(verify_birational_model(BirationalMap(
        "n5.C.parametrization", Presentation("P^1", []), _P(d["conic"]),
        {"t1": d["param_t1"], "T1": d["param_T1"]})))
    conic_src = _src_model("conic", _P(d["conic"]), "t1")
    for name, key in (("t1", "param_t1"), ("T1", "param_T1")):
        expr = parse_expr(d[key])
        certs.append(verify_birational_model(BirationalMap(
            f"n5.C.inverse.{name}", conic_src,
            MPoly.var("s") * expr.den - expr.num,
            {"x": d["inverse"], "s": name})))
    yt_src = _src_model("Ytilde_5", Yt.equation)
    t1w = t1.replace("v", "(1-w^2)")
    inter = [("t1", t1w), ("xp", d["inverse"].replace("T1", "u"))]
    g = d["g"]
    certs.append(verify_birational_model(BirationalMap(
        "n5.C.w2", yt_src, MPoly.var("w") ** 2 * _P(d["w2_den"]) - _P(d["w2_num"]) * _P(g),
        {"x": "xp"}, intermediates=inter)))
    h_full = _P(d["h"]) * _P(g)
    certs.append(verify_birational_model(BirationalMap(
        "n5.C", yt_src, MPoly.var("y") ** 2 - h_full,
        {"x": "xp", "y": d["y_C"].replace("x", "xp")}, intermediates=inter)))
    out.append(GoldenResult("n5.C", 5, "C", "C:y^2=h(x)", _status(certs), format_poly(h_full), certs))
    ok, disc, printed, k = delta_h_check()
    out.append(GoldenResult(
        "n5.delta_h_identity", 5, "Delta_h", "\\Delta_h = 2^{30}5^5(15 + 4 a)^2", "pass" if ok else "fail",
        d["delta_h"], [Certificate("n5.delta_h_identity", ok, "0" if ok else format_poly(disc - printed))],
        None, f"discriminant convention (-1)^(d(d-1)/2) res(h,h')/lc(h); ratio {k}",
    ))
    return out


def _z_presentations(n: int, rescaled=False):
    Z, Zt = quotient_beta_alpha(n, rescaled)
    return _src_model(Z.name, Z.equation), _src_model(Zt.name, Zt.equation), Z, Zt


@_timed
def _golden_6() -> list[GoldenResult]:
    d = DISPLAYS[6]
    n = 6
    out = [_f0_result(6)]
    out.append(_hyperelliptic_from_Xtilde(6, "Etilde", _P(d["Etilde"]), "w^2", "u*w",
                                          "\\widetilde{\\mathcal{E}}_6:y^2"))
    Y, Yt = quotient_beta(6)
    x, z = MPoly.var("x"), MPoly.var("z")
    out.append(_display_on_curve(6, "g", _P(d["g"]), x + z, "g_6(u_,v)", Y.equation, False))

    # Y_6 Weierstrass model; the printed y has v^3 coefficient -(2 + a3) where (a3 - 2) is needed
    y_src = _src_model("Y_6", Y.equation)
    target = MPoly.var("y") ** 2 - _P(d["Y"])
    printed = verify_birational_model(BirationalMap("n6.Y.printed_map", y_src, target,
                                                    {"x": "(u^2-1)/(v-1)", "y": d["Y_map_y"]}))
    fixed_y = d["Y_map_y"].replace("-(2+a3)*v^3", "+(a3-2)*v^3")
    cert = verify_birational_model(BirationalMap("n6.Y", y_src, target, {"x": "(u^2-1)/(v-1)", "y": fixed_y}))
    note = None if printed.ok else "printed map for y fails; v^3 coefficient (a3-2) in place of -(2+a3) certifies"
    certs = [cert] + ([] if printed.ok else [printed])
    out.append(GoldenResult("n6.Y", 6, "Y", "y^2=(x^3- 6 x^2 +9x+a_3-2)", _status([cert]), d["Y"], certs, None, note))

    yt_src = _src_model("Ytilde_6", Yt.equation)
    # tau_1: the printed model is a quadratic twist by -1 of the quotient; y is scaled by zeta_4
    tgt = MPoly.var("y") ** 2 - _P(d["tau1"])
    printed = verify_birational_model(BirationalMap("n6.tau1.printed_map", yt_src, tgt,
                                                    {"x": "(1-u^2)/w^2", "y": d["tau1_map_y"]}))
    cert = verify_birational_model(BirationalMap("n6.tau1", yt_src, tgt,
                                                 {"x": "(1-u^2)/w^2", "y": "z4*" + d["tau1_map_y"]}))
    note = None if printed.ok else "isomorphic over the field with zeta_4 adjoined: y -> zeta_4*y"
    out.append(GoldenResult("n6.Ytilde_tau1", 6, "Ytilde/tau1", "(3x^2-6x-3-a_2-3a_3)(x^3-6x^2+9x-2+a_3)",
                            _status([cert]), d["tau1"], [cert] + ([] if printed.ok else [printed]), None, note))

    # tau_2: candidates for the second factor, decided by certification
    quad = _P("(3+a2+3*a3)*X^2-6*X-3")
    t_expr = parse_expr(d["tau2_t"])
    D = t_expr.den
    candidates = [
        ("printed", _P(d["tau2"])),
        ("printed constant -1", MPoly.var("X") * quad * _P("(-2+a3)*X^3-9*X^2-6*X-1")),
        ("numerator of t", MPoly.var("X") * quad * t_expr.num),
    ]
    certs, chosen = [], None
    for label, rhs in candidates:
        c = verify_birational_model(BirationalMap(
            f"n6.tau2[{label}]", yt_src, MPoly.var("Y") ** 2 - rhs,
            {"X": "Xq", "Y": "u*w*Dq"},
            intermediates=[("Xq", "w^2/(u^2-1)"), ("Dq", format_poly(D).replace("X", "Xq"))]))
        certs.append(c)
        if c.ok and chosen is None:
            chosen = (label, rhs)
    status = "pass" if certs[0].ok else ("pass-with-errata" if chosen else "fail")
    delta = None
    if chosen and not certs[0].ok:
        delta = f"second factor: printed {format_poly(_P('(-2+a3)*X^3-9*X^2-1-6*X-1'))} -> certified {format_poly(t_expr.num)}"
    out.append(GoldenResult("n6.Ytilde_tau2", 6, "Ytilde/tau2", "Y^2=X \\{(3 + a_2+3a_3)X^2 - 6 X-3 \\}", status,
                            format_poly(chosen[1] if chosen else candidates[0][1]), certs, delta))

    # Z_6 and its quotients
    Z, Zt = quotient_beta_alpha(6)
    lin = x + z.scale(sigma(6).c)
    out.append(_display_on_curve(6, "h", _P(d["h"]), lin, "h_6(u_,v)", Z.equation, True))
    z_src = _src_model("Z_6", Z.equation)
    cert = verify_birational_model(BirationalMap(
        "n6.Z", z_src, MPoly.var("s") ** 2 - _P(d["Z"]),
        {"t": "t", "s": "u*(-1-6*t-9*t^2-(2+a3)*t^3)/t"},
        intermediates=[("t", "(v-1)/(u^2+3)")]))
    out.append(GoldenResult("n6.Z", 6, "Z", "s^2=-\\{ (3a_3+6)t + a_2 + 3a_3+6 \\}", _status([cert]), d["Z"], [cert]))
    zt_src = _src_model("Ztilde_6", Zt.equation)
    cert = verify_birational_model(BirationalMap(
        "n6.Ztilde_sigma1", zt_src, MPoly.var("W") ** 2 - _P(d["sigma1"]),
        {"t": "t", "W": "(1+6*t+9*t^2+(2+a3)*t^3)*w"},
        intermediates=[("t", "-w^2/(u^2+3)")]))
    out.append(GoldenResult("n6.Ztilde_sigma1", 6, "Ztilde/sigma1", "w'^2=t (-3 - 18 t", _status([cert]),
                            d["sigma1"], [cert]))
    h26 = membership_certificate("n6.h26", _P(d["h26"]).subs({"X": MPoly.var("u") * MPoly.var("w"),
                                                                "Y": MPoly.var("w") ** 2}), zt_src)
    inter = [
        ("x2", "u^2/w^2"),
        ("cx", "x2^3-6*x2^2+9*x2-2-a3"),
        ("bx", "6*x2^2-18*x2+6+a2+3*a3"),
        ("y2", "w^2*cx + bx/2"),
        ("t", "x2/(y2-(6+a2+3*a3)/2)"),
        ("q", d["sigma2_q"]),
        ("p", SIGMA2_P),
    ]
    cert = verify_birational_model(BirationalMap(
        "n6.Ztilde_sigma2", zt_src, MPoly.var("y") ** 2 - _P(d["sigma2"]),
        {"t": "t", "y": "u*w*p/q"}, intermediates=inter))
    out.append(GoldenResult("n6.Ztilde_sigma2", 6, "Ztilde/sigma2", "y^2=t\\{ (36   + 9a_2   + 18a_3) t",
                            _status([cert, h26]), d["sigma2"], [h26, cert],
                            note="chain: x2 = X^2/Y^2, y2 = Y*c(x2) + b(x2)/2, t = x2/(y2 - y2(0)), y = X p(t)/q(t)"))
    return out


@_timed
def _golden_7() -> list[GoldenResult]:
    d = DISPLAYS[7]
    x, z = MPoly.var("x"), MPoly.var("z")
    out = [_f0_result(7)]
    out.append(_hyperelliptic_from_Xtilde(7, "Etilde", _P(d["Etilde"]), "w^2", "u*w",
                                          "\\Big(-7 + \\frac{a^2_3}{4} \\Big)x^5"))
    Y, _ = quotient_beta(7)
    out.append(_display_on_curve(7, "g", _P(d["g"]), x + z, "g_7(u,v)", Y.equation, False))
    return out


@_timed
def _golden_8() -> list[GoldenResult]:
    d = DISPLAYS[8]
    x, z = MPoly.var("x"), MPoly.var("z")
    out = [_f0_result(8)]
    aq = quotient_alpha(8)
    rhs = MPoly.var("x") * aq.f0.subs({"t": 1 - MPoly.var("x")})
    out.append(_hyperelliptic_from_Xtilde(8, "Etilde", rhs, "w^2", "u*w", "y^2=xf^0_8(1-x)"))
    Y, _ = quotient_beta(8)
    out.append(_display_on_curve(8, "g", _P(d["g"]), x + z, "g_8(u,v)", Y.equation, False))
    c = sigma(8).c
    Z, _ = quotient_beta_alpha(8)
    out.append(_display_on_curve(8, "h_raw", _P(d["h_raw"]), x + z.scale(c), "8 \\zeta^{-1}_8 u^6 v",
                                 Z.equation, True))
    k, _ = two_adic_split(8)
    r = root_of_unity(2 ** (k + 1), -3)
    Zr, _ = quotient_beta_alpha(8, True)
    out.append(_display_on_curve(8, "h", _P(d["h"]), (x + z.scale(c)).scale(r), "h_8(u,v)", Zr.equation, True))
    return out


@_timed
def _golden_4() -> list[GoldenResult]:
    d = DISPLAYS[4]
    out = []
    try:
        quotient_w4()
        wc = membership_certificate(
            "n4.Wtilde", _P(d["Wtilde"]).subs({"u": MPoly.var("x") - MPoly.var("z")}), _src_Ctilde(4))
    except AssertionError as exc:
        wc = Certificate("n4.Wtilde", False, str(exc))
    out.append(GoldenResult("n4.Wtilde", 4, "Wtilde", "4 u^2 + u^4 - 4 u^2 w^2 + 2 w^4 +a_2 w^4", _status([wc]),
                            d["Wtilde"], [wc]))
    src = _src_Ctilde(4)
    c1 = verify_birational_model(BirationalMap("n4.E1", src, MPoly.var("y") ** 2 - _P(d["E1"]),
                                               {"x": "w/(x+z)", "y": "2/(x+z)"}))
    out.append(GoldenResult("n4.E1", 4, "E1", "E_1:y^2=(a_2+2)x^4+4x^2+1", _status([c1]), d["E1"], [c1],
                            note="quotient by beta: x = w/(x+z), y = 2/(x+z)"))
    c2 = verify_birational_model(BirationalMap("n4.E2", src, MPoly.var("y") ** 2 - _P(d["E2"]),
                                               {"x": "w/(x-z)", "y": "2*z4/(x-z)"}))
    iso = _P(d["E1"]).subs({"x": MPoly.var("x").scale(root_of_unity(4, 1))}) == _P(d["E2"])
    ci = Certificate("n4.E1_to_E2", iso, "0" if iso else "rhs mismatch", ["x -> zeta_4 x on the right-hand side"])
    out.append(GoldenResult("n4.E2", 4, "E2", "E_2:y^2=(a_2+2)x^4-4x^2+1", _status([c2, ci]), d["E2"], [c2, ci],
                            note="quotient by beta*alpha^2: x = w/(x-z), y = 2 zeta_4/(x-z)"))
    return out


_BUILDERS = {4: _golden_4, 5: _golden_5, 6: _golden_6, 7: _golden_7, 8: _golden_8}


@lru_cache(maxsize=None)
def _golden_cached(n: int) -> tuple:
    return tuple(_BUILDERS[n]())


def golden_models(n: int) -> list[GoldenResult]:
    if n not in _BUILDERS:
        raise ValueError(f"no printed models for n = {n}")
    return list(_golden_cached(n))


# (golden id, diagram quotient, variable) for every hyperelliptic model y^2 = F
_HYPERELLIPTIC = {
    4: [("n4.E1", "Ytilde", "x"), ("n4.E2", "Wtilde", "x")],
    5: [("n5.f0", "X", "t"), ("n5.E", "Etilde", "x"), ("n5.C", "Ytilde", "x")],
    6: [
        ("n6.f0", "X", "t"), ("n6.Etilde", "Etilde", "x"), ("n6.Y", "Y", "x"),
        ("n6.Ytilde_tau1", "Ytilde/tau1", "x"), ("n6.Ytilde_tau2", "Ytilde/tau2", "X"),
        ("n6.Z", "Z", "t"), ("n6.Ztilde_sigma1", "Ztilde/sigma1", "t"), ("n6.Ztilde_sigma2", "Ztilde/sigma2", "t"),
    ],
    7: [("n7.f0", "X", "t"), ("n7.Etilde", "Etilde", "x")],
    8: [("n8.f0", "X", "t"), ("n8.Etilde", "Etilde", "x")],
}


def hyperelliptic_checks(n: int) -> list[dict]:
    """Genus floor((d-1)/2) of each certified y^2 = F model against the Hurwitz genus."""
    from ..curves import sample_params
    from .genus import genus_diagram, hyperelliptic_genus

    diagram = genus_diagram(n)
    by_id = {r.id: r for r in golden_models(n)}
    out = []
    for gid, quotient, var in _HYPERELLIPTIC.get(n, []):
        r = by_id[gid]
        rhs = _P(r.equation)
        if gid == "n7.Etilde":
            # the printed display does not certify; use the derived model
            rhs = MPoly.var("x") * quotient_alpha(7).f0.subs({"t": 1 - MPoly.var("x")})
        g = hyperelliptic_genus(rhs, var, sample_params(n))
        out.append({"id": gid, "quotient": quotient, "genus_model": g, "genus_hurwitz": diagram[quotient],
                    "ok": g == diagram[quotient]})
    return out


# -- golden corpus on disk ---------------------------------------------------------

CORPUS_ROOT = Path(__file__).resolve().parent.parent / "corpus"


def corpus_entries(n: int) -> dict[str, tuple[dict, str]]:
    """file stem -> (header fields, canonical polynomial text) for everything stored for n."""
    from . import QUOTIENT_CHOICES, quotient_model

    out = {}
    if n in _BUILDERS:
        for r in golden_models(n):
            out[r.id.split(".", 1)[1]] = ({"id": r.id, "status": r.status, "anchor": r.anchor}, format_poly(_P(r.equation)))
    for which in QUOTIENT_CHOICES:
        try:
            m = quotient_model(n, which)
        except (ValueError, NotImplementedError):
            continue
        out[f"quotient_{which}"] = ({"id": f"n{n}.quotient.{which}", "status": "derived", "genus": str(m.genus)},
                                    format_poly(m.equation))
    return out


def render_corpus_file(header: dict, text: str) -> str:
    lines = [f"# {k}: {v}" for k, v in header.items()]
    return "\n".join(lines + [text]) + "\n"


def read_corpus_file(path) -> tuple[dict, str]:
    header, body = {}, []
    for line in Path(path).read_text().splitlines():
        if line.startswith("#"):
            k, _, v = line[1:].strip().partition(":")
            header[k.strip()] = v.strip()
        elif line.strip():
            body.append(line.strip())
    return header, " ".join(body)


def write_corpus(ns, root=None) -> list[Path]:
    root = Path(root) if root else CORPUS_ROOT
    written = []
    for n in ns:
        d = root / f"n{n}"
        d.mkdir(parents=True, exist_ok=True)
        for stem, (header, text) in sorted(corpus_entries(n).items()):
            p = d / f"{stem}.poly"
            p.write_text(render_corpus_file(header, text))
            written.append(p)
    return written
