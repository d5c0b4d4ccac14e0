from math import comb

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from nodalprym.curves import alpha, beta, build_family, gamma, sample_params
from nodalprym.cyclo import root_of_unity
from nodalprym.elim import exact_divide
from nodalprym.mpoly import MPoly, parse_poly, symbols
from nodalprym.quotients import (
    QUOTIENT_CHOICES,
    BirationalMap,
    ExceptionalFactorAbsent,
    NonIntegralGenus,
    Presentation,
    ResidueNonzero,
    closed_form_genera,
    cover_genus,
    fixed_points,
    genus_diagram,
    hurwitz_genus,
    hyperelliptic_checks,
    membership_certificate,
    newton_P,
    proportionality,
    quotient_alpha,
    quotient_beta,
    quotient_beta_alpha,
    quotient_model,
    quotient_w4,
    sigma,
    twisted_Q,
    verify_birational_model,
)

x, z, u, v, t = symbols("x z u v t")


def waring(n: int) -> MPoly:
    """x^n + z^n in e1 = u, e2 = v by Waring's formula."""
    out = MPoly()
    for j in range(n // 2 + 1):
        c = mpq(n, n - j) * comb(n - j, j) * (-1) ** j
        out = out + MPoly.monomial(c, {"u": n - 2 * j, "v": j})
    return out


@pytest.mark.parametrize("n", range(1, 33))
def test_newton_P(n):
    assert newton_P(n) == waring(n)
    assert newton_P(n).subs({"u": x + z, "v": x * z}) == x ** n + z ** n


@pytest.mark.parametrize("n", range(2, 17, 2))
def test_twisted_Q(n):
    k = (n & -n).bit_length() - 1
    c = root_of_unity(2 ** k, -1)
    q = twisted_Q(n)
    assert q == newton_P(n).subs({"v": v.scale(c)})
    assert q.subs({"u": x + z.scale(c), "v": x * z}) == x ** n + z ** n


def test_f0_at_n5():
    aq = quotient_alpha(5)
    A = aq.A
    assert exact_divide(A * A / 4 - t ** 5, (t - 1) ** 2) == aq.f0
    printed = parse_poly("-t^3 + (a2^2-8)/4*t^2 - (a2^2+5*a2+6)/2*t + (a2+3)^2/4")
    assert aq.f0 == printed
    assert A.subs({"a2": 0}) == 5 * (1 - t) - 2


@pytest.mark.parametrize("n", range(4, 11))
def test_alpha_quotient_degree(n):
    assert quotient_alpha(n).f0.degree("t") == n - 2


@pytest.mark.parametrize("n", range(4, 11))
def test_beta_quotient_pulls_back(n):
    Y, Yt = quotient_beta(n)
    assert Y.equation.subs({"u": x + z, "v": x * z}) == build_family(n).f_hat
    assert Yt.equation.degree("w") > 0


@pytest.mark.parametrize("n", [6, 8, 10, 12])
def test_sigma_quotient_invariance(n):
    Z, _ = quotient_beta_alpha(n)
    c = sigma(n).c
    assert Z.equation.subs({"u": x + z.scale(c), "v": x * z}) == build_family(n).f_hat


def test_sigma_is_beta_alpha_m():
    for n, m in ((6, 3), (8, 1), (12, 3)):
        assert sigma(n) == beta(n) @ alpha(n, m)
        assert sigma(n).c == root_of_unity(n // m, -1)


def test_w4_model():
    assert quotient_w4().equation == parse_poly("4*u^2 + u^4 - 4*u^2*w^2 + 2*w^4 + a2*w^4")


# -- genera -----------------------------------------------------------------------------

PRINTED = {
    5: {"Ctilde": 6, "Xtilde": 2, "Etilde": 1, "C": 1, "X": 1, "Ytilde": 2, "Y": 0},
    6: {"Ctilde": 13, "Xtilde": 3, "Etilde": 2, "C": 4, "X": 1, "Ytilde": 6, "Y": 2, "Ztilde": 4, "Z": 1},
    7: {"Ctilde": 22, "Xtilde": 4, "Etilde": 2, "C": 8, "X": 2, "Ytilde": 9, "Y": 3},
    8: {"Ctilde": 33, "Xtilde": 5, "Etilde": 3, "C": 13, "X": 2, "Ytilde": 15, "Y": 6, "Ztilde": 13, "Z": 5},
}


@pytest.mark.parametrize("n", sorted(PRINTED))
def test_diagram_genera(n):
    d = genus_diagram(n)
    for name, g in PRINTED[n].items():
        assert d[name] == g, name


@pytest.mark.parametrize("n", range(5, 17))
def test_closed_forms(n):
    d = genus_diagram(n)
    assert all(d[k] == g for k, g in closed_form_genera(n).items())


def test_n6_n8_subquotients():
    d6, d8 = genus_diagram(6), genus_diagram(8)
    assert (d6["Ytilde/tau1"], d6["Ytilde/tau2"], d6["Ytilde/H"]) == (2, 2, 0)
    assert (d6["Ztilde/sigma1"], d6["Ztilde/sigma2"], d6["Ztilde/H"]) == (2, 1, 0)
    assert d8["Ytilde/tau1"] + d8["Ytilde/tau2"] == 13
    assert d8["Ztilde/sigma1"] + d8["Ztilde/sigma2"] == 10
    assert d8["Ztilde/H"] == 1


def test_n4_quotients_elliptic():
    d = genus_diagram(4)
    assert d["Ytilde"] == d["Wtilde"] == 1


@pytest.mark.parametrize("n", range(5, 12))
def test_beta_fixed_points(n):
    # odd n: one fixed point at infinity plus n - 2 on the line x = z; even n: n - 4 on the line
    base = fixed_points(beta(n), "base").count
    assert base == (n - 1 if n % 2 else n - 4)
    cov = fixed_points(beta(n), "cover").count
    assert cov == (2 * (n - 2) if n % 2 else 2 * (n - 4))


@pytest.mark.parametrize("n", range(4, 10))
def test_gamma_ramification(n):
    assert fixed_points(gamma(n), "cover").count == 2 * n


@given(st.integers(0, 30), st.integers(1, 12), st.integers(0, 40))
def test_hurwitz_inverse(g_target, degree, half_r):
    # 2 g_s - 2 = d (2 g_t - 2) + 2 half_r
    g_source = degree * (g_target - 1) + 1 + half_r
    if g_source >= 0:
        assert hurwitz_genus(g_source, degree, 2 * half_r) == g_target


def test_hurwitz_rejects_non_integral():
    with pytest.raises(NonIntegralGenus):
        hurwitz_genus(3, 2, 1)


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_hyperelliptic_models_match_hurwitz(n):
    assert all(c["ok"] for c in hyperelliptic_checks(n))


@pytest.mark.parametrize("which", QUOTIENT_CHOICES)
def test_quotient_model_genus_attached(which):
    n = 4 if which == "w4" else 6
    m = quotient_model(n, which)
    assert m.genus is not None and m.genus >= 0


# -- birational engine --------------------------------------------------------------------

def test_parabola_is_rational():
    src = Presentation("line", [])
    bmap = BirationalMap("parabola", src, parse_poly("Y - X^2"), {"X": "s", "Y": "s^2"})
    assert verify_birational_model(bmap).ok


def test_circle_parametrization():
    src = Presentation("P1", [])
    bmap = BirationalMap("circle", src, parse_poly("X^2 + Y^2 - 1"),
                         {"X": "(1 - s^2)/(1 + s^2)", "Y": "2*s/(1 + s^2)"})
    assert verify_birational_model(bmap).ok


def test_engine_reports_residue():
    src = Presentation("P1", [])
    bmap = BirationalMap("bad", src, parse_poly("X^2 + Y^2 - 2"),
                         {"X": "(1 - s^2)/(1 + s^2)", "Y": "2*s/(1 + s^2)"})
    cert = verify_birational_model(bmap)
    assert not cert.ok and cert.residue != "0"
    with pytest.raises(ResidueNonzero):
        verify_birational_model(bmap, strict=True)


def test_exceptional_factor_must_divide():
    src = Presentation("P1", [])
    bmap = BirationalMap("e", src, parse_poly("X - 1"), {"X": "s"}, exceptional_factors=[parse_poly("s + 5")])
    with pytest.raises(ExceptionalFactorAbsent):
        verify_birational_model(bmap)


def test_reduction_on_the_cover():
    n = 5
    src = Presentation("C5", [(build_family(n).f_hat, "z")])
    aq = quotient_alpha(n)
    pulled = aq.raw.subs({"s": x ** 5, "t": x * z})
    assert membership_certificate("raw", pulled, src).ok
    assert not membership_certificate("raw+1", pulled + 1, src).ok


def test_proportionality():
    assert proportionality(2 * x + 4, x + 2) == 2
    assert proportionality(x + 1, x + 2) is None
