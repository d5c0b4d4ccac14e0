import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from nodalprym.curves import (
    Automorphism,
    NotOrdinary,
    UnsupportedN,
    alpha,
    beta,
    blowup_node,
    build_cover,
    build_family,
    certify_nodes,
    gamma,
    generate_group,
    param_names,
    sample_params,
    smoothness_scan,
    verify_automorphisms,
)
from nodalprym.cyclo import root_of_unity
from nodalprym.mpoly import MPoly, parse_poly

NS = range(4, 13)


def test_small_n_rejected():
    with pytest.raises(UnsupportedN):
        build_family(3)


def test_family_at_n5():
    f = build_family(5).f
    expected = parse_poly("x^5 + z^5 + 3*y^5 - 5*x*z*y^3 + a2*(x^2*z^2*y - 2*x*z*y^3 + y^5)")
    assert f == expected
    assert param_names(5) == ["a2"]
    assert param_names(8) == ["a2", "a3", "a4"]


@pytest.mark.parametrize("n", NS)
def test_nodes_are_singular_identically_in_parameters(n):
    fam = build_family(n)
    grads = [fam.f.derivative(v) for v in "xyz"]
    for px, py, pz in fam.nodes:
        at = {"x": MPoly.const(px), "y": MPoly.const(py), "z": MPoly.const(pz)}
        assert fam.f.subs(at).is_zero()
        assert all(g.subs(at).is_zero() for g in grads)
    assert len(certify_nodes(n)) == n


@pytest.mark.parametrize("n", NS)
def test_blowup_is_palindromic(n):
    shape = blowup_node(n)
    p0 = shape.f_local.subs({"x1": 0}).coeff("s", 0)
    assert shape.f_local.subs({"x1": 0}).coeff("s", 2) == p0
    assert shape.chart_symmetric


@pytest.mark.parametrize("n", NS)
def test_automorphism_relations(n):
    assert verify_automorphisms(n).ok


@pytest.mark.parametrize("n", [4, 5, 6, 8, 9])
def test_group_order(n):
    group = generate_group([alpha(n), beta(n), gamma(n)])
    assert len(group) == 4 * n
    assert all(g.order() in (1, 2) or not g.swap for g in group)


@given(st.integers(4, 12), st.integers(0, 40), st.integers(0, 40), st.booleans(), st.booleans())
def test_composition_matches_substitution(n, i, j, s1, s2):
    g, h = Automorphism(n, s1, i), Automorphism(n, s2, j)
    f = MPoly.var("x") ** 2 * MPoly.var("z") + MPoly.var("x")
    # g @ h is "h first, then g", so pulling back along g and then h gives f o g o h
    assert f.subs(g.action()).subs(h.action()) == f.subs((g @ h).action())


@given(st.integers(4, 10), st.integers(0, 30))
def test_swaps_are_involutions(n, j):
    s = Automorphism(n, True, j)
    assert (s @ s).is_identity()
    assert (alpha(n) ** n).is_identity()


@pytest.mark.parametrize("n", range(4, 10))
def test_smoothness_scan(n):
    rep = smoothness_scan(n)
    assert rep.status == "pass"
    assert rep.nodes_found == n


def test_smoothness_scan_budget_skip():
    assert smoothness_scan(8, budget=10).status == "skipped"


def test_nodes_degenerate_on_special_parameter():
    # at a2 = -15/4 the tangent cone at each node is a double line
    with pytest.raises(NotOrdinary):
        certify_nodes(5, {"a2": mpq(-15, 4)})


@pytest.mark.parametrize("n", [5, 6, 7])
def test_cover_genus(n):
    g = build_family(n).geometric_genus
    assert g == (n * n - 5 * n + 2) // 2
    assert build_cover(n).genus == n * n - 4 * n + 1


def test_sample_params_are_rational_and_distinct():
    p = sample_params(10)
    assert len(set(p.values())) == len(p) == 4
