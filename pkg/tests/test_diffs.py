import pytest
from hypothesis import given
from hypothesis import strategies as st

from nodalprym.curves import alpha, beta, gamma
from nodalprym.cyclo import root_of_unity
from nodalprym.diffs import (
    DiffElement,
    DiffIndex,
    RouteMismatch,
    action_images,
    basis_counts,
    basis_indices,
    eigenspace_table,
    ehat_basis,
    prym_pair_count,
    pullback,
    signed_permutation,
)
from nodalprym.mpoly import MPoly
from nodalprym.quotients import sigma


def test_basis_counts_small():
    assert basis_counts(5)["dim_C"] == 1 and basis_counts(5)["dim_Prym"] == 5
    assert basis_counts(6)["dim_Prym"] == 9
    four = basis_counts(4)
    assert (four["dim_C"], four["dim_Prym"]) == (0, 2)


@pytest.mark.parametrize("n", range(5, 13))
def test_basis_count_identities(n):
    c = basis_counts(n)
    assert c["dim_C"] == (n * n - 5 * n + 2) // 2
    assert c["dim_Prym"] == n * (n - 3) // 2
    assert c["dim_cover"] == c["dim_C"] + c["dim_Prym"]


def test_index_validation():
    assert DiffIndex("TildeOmega", 2, 0).valid_for(6)
    assert not DiffIndex("TildeOmega", 2, 1).valid_for(6)
    assert not DiffIndex("Theta", 2).valid_for(8)
    with pytest.raises(ValueError):
        DiffElement(6, {DiffIndex("TildeTheta", 5): 1})


def test_alpha_on_tilde_omega_10():
    img = pullback(alpha(6), DiffElement.basis_element(6, DiffIndex("TildeOmega", 1, 0)))
    assert img.coeffs == {DiffIndex("TildeOmega", 1, 0): root_of_unity(6)}


@pytest.mark.parametrize("n", range(5, 9))
@pytest.mark.parametrize("level", ["base", "cover"])
def test_alpha_eigenvalues_by_substitution(n, level):
    zeta = root_of_unity(n)
    for k, img in action_images(alpha(n), level).items():
        e = k.a - k.b if k.b is not None else k.a
        assert img.coeffs == {k: zeta ** (e % n)}


@pytest.mark.parametrize("n", range(5, 13))
def test_gamma_is_minus_one(n):
    for k, img in action_images(gamma(n), "cover").items():
        assert img.coeffs == {k: -1}


@pytest.mark.parametrize("n", range(5, 11))
def test_beta_signed_permutation(n):
    perm = signed_permutation(beta(n))
    for k, (k2, c) in perm.items():
        if k.kind == "TildeOmega":
            assert (k2.a, k2.b, c) == (k.b, k.a, -1)
        else:
            assert (k2.a, c) == (n - k.a, 1)
        assert perm[k2][0] == k


@pytest.mark.parametrize("n", [6, 8, 10, 12])
def test_sigma_theta_twist(n):
    s = sigma(n)
    perm = signed_permutation(s)
    c = s.c
    for i in range(2, n - 1):
        k2, coeff = perm[DiffIndex("TildeTheta", i)]
        assert k2 == DiffIndex("TildeTheta", n - i)
        assert coeff == c ** i


@pytest.mark.parametrize("n", [6, 8])
def test_theta_middle_cancels(n):
    mid = DiffElement.basis_element(n, DiffIndex("TildeTheta", n // 2))
    assert (mid + pullback(sigma(n), mid)).is_zero()


@pytest.mark.parametrize("n", range(5, 13))
def test_eigen_report(n):
    rep = eigenspace_table(n)
    assert rep.ok
    assert rep.alpha_fixed_dim == (n - 2) // 2
    pairs = prym_pair_count(n)
    assert rep.prym_counts["Y"] == pairs + n // 2 - 1
    if n % 2 == 0:
        assert rep.prym_counts["Z"] == pairs + n // 2 - 2
    else:
        assert rep.beta_on_complement["plus"] == rep.beta_on_complement["minus"]


def test_eigen_examples():
    assert eigenspace_table(5).prym_counts["Y"] == 2
    six = eigenspace_table(6).prym_counts
    assert (six["Y"], six["Z"]) == (4, 3)
    assert eigenspace_table(8).prym_counts["Z"] == 8


@pytest.mark.parametrize("n,count", [(5, 1), (6, 2), (7, 2), (8, 3), (12, 5)])
def test_ehat_basis(n, count):
    els = ehat_basis(n)
    assert len(els) == count
    for e in els:
        assert set(k.kind for k in e.coeffs) == {"TildeOmega"}
        assert all(k.a == k.b for k in e.coeffs)


@given(st.integers(5, 9), st.data())
def test_pullback_is_linear(n, data):
    idx = basis_indices(n, "cover")
    picks = data.draw(st.lists(st.sampled_from(idx), min_size=1, max_size=4, unique=True))
    coeffs = data.draw(st.lists(st.integers(-3, 3), min_size=len(picks), max_size=len(picks)))
    el = DiffElement(n, dict(zip(picks, coeffs)))
    for g in (alpha(n), beta(n), gamma(n)):
        combined = pullback(g, el)
        parts = [pullback(g, DiffElement.basis_element(n, k)).scale(c) for k, c in zip(picks, coeffs)]
        total = DiffElement(n, {})
        for p in parts:
            total = total + p
        assert combined.coeffs == total.coeffs


@given(st.integers(5, 10), st.integers(0, 9))
def test_alpha_spectrum_conjugation_symmetric(n, k):
    exps = eigenspace_table(n).alpha_exponents
    assert exps.get(k % n, 0) == exps.get((-k) % n, 0)


def test_inconsistent_concrete_multiplier_rejected():
    el = DiffElement(6, {DiffIndex("TildeTheta", 2): 1}, MPoly.var("x") ** 3 - MPoly.var("z") ** 3)
    with pytest.raises(RouteMismatch):
        pullback(alpha(6), el)
