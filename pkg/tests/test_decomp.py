import pytest

from nodalprym.cyclo import euler_phi
from nodalprym.decomp import (
    DegreeExceedsDimension,
    IdentityFailed,
    IsogenyFactor,
    build_ledger,
    kani_rosen_check,
    rm_metadata,
)
from nodalprym.quotients import genus_diagram


@pytest.mark.parametrize("n", range(4, 11))
def test_dimension_sum(n):
    led = build_ledger(n)
    assert sum(led.dims) == n * (n - 3) // 2 == led.total_dim
    assert led.ok


def test_case_ledgers():
    assert build_ledger(4).dims == [1, 1]
    assert build_ledger(5).dims == [1, 2, 2]
    assert sorted(build_ledger(6).dims, reverse=True) == [2, 2, 2, 2, 1]
    assert build_ledger(8).dims[0] == 3 and len(build_ledger(8).factors) == 5


@pytest.mark.parametrize("n", [5, 7, 9])
def test_odd_case(n):
    led = build_ledger(n)
    prym = [f for f in led.factors if f.kind == "Prym"]
    assert len(prym) == 1 and prym[0].multiplicity == 2
    assert prym[0].dim == (n - 1) * (n - 3) // 4


@pytest.mark.parametrize("n", range(4, 11))
def test_isogenies_never_claimed_certified(n):
    assert all(f.status == "asserted" for f in build_ledger(n).factors)


def test_kani_rosen_forms():
    assert kani_rosen_check(6, [(2, 2), (2, 2), (2, 2)], 0, 4, form="klein4")
    assert kani_rosen_check(6, [(2, 2), (2, 2), (2, 2)], 0, 4, t=3, form="general")
    assert kani_rosen_check(4, [(1, 2), (2, 2), (1, 2)], 0, 4, form="klein4")
    with pytest.raises(IdentityFailed):
        kani_rosen_check(6, [(2, 2), (2, 2), (2, 2)], 0, 4, t=2, form="general")


def test_kani_rosen_n8_constraint():
    g = genus_diagram(8)
    assert kani_rosen_check(g["Ztilde"], [(g["Z"], 2), (g["Ztilde/sigma1"], 2), (g["Ztilde/sigma2"], 2)],
                            g["Ztilde/H"], 4, form="klein4")
    assert g["Ztilde"] + 2 * g["Ztilde/H"] - g["Z"] == 10
    assert g["Ytilde"] + 2 * g["Ytilde/H"] - g["Y"] == 13


@pytest.mark.parametrize("n", range(4, 17))
def test_rm_degree(n):
    assert rm_metadata(n)["degree"] == max(euler_phi(n) // 2, 1)


def test_rm_examples():
    assert rm_metadata(5) == {"field_minpoly": "T^2 + T - 1", "degree": 2}
    assert rm_metadata(8)["field_minpoly"] == "T^2 - 2"
    assert rm_metadata(7)["degree"] == 3
    with pytest.raises(DegreeExceedsDimension):
        rm_metadata(7, dims=[2])


def test_factor_invariants():
    with pytest.raises(ValueError):
        IsogenyFactor("E", "EllipticCurve", 2)
    with pytest.raises(ValueError):
        IsogenyFactor("J", "Jacobian", -1)


def test_ledger_json_shape():
    js = build_ledger(6).to_json()
    assert set(js) >= {"n", "total_dim", "factors", "checks"}
    for f in js["factors"]:
        assert set(f) >= {"name", "kind", "dim", "multiplicity", "rm_minpoly", "model_ref", "status"}
    assert all(c["status"] == "pass" for c in js["checks"])
