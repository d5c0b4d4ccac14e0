from itertools import permutations

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from nodalprym.cyclo import CycloNum
from nodalprym.elim import (
    NotDivisible,
    bareiss_det,
    discriminant,
    distinct_root_count,
    exact_divide,
    normal_form,
    nullspace,
    rank,
    resultant,
    solve_linear,
    squarefree_part,
)
from nodalprym.mpoly import MPoly, prod, symbols

from conftest import polys, rationals

x, z, a = symbols("x z a")


def _leibniz(mat):
    n = len(mat)
    total = mpq(0)
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = mpq(sign)
        for i in range(n):
            term *= mat[i][perm[i]]
        total += term
    return total


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(rationals(5), min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_bareiss_matches_leibniz(mat):
    det = bareiss_det([[MPoly.const(v) for v in row] for row in mat])
    assert (det.const_value() if not det.is_zero() else 0) == _leibniz(mat)


@given(st.lists(rationals(6), min_size=1, max_size=3), st.lists(rationals(6), min_size=1, max_size=3))
def test_resultant_of_split_polynomials(roots_f, roots_g):
    f = prod(x - r for r in roots_f)
    g = prod(x - s for s in roots_g)
    expected = mpq(1)
    for r in roots_f:
        for s in roots_g:
            expected *= r - s
    res = resultant(f, g, "x")
    assert (res.const_value() if not res.is_zero() else 0) == expected


def test_quadratic_and_cubic_discriminants():
    b, c = symbols("b c")
    assert discriminant(a * x ** 2 + b * x + c, "x") == b * b - 4 * a * c
    p, q = symbols("p q")
    assert discriminant(x ** 3 + p * x + q, "x") == -4 * p ** 3 - 27 * q ** 2


@given(polys(), polys())
def test_exact_divide(f, g):
    if g.is_zero():
        return
    assert exact_divide(f * g, g) == f


def test_exact_divide_rejects_remainder():
    with pytest.raises(NotDivisible):
        exact_divide(x ** 2 + 1, x - 1)


def test_normal_form_on_circle():
    w, = symbols("w")
    rel = [(w ** 2 - 1 + x * z, "w")]
    assert normal_form(w ** 4, rel) == (1 - x * z) ** 2
    assert normal_form(w ** 3 - w * (1 - x * z), rel).is_zero()


def test_root_counting():
    p = ((x - 1) ** 2 * (x + 2) * (x - 3) ** 3).univariate("x")
    assert distinct_root_count(p) == 3
    assert len(squarefree_part(p)) - 1 == 3


def test_linear_algebra():
    rows = [[mpq(1), mpq(2)], [mpq(2), mpq(4)]]
    assert rank(rows) == 1
    (v,) = nullspace(rows, 2)
    assert v[0] + 2 * v[1] == 0
    assert solve_linear(rows, [mpq(1), mpq(3)]) is None
    sol = solve_linear([[CycloNum.coerce(2)]], [CycloNum.coerce(1)])
    assert sol[0] == mpq(1, 2)
