import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from nodalprym.cyclo import (
    CycloNum,
    DivisionByZero,
    cyclotomic_polynomial,
    descend,
    embed,
    euler_phi,
    format_cyclo,
    inverse,
    minimal_polynomial,
    parse_cyclo,
    root_of_unity,
)

from conftest import cyclonums


@pytest.mark.parametrize("n,phi", [(1, 1), (2, 1), (5, 4), (8, 4), (12, 4), (15, 8), (16, 8), (30, 8)])
def test_euler_phi(n, phi):
    assert euler_phi(n) == phi


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(5) == (1, 1, 1, 1, 1)
    assert cyclotomic_polynomial(8) == (1, 0, 0, 0, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8, 9, 12, 16])
def test_root_of_unity_is_primitive(n):
    z = root_of_unity(n)
    assert z ** n == 1
    assert all(z ** k != 1 for k in range(1, n))


@given(cyclonums(), cyclonums(), cyclonums())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == 0


@given(cyclonums())
def test_inverse(a):
    if not a:
        with pytest.raises((DivisionByZero, ZeroDivisionError)):
            inverse(a)
    else:
        assert a * inverse(a) == 1
        assert (1 / a) * a == 1


@given(cyclonums())
def test_format_parse_round_trip(a):
    text = format_cyclo(a)
    assert parse_cyclo(text) == a
    assert format_cyclo(parse_cyclo(text)) == text


@given(cyclonums(level=4))
def test_embed_then_descend(a):
    up = embed(a, 12)
    assert up == a
    assert descend(up).level <= a.level


def test_descend_finds_subfield():
    # zeta_8 + zeta_8^-1 = sqrt 2 lives at level 8; zeta_12^3 = i lives at level 4
    assert descend(root_of_unity(12, 3)).level == 4
    assert descend(root_of_unity(6, 2)).level == 3


@pytest.mark.parametrize("n", range(3, 25))
def test_real_subfield_degree(n):
    x = root_of_unity(n) + root_of_unity(n, -1)
    assert len(minimal_polynomial(x)) - 1 == max(euler_phi(n) // 2, 1)


def test_known_minimal_polynomials():
    m5 = minimal_polynomial(root_of_unity(5) + root_of_unity(5, -1))
    assert m5 == (mpq(-1), mpq(1), mpq(1))
    m8 = minimal_polynomial(root_of_unity(8) + root_of_unity(8, -1))
    assert m8 == (mpq(-2), mpq(0), mpq(1))


@given(st.integers(1, 30), st.integers(-40, 40), st.integers(-40, 40))
def test_root_powers_add(n, i, j):
    assert root_of_unity(n, i) * root_of_unity(n, j) == root_of_unity(n, i + j)


def test_mixed_levels_compare_equal():
    assert root_of_unity(4) == root_of_unity(8, 2)
    assert CycloNum.coerce(3) == CycloNum.from_rational(3, 5)
