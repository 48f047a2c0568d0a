import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from soficdyn.quadratic import Q, squarefree_part

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@given(fracs, fracs, fracs, fracs)
def test_field_arithmetic_against_floats(a, b, c, d):
    x, y = Q(a, b, 5), Q(c, d, 5)
    for got, want in [(x + y, float(x) + float(y)), (x - y, float(x) - float(y)), (x * y, float(x) * float(y))]:
        assert math.isclose(float(got), want, rel_tol=1e-9, abs_tol=1e-9)
    if y != 0:
        assert (x / y) * y == x


@given(fracs, fracs)
def test_exact_sign_and_floor(a, b):
    x = Q(a, b, 2)
    f = x.floor()
    assert f <= x < f + 1
    assert (x > 0) == (x.sign() > 0)


def test_golden_identities():
    phi = Q.parse("(1+sqrt(5))/2")
    assert phi * phi == phi + 1
    assert phi * (phi - 1) == 1
    assert phi.norm() == -1
    assert phi.is_integral()
    assert Q.parse("1/2+1/2*sqrt(5)") == phi
    assert phi.floor() == 1


def test_squarefree_part():
    assert squarefree_part(12) == (2, 3)
    assert squarefree_part(49) == (7, 1)
    assert Q.sqrt(8) == Q(0, 2, 2)


def test_mixing_fields_is_rejected():
    with pytest.raises(ValueError):
        Q(0, 1, 2) + Q(0, 1, 3)


def test_parse_rational():
    assert Q.parse("3/2") == Fraction(3, 2)
