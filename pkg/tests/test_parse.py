from fractions import Fraction

import pytest

from supercot.coeff import Scalar
from supercot.parse import ParseError, sp_parse
from supercot.superpoly import SuperPolynomial


def test_simple_terms():
    delta = sp_parse("p1*xi1 + p2*xi2", 2)
    expect = SuperPolynomial.monomial(2, pexp=(1, 0), xi=(1,)) + SuperPolynomial.monomial(
        2, pexp=(0, 1), xi=(2,)
    )
    assert delta == expect


def test_reordering_sign():
    assert sp_parse("xi2*xi1", 2) == -SuperPolynomial.monomial(2, xi=(1, 2))


def test_scalar_factors():
    F = sp_parse("h/2 * xi1*xi2", 2)
    assert F == SuperPolynomial.monomial(2, xi=(1, 2), coeff=Scalar.h(1, Fraction(1, 2)))
    assert sp_parse("i*s", 1) == SuperPolynomial.constant(1, Scalar.i() * Scalar.sqrt2())
    assert sp_parse("h^-2", 1) == SuperPolynomial.constant(1, Scalar.h(-2))
    assert sp_parse("3/4", 1) == SuperPolynomial.constant(1, Fraction(3, 4))


def test_powers_and_parens():
    assert sp_parse("x1^2", 2) == sp_parse("x1*x1", 2)
    assert sp_parse("(1 + h)*(1 - h)", 1) == sp_parse("1 - h^2", 1)
    assert sp_parse("xi1^2", 2).is_zero()


def test_unary_minus():
    assert sp_parse("-x1 + x1", 2).is_zero()
    assert sp_parse("-(x1 - x2)", 2) == sp_parse("x2 - x1", 2)


def test_errors_carry_position():
    with pytest.raises(ParseError) as err:
        sp_parse("p1 + + p2", 2)
    assert err.value.position == 5
    with pytest.raises(ParseError):
        sp_parse("p1*", 2)
    with pytest.raises(ParseError):
        sp_parse("(p1", 2)
    with pytest.raises(ParseError):
        sp_parse("q1", 2)
    with pytest.raises(ParseError):
        sp_parse("1/0", 2)


def test_index_range_checked():
    with pytest.raises(ParseError) as err:
        sp_parse("xi3", 2)
    assert "exceeds dimension" in str(err.value)
    sp_parse("xi3", 3)


def test_division_restricted_to_constants():
    assert sp_parse("xi1/2", 2) == SuperPolynomial.monomial(2, xi=(1,), coeff=Fraction(1, 2))
    assert sp_parse("x1/(2*s)", 2) == sp_parse("1/4*s*x1", 2)
    with pytest.raises(ParseError):
        sp_parse("x1/p1", 2)
    with pytest.raises(ParseError):
        sp_parse("x1/(1+h)", 2)
