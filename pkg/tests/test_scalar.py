from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import to_sympy
from poisson_ore.errors import NoRationalRoot, ZeroDivisor
from poisson_ore.scalar import I, ONE, ZERO, GScalar, as_scalar, scalar_arith

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=12)
scalars = st.builds(GScalar, fractions, fractions)


def _same(z: GScalar, expr) -> bool:
    expr = sympy.nsimplify(sympy.expand(expr))
    re, im = expr.as_real_imag()
    return sympy.Rational(z.re.numerator, z.re.denominator) == re and sympy.Rational(
        z.im.numerator, z.im.denominator
    ) == im


@given(scalars, scalars)
def test_arithmetic_matches_sympy(a, b):
    sa, sb = to_sympy(a), to_sympy(b)
    assert _same(a + b, sa + sb)
    assert _same(a - b, sa - sb)
    assert _same(a * b, sa * sb)
    if b:
        assert _same(a / b, sa / sb)


@given(scalars, scalars, scalars)
def test_field_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + ZERO == a and a * ONE == a
    if a:
        assert a * a.inverse() == ONE


@given(scalars)
def test_sqrt_of_a_square_is_the_canonical_root(z):
    r = (z * z).sqrt()
    assert r * r == z * z
    assert r in (z, -z)
    assert r.re > 0 or (r.re == 0 and r.im >= 0)


@pytest.mark.parametrize("value", [2, -2, 3, GScalar(0, 1), GScalar(1, 1), Fraction(1, 2)])
def test_sqrt_raises_without_a_root(value):
    with pytest.raises(NoRationalRoot):
        as_scalar(value).sqrt()


def test_sqrt_examples():
    assert GScalar(-4).sqrt() == 2 * I
    assert GScalar(0, 2).sqrt() == GScalar(1, 1)
    assert GScalar(Fraction(9, 4)).sqrt() == Fraction(3, 2)
    assert GScalar(-3, 4).sqrt() == GScalar(1, 2)


def test_i_squared():
    assert I * I == -1
    assert I**4 == ONE
    assert I**-1 == -I


def test_division_by_zero():
    with pytest.raises(ZeroDivisor):
        ONE / ZERO
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


@pytest.mark.parametrize(
    "z, text",
    [
        (GScalar(0), "0"),
        (GScalar(Fraction(-3, 2)), "-3/2"),
        (I, "i"),
        (-I, "-i"),
        (GScalar(1, -1), "1 - i"),
        (GScalar(Fraction(1, 2), Fraction(2, 3)), "1/2 + 2/3*i"),
    ],
)
def test_str(z, text):
    assert str(z) == text


@given(scalars)
def test_hash_agrees_with_equality(z):
    assert hash(z) == hash(GScalar(z.re, z.im))
    if not z.im:
        assert hash(z) == hash(z.re) and z == z.re


def test_scalar_arith_ops():
    assert scalar_arith(1, I, "add") == GScalar(1, 1)
    assert scalar_arith(I, I, "mul") == -1
    assert scalar_arith(1, 2, "div") == Fraction(1, 2)
    with pytest.raises(ValueError):
        scalar_arith(1, 2, "pow")


def test_coercions():
    assert as_scalar(complex(1, -2)) == GScalar(1, -2)
    assert 3 - I == GScalar(3, -1)
    with pytest.raises(TypeError):
        as_scalar("1")
