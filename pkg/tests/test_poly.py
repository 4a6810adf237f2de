from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from expmat.field import gf, rationals
from expmat.poly import BIVARIATE_VARS, LocElem, MPoly, Poly, bivariate_shift, poly_arith

Q = rationals()
F2 = gf(2)
F3 = gf(3)
T_, T2_ = sympy.symbols("T Tp")


def to_sympy(m: MPoly):
    # valid for Q and prime fields, where raw coefficients are ints/Fractions
    out = 0
    for e, c in m.terms.items():
        term = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c)
        for name, k in zip((T_, T2_), e):
            term *= name ** k
        out += term
    return sympy.expand(out)


def test_freshman_square_gf2():
    T = Poly.T(F2)
    assert poly_arith(T + 1, T + 1, "mul") == T ** 2 + 1


def test_shift_square_over_q_and_gf2():
    for ctx, want in ((Q, T_ ** 2 + 2 * T_ * T2_ + T2_ ** 2), (F2, T_ ** 2 + T2_ ** 2)):
        got = bivariate_shift(Poly.T(ctx) ** 2)
        if ctx.char:
            assert got == MPoly.var(ctx, BIVARIATE_VARS, "T") ** 2 + MPoly.var(ctx, BIVARIATE_VARS, "T'") ** 2
        else:
            assert to_sympy(got) == want


def test_shift_linear_and_fourth_power():
    T, Tp = MPoly.gens(F2, BIVARIATE_VARS)
    assert bivariate_shift(Poly.T(F2)) == T + Tp
    assert bivariate_shift(Poly.T(F2) ** 4) == T ** 4 + Tp ** 4


def test_compose_dispatch():
    T = Poly.T(Q)
    assert poly_arith(T ** 2 + 1, T + 1, "compose") == T ** 2 + 2 * T + 2
    with pytest.raises(ValueError):
        poly_arith(T, T, "pow")


def test_json_round_trip():
    f = Poly(Q, [Fraction(1, 2), 0, -3])
    assert Poly.from_json(Q, f.to_json()) == f
    assert Poly(Q, [0, 0]).is_zero()
    assert Poly(Q, [1, 2, 0, 0]).degree() == 1


coeffs = st.lists(st.integers(-5, 5), max_size=5)


@settings(max_examples=300, deadline=None)
@given(coeffs, coeffs, coeffs)
def test_ring_axioms_and_substitution_homomorphism(a, b, c):
    f, g, h = Poly(Q, a), Poly(Q, b), Poly(Q, c)
    assert (f + g) * h == f * h + g * h
    assert (f * g) * h == f * (g * h)
    assert f - f == Poly.zero(Q)
    # substitution of h is a ring homomorphism
    assert (f + g)(h) == f(h) + g(h)
    assert (f * g)(h) == f(h) * g(h)


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=7), st.lists(st.integers(0, 2), max_size=4))
def test_substitution_homomorphism_gf3(a, b):
    f, g = Poly(F3, a), Poly(F3, b)
    h = Poly(F3, [1, 2, 1])
    assert (f * g)(h) == f(h) * g(h)
    assert (f + g)(h) == f(h) + g(h)


@settings(max_examples=200, deadline=None)
@given(coeffs)
def test_bivariate_shift_matches_sympy(a):
    f = Poly(Q, a)
    want = sympy.expand(sum(sympy.Integer(c) * (T_ + T2_) ** i for i, c in enumerate(a)))
    got = bivariate_shift(f)
    assert to_sympy(got) == want
    # T' -> 0 recovers f
    assert got.evaluate(1, 0) == f.to_mpoly(BIVARIATE_VARS)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 1), max_size=9))
def test_bivariate_shift_at_zero_gf2(a):
    f = Poly(F2, a)
    assert bivariate_shift(f).evaluate(1, 0) == f.to_mpoly(BIVARIATE_VARS)


def test_mpoly_power_matches_plain_product_in_char_p():
    vars_ = ("x", "y")
    x, y = MPoly.gens(F3, vars_)
    f = x + y * 2 + 1
    acc = MPoly.constant(F3, vars_, 1)
    for k in range(1, 12):
        acc = acc * f
        assert f ** k == acc


def test_local_elements():
    vars_ = ("x0", "x1")
    x0, x1 = MPoly.gens(Q, vars_)
    a = LocElem(x1, 1, 0)  # x1 / x0
    b = LocElem(x0 * x1, 2, 0)  # x1 / x0
    assert a == b
    assert a * LocElem(x0, 0, 0) == LocElem(x1, 0, 0)
    assert (a + a) == LocElem(x1 * 2, 1, 0)
