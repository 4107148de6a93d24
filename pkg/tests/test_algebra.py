from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from qcorr.algebra import (
    RATIONALS,
    IncompatibleFields,
    NumberField,
    QuadExtElement,
    RationalFunction,
    UniPoly,
    ZeroDivisor,
    poly_gcd,
    squarefree_decomposition,
)

K7 = NumberField("r", (-7, 0, 1))
KMU = NumberField("mu", (2, 4, -1, 1))  # mu^3 - mu^2 + 4 mu + 2

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def elements(field):
    return st.lists(fracs, min_size=field.degree, max_size=field.degree).map(field.from_coeffs)


def polys(field=RATIONALS, max_deg=5):
    return st.lists(fracs, min_size=1, max_size=max_deg + 1).map(lambda cs: UniPoly(cs, field))


def check_ring_laws(field):
    @given(data=st.data())
    def prop(data):
        a, b, c = (data.draw(elements(field)) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == field.zero()

    prop()


def check_inverse(field):
    @given(elements(field))
    def prop(a):
        if a.is_zero():
            with pytest.raises(ZeroDivisionError):
                a.inverse()
        else:
            assert a * a.inverse() == field.one()
            assert (a / a).is_one()

    prop()


FIELDS = pytest.mark.parametrize("field", [K7, KMU], ids=["quadratic", "cubic"])


@FIELDS
def test_ring_laws(field):
    check_ring_laws(field)


@FIELDS
def test_inverse(field):
    check_inverse(field)


def test_generator_satisfies_min_poly():
    r = K7.gen()
    assert r * r == K7(7)
    mu = KMU.gen()
    assert mu**3 - mu**2 + 4 * mu + 2 == KMU.zero()


def test_reducible_modulus_raises_zero_divisor():
    bad = NumberField("t", (-1, 0, 0, 1 - 0))  # t^3 - 1 = (t - 1)(t^2 + t + 1)
    t = bad.gen()
    with pytest.raises(ZeroDivisor):
        (t - 1).inverse()


def test_mixed_fields_rejected():
    with pytest.raises(IncompatibleFields):
        K7.gen() + KMU.gen()


def test_rationals_promote_into_field():
    assert K7.gen() + Fraction(1, 2) == K7.from_coeffs([Fraction(1, 2), 1])


@given(polys(max_deg=3), polys(max_deg=3), polys(max_deg=2))
def test_squarefree_reconstruction(a, b, c):
    p = a * b * b * c * c * c
    if p.is_zero():
        return
    parts = squarefree_decomposition(p)
    rebuilt = UniPoly.constant(p.lc(), p.field)
    for f, m in parts:
        rebuilt = rebuilt * f**m
        assert f.lc().is_one()
        assert poly_gcd(f, f.derivative()).degree == 0
    assert rebuilt == p
    for i, (f, _m) in enumerate(parts):
        for g, _n in parts[i + 1:]:
            assert poly_gcd(f, g).degree == 0


def _to_sympy(p: UniPoly, x):
    return sympy.Poly([sympy.Rational(c.rational().numerator, c.rational().denominator)
                       for c in reversed(p.coeffs)], x)


@given(polys(max_deg=4), polys(max_deg=4), polys(max_deg=3))
def test_gcd_matches_sympy(a, b, c):
    x = sympy.Symbol("x")
    p, q = a * c, b * c
    if p.is_zero() or q.is_zero():
        return
    ours = poly_gcd(p, q)
    theirs = sympy.gcd(_to_sympy(p, x), _to_sympy(q, x))
    assert ours.degree == theirs.degree()
    if ours.degree > 0:
        assert _to_sympy(ours.monic(), x).as_expr() == theirs.monic().as_expr()


@given(polys(max_deg=4), polys(max_deg=4))
def test_divmod(a, b):
    if b.is_zero():
        return
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


def _rf(draw_num, draw_den):
    if draw_den.is_zero():
        draw_den = UniPoly.constant(1)
    return RationalFunction(draw_num, draw_den)


@given(polys(max_deg=3), polys(max_deg=3), polys(max_deg=3), polys(max_deg=3))
def test_derivation_rules(a, b, c, d):
    f, g = _rf(a, b), _rf(c, d)
    assert (f * g).derivative() == f.derivative() * g + f * g.derivative()
    assert (f + g).derivative() == f.derivative() + g.derivative()
    if not g.is_zero():
        lhs = (f / g).derivative()
        assert lhs == (f.derivative() * g - f * g.derivative()) / (g * g)


@given(polys(max_deg=2), polys(max_deg=2), polys(max_deg=2), polys(max_deg=2))
def test_quadext_derivation_rule(a, b, c, d):
    R = UniPoly([0, -1, 0, 1])  # w^2 = s^3 - s
    f = QuadExtElement(RationalFunction(a), RationalFunction(b), R)
    g = QuadExtElement(RationalFunction(c), RationalFunction(d), R)
    assert (f * g).derivative() == f.derivative() * g + f * g.derivative()
    w = QuadExtElement.w(R)
    # (w^2)' = R'
    assert (w * w).derivative() == QuadExtElement.base(RationalFunction(R.derivative()), R)
    assert 2 * w * w.derivative() == QuadExtElement.base(RationalFunction(R.derivative()), R)


def test_quadext_inverse():
    R = UniPoly([1, 0, 0, 1])
    f = QuadExtElement(RationalFunction(UniPoly([1, 2])), RationalFunction(3), R)
    assert (f * f.inverse() - 1).is_zero()


def test_rational_function_normalised():
    x = UniPoly.x()
    f = RationalFunction(2 * x * x - 2, 4 * x - 4)
    assert f.den == UniPoly([1, 0]) or f.den.lc().is_one()
    assert f == RationalFunction(x + 1, UniPoly.constant(2))


@given(polys(K7, max_deg=3), polys(K7, max_deg=2))
def test_squarefree_over_number_field(a, b):
    p = a * b * b
    if p.is_zero() or p.degree < 1:
        return
    rebuilt = UniPoly.constant(p.lc(), K7)
    for f, m in squarefree_decomposition(p):
        rebuilt = rebuilt * f**m
    assert rebuilt == p
