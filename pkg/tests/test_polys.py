from fractions import Fraction as F

from hypothesis import given, strategies as st

from conftest import small_fractions
from dhbkit.polys import Poly, RationalFunction, gcd
from dhbkit.scalars import OMEGA

polys = st.lists(small_fractions(), min_size=1, max_size=5).map(Poly)


@given(polys, polys.filter(bool))
def test_divmod(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree or not r


def test_gcd_and_lowest_terms():
    a = Poly.linear_root(1) * Poly.linear_root(2)
    b = Poly.linear_root(1) * Poly.linear_root(3)
    assert gcd(a, b) == Poly.linear_root(1)
    rf = RationalFunction(a, b)
    assert rf.num == Poly.linear_root(2) and rf.den == Poly.linear_root(3)


@given(polys, polys.filter(bool), polys, polys.filter(bool))
def test_rational_field_ops(a, b, c, d):
    x, y = RationalFunction(a, b), RationalFunction(c, d)
    assert x + y - y == x
    if not y.is_zero():
        assert x * y / y == x


def test_derivative_quotient_rule():
    f = RationalFunction(Poly((1,)), Poly((0, 1)))  # 1/z
    assert f.derivative() == RationalFunction(Poly((-1,)), Poly((0, 0, 1)))


def test_evaluation_at_complex_point_with_eisenstein_coefficients():
    p = Poly((1, OMEGA))
    assert abs(p(2j) - (1 + complex(OMEGA) * 2j)) < 1e-14
    assert Poly((F(1), F(2)))(F(3)) == 7
