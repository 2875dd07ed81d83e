"""Exact arithmetic layer: rationals, Laurent/bivariate polynomials,
the (1+y) coefficient ring, geometric-sum denominators."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chargenus.exact import (
    BiPolyUV,
    CoeffY,
    ExactError,
    GeomFactor,
    LaurentPolyY,
    ONE_PLUS_Y,
    PolyParseError,
    RatFunc,
    coeffy_normalize,
    laurent_exact_div,
    parse_bipoly,
    parse_laurent,
    ratfunc_equal,
    ratfunc_to_polynomial,
    rational_arith,
)

F = Fraction

fractions_st = st.fractions(min_value=-10, max_value=10, max_denominator=12)
laurent_st = st.dictionaries(st.integers(-4, 6), fractions_st, max_size=5).map(LaurentPolyY)
poly_st = st.dictionaries(st.integers(0, 6), fractions_st, max_size=5).map(LaurentPolyY)
bipoly_st = st.dictionaries(
    st.tuples(st.integers(0, 4), st.integers(0, 4)), fractions_st, max_size=5
).map(BiPolyUV)


class TestRational:
    def test_add(self):
        assert rational_arith(F(1, 2), F(1, 3), "add") == F(5, 6)

    def test_mul_identity(self):
        for x in (F(0), F(-7, 3), F(22, 7)):
            assert rational_arith(x, F(1), "mul") == x

    def test_div_by_zero(self):
        with pytest.raises(ExactError):
            rational_arith(F(3, 4), F(0), "div")

    def test_canonical_form(self):
        q = rational_arith(F(2, 4), F(1, 4), "sub")
        assert q.numerator == 1 and q.denominator == 4


class TestLaurent:
    def test_basic(self):
        p = LaurentPolyY({0: 1, 1: -2, 2: 1})
        assert p == (1 - LaurentPolyY.y_power(1)) ** 2
        assert p.evaluate(F(3)) == 4

    def test_negative_exponents(self):
        p = LaurentPolyY({-2: 3, 1: 1})
        assert p.evaluate(F(1, 2)) == 12 + F(1, 2)
        assert not p.is_polynomial
        with pytest.raises(ExactError):
            p.evaluate(F(0))

    def test_exact_division(self):
        n = LaurentPolyY({0: -1, 3: 1})  # y^3 - 1
        d = LaurentPolyY({0: -1, 1: 1})  # y - 1
        assert laurent_exact_div(n, d) == LaurentPolyY({0: 1, 1: 1, 2: 1})
        assert laurent_exact_div(LaurentPolyY.one(), d) is None

    @given(laurent_st, laurent_st, laurent_st)
    def test_ring_axioms(self, a, b, c):
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)

    @given(laurent_st, laurent_st)
    def test_division_inverts_multiplication(self, a, b):
        if b.is_zero:
            return
        assert laurent_exact_div(a * b, b) == a


class TestCoeffY:
    def test_normalize_exact_division(self):
        p = ONE_PLUS_Y * (1 - LaurentPolyY.y_power(1))
        c = coeffy_normalize(p, 1)
        assert c.poly == 1 - LaurentPolyY.y_power(1) and c.k == 0

    def test_normalize_identity(self):
        p = 1 - LaurentPolyY.y_power(1)
        c = coeffy_normalize(p, 0)
        assert c.poly == p and c.k == 0

    def test_normalize_long_division(self):
        p = LaurentPolyY({0: 1, 1: 2, 2: 1})  # (1+y)^2
        c = coeffy_normalize(p, 1)
        assert c.poly == ONE_PLUS_Y and c.k == 0

    def test_sticky_denominator(self):
        c = coeffy_normalize(LaurentPolyY.one(), 2)
        assert c.k == 2
        assert (c * CoeffY(ONE_PLUS_Y**2)).k == 0

    def test_negative_k_rejected(self):
        with pytest.raises(ExactError):
            coeffy_normalize(LaurentPolyY.one(), -1)

    @given(poly_st, st.integers(0, 3))
    def test_normal_form_invariant(self, p, k):
        c = coeffy_normalize(p, k)
        # in normal form with k>0 the numerator has no root at y = -1
        if c.k > 0:
            assert c.poly.evaluate(F(-1)) != 0
        # and the fraction is unchanged away from the pole
        y0 = F(3, 7)
        assert c.evaluate(y0) == p.evaluate(y0) / (1 + y0) ** k

    @given(poly_st, poly_st, st.integers(0, 2), st.integers(0, 2))
    def test_arithmetic_matches_evaluation(self, p, q, kp, kq):
        a, b = CoeffY(p, kp), CoeffY(q, kq)
        y0 = F(1, 3)
        assert (a + b).evaluate(y0) == a.evaluate(y0) + b.evaluate(y0)
        assert (a * b).evaluate(y0) == a.evaluate(y0) * b.evaluate(y0)
        assert (a - b).evaluate(y0) == a.evaluate(y0) - b.evaluate(y0)


class TestBiPoly:
    def test_mul(self):
        uv = BiPolyUV.uv_power(1)
        assert (BiPolyUV.one() + uv) * (BiPolyUV.one() - uv) == BiPolyUV.one() - BiPolyUV.uv_power(2)

    def test_flip_signs(self):
        p = (BiPolyUV.one() - BiPolyUV.u()) * (BiPolyUV.one() - BiPolyUV.v())
        assert p.flip_signs() == (BiPolyUV.one() + BiPolyUV.u()) * (BiPolyUV.one() + BiPolyUV.v())

    def test_to_univariate(self):
        p = BiPolyUV({(2, 0): 1, (1, 1): 20, (0, 2): 1})
        # (u,v) -> (-y, 1): u^2 -> y^2, 20uv -> -20y, v^2 -> 1
        got = p.to_univariate((-1, 1), (1, 0))
        assert got == LaurentPolyY({0: 1, 1: -20, 2: 1})

    def test_negative_exponent_rejected(self):
        with pytest.raises(ExactError):
            BiPolyUV({(-1, 0): 1})

    @given(bipoly_st, bipoly_st, bipoly_st)
    @settings(max_examples=60)
    def test_ring_axioms(self, a, b, c):
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @given(bipoly_st)
    def test_diagonal_round_trip(self, p):
        assert BiPolyUV.from_diagonal(p.diagonal_split()) == p


class TestGeomFactor:
    @pytest.mark.parametrize("a", range(1, 13))
    def test_telescoping(self, a):
        # (t-1) * g_a(t) = t^(a+1) - 1
        t = LaurentPolyY.y_power(1)
        g = GeomFactor(a + 1).expand_univariate()
        assert (t - 1) * g == LaurentPolyY({a + 1: 1, 0: -1})

    def test_identity_factor_dropped(self):
        f = RatFunc(LaurentPolyY.one(), (GeomFactor(1), GeomFactor(3)))
        assert f.factors == (GeomFactor(3),)

    def test_invalid(self):
        with pytest.raises(ExactError):
            GeomFactor(0)

    def test_value_at_one(self):
        assert GeomFactor(5).value_at_one() == 5


class TestRatFunc:
    def test_reflexivity(self):
        x = LaurentPolyY.y_power(1)
        f = RatFunc(x, (GeomFactor(2),), symbol="t")
        assert ratfunc_equal(f, f)

    def test_telescoped_equality(self):
        # (t^2-1)/g_1 == t-1
        t = LaurentPolyY.y_power(1)
        f = RatFunc(t**2 - 1, (GeomFactor(2),), symbol="t")
        g = RatFunc(t - 1, (), symbol="t")
        assert ratfunc_equal(f, g)

    def test_inequality(self):
        one = RatFunc(LaurentPolyY.one(), (), symbol="t")
        t = RatFunc(LaurentPolyY.y_power(1), (), symbol="t")
        assert not ratfunc_equal(one, t)

    def test_convention_mismatch(self):
        f = RatFunc(LaurentPolyY.one(), (), t_image=(F(-1), 1))
        g = RatFunc(LaurentPolyY.one(), ())
        with pytest.raises(ExactError):
            ratfunc_equal(f, g)

    def test_to_polynomial_trivial(self):
        p = BiPolyUV.uv_power(2) + BiPolyUV.uv_power(1)
        assert ratfunc_to_polynomial(RatFunc(p)) == p

    def test_to_polynomial_division(self):
        # (uv-1)(uv+1) / (1+uv) = uv - 1
        num = BiPolyUV.uv_power(2) - BiPolyUV.one()
        f = RatFunc(num, (GeomFactor(2),))
        assert ratfunc_to_polynomial(f) == BiPolyUV.uv_power(1) - BiPolyUV.one()

    def test_to_polynomial_obstructed(self):
        f = RatFunc(BiPolyUV.one(), (GeomFactor(2),))
        assert ratfunc_to_polynomial(f) is None
        assert not f.is_polynomial

    def test_to_polynomial_mixed_diagonals(self):
        # (u + v) * (1 + uv) / (1 + uv), exercises off-diagonal division
        num = (BiPolyUV.u() + BiPolyUV.v()) * (BiPolyUV.one() + BiPolyUV.uv_power(1))
        f = RatFunc(num, (GeomFactor(2),))
        assert ratfunc_to_polynomial(f) == BiPolyUV.u() + BiPolyUV.v()

    @given(
        st.dictionaries(st.integers(0, 4), fractions_st, min_size=1, max_size=4).map(LaurentPolyY),
        st.integers(1, 4),
        st.integers(1, 4),
        st.integers(1, 4),
    )
    @settings(max_examples=40)
    def test_equivalence_relation(self, num, a, b, c):
        if num.is_zero:
            return
        base = RatFunc(num, (GeomFactor(a + 1),), symbol="t")
        gb = GeomFactor(b + 1).expand_univariate()
        gc = GeomFactor(c + 1).expand_univariate()
        f = RatFunc(num * gb, (GeomFactor(a + 1), GeomFactor(b + 1)), symbol="t")
        g = RatFunc(num * gc, (GeomFactor(a + 1), GeomFactor(c + 1)), symbol="t")
        # reflexive, symmetric, transitive on a constructed-equal triple
        assert ratfunc_equal(base, base)
        assert ratfunc_equal(base, f) and ratfunc_equal(f, base)
        assert ratfunc_equal(f, g) and ratfunc_equal(base, g)


class TestGrammar:
    def test_parse_bipoly(self):
        assert parse_bipoly("1 + u*v + u^2*v^2") == BiPolyUV({(0, 0): 1, (1, 1): 1, (2, 2): 1})
        assert parse_bipoly("3/2*u - v^3") == BiPolyUV({(1, 0): F(3, 2), (0, 3): -1})
        assert parse_bipoly("-2") == BiPolyUV.const(-2)

    def test_parse_laurent(self):
        assert parse_laurent("1 - 2*y + 2*y^2 - y^3") == LaurentPolyY({0: 1, 1: -2, 2: 2, 3: -1})
        assert parse_laurent("-y") == LaurentPolyY.y_power(1, -1)

    def test_whitespace_insignificant(self):
        assert parse_bipoly(" 1+u * v ") == parse_bipoly("1+u*v")

    def test_errors_carry_column(self):
        with pytest.raises(PolyParseError) as err:
            parse_laurent("1 + ")
        assert err.value.column == 5
        with pytest.raises(PolyParseError):
            parse_laurent("y^-1")
        with pytest.raises(PolyParseError):
            parse_bipoly("1 + x")
        with pytest.raises(PolyParseError):
            parse_bipoly("u ^ y")

    @given(st.dictionaries(st.integers(0, 6), fractions_st, max_size=5).map(LaurentPolyY))
    def test_laurent_round_trip(self, p):
        assert parse_laurent(p.format()) == p

    @given(bipoly_st)
    def test_bipoly_round_trip(self, p):
        assert parse_bipoly(p.format()) == p

    def test_print_examples(self):
        assert LaurentPolyY({0: 1, 1: -2, 2: 2, 3: -1}).format() == "1 - 2*y + 2*y^2 - y^3"
        assert BiPolyUV({(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1}).format() == "1 + u + v + u*v"
        assert LaurentPolyY.zero().format() == "0"
