from decimal import Decimal, localcontext
from fractions import Fraction

import pytest

from ultrametric.scalar import (
    DivergenceError,
    DomainError,
    PowExpr,
    Scalar,
    format_rational,
    geometric_tail_sum,
    parse_rational,
    pow_powexpr,
    pow_rational,
    prime_power,
)

from conftest import dec


def fourth_root_two_thirds(prec=80):
    with localcontext() as ctx:
        ctx.prec = prec
        return (Decimal(2) / Decimal(3)).sqrt().sqrt()


class TestParse:
    @pytest.mark.parametrize("text,want", [
        ("3", Fraction(3)), ("-1/4", Fraction(-1, 4)), (" 6/8 ", Fraction(3, 4)), ("+2/1", Fraction(2)),
    ])
    def test_accepts(self, text, want):
        assert parse_rational(text) == want

    @pytest.mark.parametrize("text", ["0.5", "1e3", "1/0", "", "a/b", "1/-2"])
    def test_rejects(self, text):
        with pytest.raises(ValueError):
            parse_rational(text)

    def test_format_roundtrip(self):
        for x in (Fraction(0), Fraction(-7, 3), Fraction(12)):
            assert parse_rational(format_rational(x)) == x


class TestScalar:
    def test_exact_arithmetic_stays_exact(self):
        a, b = Scalar(Fraction(1, 3)), Scalar(Fraction(-5, 7))
        for r in (a + b, a - b, a * b, a / b, a ** 3, a ** -2):
            assert r.exact
        assert (a + b) - b == a
        assert (a * b) / b == a

    def test_mixed_demotes(self):
        a = Scalar(Fraction(1, 3))
        b = Scalar.approx(Decimal("0.5"))
        assert not (a + b).exact
        assert (a + b) > Scalar(Fraction(5, 6)) - Scalar(Fraction(1, 10 ** 50))

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            Scalar(0.5)

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            Scalar(1) / Scalar(0)

    def test_exact_vs_approx_comparison(self):
        third = Scalar(Fraction(1, 3))
        assert third < Scalar.approx(Decimal("0.34"))
        assert third > Scalar.approx(dec(Fraction(1, 3), 40))
        assert third == Scalar.approx(third.as_decimal())

    def test_negation_keeps_digits(self):
        x = pow_rational(Scalar(2), Fraction(1, 3))
        assert (-(-x)).as_decimal() == x.as_decimal()
        assert abs(-x).as_decimal() == x.as_decimal()

    def test_decimal_string(self):
        assert Scalar(Fraction(4)).to_decimal_string() == "4"
        assert Scalar(Fraction(1, 8)).to_decimal_string() == "0.125"
        assert Scalar(Fraction(-3, 2)).to_string() == "-3/2"
        s = Scalar(Fraction(1, 3)).to_decimal_string(10)
        assert s == "0.3333333333"


class TestPowRational:
    def test_perfect_square(self):
        r = pow_rational(Scalar(4), Fraction(1, 2))
        assert r.exact and r == Scalar(2)

    def test_unit_base(self):
        r = pow_rational(Scalar(1), Fraction(-7, 3))
        assert r.exact and r == Scalar(1)

    def test_irrational_root_60_digits(self):
        r = pow_rational(Scalar(Fraction(2, 3)), Fraction(1, 4))
        assert not r.exact
        assert abs(r.as_decimal() - fourth_root_two_thirds()) < Decimal("1e-60")
        assert r.to_decimal_string(6) == "0.903602"

    def test_perfect_power_fraction(self):
        r = pow_rational(Scalar(Fraction(8, 27)), Fraction(-2, 3))
        assert r.exact and r == Scalar(Fraction(9, 4))

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            pow_rational(Scalar(-2), Fraction(1, 2))
        with pytest.raises(DomainError):
            pow_rational(Scalar(0), Fraction(0))
        with pytest.raises(DomainError):
            pow_rational(Scalar(0), Fraction(-1))
        assert pow_rational(Scalar(-2), 3) == Scalar(-8)

    def test_exponent_additivity_approx(self):
        x = Scalar(Fraction(7, 5))
        e1, e2 = Fraction(1, 3), Fraction(2, 7)
        lhs = pow_rational(x, e1 + e2)
        rhs = pow_rational(x, e1) * pow_rational(x, e2)
        assert abs(lhs - rhs) <= Scalar(Fraction(1, 10 ** 55)) * lhs


class TestGeometric:
    def test_classical(self):
        assert geometric_tail_sum(Scalar(Fraction(1, 2)), Scalar(1)) == Scalar(2)

    def test_quarter(self):
        assert geometric_tail_sum(Scalar(Fraction(1, 4)), Scalar(Fraction(3, 4))) == Scalar(1)

    def test_weighted_ratio(self):
        # first term 1/2, ratio 1/8
        r = geometric_tail_sum(Scalar(Fraction(1, 8)), Scalar(Fraction(1, 2)))
        assert r.exact and r == Scalar(Fraction(4, 7))
        partial = sum(Fraction(1, 2) * Fraction(1, 8) ** k for k in range(200))
        assert abs(r.as_fraction() - partial) <= Fraction(1, 8) ** 200 * Fraction(4, 7)

    def test_errors(self):
        with pytest.raises(DivergenceError):
            geometric_tail_sum(Scalar(1), Scalar(1))
        with pytest.raises(DomainError):
            geometric_tail_sum(Scalar(0), Scalar(1))
        with pytest.raises(DomainError):
            geometric_tail_sum(Scalar(-1, ), Scalar(1))


class TestPowExpr:
    def test_normalisation_makes_equality_structural(self):
        a = PowExpr(2, Fraction(1), Fraction(6))
        b = PowExpr(2, Fraction(2), Fraction(3))
        assert a == b and hash(a) == hash(b)
        assert a.coefficient == 3 and a.exponent == 2

    def test_multiply_exact(self):
        a = PowExpr(3, Fraction(1, 2), Fraction(2))
        b = PowExpr(3, Fraction(-1, 2), Fraction(5))
        assert a * b == PowExpr.rational(3, 10)
        assert (a * b).to_scalar().exact

    def test_compare_close_values(self):
        # 2^(1/2) vs 1414213562373095/10^15 differ only in the 16th digit.
        root2 = PowExpr.power(2, Fraction(1, 2))
        below = PowExpr.rational(2, Fraction(1414213562373095, 10 ** 15))
        above = PowExpr.rational(2, Fraction(1414213562373096, 10 ** 15))
        assert below < root2 < above
        assert -above < -root2 < -below

    def test_compare_signs(self):
        assert PowExpr.rational(5, -1) < PowExpr.rational(5, 0) < PowExpr.power(5, -100)

    def test_to_scalar(self):
        assert PowExpr(2, Fraction(-3), Fraction(3)).to_scalar() == Scalar(Fraction(3, 8))
        s = PowExpr.power(2, Fraction(1, 2)).to_scalar()
        assert not s.exact
        with localcontext() as ctx:
            ctx.prec = 80
            assert abs(s.as_decimal() - Decimal(2).sqrt()) < Decimal("1e-60")

    def test_prime_power_and_qth_power(self):
        assert prime_power(3, -2) == Scalar(Fraction(1, 9))
        v = PowExpr(2, Fraction(1, 2), Fraction(3))
        assert pow_powexpr(v, 2) == Scalar(18)
        assert pow_powexpr(-v, 2) == Scalar(18)
