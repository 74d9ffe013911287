"""Tests for exact polynomial and rational-function arithmetic in q."""

import random
from fractions import Fraction

import pytest

from qcongruence.errors import DivisionByZeroPoly, ModuliNotCoprime
from qcongruence.polyring import (
    QPoly,
    QRat,
    crt_combine,
    cyclotomic,
    poly_divrem,
    poly_exact_div,
    poly_gcd,
    poly_gcd_ext,
    q_integer,
    ratfun_normalize,
)


def rand_poly(rng, degree, zero_ok=True):
    coeffs = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(degree + 1)]
    p = QPoly(coeffs)
    if not zero_ok and p.is_zero():
        return QPoly([1] + coeffs[1:])
    return p


def rand_rat(rng, degree=4):
    num = rand_poly(rng, rng.randint(0, degree))
    den = rand_poly(rng, rng.randint(0, degree), zero_ok=False)
    return QRat(num, den)


def test_qpoly_construction_and_views():
    f = QPoly([1, 0, Fraction(-2, 3)])
    assert f.degree == 2
    assert f.coefficient(0) == 1
    assert f.coefficient(2) == Fraction(-2, 3)
    assert f.coefficient(7) == 0
    assert f.coeffs() == (1, 0, Fraction(-2, 3))
    assert not f.is_zero() and not f.is_one() and not f.is_constant()
    assert QPoly.zero().is_zero()
    assert QPoly.one().is_one()
    assert QPoly.const(Fraction(3, 4)).is_constant()
    assert QPoly.monomial(3, 2) == QPoly([0, 0, 0, 2])


def test_qpoly_ring_operations():
    one_plus_q = QPoly([1, 1])
    assert one_plus_q**2 == QPoly([1, 2, 1])
    assert one_plus_q * QPoly([1, -1]) == QPoly([1, 0, -1])
    assert one_plus_q + 1 == QPoly([2, 1])
    assert 1 - one_plus_q == QPoly([0, -1])
    assert one_plus_q.shift(2) == QPoly([0, 0, 1, 1])
    assert QPoly([0, 0, 3, 1]).trailing_order() == 2
    assert QPoly([2, 4]).monic() == QPoly([Fraction(1, 2), 1])
    assert QPoly([1, 2, 1]).eval_at(Fraction(1, 2)) == Fraction(9, 4)


def test_qpoly_ring_axioms_random():
    rng = random.Random(20240311)
    for _ in range(60):
        f = rand_poly(rng, rng.randint(0, 5))
        g = rand_poly(rng, rng.randint(0, 5))
        h = rand_poly(rng, rng.randint(0, 5))
        assert f + g == g + f
        assert f * g == g * f
        assert (f + g) + h == f + (g + h)
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert f + QPoly.zero() == f
        assert f * QPoly.one() == f
        assert f - f == QPoly.zero()


def test_poly_divrem_roundtrip_random():
    rng = random.Random(77)
    for _ in range(40):
        f = rand_poly(rng, rng.randint(0, 8))
        g = rand_poly(rng, rng.randint(0, 5), zero_ok=False)
        quot, rem = poly_divrem(f, g)
        assert quot * g + rem == f
        assert rem.is_zero() or rem.degree < g.degree
    with pytest.raises(DivisionByZeroPoly):
        poly_divrem(QPoly([1]), QPoly.zero())


def test_poly_gcd_properties():
    rng = random.Random(78)
    for _ in range(25):
        f = rand_poly(rng, rng.randint(0, 4))
        g = rand_poly(rng, rng.randint(0, 4))
        h = rand_poly(rng, rng.randint(1, 3), zero_ok=False)
        gcd_plain = poly_gcd(f, g)
        gcd_scaled = poly_gcd(f * h, g * h)
        if f.is_zero() and g.is_zero():
            continue
        # gcd is monic and h divides the scaled gcd
        assert gcd_scaled.is_monic()
        _, rem = poly_divrem(gcd_scaled, h.monic())
        assert rem.is_zero()
        assert gcd_scaled == (gcd_plain * h).monic()


def test_poly_gcd_ext_bezout():
    rng = random.Random(79)
    for _ in range(25):
        f = rand_poly(rng, rng.randint(0, 4))
        g = rand_poly(rng, rng.randint(0, 4), zero_ok=False)
        d, u, v = poly_gcd_ext(f, g)
        assert u * f + v * g == d


def test_exact_div_and_q_integer():
    assert q_integer(7) == QPoly([1] * 7)
    assert q_integer(1) == QPoly.one()
    assert q_integer(0) == QPoly.zero()
    neg = q_integer(-3)
    assert isinstance(neg, QRat)
    assert neg == QRat(QPoly([-1, -1, -1]), QPoly.monomial(3))
    assert poly_exact_div(q_integer(6), q_integer(3)) == QPoly([1, 0, 0, 1])


def test_cyclotomic_small_values():
    assert cyclotomic(1) == QPoly([-1, 1])
    assert cyclotomic(2) == QPoly([1, 1])
    assert cyclotomic(4) == QPoly([1, 0, 1])
    assert cyclotomic(6) == QPoly([1, -1, 1])
    assert cyclotomic(12) == QPoly([1, 0, -1, 0, 1])


def test_cyclotomic_product_identities():
    for n in range(1, 61):
        product = QPoly.one()
        qint_product = QPoly.one()
        for d in range(1, n + 1):
            if n % d == 0:
                product = product * cyclotomic(d)
                if d > 1:
                    qint_product = qint_product * cyclotomic(d)
        assert product == QPoly.monomial(n) - 1
        assert qint_product == q_integer(n)


def test_qrat_field_axioms_random():
    rng = random.Random(20240312)
    for _ in range(40):
        x = rand_rat(rng)
        y = rand_rat(rng)
        z = rand_rat(rng)
        assert x + y == y + x
        assert x * y == y * x
        assert (x + y) + z == x + (y + z)
        assert x * (y + z) == x * y + x * z
        assert x - x == QRat.from_value(0)
        if not x.is_zero():
            assert x * x.inverse() == QRat.from_value(1)
            assert x ** (-2) == (x.inverse()) ** 2
        assert (x / y if not y.is_zero() else x) is not None


def test_qrat_reduction_and_eval():
    # (q^2 - 1)/(q - 1) reduces to q + 1
    x = QRat(QPoly([-1, 0, 1]), QPoly([-1, 1]))
    assert x.is_poly()
    assert x.as_poly() == QPoly([1, 1])
    y = ratfun_normalize(QPoly([1, 1]), QPoly([2]))
    assert y == QRat(QPoly([Fraction(1, 2), Fraction(1, 2)]), QPoly.one())
    assert y.eval_at(3) == 2
    with pytest.raises(DivisionByZeroPoly):
        QRat(QPoly.one(), QPoly.zero())
    with pytest.raises(DivisionByZeroPoly):
        QRat(QPoly.one(), QPoly([-1, 1])).eval_at(1)


def test_crt_combine_roundtrip_random():
    rng = random.Random(101)
    m1 = cyclotomic(3)
    m2 = cyclotomic(4)
    product = m1 * m2
    for _ in range(100):
        x = rand_poly(rng, rng.randint(0, 6))
        _, r1 = poly_divrem(x, m1)
        _, r2 = poly_divrem(x, m2)
        combined = crt_combine(QRat.from_value(r1), m1, QRat.from_value(r2), m2)
        assert combined.den.is_one()
        _, diff = poly_divrem(x - combined.num, product)
        assert diff.is_zero()


def test_crt_combine_rational_residue():
    # residue (q + 1)/2 mod Phi_3, residue 1 mod Phi_4
    m1, m2 = cyclotomic(3), cyclotomic(4)
    r1 = QRat(QPoly([1, 1]), QPoly([2]))
    combined = crt_combine(r1, m1, QRat.from_value(1), m2)
    _, rem1 = poly_divrem(combined.num - QPoly([Fraction(1, 2), Fraction(1, 2)]) * combined.den, m1)
    _, rem2 = poly_divrem(combined.num - combined.den, m2)
    assert rem1.is_zero() and rem2.is_zero()


def test_crt_combine_rejects_shared_factor():
    with pytest.raises(ModuliNotCoprime):
        crt_combine(
            QRat.from_value(0), q_integer(6), QRat.from_value(1), q_integer(4)
        )
