"""Tests for the p-adic Gamma function and the classical congruence checkers."""

from fractions import Fraction

import pytest

from qcongruence.arith import PadicInt, padic_valuation, residue_of_rational
from qcongruence.errors import (
    NotPIntegral,
    PrecisionBudgetExceeded,
    SideConditionViolated,
    UnknownKind,
)
from qcongruence.padic import (
    CLASSICAL_IDS,
    _GammaForm,
    _gamma_congruent,
    _sum_fifth_alt,
    _sum_quartic,
    bernoulli,
    gamma_p,
    harmonic,
    rational_congruent,
    rising,
    verify_classical,
)

PRIMES = (5, 7, 11, 13)


def test_bernoulli_small_values():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(12) == Fraction(-691, 2730)


def test_bernoulli_odd_indices_vanish():
    for n in (3, 5, 7, 9, 11):
        assert bernoulli(n) == 0


def test_harmonic_values():
    assert harmonic(0, 2) == 0
    assert harmonic(3, 1) == Fraction(11, 6)
    assert harmonic(6, 2) == Fraction(5369, 3600)
    with pytest.raises(ValueError):
        harmonic(-1, 2)
    with pytest.raises(ValueError):
        harmonic(3, 0)


def test_rising_values():
    assert rising(Fraction(1, 2), 0) == 1
    assert rising(Fraction(1, 2), 3) == Fraction(15, 8)
    assert rising(Fraction(-2), 3) == 0
    with pytest.raises(ValueError):
        rising(Fraction(1, 2), -1)


def test_gamma_small_arguments():
    # Gamma_p(1) = -1 and Gamma_p(2) = 1 for every odd p.
    assert gamma_p(1, 5, 2) == PadicInt(5, 2, 24)
    assert gamma_p(2, 5, 2) == 1
    assert gamma_p(3, 5, 2) == PadicInt(5, 2, 23)
    assert gamma_p(0, 5, 2) == 1


def test_gamma_half_square_is_minus_one():
    g = gamma_p(Fraction(1, 2), 5, 3)
    assert g * g == PadicInt(5, 3, 124)


def test_gamma_reflection_grid():
    # Gamma_p(x) Gamma_p(1-x) = (-1)^(m-1) with m the least nonnegative
    # residue of -x modulo p.
    args = [Fraction(1, 2), Fraction(1, 3), Fraction(1, 4), Fraction(2, 3),
            Fraction(3, 4), Fraction(1, 6), Fraction(5), Fraction(7, 2)]
    for p in PRIMES:
        for x in args:
            if padic_valuation(x, p) < 0:
                continue
            lhs = gamma_p(x, p, 3) * gamma_p(1 - x, p, 3)
            m = residue_of_rational(-x, p, 1)
            assert lhs == (-1 if (m - 1) % 2 else 1), (p, x)


def test_gamma_functional_equation_grid():
    # Gamma_p(x+1) / Gamma_p(x) is -x when x is a p-unit and -1 otherwise.
    args = [Fraction(1), Fraction(2), Fraction(1, 2), Fraction(1, 3),
            Fraction(3, 4), Fraction(0), Fraction(5), Fraction(10, 3)]
    for p in PRIMES:
        for x in args:
            if padic_valuation(x, p) < 0:
                continue
            ratio = gamma_p(x + 1, p, 3) * gamma_p(x, p, 3) ** (-1)
            expected = -x if padic_valuation(x, p) == 0 else Fraction(-1)
            assert ratio == expected, (p, x)


def test_gamma_precision_consistency():
    # More digits of the argument never change the leading digits of the value.
    for p in (5, 7):
        for x in (Fraction(1, 3), Fraction(3, 4), Fraction(9, 2)):
            if padic_valuation(x, p) < 0:
                continue
            wide = gamma_p(x, p, 4)
            narrow = gamma_p(x, p, 2)
            assert wide.truncate(2) == narrow


def test_gamma_budget_and_domain():
    with pytest.raises(PrecisionBudgetExceeded):
        gamma_p(Fraction(1, 3), 13, 7, budget=10**7)
    assert gamma_p(Fraction(1, 3), 13, 7, budget=None).precision == 7
    with pytest.raises(NotPIntegral):
        gamma_p(Fraction(1, 5), 5, 2)


def test_rational_congruent_basics():
    ok = rational_congruent(Fraction(1, 3), Fraction(1, 3) + 125, 5, 3)
    assert ok.verified and ok.witness["valuation"] == 3
    exact = rational_congruent(Fraction(2, 7), Fraction(2, 7), 5, 3)
    assert exact.verified and exact.witness["valuation"] is None
    bad = rational_congruent(1, 2, 5, 1)
    assert not bad.verified and bad.witness == {"valuation": 0, "required": 1}
    with pytest.raises(NotPIntegral):
        rational_congruent(Fraction(1, 5), 0, 5, 1)


def test_quartic_sum_frozen_difference():
    # At p = 5 the half-range quartic sum misses its closed form by
    # exactly -5^6 * 13 / 2^15, comfortably inside the p^5 modulus.
    lhs = _sum_quartic(2)
    assert lhs == Fraction(29835, 32768)
    rhs = Fraction(1, 4) * (
        5
        + Fraction(125, 4) * harmonic(2, 2)
        - Fraction(125, 8) * harmonic(1, 2)
    )
    assert lhs - rhs == Fraction(-203125, 32768)
    assert padic_valuation(lhs - rhs, 5) == 6


def test_cor_1_4_records():
    for p in PRIMES:
        records = verify_classical("COR_1_4", p)
        assert [rec["m_choice"] for rec in records] == ["first", "second"]
        for rec in records:
            assert rec["status"] == "verified", rec
            assert rec["modulus"] == f"{p}^5"
    deep = verify_classical("COR_1_4", 5, s=2)
    assert all(rec["status"] == "verified" for rec in deep)
    assert deep[0]["modulus"] == "5^6"


def test_cor_5_g_frozen_value():
    # d = 4, p = 5, r = 1: both sides reduce to 1015/1024 exactly.
    assert _sum_fifth_alt(4, 1, 1) == Fraction(1015, 1024)
    records = verify_classical("COR_5_G", 5, d=4, r=1)
    assert all(rec["status"] == "verified" for rec in records)


def test_sun_statements():
    assert harmonic(6, 2) - Fraction(14, 3) * bernoulli(4) == Fraction(5929, 3600)
    for p in PRIMES:
        for stmt in ("SUN_H2", "SUN_H2HALF"):
            (rec,) = verify_classical(stmt, p)
            assert rec["status"] == "verified", (stmt, p)
            assert rec["modulus"] == f"{p}^2"
    for p in (7, 11, 13):
        (rec,) = verify_classical("SUN_H3", p)
        assert rec["status"] == "verified", p
        assert rec["modulus"] == f"{p}^1"


def test_gamma_statements():
    cases = [
        ("PROP_1_7", 13, "13^4"),
        ("PROP_1_7", 7, "7^3"),
        ("PROP_1_8", 7, "7^4"),
        ("PROP_1_8", 5, "5^5"),
        ("VH_A2", 5, "5^3"),
        ("VH_A2", 7, "7^3"),
        ("VH_D2", 7, "7^4"),
        ("LIU", 7, "7^4"),
        ("LR", 7, "7^6"),
        ("LR", 11, "11^6"),
    ]
    for stmt, p, modulus in cases:
        for rec in verify_classical(stmt, p):
            assert rec["status"] == "verified", (stmt, p, rec)
            assert rec["modulus"] == modulus


def test_gamma_congruent_negative_control():
    # Flipping the sign of the Gamma-product coefficient must be detected.
    (_, checks) = CLASSICAL_IDS["PROP_1_7"].checker(13, 1)
    _, lhs, form = checks[0]
    good = _gamma_congruent(lhs, form, 13, 4, 10**7)
    assert good.verified
    bad = _gamma_congruent(lhs, _GammaForm(0, Fraction(1), form.factors), 13, 4, 10**7)
    assert not bad.verified
    assert bad.witness["lhs_residue"] != bad.witness["rhs_residue"]


def test_side_conditions_and_selection():
    with pytest.raises(UnknownKind):
        verify_classical("NOT_A_STATEMENT", 5)
    with pytest.raises(SideConditionViolated):
        verify_classical("VH_D2", 11)
    with pytest.raises(SideConditionViolated):
        verify_classical("COR_1_5", 5)
    with pytest.raises(SideConditionViolated):
        verify_classical("SUN_H2", 7, s=2)
    with pytest.raises(SideConditionViolated):
        verify_classical("COR_5_E", 7)
    with pytest.raises(SideConditionViolated):
        verify_classical("LIU", 7, d=3, r=1)
    with pytest.raises(SideConditionViolated):
        verify_classical("COR_5_H", 7, d=5, r=1)
    only = verify_classical("COR_1_4", 5, m_choice="second")
    assert len(only) == 1 and only[0]["m_choice"] == "second"
    with pytest.raises(SideConditionViolated):
        verify_classical("COR_1_4", 5, m_choice="nope")
    with pytest.raises(SideConditionViolated):
        verify_classical("SUN_H2", 5, m_choice="second")


def test_all_acceptance_ids_registered():
    expected = {
        "COR_1_4", "COR_1_5", "COR_1_6", "PROP_1_7", "PROP_1_8",
        "VH_A2", "VH_D2", "LIU", "LR",
        "COR_5_E", "COR_5_G", "COR_5_H",
        "SUN_H2", "SUN_H2HALF", "SUN_H3",
    }
    assert set(CLASSICAL_IDS) == expected
    for stmt in CLASSICAL_IDS.values():
        assert stmt.desk_cases, stmt.stmt_id


def test_gamma_reflection_grid_high_precision():
    # Gamma_p(x) * Gamma_p(1-x) = (-1)^(m-1) with m the least nonnegative
    # residue of -x mod p, on a finer grid than the basic reflection test.
    for p in PRIMES:
        for x in (Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(3, 4)):
            if x.denominator % p == 0:
                continue
            lhs = gamma_p(x, p, 4) * gamma_p(1 - x, p, 4)
            m = residue_of_rational(-x, p, 1)
            assert lhs == (-1 if (m - 1) % 2 else 1), (p, x)


def test_gamma_functional_equation_integers():
    # Gamma_p(x+1)/Gamma_p(x) is -x for units and -1 on multiples of p,
    # checked across two full periods of integers.
    for p in (5, 7):
        for x in range(1, 2 * p + 1):
            ratio = gamma_p(x + 1, p, 3) * gamma_p(x, p, 3) ** (-1)
            expected = -x if x % p else -1
            assert ratio == expected, (p, x)


def test_gamma_wilson_consistency():
    # At integer p the product definition collapses to -(p-1)!.
    import math

    for p in PRIMES:
        expected = -math.factorial(p - 1)
        assert gamma_p(p, p, 4) == expected, p


def test_bernoulli_recurrence():
    # sum_{k=0}^{m} C(m+1, k) B_k = 0 for every m >= 1.
    import math

    for m in range(1, 21):
        total = sum(math.comb(m + 1, k) * bernoulli(k) for k in range(m + 1))
        assert total == 0, m


def test_q_to_one_bridge_matches_classical_sum():
    # The truncated q-side cubic sum at n = 4, M = 1 specializes at q = 1
    # to the classical sum of (6k+1) ((1/3)_k / k!)^6.
    from qcongruence import catalog
    from qcongruence.padic import _sum_cubic
    from qcongruence.qseries import truncated_sum

    lhs = truncated_sum(catalog._lhs_cubic(), 1)
    assert lhs.eval_at(1) == _sum_cubic(1)
    assert _sum_cubic(1) == 1 + 7 * Fraction(1, 3) ** 6
