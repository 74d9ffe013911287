"""Tests for the statement inventory, instantiation and the runner."""

from fractions import Fraction

import pytest

from qcongruence import catalog
from qcongruence.congruence import build_modulus, congruent, sample_params
from qcongruence.errors import SideConditionViolated, UnknownKind
from qcongruence.expr import eval_expr, parse_expr
from qcongruence.qseries import truncated_sum


def test_inventory_shape():
    statements = catalog.list_statements()
    ids = [s.stmt_id for s in statements]
    assert len(ids) == len(set(ids))
    assert len(statements) == 39
    for stmt in statements:
        assert stmt.kind in ("sum", "expr", "equality", "classical")
        assert stmt.description and stmt.param_doc and stmt.side_doc
        assert stmt.desk, stmt.stmt_id
    with pytest.raises(UnknownKind):
        catalog.get_statement("NOT_A_STATEMENT")


def test_record_json_key_order():
    rec = catalog.run_statement("GS_16", {"n": 2})[0]
    data = rec.to_json_dict()
    assert list(data) == [
        "id",
        "params",
        "modulus",
        "m_choice",
        "status",
        "witness",
        "elapsed_ms",
        "seed",
    ]
    assert data["status"] == "verified"
    assert data["elapsed_ms"] == 0


def test_quartic_sum_statement_both_truncations():
    records = catalog.run_statement("THM_A", {"n": 3})
    assert [r.m_choice for r in records] == ["first", "second"]
    assert all(r.status == "verified" for r in records)
    assert all(r.modulus == "[3]*Phi(3)^4" for r in records)


def test_cubic_vanishing_statement():
    records = catalog.run_statement("GS_16", {"n": 4})
    assert len(records) == 1
    assert records[0].status == "verified"
    assert records[0].modulus == "[4]"


def test_instantiate_and_verify_instance():
    inst = catalog.instantiate("THM_C", {"n": 2}, m_choice="first")
    assert inst.m_value == 1
    assert inst.modulus.label == "[2]*Phi(2)^5"
    rec = catalog.verify_instance(inst)
    assert rec.status == "verified"
    second = catalog.instantiate("THM_C", {"n": 2}, m_choice="second")
    assert second.m_value == 1  # n - 1 coincides with (2n-1)/3 at n = 2
    assert catalog.verify_instance(second).status == "verified"


def test_corrupted_rhs_fails_with_witness():
    inst = catalog.instantiate("THM_B", {"n": 4})
    q = eval_expr(parse_expr("q"), {})
    result = congruent(inst.lhs, inst.rhs * q, inst.modulus)
    assert not result.verified
    assert result.witness["remainder_degree"] >= 0
    assert "failing_factor" in result.witness


def test_side_conditions_raise():
    with pytest.raises(SideConditionViolated):
        catalog.run_statement("THM_B", {"n": 5})
    with pytest.raises(SideConditionViolated):
        catalog.run_statement("GS_16", {"n": 3})
    with pytest.raises(SideConditionViolated):
        catalog.run_statement("THM_A", {"n": 4})
    with pytest.raises(SideConditionViolated):
        catalog.run_statement("GS_16", {"n": 4}, m_policy="second")
    with pytest.raises(SideConditionViolated):
        catalog.run_statement("THM_D", {"n": 4, "d": 3, "r": 2, "c": Fraction(2)})
    with pytest.raises(UnknownKind):
        catalog.run_statement("GS_16", {"n": 4}, m_policy="alternate")


def test_classical_delegation():
    records = catalog.run_statement("COR_1_4", {"p": 5, "s": 1})
    assert [r.m_choice for r in records] == ["first", "second"]
    assert all(r.status == "verified" for r in records)
    assert all(r.modulus == "5^5" for r in records)
    with pytest.raises(UnknownKind):
        catalog.instantiate("COR_1_4", {"p": 5})


def test_sampling_is_deterministic():
    first = [r.to_json_dict() for r in catalog.run_statement("PROP_2_1", {"n": 3}, seed=4)]
    second = [r.to_json_dict() for r in catalog.run_statement("PROP_2_1", {"n": 3}, seed=4)]
    assert first == second
    shifted = [r.to_json_dict() for r in catalog.run_statement("PROP_2_1", {"n": 3}, seed=5)]
    assert first != shifted


def test_explicit_symbols_bypass_sampling():
    records = catalog.run_statement(
        "THM_2_2",
        {"n": 3, "a": Fraction(2), "b": Fraction(3, 2)},
        m_policy="first",
    )
    assert len(records) == 1
    assert records[0].status == "verified"
    assert records[0].params["a"] == "2"
    assert records[0].params["b"] == "3/2"


def test_subsumption_of_historical_weaker_forms():
    # The shifted-square closed form also holds with the older exponent
    # (1+n)/2 modulo the cube [n]*Phi(n)^3, and the mod-[n]*Phi(n)^2 record
    # follows from the stronger statement.
    historical = (
        "qint(n)^2 * q^((1+n)/2)"
        " * poch(q^3; q^4; (n-1)/2) / poch(q^5; q^4; (n-1)/2)"
    )
    for n in (3, 7):
        lhs = truncated_sum(catalog._lhs_quartic(), n - 1)
        wei = eval_expr(parse_expr(historical), {"n": n})
        cube = build_modulus("QINT_PHI_POW", n, {"k": 3})
        assert congruent(lhs, wei, cube).verified
        for rec in catalog.run_statement("GWY", {"n": n}):
            assert rec.status == "verified"


def test_weaker_moduli_monotonicity():
    n = 7
    inst = catalog.instantiate("THM_A", {"n": n}, m_choice="first")
    strong = congruent(inst.lhs, inst.rhs, inst.modulus)
    assert strong.verified
    for weaker in catalog.weaker_moduli(inst.modulus):
        assert congruent(inst.lhs, inst.rhs, weaker).verified


def test_specialization_unit_relation():
    # (1 - b q^n)(b - q^n)(-1 - a^2 + a q^n) / ((a - b)(1 - a b)) is 1
    # modulo (1 - a q^n)(a - q^n), and symmetrically in a and b.
    text = "(1 - {y}*q^n) * ({y} - q^n) * (-1 - {x}^2 + {x}*q^n) / (({x} - {y}) * (1 - {x}*{y}))"
    one = eval_expr(parse_expr("1"), {})
    for n in (2, 3, 5):
        for seed in range(4):
            sample = sample_params(("a", "b"), n, seed=seed)
            env = {"n": n, **sample.assignments}
            for x, y in (("a", "b"), ("b", "a")):
                value = eval_expr(parse_expr(text.format(x=x, y=y)), env)
                modulus = build_modulus("SPECIALIZED", n, {x: env[x]})
                assert congruent(value, one, modulus).verified, (n, seed, x)


def test_rhs_cross_consistency_between_families():
    # The double-series closed form at (d, r, c) = (3, 1, 1) collapses to the
    # single-series closed form modulo [n]*Phi(n)^4, and the [dn-n] variant
    # collapses to the 5[2n] form modulo [n]*Phi(n)^5.
    for n in (4, 7):
        d_rhs = eval_expr(
            parse_expr(catalog._THM_D_RHS), {"n": n, "d": 3, "r": 1, "c": Fraction(1)}
        )
        b_rhs = eval_expr(parse_expr(catalog._THM_B_RHS), {"n": n})
        modulus = build_modulus("QINT_PHI_POW", n, {"k": 4})
        assert congruent(d_rhs, b_rhs, modulus).verified, n
    for n in (2, 5):
        e_rhs = eval_expr(parse_expr(catalog._THM_E_RHS), {"n": n, "d": 3, "r": 1})
        c_rhs = eval_expr(parse_expr(catalog._THM_C_RHS), {"n": n})
        modulus = build_modulus("QINT_PHI_POW", n, {"k": 5})
        assert congruent(e_rhs, c_rhs, modulus).verified, n


def test_equality_statement_records():
    for t in (0, 1, 4):
        records = catalog.run_statement("LEM_REL", {"t": t})
        assert len(records) == 1
        assert records[0].status == "verified"
        assert records[0].modulus == "exact"


def test_expression_statements():
    for stmt_id, n in (("LEM_WEI_K", 7), ("LEM_WEI_M", 9), ("LEM_WEI_N", 7), ("LEM_PP", 5)):
        records = catalog.run_statement(stmt_id, {"n": n})
        assert [r.status for r in records] == ["verified"], stmt_id


def test_degree_d_families_with_negative_offsets():
    for stmt_id, bindings in (
        ("THM_D", {"n": 4, "d": 3, "r": -2, "c": Fraction(3, 2)}),
        ("THM_E", {"n": 4, "d": 3, "r": -1}),
    ):
        records = catalog.run_statement(stmt_id, bindings)
        assert all(r.status == "verified" for r in records), stmt_id


def test_parametric_degree_d_statement_with_scale():
    records = catalog.run_statement(
        "PROP_5_3", {"n": 2, "d": 3, "r": 1, "t": 2}, trials=1
    )
    assert all(r.status == "verified" for r in records)
    with pytest.raises(SideConditionViolated):
        catalog.run_statement("PROP_5_3", {"n": 4, "d": 3, "r": 1, "t": 2}, trials=1)
