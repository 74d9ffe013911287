"""Declarative inventory of verifiable congruence statements, plus the runner.

Each q-side entry binds a truncated-sum shape (TermSpec) or an expression text
for its left side, an expression text for its right side, a factored modulus,
side conditions, and the truncation choices the statement offers.  Classical
(q -> 1) entries delegate to the padic module.  Statement ids are stable
strings forming the CLI contract.

Truncation slots are reported as "first" and "second" in records; what each
slot means (for example (n-1)/2 versus n-1) is part of the statement's
documentation returned by list_statements.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable

from . import padic
from .congruence import Modulus, build_modulus, congruent, sample_params
from .errors import (
    DenominatorNotUnit,
    NonIntegerBound,
    QCongruenceError,
    SideConditionViolated,
    UnknownKind,
)
from .expr import eval_expr, parse_expr
from .qseries import TermSpec, qma, truncated_sum, truncated_sum_prefixes

__all__ = [
    "CongruenceInstance",
    "Statement",
    "VerificationRecord",
    "get_statement",
    "instantiate",
    "list_statements",
    "run_statement",
    "verify_instance",
    "weaker_moduli",
]

_RESAMPLE_STRIDE = 1_000_003
_MAX_RESAMPLES = 5


@dataclass(frozen=True)
class VerificationRecord:
    """One verdict line: serializable to the fixed-order JSONL schema."""

    stmt_id: str
    params: dict
    modulus: str
    m_choice: str
    status: str  # verified | failed | skipped | error
    witness: dict | None
    elapsed_ms: int = 0
    seed: int | None = None

    def to_json_dict(self) -> dict:
        return {
            "id": self.stmt_id,
            "params": _json_safe(self.params),
            "modulus": self.modulus,
            "m_choice": self.m_choice,
            "status": self.status,
            "witness": _json_safe(self.witness),
            "elapsed_ms": self.elapsed_ms,
            "seed": self.seed,
        }


def _json_safe(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


@dataclass(frozen=True)
class CongruenceInstance:
    """A fully evaluated statement at one parameter point and truncation."""

    stmt_id: str
    params: dict
    m_choice: str
    m_value: int | None
    lhs: object
    rhs: object
    modulus: Modulus | None
    kind: str
    seed: int | None = None


@dataclass(frozen=True)
class _Plan:
    """Everything needed to evaluate one q-side statement instance."""

    kind: str  # sum | expr | equality
    modulus: Modulus | None
    m_choices: tuple[tuple[str, int], ...]
    spec: TermSpec | None
    lhs_text: str | None
    rhs_text: str
    env: dict


@dataclass(frozen=True)
class Statement:
    stmt_id: str
    description: str
    kind: str  # sum | expr | equality | classical
    param_doc: str
    side_doc: str
    m_doc: str
    symbols: tuple[str, ...] = ()
    build: Callable | None = None
    desk: tuple[dict, ...] = ()


STATEMENTS: dict[str, Statement] = {}


def _register(stmt: Statement):
    if stmt.stmt_id in STATEMENTS:
        raise ValueError(f"duplicate statement id {stmt.stmt_id}")
    STATEMENTS[stmt.stmt_id] = stmt


def list_statements() -> list[Statement]:
    return list(STATEMENTS.values())


def get_statement(stmt_id: str) -> Statement:
    stmt = STATEMENTS.get(stmt_id)
    if stmt is None:
        raise UnknownKind(f"unknown statement id {stmt_id!r}")
    return stmt


# -- small helpers ---------------------------------------------------------


def _require(cond: bool, message: str):
    if not cond:
        raise SideConditionViolated(message)


def _int_param(bindings: dict, name: str, default=None) -> int:
    value = bindings.get(name, default)
    if value is None:
        raise SideConditionViolated(f"parameter {name!r} is required")
    if isinstance(value, bool) or not isinstance(value, int):
        raise SideConditionViolated(f"parameter {name!r} must be an integer")
    return value


def _frac_param(bindings: dict, name: str) -> Fraction:
    value = bindings.get(name)
    if value is None:
        raise SideConditionViolated(f"parameter {name!r} is required")
    value = Fraction(value)
    if value == 0:
        raise SideConditionViolated(f"parameter {name!r} must be nonzero")
    return value


def _exact_div(num: int, den: int, what: str) -> int:
    if num % den:
        raise NonIntegerBound(f"{what} = {num}/{den} is not an integer")
    return num // den


def _u(exp: int):
    return qma(1, exp)


def _serialize_params(bindings: dict, symbols: tuple[str, ...]) -> dict:
    out = {}
    for key in ("n", "t", "d", "r", "p", "s"):
        if key in bindings and bindings[key] is not None:
            out[key] = bindings[key]
    for sym in symbols:
        if sym in bindings:
            out[sym] = str(Fraction(bindings[sym]))
    return out


def weaker_moduli(m: Modulus) -> list[Modulus]:
    """All moduli obtained by dropping exactly one factor multiplicity."""
    out = []
    for i, (f, mult) in enumerate(m.factors):
        factors = list(m.factors)
        if mult > 1:
            factors[i] = (f, mult - 1)
        else:
            factors.pop(i)
        out.append(Modulus(tuple(factors)))
    return out


# -- left-hand sum shapes ----------------------------------------------------


def _lhs_quartic() -> TermSpec:
    numer = ((_u(1), 2),) * 4 + ((_u(2), 4),)
    denom = ((_u(2), 2),) * 4 + ((_u(4), 4),)
    return TermSpec(2, 1, numer, denom, _u(1), sign=-1)


def _lhs_cubic() -> TermSpec:
    return TermSpec(3, 1, ((_u(1), 3),) * 6, ((_u(3), 3),) * 6, _u(3))


def _lhs_quartic_ab(a: Fraction, b: Fraction) -> TermSpec:
    numer = (
        (qma(a, 1), 2),
        (qma(1 / a, 1), 2),
        (qma(b, 1), 2),
        (qma(1 / b, 1), 2),
        (_u(2), 4),
    )
    denom = (
        (qma(1 / a, 2), 2),
        (qma(a, 2), 2),
        (qma(1 / b, 2), 2),
        (qma(b, 2), 2),
        (_u(4), 4),
    )
    return TermSpec(2, 1, numer, denom, _u(1), sign=-1)


def _lhs_cubic_ab(a: Fraction, b: Fraction) -> TermSpec:
    numer = (
        (qma(a, 1), 3),
        (qma(1 / a, 1), 3),
        (qma(b, 1), 3),
        (qma(1 / b, 1), 3),
        (_u(1), 3),
        (_u(1), 3),
    )
    denom = (
        (qma(1 / a, 3), 3),
        (qma(a, 3), 3),
        (qma(1 / b, 3), 3),
        (qma(b, 3), 3),
        (_u(3), 3),
        (_u(3), 3),
    )
    return TermSpec(3, 1, numer, denom, _u(3))


def _lhs_nw_abc(a: Fraction, b: Fraction, c: Fraction, d: int, r: int) -> TermSpec:
    numer = (
        (qma(a, r), d),
        (qma(1 / a, r), d),
        (qma(b, r), d),
        (qma(1 / b, r), d),
        (qma(1 / c, r), d),
        (_u(r), d),
    )
    denom = (
        (qma(1 / a, d), d),
        (qma(a, d), d),
        (qma(1 / b, d), d),
        (qma(b, d), d),
        (qma(c, d), d),
        (_u(d), d),
    )
    return TermSpec(d, r, numer, denom, qma(c, 2 * d - 3 * r))


def _lhs_nw_ab(a: Fraction, b: Fraction, d: int, r: int) -> TermSpec:
    numer = (
        (qma(a, r), d),
        (qma(1 / a, r), d),
        (qma(b, r), d),
        (qma(1 / b, r), d),
        (_u(r), d),
        (_u(r), d),
    )
    denom = (
        (qma(1 / a, d), d),
        (qma(a, d), d),
        (qma(1 / b, d), d),
        (qma(b, d), d),
        (_u(d), d),
        (_u(d), d),
    )
    return TermSpec(d, r, numer, denom, _u(2 * d - 3 * r))


def _lhs_sixth_c(c: Fraction, d: int, r: int) -> TermSpec:
    numer = ((_u(r), d),) * 5 + ((qma(c, r), d),)
    denom = ((_u(d), d),) * 5 + ((qma(1 / c, d), d),)
    return TermSpec(d, r, numer, denom, qma(1 / c, 2 * d - 3 * r))


def _lhs_sixth(d: int, r: int) -> TermSpec:
    return TermSpec(d, r, ((_u(r), d),) * 6, ((_u(d), d),) * 6, _u(2 * d - 3 * r))


def _lhs_54_abc(a: Fraction, b: Fraction, c: Fraction, d: int, r: int) -> TermSpec:
    numer = (
        (qma(a, r), d),
        (qma(1 / a, r), d),
        (qma(b, r), d),
        (qma(1 / b, r), d),
        (qma(c, r), d),
        (_u(r), d),
    )
    denom = (
        (qma(1 / a, d), d),
        (qma(a, d), d),
        (qma(1 / b, d), d),
        (qma(b, d), d),
        (qma(1 / c, d), d),
        (_u(d), d),
    )
    return TermSpec(d, r, numer, denom, qma(1 / c, 2 * d - 3 * r))


# -- right-hand expression texts ---------------------------------------------

_CENTER_SUM = (
    "sum(j, 1, (n-1)/2, (-1)^(j+1) * q^(2*j-n) / qint(2*j)^2)"
)

_THM_A_RHS_1 = (
    "qint(n) * (poch(q^2; q^4; (n-1)/4) / poch(q^4; q^4; (n-1)/4))^2"
    f" * (1 + qint(n)^2 * {_CENTER_SUM})"
)
_THM_A_RHS_3 = (
    "qint(n)^2 * q^((1-n)/2)"
    " * poch(q^3; q^4; (n-1)/2) / poch(q^5; q^4; (n-1)/2)"
)
_GWY_RHS_1 = "qint(n) * (poch(q^2; q^4; (n-1)/4) / poch(q^4; q^4; (n-1)/4))^2"

_CUBIC_TAIL = (
    "sum(j, 1, {upper}, q^(3*j-1) / qint(3*j-1)^2 - q^(3*j) / qint(3*j)^2)"
)

_THM_B_RHS = (
    "qint(n) * (poch(q^2; q^3; (n-1)/3) / poch(q^3; q^3; (n-1)/3))^3"
    " * (1 + qint(n)^2 * (2 - q^n) * "
    + _CUBIC_TAIL.format(upper="(n-1)/3")
    + ")"
)
_THM_C_RHS = (
    "5 * qint(2*n) * (poch(q^2; q^3; (2*n-1)/3) / poch(q^3; q^3; (2*n-1)/3))^3"
)
_LEM_OO_RHS = (
    "qint(2*n) * (poch(q^2; q^3; (2*n-1)/3) / poch(q^3; q^3; (2*n-1)/3))^3"
    " * (1 + qint(2*n)^2 * (2 - q^(2*n)) * "
    + _CUBIC_TAIL.format(upper="(2*n-1)/3")
    + ")"
)
_LEM_PP_LHS = (
    "1 + qint(2*n)^2 * (2 - q^(2*n)) * " + _CUBIC_TAIL.format(upper="(2*n-1)/3")
)

_WEI_CUBE_LHS = (
    "-(qint(n)^3) * q^(1-n) / (1+q)^2"
    " * poch(q^4; q^4; (n-3)/4)^2 / poch(q^6; q^4; (n-3)/4)^2"
)
_WEI_RATIO_LHS = (
    "qint(n)^2 * poch(q^3; q^4; (n-1)/2) / poch(q^5; q^4; (n-1)/2)"
)

_LEM_REL_LHS = "poch(q; q^2; t) / poch(q^2; q^2; t)"
_LEM_REL_RHS = "poch(q; q; 2*t) / (poch(q; q; t)^2 * poch(-q; q; t)^2)"


def _omega(x: str, y: str) -> str:
    return (
        f"(qint(n) * (-({x}*q^(-n))) * (1 - {y}*q^n) * ({y} - q^n)"
        f" / (({x} - {y}) * (1 - {x}*{y})))"
    )


def _quartic_term_1(x: str, y: str) -> str:
    length = "(n-1)/4"
    return (
        f"{_omega(x, y)}"
        f" * poch({y}*q^2; q^4; {length}) * poch(q^2/{y}; q^4; {length})"
        f" / (poch(q^4/{y}; q^4; {length}) * poch({y}*q^4; q^4; {length}))"
    )


def _quartic_term_3(x: str, y: str) -> str:
    length = "(n+1)/4"
    return (
        f"{_omega(x, y)} * (-(q))"
        f" * poch({y}; q^4; {length}) * poch(1/{y}; q^4; {length})"
        f" / (poch(q^2/{y}; q^4; {length}) * poch({y}*q^2; q^4; {length}))"
    )


_QUARTIC_AB_RHS_1 = _quartic_term_1("a", "b") + " + " + _quartic_term_1("b", "a")
_QUARTIC_AB_RHS_3 = _quartic_term_3("a", "b") + " + " + _quartic_term_3("b", "a")


def _theta(x: str, y: str, e: str) -> str:
    return (
        f"((1 - {y}*q^({e})) * ({y} - q^({e})) * (-1 - {x}^2 + {x}*q^({e}))"
        f" / (({x} - {y}) * (1 - {x}*{y})))"
    )


def _cubic_term(x: str, y: str) -> str:
    length = "(t*n-1)/3"
    return (
        f"qint(t*n) * {_theta(x, y, 't*n')}"
        f" * poch({y}*q^2; q^3; {length}) * poch(q^2/{y}; q^3; {length})"
        f" * poch(q^2; q^3; {length})"
        f" / (poch(q^3/{y}; q^3; {length}) * poch({y}*q^3; q^3; {length})"
        f" * poch(q^3; q^3; {length}))"
    )


_CUBIC_AB_RHS = _cubic_term("a", "b") + " + " + _cubic_term("b", "a")

_HARMONIC_PAIR = "q^(d*j) / qint(d*j)^2 + q^(d*j-d+r) / qint(d*j-d+r)^2"

_THM_D_RHS = (
    "qint(n) * (c*q^r)^((r-n)/d)"
    " * poch(c*q^(2*r); q^d; (n-r)/d) / poch(q^d/c; q^d; (n-r)/d)"
    " * sum(k, 0, (n-r)/d,"
    " poch(q^r; q^d; k)^2 * poch(q^(d-r); q^d; k) * poch(c*q^r; q^d; k)"
    " * q^(d*k) / (poch(q^d; q^d; k)^3 * poch(c*q^(2*r); q^d; k))"
    " * (1 - qint(n)^2 * (2 - q^n)"
    f" * sum(j, 1, k, {_HARMONIC_PAIR})))"
)

_THM_E_RHS = (
    "qint(d*n-n) * q^((r*(r+n-d*n))/d)"
    " * poch(q^(2*r); q^d; (d*n-n-r)/d) / poch(q^d; q^d; (d*n-n-r)/d)"
    " * sum(k, 0, (d*n-n-r)/d,"
    " poch(q^r; q^d; k)^3 * poch(q^(d-r); q^d; k)"
    " * q^(d*k) / (poch(q^d; q^d; k)^3 * poch(q^(2*r); q^d; k))"
    " * (1 - qint(d*n-n)^2 * (2 - q^(d*n-n))"
    f" * sum(j, 1, k, {_HARMONIC_PAIR})))"
)


def _p53_inner(x: str, y: str) -> str:
    return (
        "sum(k, 0, (t*n-r)/d,"
        f" poch({x}*q^r; q^d; k) * poch(q^r/{x}; q^d; k)"
        " * poch(c*q^r; q^d; k) * poch(q^(d-r); q^d; k) * q^(d*k)"
        f" / (poch({y}*q^d; q^d; k) * poch(q^d/{y}; q^d; k)"
        " * poch(c*q^(2*r); q^d; k) * poch(q^d; q^d; k)))"
    )


_PROP_5_3_RHS = (
    "qint(t*n) * (c*q^r)^((r-t*n)/d)"
    " * poch(c*q^(2*r); q^d; (t*n-r)/d) / poch(q^d/c; q^d; (t*n-r)/d)"
    " * (" + _theta("a", "b", "t*n") + " * " + _p53_inner("a", "b")
    + " + " + _theta("b", "a", "t*n") + " * " + _p53_inner("b", "a") + ")"
)


def _t55_inner(x: str, y: str) -> str:
    return (
        "sum(k, 0, (d*n-n-r)/d,"
        f" poch({x}*q^r; q^d; k) * poch(q^r/{x}; q^d; k)"
        " * poch(q^r; q^d; k) * poch(q^(d-r); q^d; k) * q^(d*k)"
        f" / (poch({y}*q^d; q^d; k) * poch(q^d/{y}; q^d; k)"
        " * poch(q^(2*r); q^d; k) * poch(q^d; q^d; k)))"
    )


_THM_5_5_RHS = (
    "qint(d*n-n) * q^((r*(r+n-d*n))/d)"
    " * poch(q^(2*r); q^d; (d*n-n-r)/d) / poch(q^d; q^d; (d*n-n-r)/d)"
    " * (" + _theta("a", "b", "d*n-n") + " * " + _t55_inner("a", "b")
    + " + " + _theta("b", "a", "d*n-n") + " * " + _t55_inner("b", "a") + ")"
)


# -- per-statement builders ---------------------------------------------------


def _build_thm_a(b: dict) -> _Plan:
    n = _int_param(b, "n")
    _require(n >= 1 and n % 2 == 1, f"n must be a positive odd integer, got {n}")
    rhs = _THM_A_RHS_1 if n % 4 == 1 else _THM_A_RHS_3
    return _Plan(
        "sum",
        build_modulus("QINT_PHI_POW", n, {"k": 4}),
        (("first", (n - 1) // 2), ("second", n - 1)),
        _lhs_quartic(),
        None,
        rhs,
        {"n": n},
    )


def _build_gwy(b: dict) -> _Plan:
    n = _int_param(b, "n")
    _require(n >= 1 and n % 2 == 1, f"n must be a positive odd integer, got {n}")
    rhs = _GWY_RHS_1 if n % 4 == 1 else "0"
    return _Plan(
        "sum",
        build_modulus("QINT_PHI_POW", n, {"k": 2}),
        (("first", (n - 1) // 2), ("second", n - 1)),
        _lhs_quartic(),
        None,
        rhs,
        {"n": n},
    )


def _build_thm_b(b: dict) -> _Plan:
    n = _int_param(b, "n")
    _require(n >= 1 and n % 3 == 1, f"n must be 1 mod 3, got {n}")
    return _Plan(
        "sum",
        build_modulus("QINT_PHI_POW", n, {"k": 4}),
        (("first", (n - 1) // 3), ("second", n - 1)),
        _lhs_cubic(),
        None,
        _THM_B_RHS,
        {"n": n},
    )


def _build_thm_c(b: dict) -> _Plan:
    n = _int_param(b, "n")
    _require(n >= 2 and n % 3 == 2, f"n must be 2 mod 3, got {n}")
    return _Plan(
        "sum",
        build_modulus("QINT_PHI_POW", n, {"k": 5}),
        (("first", (2 * n - 1) // 3), ("second", n - 1)),
        _lhs_cubic(),
        None,
        _THM_C_RHS,
        {"n": n},
    )


def _build_gs_16(b: dict) -> _Plan:
    n = _int_param(b, "n")
    _require(n >= 1 and n % 3 != 0, f"n must not be divisible by 3, got {n}")
    if n % 3 == 1:
        modulus = build_modulus("QINT", n)
    else:
        modulus = build_modulus("QINT_PHI_POW", n, {"k": 1})
    return _Plan(
        "sum", modulus, (("first", n - 1),), _lhs_cubic(), None, "0", {"n": n}
    )


def _build_prop_2_1(b: dict) -> _Plan:
    n = _int_param(b, "n")
    _require(n >= 1 and n % 2 == 1, f"n must be a positive odd integer, got {n}")
    a, bb = _frac_param(b, "a"), _frac_param(b, "b")
    rhs = _QUARTIC_AB_RHS_1 if n % 4 == 1 else _QUARTIC_AB_RHS_3
    return _Plan(
        "sum",
        build_modulus("SPECIALIZED", n, {"a": a, "b": bb}),
        (("first", (n - 1) // 2), ("second", n - 1)),
        _lhs_quartic_ab(a, bb),
        None,
        rhs,
        {"n": n, "a": a, "b": bb},
    )


def _build_thm_2_2(b: dict) -> _Plan:
    n = _int_param(b, "n")
    _require(n >= 1 and n % 2 == 1, f"n must be a positive odd integer, got {n}")
    a, bb = _frac_param(b, "a"), _frac_param(b, "b")
    rhs = _QUARTIC_AB_RHS_1 if n % 4 == 1 else _QUARTIC_AB_RHS_3
    return _Plan(
        "sum",
        build_modulus("QINT_SPECIALIZED", n, {"a": a, "b": bb}),
        (("first", (n - 1) // 2), ("second", n - 1)),
        _lhs_quartic_ab(a, bb),
        None,
        rhs,
        {"n": n, "a": a, "b": bb},
    )


def _build_prop_3_1(b: dict) -> _Plan:
    n = _int_param(b, "n")
    _require(n >= 1 and n % 3 in (1, 2), f"n must be 1 or 2 mod 3, got {n}")
    t = _int_param(b, "t", n % 3)
    _require(t in (1, 2), f"t must be 1 or 2, got {t}")
    _require(n % 3 == t % 3, f"n = {n} must be congruent to t = {t} mod 3")
    a, bb = _frac_param(b, "a"), _frac_param(b, "b")
    return _Plan(
        "sum",
        build_modulus("SPECIALIZED", n, {"t": t, "a": a, "b": bb}),
        (("first", (t * n - 1) // 3), ("second", n - 1)),
        _lhs_cubic_ab(a, bb),
        None,
        _CUBIC_AB_RHS,
        {"n": n, "t": t, "a": a, "b": bb},
    )


def _build_thm_3_2(b: dict) -> _Plan:
    n = _int_param(b, "n")
    _require(n >= 1 and n % 3 == 1, f"n must be 1 mod 3, got {n}")
    a, bb = _frac_param(b, "a"), _frac_param(b, "b")
    return _Plan(
        "sum",
        build_modulus("QINT_SPECIALIZED", n, {"a": a, "b": bb}),
        (("first", (n - 1) // 3), ("second", n - 1)),
        _lhs_cubic_ab(a, bb),
        None,
        _CUBIC_AB_RHS,
        {"n": n, "t": 1, "a": a, "b": bb},
    )


def _build_thm_3_3(b: dict) -> _Plan:
    n = _int_param(b, "n")
    _require(n >= 2 and n % 3 == 2, f"n must be 2 mod 3, got {n}")
    a, bb = _frac_param(b, "a"), _frac_param(b, "b")
    return _Plan(
        "sum",
        build_modulus("QINT_PHI_SPECIALIZED", n, {"k": 1, "t": 2, "a": a, "b": bb}),
        (("first", (2 * n - 1) // 3), ("second", n - 1)),
        _lhs_cubic_ab(a, bb),
        None,
        _CUBIC_AB_RHS,
        {"n": n, "t": 2, "a": a, "b": bb},
    )


def _nw_common(b: dict) -> tuple[int, int, int, Fraction, Fraction, Fraction]:
    n = _int_param(b, "n")
    d = _int_param(b, "d")
    r = _int_param(b, "r")
    _require(n >= 1 and d >= 1, f"n and d must be positive, got n={n}, d={d}")
    _require(gcd(n, d) == 1, f"gcd(n, d) must be 1, got gcd({n}, {d})")
    return n, d, r, _frac_param(b, "a"), _frac_param(b, "b"), _frac_param(b, "c")


def _build_nw_a(b: dict) -> _Plan:
    n, d, r, a, bb, c = _nw_common(b)
    mu = (-r) * pow(d, -1, n) % n if n > 1 else 0
    return _Plan(
        "sum",
        build_modulus("QINT", n),
        (("first", mu),),
        _lhs_nw_abc(a, bb, c, d, r),
        None,
        "0",
        {"n": n, "d": d, "r": r, "a": a, "b": bb, "c": c},
    )


def _build_nw_b(b: dict) -> _Plan:
    n, d, r, a, bb, c = _nw_common(b)
    return _Plan(
        "sum",
        build_modulus("QINT", n),
        (("first", n - 1),),
        _lhs_nw_abc(a, bb, c, d, r),
        None,
        "0",
        {"n": n, "d": d, "r": r, "a": a, "b": bb, "c": c},
    )


def _build_nw_23(b: dict) -> _Plan:
    n = _int_param(b, "n")
    d = _int_param(b, "d")
    r = _int_param(b, "r")
    _require(r in (1, -1), f"r must be +-1, got {r}")
    _require(n > 1 and d >= 3, f"need n > 1 and d >= 3, got n={n}, d={d}")
    _require(n >= d - r, f"n = {n} is below d - r = {d - r}")
    _require(gcd(n, d) == 1, f"gcd(n, d) must be 1, got gcd({n}, {d})")
    _require((n + r) % d == 0, f"n = {n} must be -r mod d = {d}")
    a, bb = _frac_param(b, "a"), _frac_param(b, "b")
    nu = _exact_div(d * n - n - r, d, "(dn-n-r)/d")
    return _Plan(
        "sum",
        build_modulus("QINT_PHI_POW", n, {"k": 1}),
        (("first", nu), ("second", n - 1)),
        _lhs_nw_ab(a, bb, d, r),
        None,
        "0",
        {"n": n, "d": d, "r": r, "a": a, "b": bb},
    )


def _build_lem_rel(b: dict) -> _Plan:
    t = _int_param(b, "t")
    _require(t >= 0, f"t must be nonnegative, got {t}")
    return _Plan("equality", None, (), None, _LEM_REL_LHS, _LEM_REL_RHS, {"t": t})


def _build_lem_wei_k(b: dict) -> _Plan:
    n = _int_param(b, "n")
    _require(n >= 3 and n % 4 == 3, f"n must be 3 mod 4, got {n}")
    return _Plan(
        "expr", build_modulus("QINT", n), (), None, _WEI_CUBE_LHS, "0", {"n": n}
    )


def _build_lem_wei_m(b: dict) -> _Plan:
    n = _int_param(b, "n")
    _require(n >= 1 and n % 2 == 1, f"n must be a positive odd integer, got {n}")
    return _Plan(
        "expr", build_modulus("QINT", n), (), None, _WEI_RATIO_LHS, "0", {"n": n}
    )


def _build_lem_wei_n(b: dict) -> _Plan:
    n = _int_param(b, "n")
    _require(n >= 3 and n % 4 == 3, f"n must be 3 mod 4, got {n}")
    return _Plan(
        "expr",
        build_modulus("QINT_PHI_POW", n, {"k": 4}),
        (),
        None,
        _WEI_CUBE_LHS,
        _THM_A_RHS_3,
        {"n": n},
    )


def _build_lem_oo(b: dict) -> _Plan:
    n = _int_param(b, "n")
    _require(n >= 2 and n % 3 == 2, f"n must be 2 mod 3, got {n}")
    return _Plan(
        "sum",
        build_modulus("QINT_PHI_POW", n, {"k": 5}),
        (("first", (2 * n - 1) // 3), ("second", n - 1)),
        _lhs_cubic(),
        None,
        _LEM_OO_RHS,
        {"n": n},
    )


def _build_lem_pp(b: dict) -> _Plan:
    n = _int_param(b, "n")
    _require(n >= 2 and n % 3 == 2, f"n must be 2 mod 3, got {n}")
    return _Plan(
        "expr",
        build_modulus("PHI_POW", n, {"k": 2}),
        (),
        None,
        _LEM_PP_LHS,
        "5",
        {"n": n},
    )


def _thm_d_window(n: int, d: int, r: int):
    _require(n >= 1 and d >= 1, f"n and d must be positive, got n={n}, d={d}")
    _require(gcd(n, d) == 1, f"gcd(n, d) must be 1, got gcd({n}, {d})")
    _require(
        d + n - d * n <= r <= n,
        f"r = {r} outside the window {d + n - d * n}..{n}",
    )
    _require(n % d == r % d, f"n = {n} and r = {r} disagree mod d = {d}")


def _build_thm_d(b: dict) -> _Plan:
    n, d, r = _int_param(b, "n"), _int_param(b, "d"), _int_param(b, "r")
    _thm_d_window(n, d, r)
    c = _frac_param(b, "c")
    m1 = _exact_div(n - r, d, "(n-r)/d")
    return _Plan(
        "sum",
        build_modulus("QINT_PHI_POW", n, {"k": 4}),
        (("first", m1), ("second", n - 1)),
        _lhs_sixth_c(c, d, r),
        None,
        _THM_D_RHS,
        {"n": n, "d": d, "r": r, "c": c},
    )


def _thm_e_window(n: int, d: int, r: int):
    _require(r in (1, -1), f"r must be +-1, got {r}")
    _require(d >= 3, f"d must be at least 3, got {d}")
    _require(n >= 1, f"n must be positive, got {n}")
    _require(n + r >= d, f"n + r = {n + r} is below d = {d}")
    _require(gcd(n, d) == 1, f"gcd(n, d) must be 1, got gcd({n}, {d})")
    _require((n + r) % d == 0, f"n = {n} must be -r mod d = {d}")


def _build_thm_e(b: dict) -> _Plan:
    n, d, r = _int_param(b, "n"), _int_param(b, "d"), _int_param(b, "r")
    _thm_e_window(n, d, r)
    m1 = _exact_div(d * n - n - r, d, "(dn-n-r)/d")
    return _Plan(
        "sum",
        build_modulus("QINT_PHI_POW", n, {"k": 5}),
        (("first", m1), ("second", n - 1)),
        _lhs_sixth(d, r),
        None,
        _THM_E_RHS,
        {"n": n, "d": d, "r": r},
    )


def _build_prop_5_3(b: dict) -> _Plan:
    n, d, r = _int_param(b, "n"), _int_param(b, "d"), _int_param(b, "r")
    t = _int_param(b, "t", 1)
    _require(n >= 1 and d >= 2, f"n must be positive and d >= 2, got n={n}, d={d}")
    _require(t in (1, d - 1), f"t must be 1 or d-1 = {d - 1}, got {t}")
    _require(gcd(n, d) == 1, f"gcd(n, d) must be 1, got gcd({n}, {d})")
    _require(
        d + t * n - d * n <= r <= t * n,
        f"r = {r} outside the window {d + t * n - d * n}..{t * n}",
    )
    _require((t * n) % d == r % d, f"tn = {t * n} and r = {r} disagree mod d = {d}")
    a, bb, c = _frac_param(b, "a"), _frac_param(b, "b"), _frac_param(b, "c")
    m1 = _exact_div(t * n - r, d, "(tn-r)/d")
    return _Plan(
        "sum",
        build_modulus("SPECIALIZED", n, {"t": t, "a": a, "b": bb}),
        (("first", m1), ("second", n - 1)),
        _lhs_54_abc(a, bb, c, d, r),
        None,
        _PROP_5_3_RHS,
        {"n": n, "t": t, "d": d, "r": r, "a": a, "b": bb, "c": c},
    )


def _build_thm_5_4(b: dict) -> _Plan:
    n, d, r = _int_param(b, "n"), _int_param(b, "d"), _int_param(b, "r")
    _thm_d_window(n, d, r)
    a, bb, c = _frac_param(b, "a"), _frac_param(b, "b"), _frac_param(b, "c")
    m1 = _exact_div(n - r, d, "(n-r)/d")
    return _Plan(
        "sum",
        build_modulus("QINT_SPECIALIZED", n, {"a": a, "b": bb}),
        (("first", m1), ("second", n - 1)),
        _lhs_54_abc(a, bb, c, d, r),
        None,
        _PROP_5_3_RHS,
        {"n": n, "t": 1, "d": d, "r": r, "a": a, "b": bb, "c": c},
    )


def _build_thm_5_5(b: dict) -> _Plan:
    n, d, r = _int_param(b, "n"), _int_param(b, "d"), _int_param(b, "r")
    _thm_e_window(n, d, r)
    a, bb = _frac_param(b, "a"), _frac_param(b, "b")
    m1 = _exact_div(d * n - n - r, d, "(dn-n-r)/d")
    return _Plan(
        "sum",
        build_modulus(
            "QINT_PHI_SPECIALIZED", n, {"k": 1, "t": d - 1, "a": a, "b": bb}
        ),
        (("first", m1), ("second", n - 1)),
        _lhs_nw_ab(a, bb, d, r),
        None,
        _THM_5_5_RHS,
        {"n": n, "d": d, "r": r, "a": a, "b": bb},
    )


# -- inventory -----------------------------------------------------------------

_register(
    Statement(
        "THM_A",
        "alternating quartic sum vs centred closed forms, modulo [n]*Phi(n)^4",
        "sum",
        "n: positive odd integer",
        "n odd; branch by n mod 4",
        "first: M=(n-1)/2; second: M=n-1",
        build=_build_thm_a,
        desk=tuple({"n": n} for n in (1, 3, 5, 7, 9, 11, 13, 15)),
    )
)
_register(
    Statement(
        "THM_B",
        "cubic sum vs tail-corrected closed form, modulo [n]*Phi(n)^4",
        "sum",
        "n: positive integer, n = 1 mod 3",
        "n = 1 mod 3",
        "first: M=(n-1)/3; second: M=n-1",
        build=_build_thm_b,
        desk=tuple({"n": n} for n in (1, 4, 7, 10, 13)),
    )
)
_register(
    Statement(
        "THM_C",
        "cubic sum vs 5[2n] closed form, modulo [n]*Phi(n)^5",
        "sum",
        "n: positive integer, n = 2 mod 3",
        "n = 2 mod 3",
        "first: M=(2n-1)/3; second: M=n-1",
        build=_build_thm_c,
        desk=tuple({"n": n} for n in (2, 5, 8, 11)),
    )
)
_register(
    Statement(
        "GS_16",
        "cubic sum vanishes modulo [n] (n = 1 mod 3) or [n]*Phi(n) (n = 2 mod 3)",
        "sum",
        "n: positive integer not divisible by 3",
        "n != 0 mod 3; modulus depends on n mod 3",
        "first: M=n-1",
        build=_build_gs_16,
        desk=tuple({"n": n} for n in (2, 4, 5, 7, 8)),
    )
)
_register(
    Statement(
        "GWY",
        "alternating quartic sum vs square closed form, modulo [n]*Phi(n)^2",
        "sum",
        "n: positive odd integer",
        "n odd; RHS is 0 when n = 3 mod 4",
        "first: M=(n-1)/2; second: M=n-1",
        build=_build_gwy,
        desk=tuple({"n": n} for n in (1, 3, 5, 7, 9, 11, 13, 15)),
    )
)
_register(
    Statement(
        "PROP_2_1",
        "parametric quartic sum vs Omega combination, modulo the a,b binomials",
        "sum",
        "n: positive odd integer; a, b: generic nonzero rationals",
        "n odd; a, b avoid degenerate products",
        "first: M=(n-1)/2; second: M=n-1",
        symbols=("a", "b"),
        build=_build_prop_2_1,
        desk=tuple({"n": n} for n in (3, 5, 7)),
    )
)
_register(
    Statement(
        "THM_2_2",
        "parametric quartic sum vs Omega combination, modulo [n] times the a,b binomials",
        "sum",
        "n: positive odd integer; a, b: generic nonzero rationals",
        "n odd; a, b avoid degenerate products",
        "first: M=(n-1)/2; second: M=n-1",
        symbols=("a", "b"),
        build=_build_thm_2_2,
        desk=tuple({"n": n} for n in (3, 5, 7)),
    )
)
_register(
    Statement(
        "NW_A",
        "six-parameter sum truncated at mu vanishes modulo [n]",
        "sum",
        "n, d: positive coprime integers; r: integer; a, b, c: generic rationals",
        "gcd(n, d) = 1; truncation mu solves d*mu = -r mod n",
        "first: M=mu",
        symbols=("a", "b", "c"),
        build=_build_nw_a,
        desk=(
            {"n": 5, "d": 3, "r": 1},
            {"n": 5, "d": 3, "r": -1},
            {"n": 7, "d": 3, "r": -2},
            {"n": 7, "d": 4, "r": 1},
            {"n": 3, "d": 4, "r": -1},
            {"n": 6, "d": 5, "r": 1},
            {"n": 7, "d": 5, "r": -3},
        ),
    )
)
_register(
    Statement(
        "NW_B",
        "six-parameter sum truncated at n-1 vanishes modulo [n]",
        "sum",
        "n, d: positive coprime integers; r: integer; a, b, c: generic rationals",
        "gcd(n, d) = 1",
        "first: M=n-1",
        symbols=("a", "b", "c"),
        build=_build_nw_b,
        desk=(
            {"n": 5, "d": 3, "r": 1},
            {"n": 5, "d": 3, "r": -1},
            {"n": 7, "d": 3, "r": -2},
            {"n": 7, "d": 4, "r": 1},
            {"n": 3, "d": 4, "r": -1},
            {"n": 6, "d": 5, "r": 1},
            {"n": 7, "d": 5, "r": -3},
        ),
    )
)
_register(
    Statement(
        "LEM_REL",
        "odd-over-even Pochhammer ratio equals central q-binomial over (-q;q)_t^2",
        "equality",
        "t: nonnegative integer",
        "t >= 0",
        "exact equality; no truncation",
        build=_build_lem_rel,
        desk=tuple({"t": t} for t in (0, 1, 2, 3, 5, 8, 12)),
    )
)
_register(
    Statement(
        "LEM_WEI_K",
        "cubed [n] ratio expression vanishes modulo [n]",
        "expr",
        "n: positive integer, n = 3 mod 4",
        "n = 3 mod 4",
        "single expression; no truncation",
        build=_build_lem_wei_k,
        desk=tuple({"n": n} for n in (3, 7, 11, 15)),
    )
)
_register(
    Statement(
        "LEM_WEI_M",
        "squared [n] Pochhammer ratio vanishes modulo [n]",
        "expr",
        "n: positive odd integer",
        "n odd",
        "single expression; no truncation",
        build=_build_lem_wei_m,
        desk=tuple({"n": n} for n in (1, 3, 5, 7, 9, 11, 13, 15)),
    )
)
_register(
    Statement(
        "LEM_WEI_N",
        "cubed [n] ratio matches the shifted square form modulo [n]*Phi(n)^4",
        "expr",
        "n: positive integer, n = 3 mod 4",
        "n = 3 mod 4",
        "single expression; no truncation",
        build=_build_lem_wei_n,
        desk=tuple({"n": n} for n in (3, 7, 11, 15)),
    )
)
_register(
    Statement(
        "PROP_3_1",
        "parametric cubic sum vs Theta combination, modulo the a,b binomials at q^(tn)",
        "sum",
        "n: positive integer with n = t mod 3; t in {1, 2} (default n mod 3); a, b: generic rationals",
        "n = t mod 3, t in {1, 2}",
        "first: T=(tn-1)/3; second: T=n-1",
        symbols=("a", "b"),
        build=_build_prop_3_1,
        desk=tuple({"n": n} for n in (2, 4, 5, 7, 8)),
    )
)
_register(
    Statement(
        "THM_3_2",
        "parametric cubic sum vs Theta combination, modulo [n] times the a,b binomials",
        "sum",
        "n: positive integer, n = 1 mod 3; a, b: generic rationals",
        "n = 1 mod 3",
        "first: M=(n-1)/3; second: M=n-1",
        symbols=("a", "b"),
        build=_build_thm_3_2,
        desk=tuple({"n": n} for n in (4, 7)),
    )
)
_register(
    Statement(
        "THM_3_3",
        "parametric cubic sum vs Theta combination, modulo [n]*Phi(n) times the a,b binomials at q^(2n)",
        "sum",
        "n: positive integer, n = 2 mod 3; a, b: generic rationals",
        "n = 2 mod 3",
        "first: M=(2n-1)/3; second: M=n-1",
        symbols=("a", "b"),
        build=_build_thm_3_3,
        desk=tuple({"n": n} for n in (2, 5, 8)),
    )
)
_register(
    Statement(
        "NW_23",
        "four-parameter squared sum vanishes modulo [n]*Phi(n)",
        "sum",
        "n > 1; d >= 3; r = +-1; a, b: generic rationals",
        "n >= d - r, gcd(n, d) = 1, n = -r mod d",
        "first: M=(dn-n-r)/d; second: M=n-1",
        symbols=("a", "b"),
        build=_build_nw_23,
        desk=(
            {"n": 2, "d": 3, "r": 1},
            {"n": 5, "d": 3, "r": 1},
            {"n": 4, "d": 3, "r": -1},
            {"n": 3, "d": 4, "r": 1},
            {"n": 5, "d": 4, "r": -1},
            {"n": 4, "d": 5, "r": 1},
        ),
    )
)
_register(
    Statement(
        "LEM_OO",
        "cubic sum vs [2n] tail-corrected closed form, modulo [n]*Phi(n)^5",
        "sum",
        "n: positive integer, n = 2 mod 3",
        "n = 2 mod 3",
        "first: M=(2n-1)/3; second: M=n-1",
        build=_build_lem_oo,
        desk=tuple({"n": n} for n in (2, 5, 8, 11)),
    )
)
_register(
    Statement(
        "LEM_PP",
        "tail-corrected bracket is 5 modulo Phi(n)^2",
        "expr",
        "n: positive integer, n = 2 mod 3",
        "n = 2 mod 3",
        "single expression; no truncation",
        build=_build_lem_pp,
        desk=tuple({"n": n} for n in (2, 5, 8, 11)),
    )
)
_register(
    Statement(
        "THM_D",
        "degree-d sixth-power sum with weight c vs double series, modulo [n]*Phi(n)^4",
        "sum",
        "n, d: positive coprime integers; r: integer in the window; c: generic nonzero rational",
        "d + n - dn <= r <= n and n = r mod d",
        "first: M=(n-r)/d; second: M=n-1",
        symbols=("c",),
        build=_build_thm_d,
        desk=(
            {"n": 1, "d": 3, "r": 1},
            {"n": 4, "d": 3, "r": 1},
            {"n": 7, "d": 3, "r": 1},
            {"n": 10, "d": 3, "r": 1},
            {"n": 1, "d": 4, "r": 1},
            {"n": 5, "d": 4, "r": 1},
            {"n": 9, "d": 4, "r": 1},
            {"n": 1, "d": 5, "r": 1},
            {"n": 6, "d": 5, "r": 1},
            {"n": 4, "d": 3, "r": -2},
            {"n": 6, "d": 5, "r": -4},
        ),
    )
)
_register(
    Statement(
        "THM_E",
        "degree-d sixth-power sum vs [dn-n] double series, modulo [n]*Phi(n)^5",
        "sum",
        "n: positive integer; d >= 3; r = +-1",
        "n + r >= d, gcd(n, d) = 1, n = -r mod d",
        "first: M=(dn-n-r)/d; second: M=n-1",
        build=_build_thm_e,
        desk=(
            {"n": 2, "d": 3, "r": 1},
            {"n": 5, "d": 3, "r": 1},
            {"n": 8, "d": 3, "r": 1},
            {"n": 3, "d": 4, "r": 1},
            {"n": 7, "d": 4, "r": 1},
            {"n": 4, "d": 5, "r": 1},
            {"n": 9, "d": 5, "r": 1},
            {"n": 4, "d": 3, "r": -1},
            {"n": 7, "d": 3, "r": -1},
            {"n": 10, "d": 3, "r": -1},
        ),
    )
)
_register(
    Statement(
        "PROP_5_3",
        "parametric degree-d sum vs Theta-weighted double series, modulo the a,b binomials at q^(tn)",
        "sum",
        "n, d coprime; t in {1, d-1}; r in the window; a, b, c: generic rationals",
        "d + tn - dn <= r <= tn and tn = r mod d",
        "first: T=(tn-r)/d; second: T=n-1",
        symbols=("a", "b", "c"),
        build=_build_prop_5_3,
        desk=(
            {"n": 4, "d": 3, "r": 1, "t": 1},
            {"n": 7, "d": 3, "r": 1, "t": 1},
            {"n": 5, "d": 4, "r": 1, "t": 1},
            {"n": 4, "d": 3, "r": -2, "t": 1},
            {"n": 2, "d": 3, "r": 1, "t": 2},
            {"n": 5, "d": 3, "r": 1, "t": 2},
            {"n": 3, "d": 4, "r": 1, "t": 3},
        ),
    )
)
_register(
    Statement(
        "THM_5_4",
        "parametric degree-d sum vs Theta-weighted double series, modulo [n] times the a,b binomials",
        "sum",
        "n, d coprime; r in the window; a, b, c: generic rationals",
        "d + n - dn <= r <= n and n = r mod d",
        "first: M=(n-r)/d; second: M=n-1",
        symbols=("a", "b", "c"),
        build=_build_thm_5_4,
        desk=(
            {"n": 4, "d": 3, "r": 1},
            {"n": 7, "d": 3, "r": 1},
            {"n": 5, "d": 4, "r": 1},
            {"n": 4, "d": 3, "r": -2},
        ),
    )
)
_register(
    Statement(
        "THM_5_5",
        "four-parameter squared sum vs Theta-weighted double series, modulo [n]*Phi(n) times the a,b binomials at q^(dn-n)",
        "sum",
        "n: positive; d >= 3; r = +-1; a, b: generic rationals",
        "n + r >= d, gcd(n, d) = 1, n = -r mod d",
        "first: M=(dn-n-r)/d; second: M=n-1",
        symbols=("a", "b"),
        build=_build_thm_5_5,
        desk=(
            {"n": 2, "d": 3, "r": 1},
            {"n": 5, "d": 3, "r": 1},
            {"n": 4, "d": 3, "r": -1},
            {"n": 3, "d": 4, "r": 1},
            {"n": 4, "d": 5, "r": 1},
        ),
    )
)

for _classical in padic.classical_statements():
    _register(
        Statement(
            _classical.stmt_id,
            _classical.description,
            "classical",
            "p: odd prime"
            + ("; s: power >= 1" if _classical.takes_s else "")
            + ("; d, r: degree and offset" if _classical.takes_dr else ""),
            _classical.side_conditions,
            "first/second: statement truncation versus full range p^s-1",
            build=None,
            desk=_classical.desk_cases,
        )
    )


# -- evaluation and running -----------------------------------------------------


def _select_choices(m_choices, m_policy: str):
    if m_policy == "both":
        return list(m_choices)
    if m_policy == "first":
        return [m_choices[0]]
    if m_policy == "second":
        if len(m_choices) < 2:
            raise SideConditionViolated(
                "statement offers a single truncation; no 'second' choice"
            )
        return [m_choices[1]]
    raise UnknownKind(f"unknown m_choice policy {m_policy!r}")


def _decide(plan: _Plan, lhs, rhs):
    """Return (status, witness) for one evaluated pair."""
    if plan.kind == "equality":
        diff = lhs - rhs
        if diff.num.is_zero():
            return "verified", {"difference": "0"}
        return "failed", {"difference_degree": diff.num.degree}
    result = congruent(lhs, rhs, plan.modulus)
    return ("verified" if result.verified else "failed"), result.witness


class _Stopwatch:
    """Per-record elapsed milliseconds; reports 0 when timing is off."""

    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.mark = time.monotonic()

    def lap(self) -> int:
        if not self.enabled:
            return 0
        now = time.monotonic()
        ms = int(round((now - self.mark) * 1000))
        self.mark = now
        return ms


def _run_q_once(
    stmt: Statement,
    bindings: dict,
    m_policy: str,
    seed: int | None,
    timestamps: bool,
    resample_on_bad_denominator: bool,
) -> list[VerificationRecord]:
    """Evaluate one fully bound q-side case; one record per truncation."""
    plan = stmt.build(bindings)
    params = _serialize_params(plan.env, stmt.symbols)
    label = plan.modulus.label if plan.modulus is not None else "exact"
    watch = _Stopwatch(timestamps)
    records = []

    def emit(slot, status, witness):
        records.append(
            VerificationRecord(
                stmt.stmt_id, params, label, slot, status, witness, watch.lap(), seed
            )
        )

    try:
        if plan.kind == "sum":
            chosen = _select_choices(plan.m_choices, m_policy)
            rhs = eval_expr(parse_expr(plan.rhs_text), plan.env)
            prefixes = truncated_sum_prefixes(plan.spec, sorted({m for _, m in chosen}))
            for slot, m in chosen:
                status, witness = _decide(plan, prefixes[m], rhs)
                emit(slot, status, witness)
        else:
            if m_policy == "second":
                raise SideConditionViolated(
                    "statement offers a single evaluation; no 'second' choice"
                )
            lhs = eval_expr(parse_expr(plan.lhs_text), plan.env)
            rhs = eval_expr(parse_expr(plan.rhs_text), plan.env)
            status, witness = _decide(plan, lhs, rhs)
            emit("first", status, witness)
    except DenominatorNotUnit:
        if resample_on_bad_denominator:
            raise
        emit(
            m_policy if m_policy in ("first", "second") else "first",
            "error",
            {"error": "DenominatorNotUnit"},
        )
    except (QCongruenceError, ZeroDivisionError) as exc:
        if isinstance(exc, (SideConditionViolated, NonIntegerBound, UnknownKind)):
            raise
        emit(
            m_policy if m_policy in ("first", "second") else "first",
            "error",
            {"error": type(exc).__name__, "detail": str(exc)},
        )
    return records


def _run_q_trial(
    stmt: Statement,
    bindings: dict,
    m_policy: str,
    trial_seed: int,
    timestamps: bool,
) -> list[VerificationRecord]:
    """Sample the statement's free symbols and verify; resample on unlucky draws."""
    n = _int_param(bindings, "n")
    t_scale = bindings.get("t", 1) if isinstance(bindings.get("t", 1), int) else 1
    last = None
    for attempt in range(_MAX_RESAMPLES):
        sample_seed = trial_seed + attempt * _RESAMPLE_STRIDE
        sample = sample_params(stmt.symbols, n, t=t_scale, seed=sample_seed)
        merged = dict(bindings)
        for sym, value in sample.assignments.items():
            merged.setdefault(sym, value)
        try:
            return _run_q_once(stmt, merged, m_policy, sample_seed, timestamps, True)
        except DenominatorNotUnit as exc:
            last = exc
    return [
        VerificationRecord(
            stmt.stmt_id,
            _serialize_params(bindings, stmt.symbols),
            "",
            m_policy if m_policy in ("first", "second") else "first",
            "error",
            {"error": "DenominatorNotUnit", "detail": str(last)},
            0,
            trial_seed,
        )
    ]


def _run_classical(
    stmt: Statement,
    bindings: dict,
    m_policy: str,
    seed: int | None,
    budget: int,
    timestamps: bool,
) -> list[VerificationRecord]:
    p = _int_param(bindings, "p")
    s = _int_param(bindings, "s", 1)
    d = bindings.get("d")
    r = bindings.get("r")
    m_choice = None if m_policy == "both" else m_policy
    watch = _Stopwatch(timestamps)
    try:
        raw = padic.verify_classical(
            stmt.stmt_id, p, s=s, d=d, r=r, m_choice=m_choice, budget=budget
        )
    except (QCongruenceError, ZeroDivisionError) as exc:
        if isinstance(exc, (SideConditionViolated, NonIntegerBound)):
            raise
        return [
            VerificationRecord(
                stmt.stmt_id,
                _serialize_params({"p": p, "s": s, "d": d, "r": r}, ()),
                "",
                m_policy if m_policy in ("first", "second") else "first",
                "error",
                {"error": type(exc).__name__, "detail": str(exc)},
                0,
                seed,
            )
        ]
    records = []
    for rec in raw:
        records.append(
            VerificationRecord(
                rec["id"],
                _serialize_params(rec["params"], ()),
                rec["modulus"],
                rec["m_choice"],
                rec["status"],
                rec["witness"],
                watch.lap(),
                seed,
            )
        )
    return records


def run_statement(
    stmt_id: str,
    bindings: dict | None = None,
    m_policy: str = "both",
    seed: int = 0,
    trials: int = 3,
    budget: int = padic.DEFAULT_GAMMA_BUDGET,
    timestamps: bool = False,
) -> list[VerificationRecord]:
    """Verify one statement at one parameter point; one record per check.

    Parametric statements (those with free rational symbols) run `trials`
    independently sampled specializations unless every symbol is given in
    bindings.  Raises SideConditionViolated when the parameter point is
    outside the statement's side conditions.
    """
    stmt = get_statement(stmt_id)
    bindings = dict(bindings or {})
    if stmt.kind == "classical":
        return _run_classical(stmt, bindings, m_policy, seed, budget, timestamps)
    missing = [sym for sym in stmt.symbols if sym not in bindings]
    if not missing:
        return _run_q_once(stmt, bindings, m_policy, seed, timestamps, False)
    records = []
    for i in range(max(1, trials)):
        records.extend(_run_q_trial(stmt, bindings, m_policy, seed + i, timestamps))
    return records


def instantiate(
    stmt_id: str, bindings: dict, m_choice: str = "first", seed: int = 0
) -> CongruenceInstance:
    """Fully evaluate one q-side statement instance at one truncation choice.

    Free symbols not present in bindings are sampled deterministically from
    the seed.  Classical statements are verified through run_statement (or
    padic.verify_classical) instead and cannot be instantiated as rational
    functions of q.
    """
    stmt = get_statement(stmt_id)
    if stmt.kind == "classical":
        raise UnknownKind(
            f"{stmt_id} is a classical statement; use run_statement instead"
        )
    bindings = dict(bindings)
    if any(sym not in bindings for sym in stmt.symbols):
        n = _int_param(bindings, "n")
        t_scale = bindings.get("t", 1) if isinstance(bindings.get("t", 1), int) else 1
        sample = sample_params(stmt.symbols, n, t=t_scale, seed=seed)
        for sym, value in sample.assignments.items():
            bindings.setdefault(sym, value)
    plan = stmt.build(bindings)
    if plan.kind == "sum":
        selected = _select_choices(plan.m_choices, m_choice)
        slot, m = selected[0]
        lhs = truncated_sum(plan.spec, m)
    else:
        if m_choice == "second":
            raise SideConditionViolated(
                "statement offers a single evaluation; no 'second' choice"
            )
        slot, m = "first", None
        lhs = eval_expr(parse_expr(plan.lhs_text), plan.env)
    rhs = eval_expr(parse_expr(plan.rhs_text), plan.env)
    return CongruenceInstance(
        stmt_id,
        _serialize_params(plan.env, stmt.symbols),
        slot,
        m,
        lhs,
        rhs,
        plan.modulus,
        plan.kind,
        seed,
    )


def verify_instance(inst: CongruenceInstance, timestamps: bool = False) -> VerificationRecord:
    """Decide one evaluated instance; failures are recorded, not raised."""
    watch = _Stopwatch(timestamps)
    if inst.kind == "equality":
        diff = inst.lhs - inst.rhs
        if diff.num.is_zero():
            status, witness = "verified", {"difference": "0"}
        else:
            status, witness = "failed", {"difference_degree": diff.num.degree}
        label = "exact"
    else:
        result = congruent(inst.lhs, inst.rhs, inst.modulus)
        status = "verified" if result.verified else "failed"
        witness = result.witness
        label = inst.modulus.label
    return VerificationRecord(
        inst.stmt_id,
        inst.params,
        label,
        inst.m_choice,
        status,
        witness,
        watch.lap(),
        inst.seed,
    )
