"""q-shifted factorials, q-binomials and truncated basic hypergeometric sums.

A TermSpec describes the k-th summand of a truncated series

    sign^k * [2dk + r] * prod_i (x_i; q^s_i)_k / prod_j (y_j; q^t_j)_k * z^k

where every Pochhammer argument and z is a rational multiple of a q-power
(possibly with negative exponent).  truncated_sum evaluates partial sums
exactly.  Terms are built incrementally (term_{k+1} = term_k * ratio) and the
partial sum is accumulated over a *factored* common denominator: coefficient
+-1 binomials split into cyclotomics and everything else stays a monic
binomial.  The final reduction is trial division by those factors, so no
large-degree polynomial gcd is ever needed.

check_terminating_identity verifies the four closed summation formulas the
congruence proofs rest on (q-Chu-Vandermonde, and the very-well-poised
specializations whose parameters are pinned to q-powers), as exact equalities
of rational functions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DegenerateParameters,
    NegativeLength,
    NonTerminating,
    OutOfRange,
    ZeroDenominatorFactor,
)
from .polyring import (
    QPoly,
    QRat,
    poly_try_div,
    power_minus_one_factors,
    power_plus_one_factors,
    q_integer,
)

__all__ = [
    "IdentityCheck",
    "QMonomialArg",
    "TermSpec",
    "check_terminating_identity",
    "hyper_term",
    "pochhammer",
    "q_binomial",
    "truncated_sum",
    "truncated_sum_prefixes",
]


@dataclass(frozen=True)
class QMonomialArg:
    """A rational multiple of a q-power: coeff * q**exp (exp may be negative)."""

    coeff: Fraction
    exp: int

    def __post_init__(self):
        if not isinstance(self.coeff, Fraction):
            object.__setattr__(self, "coeff", Fraction(self.coeff))


def qma(coeff, exp: int) -> QMonomialArg:
    return QMonomialArg(Fraction(coeff), exp)


@dataclass(frozen=True)
class TermSpec:
    """Shape of the k-th summand; see the module docstring.

    numer/denom pair each argument with its own step.  d and r drive the
    [2dk + r] linear factor when linear_factor is set.
    """

    d: int
    r: int
    numer: tuple[tuple[QMonomialArg, int], ...]
    denom: tuple[tuple[QMonomialArg, int], ...]
    z: QMonomialArg
    linear_factor: bool = True
    sign: int = 1


def _binomial_poly(c: Fraction, e: int) -> QPoly:
    """1 - c*q^e as a polynomial (e >= 0)."""
    if e == 0:
        return QPoly.const(1 - c)
    coeffs = [0] * (e + 1)
    coeffs[0] = 1
    coeffs[e] = -c
    return QPoly(coeffs)


def _split_denominator_binomial(c: Fraction, e: int):
    """Decompose (1 - c*q^e) = unit * q^(-j) * prod(monic parts), j >= 0.

    Returns (unit, j, parts).  Coefficient +-1 binomials split into
    cyclotomics so the later trial-division reduction is complete.
    """
    if e == 0:
        if c == 1:
            raise ZeroDenominatorFactor("denominator factor 1 - q^0 is zero")
        return 1 - c, 0, []
    if c == 0:
        return Fraction(1), 0, []
    if e > 0:
        if c == 1:
            return Fraction(-1), 0, power_minus_one_factors(e)
        if c == -1:
            return Fraction(1), 0, power_plus_one_factors(e)
        return -c, 0, [QPoly([-1 / c] + [0] * (e - 1) + [1])]
    j = -e
    # 1 - c*q^-j = q^-j * (q^j - c)
    if c == 1:
        return Fraction(1), j, power_minus_one_factors(j)
    if c == -1:
        return Fraction(1), j, power_plus_one_factors(j)
    return Fraction(1), j, [QPoly([-c] + [0] * (j - 1) + [1])]


def pochhammer(arg: QMonomialArg, step: int, k: int):
    """(x; q^step)_k = prod_{i<k} (1 - x q^(step*i)) for x = coeff*q^exp.

    Returns a QPoly when the result is a polynomial, else a QRat.
    """
    if step < 1:
        raise ValueError(f"step must be at least 1, got {step}")
    if k < 0:
        raise NegativeLength(f"Pochhammer length {k} is negative")
    num = QPoly.one()
    qpow = 0
    for i in range(k):
        e = arg.exp + step * i
        if e >= 0:
            num = num * _binomial_poly(arg.coeff, e)
        else:
            j = -e
            num = num * QPoly([-arg.coeff] + [0] * (j - 1) + [1])
            qpow += j
    if num.is_zero() or qpow == 0:
        return num
    cancel = min(num.trailing_order(), qpow)
    if cancel:
        num = num.shift(-cancel)
        qpow -= cancel
    if qpow == 0:
        return num
    return QRat._raw(num, QPoly.monomial(qpow))


def q_binomial(t: int, s: int) -> QPoly:
    """Gaussian binomial [t choose s] as a polynomial."""
    if s < 0 or s > t:
        raise OutOfRange(f"q-binomial index s={s} outside 0..{t}")
    one = QMonomialArg(Fraction(1), 1)
    num = pochhammer(one, 1, t)
    den = pochhammer(one, 1, s) * pochhammer(one, 1, t - s)
    q = poly_try_div(num, den)
    if q is None:  # pragma: no cover - the division is always exact
        raise ArithmeticError("q-binomial division failed")
    return q


class _SumEngine:
    """Incremental evaluator of TermSpec partial sums.

    Invariant between steps: partial_sum = S / (prod(factors) * q^qpow) and the
    current term core (without the [2dk+r] factor) is C over that same
    denominator.  All bookkeeping constants are folded into S and C.
    """

    def __init__(self, spec: TermSpec):
        self.spec = spec
        self.S = QPoly.zero()
        self.C = QPoly.one()
        self.factors: dict[QPoly, int] = {}
        self.qpow = 0
        self.k = 0  # next term index

    def _grow_denominator(self, parts: list[QPoly], qshift: int):
        if qshift:
            self.qpow += qshift
            self.S = self.S.shift(qshift)
        if parts:
            combined = QPoly.one()
            for f in parts:
                self.factors[f] = self.factors.get(f, 0) + 1
                combined = combined * f
            self.S = self.S * combined

    def _advance_core(self):
        # Fold the factors with index k-1 (the new ones of the k-th term).
        spec = self.spec
        i = self.k - 1
        num_mult = QPoly.one()
        scale = Fraction(1)
        cshift = 0
        new_parts: list[QPoly] = []
        den_qshift = 0
        for arg, step in spec.numer:
            e = arg.exp + step * i
            if e >= 0:
                num_mult = num_mult * _binomial_poly(arg.coeff, e)
            else:
                j = -e
                num_mult = num_mult * QPoly([-arg.coeff] + [0] * (j - 1) + [1])
                den_qshift += j
        for arg, step in spec.denom:
            e = arg.exp + step * i
            unit, j, parts = _split_denominator_binomial(arg.coeff, e)
            if unit != 1:
                scale /= unit
            cshift += j
            new_parts.extend(parts)
        if spec.z.coeff == 0:
            raise DegenerateParameters("z coefficient is zero")
        scale *= spec.z.coeff
        if spec.z.exp >= 0:
            cshift += spec.z.exp
        else:
            den_qshift += -spec.z.exp
        self._grow_denominator(new_parts, den_qshift)
        c = self.C * num_mult
        if scale != 1:
            c = c * scale
        if cshift:
            c = c.shift(cshift)
        self.C = c

    def add_next_term(self):
        spec = self.spec
        k = self.k
        if k > 0:
            self._advance_core()
        if spec.linear_factor:
            m = 2 * spec.d * k + spec.r
            if m >= 0:
                term = self.C * QPoly([1] * m) if m else QPoly.zero()
            else:
                j = -m
                term = self.C * QPoly([-1] * j)
                self.qpow += j
                self.S = self.S.shift(j)
                self.C = self.C.shift(j)
        else:
            term = self.C
        if spec.sign == -1 and k % 2 == 1:
            term = -term
        self.S = self.S + term
        self.k = k + 1

    def snapshot(self) -> QRat:
        """Reduced value of the current partial sum; does not disturb state."""
        num = self.S
        qpow = self.qpow
        if num.is_zero():
            return QRat.from_value(0)
        t = num.trailing_order()
        cancel = min(t, qpow)
        if cancel:
            num = num.shift(-cancel)
            qpow -= cancel
        den = QPoly.monomial(qpow) if qpow else QPoly.one()
        for f in sorted(self.factors, key=lambda p: (p.degree, p.coeffs())):
            mult = self.factors[f]
            while mult > 0:
                quotient = poly_try_div(num, f)
                if quotient is None:
                    break
                num = quotient
                mult -= 1
            if mult:
                den = den * f**mult
        return QRat._raw(num, den)


def truncated_sum_prefixes(spec: TermSpec, orders) -> dict[int, QRat]:
    """Partial sums sum_{k=0}^{M} term_k for each M in orders, in one pass."""
    orders = sorted(set(orders))
    if not orders:
        return {}
    if orders[0] < 0:
        raise NegativeLength(f"truncation order {orders[0]} is negative")
    engine = _SumEngine(spec)
    out: dict[int, QRat] = {}
    for m in range(orders[-1] + 1):
        engine.add_next_term()
        if m in orders:
            out[m] = engine.snapshot()
    return out


def truncated_sum(spec: TermSpec, order: int) -> QRat:
    """Reduced partial sum of the series through k = order."""
    return truncated_sum_prefixes(spec, [order])[order]


def hyper_term(spec: TermSpec, k: int) -> QRat:
    """The k-th term alone, as a reduced rational function."""
    if k < 0:
        raise NegativeLength(f"term index {k} is negative")
    if k == 0:
        return truncated_sum(spec, 0)
    pref = truncated_sum_prefixes(spec, [k - 1, k])
    return pref[k] - pref[k - 1]


# -- terminating identities --------------------------------------------------


@dataclass(frozen=True)
class IdentityCheck:
    identity_id: str
    params: dict
    equal: bool
    detail: str = ""


def _poch_rat(coeff, exp: int, step: int, k: int) -> QRat:
    return QRat.from_value(pochhammer(qma(coeff, exp), step, k))


def _require(cond: bool, message: str):
    if not cond:
        raise DegenerateParameters(message)


def _check_qchu(n: int, b: Fraction, c: Fraction) -> tuple[QRat, QRat]:
    _require(b not in (0, 1) and c not in (0, 1), "b, c must avoid 0 and 1")
    spec = TermSpec(
        d=1,
        r=0,
        numer=((qma(1, -n), 1), (qma(b, 0), 1)),
        denom=((qma(1, 1), 1), (qma(c, 0), 1)),
        z=qma(c / b, n),
        linear_factor=False,
    )
    lhs = truncated_sum(spec, n)
    rhs = _poch_rat(c / b, 0, 1, n) / _poch_rat(c, 0, 1, n)
    return lhs, rhs


def _whipple_lhs_spec(n: int, b: Fraction) -> TermSpec:
    return TermSpec(
        d=2,
        r=1,
        numer=(
            (qma(1, 1 - n), 2),
            (qma(1, 1 + n), 2),
            (qma(b, 1), 2),
            (qma(Fraction(1) / b, 1), 2),
            (qma(1, 2), 4),
        ),
        denom=(
            (qma(1, 2 + n), 2),
            (qma(1, 2 - n), 2),
            (qma(Fraction(1) / b, 2), 2),
            (qma(b, 2), 2),
            (qma(1, 4), 4),
        ),
        z=qma(1, 1),
        sign=-1,
    )


def _whipple_rhs(n: int, b: Fraction) -> QRat:
    binv = Fraction(1) / b
    if n % 4 == 1:
        m = (n - 1) // 4
        num = _poch_rat(b, 2, 4, m) * _poch_rat(binv, 2, 4, m)
        den = _poch_rat(binv, 4, 4, m) * _poch_rat(b, 4, 4, m)
    else:
        m = (n + 1) // 4
        num = _poch_rat(b, 0, 4, m) * _poch_rat(binv, 0, 4, m)
        num = num * QRat(QPoly([0, -1]))  # the -q prefactor
        den = _poch_rat(binv, 2, 4, m) * _poch_rat(b, 2, 4, m)
    return QRat.from_value(q_integer(n)) * num / den


def _check_whipple(n: int, b: Fraction) -> tuple[QRat, QRat]:
    if n < 1 or n % 2 == 0:
        raise NonTerminating(f"series terminates only for odd n, got {n}")
    _require(b not in (0, 1, -1), "b must avoid 0 and +-1")
    spec = _whipple_lhs_spec(n, b)
    m = (n - 1) // 2
    sums = truncated_sum_prefixes(spec, [m, m + 1] if m else [m])
    if m + 1 in sums and sums[m + 1] != sums[m]:
        raise NonTerminating(f"term {m + 1} did not vanish")
    return sums[m], _whipple_rhs(n, b)


def _jackson_lhs_spec(nu: int, b: Fraction) -> TermSpec:
    binv = Fraction(1) / b
    return TermSpec(
        d=3,
        r=1,
        numer=(
            (qma(1, 1 - nu), 3),
            (qma(1, 1 + nu), 3),
            (qma(b, 1), 3),
            (qma(binv, 1), 3),
            (qma(1, 1), 3),
            (qma(1, 1), 3),
        ),
        denom=(
            (qma(1, 3 + nu), 3),
            (qma(1, 3 - nu), 3),
            (qma(binv, 3), 3),
            (qma(b, 3), 3),
            (qma(1, 3), 3),
            (qma(1, 3), 3),
        ),
        z=qma(1, 3),
    )


def _jackson_rhs(nu: int, b: Fraction) -> QRat:
    binv = Fraction(1) / b
    m = (nu - 1) // 3
    num = _poch_rat(b, 2, 3, m) * _poch_rat(binv, 2, 3, m) * _poch_rat(1, 2, 3, m)
    den = _poch_rat(binv, 3, 3, m) * _poch_rat(b, 3, 3, m) * _poch_rat(1, 3, 3, m)
    return QRat.from_value(q_integer(nu)) * num / den


def _check_jackson(nu: int, b: Fraction) -> tuple[QRat, QRat]:
    if nu < 1 or nu % 3 != 1:
        raise NonTerminating(f"series terminates only for tn = 1 (mod 3), got {nu}")
    _require(b not in (0, 1, -1), "b must avoid 0 and +-1")
    spec = _jackson_lhs_spec(nu, b)
    m = (nu - 1) // 3
    sums = truncated_sum_prefixes(spec, [m, m + 1] if m else [m])
    if m + 1 in sums and sums[m + 1] != sums[m]:
        raise NonTerminating(f"term {m + 1} did not vanish")
    return sums[m], _jackson_rhs(nu, b)


def _watson_lhs_spec(nu: int, d: int, r: int, b: Fraction, c: Fraction) -> TermSpec:
    binv = Fraction(1) / b
    return TermSpec(
        d=d,
        r=r,
        numer=(
            (qma(1, r - nu), d),
            (qma(1, r + nu), d),
            (qma(b, r), d),
            (qma(binv, r), d),
            (qma(c, r), d),
            (qma(1, r), d),
        ),
        denom=(
            (qma(1, d + nu), d),
            (qma(1, d - nu), d),
            (qma(binv, d), d),
            (qma(b, d), d),
            (qma(Fraction(1) / c, d), d),
            (qma(1, d), d),
        ),
        z=qma(Fraction(1) / c, 2 * d - 3 * r),
    )


def _watson_rhs(nu: int, d: int, r: int, b: Fraction, c: Fraction) -> QRat:
    m = (nu - r) // d
    inner = TermSpec(
        d=d,
        r=r,
        numer=(
            (qma(1, d - r), d),
            (qma(c, r), d),
            (qma(1, r + nu), d),
            (qma(1, r - nu), d),
        ),
        denom=(
            (qma(1, d), d),
            (qma(Fraction(1) / b, d), d),
            (qma(b, d), d),
            (qma(c, 2 * r), d),
        ),
        z=qma(1, d),
        linear_factor=False,
    )
    inner_sum = truncated_sum(inner, m)
    e = (r - nu) // d
    cq_pow = (QRat(QPoly.monomial(r, c)) if r >= 0 else QRat(QPoly.const(c), QPoly.monomial(-r))) ** e
    pref = QRat.from_value(q_integer(nu)) * cq_pow
    pref = pref * _poch_rat(c, 2 * r, d, m) / _poch_rat(Fraction(1) / c, d, d, m)
    return pref * inner_sum


def _check_watson(nu: int, d: int, r: int, b: Fraction, c: Fraction) -> tuple[QRat, QRat]:
    if d < 1 or nu < 1 or (nu - r) % d != 0 or nu < r:
        raise NonTerminating(f"series terminates only for nu = r (mod d), nu >= r")
    if nu % d == 0:
        raise DegenerateParameters("d divides nu: a denominator factor vanishes")
    _require(b not in (0, 1, -1) and c not in (0, 1, -1), "b, c must avoid 0 and +-1")
    _require(b != c and b * c != 1, "b and c must be independent")
    spec = _watson_lhs_spec(nu, d, r, b, c)
    m = (nu - r) // d
    sums = truncated_sum_prefixes(spec, [m, m + 1] if m else [m])
    if m + 1 in sums and sums[m + 1] != sums[m]:
        raise NonTerminating(f"term {m + 1} did not vanish")
    return sums[m], _watson_rhs(nu, d, r, b, c)


def _sample_fraction(rng: random.Random, forbid=()) -> Fraction:
    for _ in range(1000):
        u = rng.randint(-9, 9)
        v = rng.randint(1, 9)
        x = Fraction(u, v)
        if x in (0, 1, -1) or x in forbid:
            continue
        return x
    raise DegenerateParameters("sampler could not find an admissible value")


def check_terminating_identity(identity_id: str, params: dict | None = None, rng_seed=0) -> IdentityCheck:
    """Exact check of one terminating summation identity.

    Unsupplied free parameters are sampled deterministically from rng_seed.
    Raises NonTerminating / DegenerateParameters for inadmissible parameters.
    """
    params = dict(params or {})
    rng = random.Random(f"identity:{identity_id}:{rng_seed}")
    if identity_id == "QCHU":
        n = params.setdefault("n", rng.randint(0, 9))
        b = params.setdefault("b", _sample_fraction(rng))
        c = params.setdefault("c", _sample_fraction(rng, forbid=(b,)))
        lhs, rhs = _check_qchu(n, Fraction(b), Fraction(c))
    elif identity_id == "WHIPPLE_SPEC":
        n = params.setdefault("n", rng.choice([1, 3, 5, 7, 9, 11]))
        b = params.setdefault("b", _sample_fraction(rng))
        lhs, rhs = _check_whipple(n, Fraction(b))
    elif identity_id == "JACKSON_SPEC":
        if "n" not in params:
            params["n"] = rng.choice([1, 4, 7, 10])
        n = params["n"]
        b = params.setdefault("b", _sample_fraction(rng))
        lhs, rhs = _check_jackson(n, Fraction(b))
    elif identity_id == "WATSON_SPEC":
        if "d" not in params:
            params["d"] = rng.choice([3, 4, 5])
        d = params["d"]
        if "r" not in params:
            params["r"] = rng.choice([1, 1, -1])
        r = params["r"]
        if "n" not in params:
            k = rng.randint(max(1, (1 - r) // d + 1), 3)
            params["n"] = r + d * k
        n = params["n"]
        b = params.setdefault("b", _sample_fraction(rng))
        c = params.setdefault("c", _sample_fraction(rng, forbid=(b, 1 / Fraction(b))))
        lhs, rhs = _check_watson(n, d, r, Fraction(b), Fraction(c))
    else:
        raise KeyError(f"unknown identity id {identity_id!r}")
    equal = lhs == rhs
    detail = "" if equal else f"lhs != rhs, difference {(lhs - rhs)!r}"
    return IdentityCheck(identity_id, params, equal, detail)
