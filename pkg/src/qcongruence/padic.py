"""Morita's p-adic Gamma function and the classical congruence statements.

gamma_p evaluates the p-adic Gamma function at a p-integral rational to N
digits via the product formula: pick the integer representative r in
[1, p**N] of the argument and form (-1)^r * prod of k < r prime to p.  The
function is 1-Lipschitz in the p-adic metric, so N digits of the argument
give N exact digits of the value; guard digits requested on top of that are
pure safety margin and are trimmed before comparison.

The classical (q -> 1) statements are pure rational-number congruences; each
side is computed exactly as a Fraction (with p-adic Gamma products reduced to
residues) and compared by p-adic valuation of the difference.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arith import BigRat, PadicInt, padic_valuation, residue_of_rational
from .congruence import CongruenceResult
from .errors import (
    NotPIntegral,
    PrecisionBudgetExceeded,
    SideConditionViolated,
    UnknownKind,
)

__all__ = [
    "CLASSICAL_IDS",
    "DEFAULT_GAMMA_BUDGET",
    "bernoulli",
    "classical_statements",
    "gamma_p",
    "harmonic",
    "rational_congruent",
    "rising",
    "verify_classical",
]

DEFAULT_GAMMA_BUDGET = 10**7

_HALF = Fraction(1, 2)
_THIRD = Fraction(1, 3)


def harmonic(m: int, ell: int) -> BigRat:
    """Harmonic number of order ell: sum of 1/k**ell for k = 1..m."""
    if m < 0:
        raise ValueError(f"harmonic upper index must be nonnegative, got {m}")
    if ell < 1:
        raise ValueError(f"harmonic order must be positive, got {ell}")
    return sum((Fraction(1, k**ell) for k in range(1, m + 1)), Fraction(0))


def rising(x: BigRat, k: int) -> BigRat:
    """Shifted factorial (x)_k = x (x+1) ... (x+k-1)."""
    if k < 0:
        raise ValueError(f"shifted-factorial length must be nonnegative, got {k}")
    out = Fraction(1)
    x = Fraction(x)
    for i in range(k):
        out *= x + i
    return out


_BERNOULLI_CACHE: list[Fraction] = [Fraction(1)]


def bernoulli(n: int) -> BigRat:
    """Bernoulli number B_n from B_0 = 1 and sum(C(n,k) B_k, k<n) = 0 for n > 1."""
    if n < 0:
        raise ValueError(f"Bernoulli index must be nonnegative, got {n}")
    while len(_BERNOULLI_CACHE) <= n:
        m = len(_BERNOULLI_CACHE)  # compute B_m from B_0..B_{m-1}
        acc = Fraction(0)
        binom = 1  # C(m+1, k), starting at k = 0
        for k in range(m):
            acc += binom * _BERNOULLI_CACHE[k]
            binom = binom * (m + 1 - k) // (k + 1)
        _BERNOULLI_CACHE.append(-acc / (m + 1))
    return _BERNOULLI_CACHE[n]


# -- p-adic Gamma --------------------------------------------------------------

_GAMMA_CACHE: dict[tuple[int, int, int], int] = {}


def gamma_p(x: BigRat, p: int, precision: int, budget: int | None = DEFAULT_GAMMA_BUDGET) -> PadicInt:
    """Gamma_p(x) to `precision` digits, for a p-integral rational x."""
    if p < 3 or p % 2 == 0:
        raise ValueError(f"p must be an odd prime, got {p}")
    if precision < 1:
        raise ValueError(f"precision must be positive, got {precision}")
    if budget is not None and p**precision > budget:
        raise PrecisionBudgetExceeded(
            f"{p}^{precision} exceeds the Gamma_p precision budget {budget}"
        )
    x = Fraction(x)
    if padic_valuation(x, p) < 0:
        raise NotPIntegral(f"Gamma_p argument {x} is not p-integral at p = {p}")
    modulus = p**precision
    r = residue_of_rational(x, p, precision)
    if r == 0:
        r = modulus
    key = (p, precision, r)
    cached = _GAMMA_CACHE.get(key)
    if cached is None:
        acc = 1
        for k in range(1, r):
            if k % p:
                acc = acc * k % modulus
        if r % 2 == 1:
            acc = modulus - acc
        cached = acc % modulus
        _GAMMA_CACHE[key] = cached
    return PadicInt(p, precision, cached)


def _guarded_precision(p: int, needed: int, budget: int) -> int:
    """needed digits plus the largest guard in {2, 1, 0} fitting the budget."""
    for guard in (2, 1, 0):
        if p ** (needed + guard) <= budget:
            return needed + guard
    raise PrecisionBudgetExceeded(
        f"{p}^{needed} exceeds the Gamma_p precision budget {budget}"
    )


@dataclass(frozen=True)
class _GammaForm:
    """p^val_offset * coef * prod Gamma_p(arg)^e, with coef a p-unit."""

    val_offset: int
    coef: Fraction
    factors: tuple[tuple[Fraction, int], ...]


def rational_congruent(lhs: BigRat, rhs: BigRat, p: int, k: int) -> CongruenceResult:
    """Verified iff lhs == rhs modulo p**k, both sides p-integral."""
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    for side in (lhs, rhs):
        if padic_valuation(side, p) < 0:
            raise NotPIntegral(f"{side} is not p-integral at p = {p}")
    v = padic_valuation(lhs - rhs, p)
    if v >= k:
        return CongruenceResult(True, {"valuation": None if lhs == rhs else int(v)})
    return CongruenceResult(False, {"valuation": int(v), "required": k})


def _gamma_congruent(
    lhs: BigRat, form: _GammaForm, p: int, k: int, budget: int
) -> CongruenceResult:
    """Verified iff lhs == p^j * coef * prod Gamma_p(arg)^e modulo p**k."""
    lhs = Fraction(lhs)
    if padic_valuation(lhs, p) < 0:
        raise NotPIntegral(f"{lhs} is not p-integral at p = {p}")
    j = form.val_offset
    needed = k - j
    if needed <= 0:
        return rational_congruent(lhs, Fraction(0), p, k)
    scaled = lhs / p**j
    if padic_valuation(scaled, p) < 0:
        v = padic_valuation(lhs, p)
        return CongruenceResult(False, {"valuation": int(v), "required": k})
    precision = _guarded_precision(p, needed, budget)
    acc = PadicInt(p, precision, residue_of_rational(form.coef, p, precision))
    for arg, e in form.factors:
        acc = acc * gamma_p(arg, p, precision, budget) ** e
    rhs_res = acc.truncate(needed).residue
    lhs_res = residue_of_rational(scaled, p, needed)
    if lhs_res == rhs_res:
        return CongruenceResult(True, {"residue": rhs_res, "precision": needed})
    return CongruenceResult(
        False,
        {
            "lhs_residue": lhs_res,
            "rhs_residue": rhs_res,
            "modulus": f"{p}^{k}",
            "valuation_offset": j,
        },
    )


# -- truncated classical sums --------------------------------------------------


def _sum_quartic(m: int) -> Fraction:
    """sum_{k<=m} (-1)^k (4k+1) ((1/2)_k / k!)^5."""
    total = Fraction(0)
    t = Fraction(1)
    for k in range(m + 1):
        total += (4 * k + 1) * t if k % 2 == 0 else -(4 * k + 1) * t
        t *= ((_HALF + k) / (k + 1)) ** 5
    return total


def _sum_cubic(m: int) -> Fraction:
    """sum_{k<=m} (6k+1) ((1/3)_k / k!)^6."""
    total = Fraction(0)
    t = Fraction(1)
    for k in range(m + 1):
        total += (6 * k + 1) * t
        t *= ((_THIRD + k) / (k + 1)) ** 6
    return total


def _sum_sixth(d: int, r: int, m: int) -> Fraction:
    """sum_{k<=m} (2dk+r) ((r/d)_k / k!)^6."""
    total = Fraction(0)
    t = Fraction(1)
    for k in range(m + 1):
        total += (2 * d * k + r) * t
        t *= ((Fraction(r, d) + k) / (k + 1)) ** 6
    return total


def _sum_fifth_alt(d: int, r: int, m: int) -> Fraction:
    """sum_{k<=m} (-1)^k (2dk+r) ((r/d)_k / k!)^5."""
    total = Fraction(0)
    t = Fraction(1)
    for k in range(m + 1):
        term = (2 * d * k + r) * t
        total += term if k % 2 == 0 else -term
        t *= ((Fraction(r, d) + k) / (k + 1)) ** 5
    return total


def _inner_double(d: int, r: int, length: int, scale: Fraction, cube: Fraction) -> Fraction:
    """sum_{k<=length} (r/d)_k^3 (1-r/d)_k / (k!^3 (2r/d)_k) {scale - cube * h_k}

    with h_k = sum_{j<=k} (1/(dj)^2 + 1/(dj-d+r)^2), the q -> 1 image of the
    double-series right-hand sides.
    """
    total = Fraction(0)
    t = Fraction(1)
    h = Fraction(0)
    for k in range(length + 1):
        if k:
            h += Fraction(1, (d * k) ** 2) + Fraction(1, (d * k - d + r) ** 2)
        total += t * (scale - cube * h)
        t *= (
            (Fraction(r, d) + k) ** 3
            * (Fraction(d - r, d) + k)
            / ((k + 1) ** 3 * (Fraction(2 * r, d) + k))
        )
    return total


def _inner_double_bare(d: int, r: int, length: int, scale: Fraction, cube: Fraction) -> Fraction:
    """Like _inner_double but with term (r/d)_k^2 (1-r/d)_k / k!^3."""
    total = Fraction(0)
    t = Fraction(1)
    h = Fraction(0)
    for k in range(length + 1):
        if k:
            h += Fraction(1, (d * k) ** 2) + Fraction(1, (d * k - d + r) ** 2)
        total += t * (scale - cube * h)
        t *= (Fraction(r, d) + k) ** 2 * (Fraction(d - r, d) + k) / (k + 1) ** 3
    return total


# -- one checker per statement ------------------------------------------------
#
# Each checker validates side conditions, then returns
#   (modulus exponent k, [(m_choice label, lhs Fraction, rhs)])
# where rhs is a Fraction (pure rational congruence) or a _GammaForm.


def _require(cond: bool, message: str):
    if not cond:
        raise SideConditionViolated(message)


def _require_odd_prime(p: int):
    _require(p >= 3 and p % 2 == 1, f"p must be an odd prime, got {p}")


def _require_s1(stmt_id: str, s: int):
    _require(s == 1, f"{stmt_id} is a single-power statement; s must be 1, got {s}")


def _check_cor_1_4(p: int, s: int):
    _require_odd_prime(p)
    _require(s >= 1, f"s must be positive, got {s}")
    P = p**s
    if P % 4 == 1:
        quarter = (P - 1) // 4
        ratio = (rising(_HALF, quarter) / rising(Fraction(1), quarter)) ** 2
        brace = (
            P
            + Fraction(P**3, 4) * harmonic((P - 1) // 2, 2)
            - Fraction(P**3, 8) * harmonic(quarter, 2)
        )
        rhs = ratio * brace
    else:
        half = (P - 1) // 2
        rhs = Fraction(p ** (2 * s)) * rising(Fraction(3, 4), half) / rising(Fraction(5, 4), half)
    return s + 4, [
        ("(p^s-1)/2", _sum_quartic((P - 1) // 2), rhs),
        ("p^s-1", _sum_quartic(P - 1), rhs),
    ]


def _check_cor_1_5(p: int, s: int):
    _require_odd_prime(p)
    _require(s >= 1, f"s must be positive, got {s}")
    P = p**s
    _require(P % 3 == 1, f"p^s must be 1 mod 3, got {P} = {P % 3} mod 3")
    third = (P - 1) // 3
    ratio = (rising(Fraction(2, 3), third) / rising(Fraction(1), third)) ** 3
    correction = sum(
        (Fraction(1, (3 * j - 1) ** 2) - Fraction(1, (3 * j) ** 2) for j in range(1, third + 1)),
        Fraction(0),
    )
    rhs = ratio * (P + P**3 * correction)
    return s + 4, [
        ("(p^s-1)/3", _sum_cubic(third), rhs),
        ("p^s-1", _sum_cubic(P - 1), rhs),
    ]


def _check_cor_1_6(p: int, s: int):
    _require_odd_prime(p)
    _require(s >= 1, f"s must be positive, got {s}")
    P = p**s
    _require(P % 3 == 2, f"p^s must be 2 mod 3, got {P} = {P % 3} mod 3")
    length = (2 * P - 1) // 3
    rhs = 10 * P * (rising(Fraction(2, 3), length) / rising(Fraction(1), length)) ** 3
    return s + 5, [
        ("(2p^s-1)/3", _sum_cubic(length), rhs),
        ("p^s-1", _sum_cubic(P - 1), rhs),
    ]


def _check_prop_1_7(p: int, s: int):
    _require_s1("PROP_1_7", s)
    _require_odd_prime(p)
    _require(p > 5, f"p must exceed 5, got {p}")
    gamma = ((Fraction(1, 4), 4),)
    if p % 4 == 1:
        quarter = (p - 1) // 4
        lhs = (rising(_HALF, quarter) / rising(Fraction(1), quarter)) ** 2 * (
            1
            + Fraction(p**2, 4) * harmonic((p - 1) // 2, 2)
            - Fraction(p**2, 8) * harmonic(quarter, 2)
        )
        return 4, [("single", lhs, _GammaForm(0, Fraction(-1), gamma))]
    half = (p - 1) // 2
    lhs = rising(Fraction(3, 4), half) / rising(Fraction(5, 4), half)
    return 3, [("single", lhs, _GammaForm(1, Fraction(-1, 16), gamma))]


def _check_prop_1_8(p: int, s: int):
    _require_s1("PROP_1_8", s)
    _require_odd_prime(p)
    _require(p != 3, "p = 3 makes 1/3 non-integral")
    gamma = ((_THIRD, 9),)
    if p % 6 == 1:
        third = (p - 1) // 3
        correction = sum(
            (
                Fraction(1, (3 * j - 1) ** 2) - Fraction(1, (3 * j) ** 2)
                for j in range(1, third + 1)
            ),
            Fraction(0),
        )
        lhs = (rising(Fraction(2, 3), third) / rising(Fraction(1), third)) ** 3 * (
            1 + p**2 * correction
        )
        return 4, [("single", lhs, _GammaForm(0, Fraction(-1), gamma))]
    length = (2 * p - 1) // 3
    lhs = (rising(Fraction(2, 3), length) / rising(Fraction(1), length)) ** 3
    return 5, [("single", lhs, _GammaForm(3, Fraction(-1, 27), gamma))]


def _check_vh_a2(p: int, s: int):
    _require_s1("VH_A2", s)
    _require_odd_prime(p)
    lhs = _sum_quartic((p - 1) // 2)
    if p % 4 == 1:
        rhs = _GammaForm(1, Fraction(-1), ((Fraction(3, 4), -4),))
    else:
        rhs = Fraction(0)
    return 3, [("(p-1)/2", lhs, rhs)]


def _check_vh_d2(p: int, s: int):
    _require_s1("VH_D2", s)
    _require_odd_prime(p)
    _require(p % 6 == 1, f"p must be 1 mod 6, got {p}")
    lhs = _sum_cubic((p - 1) // 3)
    return 4, [("(p-1)/3", lhs, _GammaForm(1, Fraction(-1), ((_THIRD, 9),)))]


def _check_liu(p: int, s: int):
    _require_s1("LIU", s)
    _require_odd_prime(p)
    _require(p > 5 and p % 4 == 3, f"p must be 3 mod 4 and exceed 5, got {p}")
    lhs = _sum_quartic((p - 1) // 2)
    return 4, [("(p-1)/2", lhs, _GammaForm(3, Fraction(-1, 16), ((Fraction(1, 4), 4),)))]


def _check_lr(p: int, s: int):
    _require_s1("LR", s)
    _require_odd_prime(p)
    _require(p != 3, "p = 3 makes 1/3 non-integral")
    lhs = _sum_cubic(p - 1)
    gamma = ((_THIRD, 9),)
    if p % 6 == 1:
        rhs = _GammaForm(1, Fraction(-1), gamma)
    else:
        rhs = _GammaForm(4, Fraction(-10, 27), gamma)
    return 6, [("p-1", lhs, rhs)]


def _require_window(P: int, d: int, r: int):
    _require(d >= 1, f"d must be positive, got {d}")
    _require(gcd(P, d) == 1, f"gcd(p, d) must be 1, got d = {d}")
    _require(
        d + P - d * P <= r <= P,
        f"r = {r} outside the window {d + P - d * P}..{P}",
    )
    _require(P % d == r % d, f"p^s = {P} and r = {r} disagree mod d = {d}")


def _check_cor_5_e(p: int, s: int, d: int, r: int):
    _require_odd_prime(p)
    _require(s >= 1, f"s must be positive, got {s}")
    P = p**s
    _require_window(P, d, r)
    length = (P - r) // d
    pref = rising(Fraction(2 * r, d), length) / rising(Fraction(1), length)
    rhs = pref * _inner_double(d, r, length, Fraction(P), Fraction(P**3))
    return s + 4, [
        ("(p^s-r)/d", _sum_sixth(d, r, length), rhs),
        ("p^s-1", _sum_sixth(d, r, P - 1), rhs),
    ]


def _check_cor_5_g(p: int, s: int, d: int, r: int):
    _require_odd_prime(p)
    _require(s >= 1, f"s must be positive, got {s}")
    P = p**s
    _require_window(P, d, r)
    length = (P - r) // d
    sign = Fraction(-1) if ((r - P) // d) % 2 else Fraction(1)
    rhs = sign * _inner_double_bare(d, r, length, Fraction(P), Fraction(P**3))
    return s + 4, [
        ("(p^s-r)/d", _sum_fifth_alt(d, r, length), rhs),
        ("p^s-1", _sum_fifth_alt(d, r, P - 1), rhs),
    ]


def _check_cor_5_h(p: int, s: int, d: int, r: int):
    _require_odd_prime(p)
    _require(s >= 1, f"s must be positive, got {s}")
    _require(r in (1, -1), f"r must be +-1, got {r}")
    P = p**s
    _require(d >= 3, f"d must be at least 3, got {d}")
    _require(P + r >= d, f"p^s + r = {P + r} is below d = {d}")
    _require(gcd(P, d) == 1, f"gcd(p, d) must be 1, got d = {d}")
    _require((P + r) % d == 0, f"p^s = {P} must be -r mod d = {d}")
    length = (d * P - P - r) // d
    pref = rising(Fraction(2 * r, d), length) / rising(Fraction(1), length)
    rhs = pref * _inner_double(
        d, r, length, Fraction((d - 1) * P), Fraction((d - 1) ** 3 * P**3)
    )
    return s + 5, [
        ("(dp^s-p^s-r)/d", _sum_sixth(d, r, length), rhs),
        ("p^s-1", _sum_sixth(d, r, P - 1), rhs),
    ]


def _check_sun_h2(p: int, s: int):
    _require_s1("SUN_H2", s)
    _require_odd_prime(p)
    _require(p > 3, f"p must exceed 3, got {p}")
    return 2, [("single", harmonic(p - 1, 2), Fraction(2 * p, 3) * bernoulli(p - 3))]


def _check_sun_h2half(p: int, s: int):
    _require_s1("SUN_H2HALF", s)
    _require_odd_prime(p)
    _require(p > 3, f"p must exceed 3, got {p}")
    return 2, [
        ("single", harmonic((p - 1) // 2, 2), Fraction(7 * p, 3) * bernoulli(p - 3))
    ]


def _check_sun_h3(p: int, s: int):
    _require_s1("SUN_H3", s)
    _require_odd_prime(p)
    _require(p > 5, f"p must exceed 5, got {p}")
    return 1, [("single", harmonic(p // 4, 3), Fraction(-9) * bernoulli(p - 3))]


@dataclass(frozen=True)
class ClassicalStatement:
    stmt_id: str
    description: str
    side_conditions: str
    takes_s: bool
    takes_dr: bool
    checker: object
    desk_cases: tuple[dict, ...]


CLASSICAL_IDS: dict[str, ClassicalStatement] = {}


def _register(stmt: ClassicalStatement):
    CLASSICAL_IDS[stmt.stmt_id] = stmt


_register(
    ClassicalStatement(
        "COR_1_4",
        "alternating quartic sum vs harmonic-corrected closed form mod p^(s+4)",
        "p odd prime, s >= 1; branch by p^s mod 4",
        True,
        False,
        _check_cor_1_4,
        (
            {"p": 5, "s": 1},
            {"p": 7, "s": 1},
            {"p": 11, "s": 1},
            {"p": 13, "s": 1},
            {"p": 5, "s": 2},
        ),
    )
)
_register(
    ClassicalStatement(
        "COR_1_5",
        "cubic sum vs harmonic-corrected closed form mod p^(s+4)",
        "p odd prime, s >= 1, p^s = 1 mod 3",
        True,
        False,
        _check_cor_1_5,
        ({"p": 7, "s": 1}, {"p": 13, "s": 1}),
    )
)
_register(
    ClassicalStatement(
        "COR_1_6",
        "cubic sum vs 10 p^s times a shifted-factorial cube mod p^(s+5)",
        "p odd prime, s >= 1, p^s = 2 mod 3",
        True,
        False,
        _check_cor_1_6,
        ({"p": 5, "s": 1}, {"p": 11, "s": 1}),
    )
)
_register(
    ClassicalStatement(
        "PROP_1_7",
        "quartic closed forms vs -Gamma_p(1/4)^4 (mod p^4 resp. p^3)",
        "p > 5 prime; branch by p mod 4",
        False,
        False,
        _check_prop_1_7,
        ({"p": 13}, {"p": 17}, {"p": 7}, {"p": 11}),
    )
)
_register(
    ClassicalStatement(
        "PROP_1_8",
        "cubic closed forms vs -Gamma_p(1/3)^9 (mod p^4 resp. p^5)",
        "p odd prime, p != 3; branch by p mod 6",
        False,
        False,
        _check_prop_1_8,
        ({"p": 7}, {"p": 13}, {"p": 5}, {"p": 11}),
    )
)
_register(
    ClassicalStatement(
        "VH_A2",
        "alternating quartic sum vs -p/Gamma_p(3/4)^4 mod p^3 (0 when p = 3 mod 4)",
        "p odd prime; branch by p mod 4",
        False,
        False,
        _check_vh_a2,
        ({"p": 5}, {"p": 13}, {"p": 7}, {"p": 11}),
    )
)
_register(
    ClassicalStatement(
        "VH_D2",
        "cubic sum vs -p Gamma_p(1/3)^9 mod p^4",
        "p prime, p = 1 mod 6",
        False,
        False,
        _check_vh_d2,
        ({"p": 7}, {"p": 13}),
    )
)
_register(
    ClassicalStatement(
        "LIU",
        "alternating quartic sum vs -(p^3/16) Gamma_p(1/4)^4 mod p^4",
        "p > 5 prime, p = 3 mod 4",
        False,
        False,
        _check_liu,
        ({"p": 7}, {"p": 11}),
    )
)
_register(
    ClassicalStatement(
        "LR",
        "full cubic sum vs Gamma_p(1/3)^9 forms mod p^6, both residue branches",
        "p prime, p != 3; branch by p mod 6",
        False,
        False,
        _check_lr,
        ({"p": 7}, {"p": 11}, {"p": 13}),
    )
)
_register(
    ClassicalStatement(
        "COR_5_E",
        "degree-d sixth-power sum vs double sum with harmonic tails mod p^(s+4)",
        "p odd prime, s >= 1, gcd(p,d) = 1, p^s = r mod d, d+p^s-dp^s <= r <= p^s",
        True,
        True,
        _check_cor_5_e,
        ({"p": 7, "s": 1, "d": 3, "r": 1}, {"p": 5, "s": 1, "d": 4, "r": 1}),
    )
)
_register(
    ClassicalStatement(
        "COR_5_G",
        "alternating degree-d fifth-power sum vs signed double sum mod p^(s+4)",
        "p odd prime, s >= 1, gcd(p,d) = 1, p^s = r mod d, d+p^s-dp^s <= r <= p^s",
        True,
        True,
        _check_cor_5_g,
        ({"p": 7, "s": 1, "d": 3, "r": 1}, {"p": 5, "s": 1, "d": 4, "r": 1}),
    )
)
_register(
    ClassicalStatement(
        "COR_5_H",
        "degree-d sixth-power sum vs (d-1)-scaled double sum mod p^(s+5)",
        "p odd prime, s >= 1, r = +-1, d >= 3, gcd(p,d) = 1, p^s = -r mod d, p^s+r >= d",
        True,
        True,
        _check_cor_5_h,
        (
            {"p": 5, "s": 1, "d": 3, "r": 1},
            {"p": 7, "s": 1, "d": 3, "r": -1},
            {"p": 7, "s": 1, "d": 4, "r": 1},
            {"p": 5, "s": 1, "d": 4, "r": -1},
        ),
    )
)
_register(
    ClassicalStatement(
        "SUN_H2",
        "H_{p-1}^(2) = (2p/3) B_{p-3} mod p^2",
        "p prime, p > 3",
        False,
        False,
        _check_sun_h2,
        ({"p": 5}, {"p": 7}, {"p": 11}, {"p": 13}),
    )
)
_register(
    ClassicalStatement(
        "SUN_H2HALF",
        "H_{(p-1)/2}^(2) = (7p/3) B_{p-3} mod p^2",
        "p prime, p > 3",
        False,
        False,
        _check_sun_h2half,
        ({"p": 5}, {"p": 7}, {"p": 11}, {"p": 13}),
    )
)
_register(
    ClassicalStatement(
        "SUN_H3",
        "H_{floor(p/4)}^(3) = -9 B_{p-3} mod p",
        "p prime, p > 5",
        False,
        False,
        _check_sun_h3,
        ({"p": 7}, {"p": 11}, {"p": 13}),
    )
)


def classical_statements() -> list[ClassicalStatement]:
    return list(CLASSICAL_IDS.values())


def verify_classical(
    stmt_id: str,
    p: int,
    s: int = 1,
    d: int | None = None,
    r: int | None = None,
    m_choice: str | None = None,
    budget: int = DEFAULT_GAMMA_BUDGET,
) -> list[dict]:
    """Check one classical statement at (p, s[, d, r]); one dict per truncation.

    m_choice selects a truncation slot ("first", "second", or None for all
    the statement offers).  Each dict carries id, params, modulus, m_choice,
    status and witness.  Status is "verified" or "failed"; side-condition
    problems raise SideConditionViolated instead of producing records.
    """
    stmt = CLASSICAL_IDS.get(stmt_id)
    if stmt is None:
        raise UnknownKind(f"unknown classical statement {stmt_id!r}")
    if stmt.takes_dr:
        if d is None or r is None:
            raise SideConditionViolated(f"{stmt_id} needs both d and r")
        k, checks = stmt.checker(p, s, d, r)
        params = {"p": p, "s": s, "d": d, "r": r}
    else:
        if d is not None or r is not None:
            raise SideConditionViolated(f"{stmt_id} does not take d or r")
        k, checks = stmt.checker(p, s)
        params = {"p": p, "s": s}
    slots = ("first", "second")
    if m_choice is not None:
        if m_choice not in slots:
            raise SideConditionViolated(
                f"m_choice must be 'first' or 'second', got {m_choice!r}"
            )
        index = slots.index(m_choice)
        if index >= len(checks):
            raise SideConditionViolated(
                f"{stmt_id} offers {len(checks)} truncation(s); no {m_choice!r}"
            )
        selected = [(m_choice, checks[index])]
    else:
        selected = list(zip(slots, checks))
    records = []
    for slot, (_, lhs, rhs) in selected:
        if isinstance(rhs, _GammaForm):
            result = _gamma_congruent(lhs, rhs, p, k, budget)
        else:
            result = rational_congruent(lhs, rhs, p, k)
        records.append(
            {
                "id": stmt_id,
                "params": params,
                "modulus": f"{p}^{k}",
                "m_choice": slot,
                "status": "verified" if result.verified else "failed",
                "witness": result.witness,
            }
        )
    return records
