"""Modulus construction and the rational-function congruence decision.

A congruence A = B (mod P) over the field of rational functions in q means:
write A - B = N/D in lowest terms; then D must be coprime to P and P must
divide N.  The decision procedure below also accepts under-reduced N/D (as
produced by fast rational addition): common factors of D and P are cancelled
against N first, so only structurally small gcds are ever computed.

Moduli keep their factored shape ([n], Phi_n(q)^k, specialization binomials)
both for readable reports and so a failure can name the smallest factor that
does not divide.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import DenominatorNotUnit, SamplingExhausted, UnknownKind
from .polyring import (
    QPoly,
    QRat,
    cyclotomic,
    poly_divrem,
    poly_exact_div,
    poly_gcd,
    q_integer,
)

__all__ = [
    "CongruenceResult",
    "Modulus",
    "ParamSample",
    "build_modulus",
    "congruent",
    "sample_params",
]

MODULUS_KINDS = (
    "QINT",
    "PHI_POW",
    "QINT_PHI_POW",
    "SPECIALIZED",
    "QINT_SPECIALIZED",
    "QINT_PHI_SPECIALIZED",
)


def _poly_text(f: QPoly) -> str:
    parts = []
    for i in range(f.degree, -1, -1):
        c = f.coefficient(i)
        if c == 0:
            continue
        if i == 0:
            parts.append(f"{c}")
        else:
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            sign = "-" if c < 0 else ""
            term = f"{sign}{mag}q" if i == 1 else f"{sign}{mag}q^{i}"
            parts.append(term)
    text = "+".join(parts).replace("+-", "-")
    return f"({text})"


class Modulus:
    """Product of nonconstant polynomial factors with multiplicities."""

    __slots__ = ("factors", "label", "product", "monic_product")

    def __init__(self, factors, label: str = ""):
        kept = []
        product = QPoly.one()
        for f, mult in factors:
            if mult < 0:
                raise ValueError("factor multiplicity must be nonnegative")
            if mult == 0 or f.is_constant():
                continue
            kept.append((f, mult))
            product = product * f**mult
        object.__setattr__(self, "factors", tuple(kept))
        object.__setattr__(self, "product", product)
        object.__setattr__(
            self, "monic_product", product.monic() if not product.is_constant() else QPoly.one()
        )
        object.__setattr__(self, "label", label or self.describe())

    def __setattr__(self, name, value):
        raise AttributeError("Modulus is immutable")

    def is_trivial(self) -> bool:
        return not self.factors

    def describe(self) -> str:
        if not self.factors:
            return "1"
        parts = []
        for f, mult in self.factors:
            text = _poly_text(f)
            parts.append(text if mult == 1 else f"{text}^{mult}")
        return "*".join(parts)

    def __repr__(self):
        return f"Modulus({self.label})"


def build_modulus(kind: str, n: int, bindings: dict | None = None) -> Modulus:
    """Assemble a modulus of the given kind at order n.

    bindings may carry: k (the Phi exponent, default 1), t (the q-power scale
    in specialization binomials, default 1), and rational values for any of
    a, b, c, each contributing the factor pair (1 - x q^(tn))(x - q^(tn)).
    """
    if n < 1:
        raise ValueError(f"modulus order must be positive, got {n}")
    bindings = dict(bindings or {})
    k = int(bindings.get("k", 1))
    t = int(bindings.get("t", 1))
    if kind not in MODULUS_KINDS:
        raise UnknownKind(f"unknown modulus kind {kind!r}")

    factors: list[tuple[QPoly, int]] = []
    label_parts: list[str] = []
    if kind.startswith("QINT"):
        factors.append((q_integer(n), 1))
        label_parts.append(f"[{n}]")
    if "PHI" in kind:
        factors.append((cyclotomic(n), k))
        label_parts.append(f"Phi({n})" if k == 1 else f"Phi({n})^{k}")
    if "SPECIALIZED" in kind:
        e = t * n
        for sym in ("a", "b", "c"):
            if sym not in bindings:
                continue
            x = Fraction(bindings[sym])
            low = QPoly([1] + [0] * (e - 1) + [-x])  # 1 - x q^(tn)
            high = QPoly([x] + [0] * (e - 1) + [-1])  # x - q^(tn)
            factors.append((low, 1))
            factors.append((high, 1))
            label_parts.append(f"(1-{sym}*q^{e})({sym}-q^{e})")
    return Modulus(factors, "*".join(label_parts) if label_parts else "1")


@dataclass(frozen=True)
class CongruenceResult:
    verified: bool
    witness: dict

    def __bool__(self):
        return self.verified


def _smallest_failing_factor(num: QPoly, m: Modulus) -> str:
    candidates = []
    for f, mult in m.factors:
        fm = f.monic()
        rem = num
        for j in range(1, mult + 1):
            quotient, r = poly_divrem(rem, fm)
            if not r.is_zero():
                text = _poly_text(f)
                candidates.append((fm.degree * j, text if j == 1 else f"{text}^{j}"))
                break
            rem = quotient
    if not candidates:
        return ""
    return min(candidates)[1]


def congruent(lhs, rhs, m: Modulus) -> CongruenceResult:
    """Decide lhs = rhs (mod m) over rational functions of q.

    Returns a CongruenceResult whose witness carries the quotient degree on
    success, or the remainder shape and smallest failing factor.  Raises
    DenominatorNotUnit when the reduced denominator shares a factor with the
    modulus, which makes the congruence meaningless rather than false.
    """
    if m.is_trivial():
        return CongruenceResult(True, {"quotient_degree": -1, "trivial": True})
    diff = QRat.from_value(lhs) - QRat.from_value(rhs)
    p = m.monic_product
    num, den = diff.num, diff.den
    while not den.is_one():
        dr = poly_divrem(den, p)[1]
        h = p if dr.is_zero() else poly_gcd(dr, p)
        if h.degree == 0:
            break
        nr = poly_divrem(num, h)[1]
        g = h if nr.is_zero() else poly_gcd(nr, h)
        if g.degree == 0:
            raise DenominatorNotUnit(
                f"denominator shares the factor {_poly_text(h)} with the modulus"
            )
        num = poly_exact_div(num, g)
        den = poly_exact_div(den, g)
    quotient, rem = poly_divrem(num, p)
    if rem.is_zero():
        return CongruenceResult(True, {"quotient_degree": quotient.degree})
    return CongruenceResult(
        False,
        {
            "remainder_degree": rem.degree,
            "remainder_leading": str(rem.leading),
            "failing_factor": _smallest_failing_factor(num, m),
        },
    )


@dataclass(frozen=True)
class ParamSample:
    seed: int
    assignments: dict
    rejection_count: int


def _power_collision(x: Fraction, y: Fraction, bound: int = 6) -> bool:
    # Reject pairs tied by x^i = y^j (small i, j): such relations can make
    # nominally distinct specialization binomials share polynomial factors.
    for i in range(1, bound + 1):
        xi = x**i
        yj = Fraction(1)
        for _ in range(bound):
            yj *= y
            if xi == yj or xi * yj == 1:
                return True
    return False


def sample_params(symbols, n: int, t: int = 1, seed=0, guard=None) -> ParamSample:
    """Deterministic generic rationals u/v (|u|, v <= 9) for the free symbols.

    Guards: no value in {0, 1, -1}; pairwise distinct; for any pair x, y:
    x*y != 1, x != y +- 1, and no small power relation x^i = y^j.  The
    optional guard callable can reject an assignment dict (return False).
    Raises SamplingExhausted after 1000 rejected draws.
    """
    symbols = list(symbols)
    rng = random.Random(f"params:{','.join(symbols)}:{n}:{t}:{seed}")
    rejections = 0
    while rejections <= 1000:
        assignment: dict[str, Fraction] = {}
        ok = True
        for sym in symbols:
            u = rng.randint(-9, 9)
            v = rng.randint(1, 9)
            x = Fraction(u, v)
            if x in (0, 1, -1):
                ok = False
                break
            for prev in assignment.values():
                if (
                    x == prev
                    or x * prev == 1
                    or x == prev + 1
                    or x == prev - 1
                    or _power_collision(x, prev)
                ):
                    ok = False
                    break
            if not ok:
                break
            assignment[sym] = x
        if ok and guard is not None and not guard(assignment):
            ok = False
        if ok:
            return ParamSample(seed=seed, assignments=assignment, rejection_count=rejections)
        rejections += 1
    raise SamplingExhausted(
        f"no admissible assignment for {symbols} after {rejections} rejections"
    )
