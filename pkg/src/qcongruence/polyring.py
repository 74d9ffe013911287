"""Dense univariate polynomials and rational functions over exact rationals.

QPoly is represented as an integer coefficient array with one shared positive
denominator (canonical: no trailing zero coefficients, gcd(content, den) = 1).
This keeps the hot loops in pure integer arithmetic; Fractions appear only at
the API surface.  Multiplication uses schoolbook convolution below 32
coefficients and Kronecker substitution above, which delegates the work to
CPython's C-level big-integer multiplication.

QRat is a reduced rational function: numerator and monic denominator with
gcd 1, normalized at construction.  Polynomial gcd is a primitive PRS over the
integers, which is fast here because every denominator this package ever
reduces against is monic.

Cyclotomic polynomials are computed by exact division of q^n - 1 by the
lower-order cyclotomics and memoized for the life of the process (the cache
is only ever extended, so concurrent readers are safe).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd
from math import lcm as ilcm

from .errors import DivisionByZeroPoly, DenominatorNotUnit, ModuliNotCoprime

__all__ = [
    "QPoly",
    "QRat",
    "crt_combine",
    "cyclotomic",
    "poly_divrem",
    "poly_gcd",
    "poly_gcd_ext",
    "q_integer",
    "ratfun_normalize",
]

_KARATSUBA_THRESHOLD = 32


def _content(nums) -> int:
    g = 0
    for c in nums:
        if c:
            g = igcd(g, c)
            if g == 1:
                return 1
    return g


def _strip(nums: list[int]) -> list[int]:
    while nums and nums[-1] == 0:
        nums.pop()
    return nums


def _mul_schoolbook(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _mul_kronecker(a, b):
    # Pack signed coefficients into one big integer per operand; the digit
    # width is chosen so every convolution coefficient fits with a sign bit.
    max_a = max(abs(c) for c in a)
    max_b = max(abs(c) for c in b)
    bound = max_a * max_b * min(len(a), len(b))
    width = bound.bit_length() + 2
    pa = sum(c << (i * width) for i, c in enumerate(a) if c)
    pb = sum(c << (i * width) for i, c in enumerate(b) if c)
    prod = pa * pb
    n = len(a) + len(b) - 1
    out = []
    mask = (1 << width) - 1
    half = 1 << (width - 1)
    neg = prod < 0
    if neg:
        prod = -prod
    for _ in range(n):
        d = prod & mask
        prod >>= width
        if d >= half:
            d -= 1 << width
            prod += 1
        out.append(-d if neg else d)
    return out


def _mul_lists(a, b):
    if not a or not b:
        return []
    if len(a) < _KARATSUBA_THRESHOLD or len(b) < _KARATSUBA_THRESHOLD:
        return _mul_schoolbook(a, b)
    return _mul_kronecker(a, b)


class QPoly:
    """Dense polynomial in q over exact rationals."""

    __slots__ = ("_nums", "_den")

    def __init__(self, coeffs=(), den: int = 1):
        """Build from an iterable of int/Fraction coefficients, low order first.

        The two-argument form takes integer coefficients over a common
        denominator and is the representation used internally.
        """
        if den != 1:
            nums = _strip([int(c) for c in coeffs])
            self._init_canonical(nums, den)
            return
        nums: list[int] = []
        lcm = 1
        raw = list(coeffs)
        for c in raw:
            if isinstance(c, Fraction) and c.denominator != 1:
                lcm = ilcm(lcm, c.denominator)
        for c in raw:
            f = Fraction(c)
            nums.append(int(f * lcm))
        self._init_canonical(_strip(nums), lcm)

    def _init_canonical(self, nums: list[int], den: int):
        if den < 0:
            den = -den
            nums = [-c for c in nums]
        if not nums:
            object.__setattr__(self, "_nums", ())
            object.__setattr__(self, "_den", 1)
            return
        if den != 1:
            g = igcd(_content(nums), den)
            if g > 1:
                nums = [c // g for c in nums]
                den //= g
        object.__setattr__(self, "_nums", tuple(nums))
        object.__setattr__(self, "_den", den)

    def __setattr__(self, name, value):
        raise AttributeError("QPoly is immutable")

    @classmethod
    def _make(cls, nums: list[int], den: int) -> "QPoly":
        p = object.__new__(cls)
        p._init_canonical(_strip(list(nums)), den)
        return p

    @classmethod
    def zero(cls) -> "QPoly":
        return _ZERO

    @classmethod
    def one(cls) -> "QPoly":
        return _ONE

    @classmethod
    def monomial(cls, exp: int, coeff=1) -> "QPoly":
        if exp < 0:
            raise ValueError("monomial exponent must be nonnegative")
        c = Fraction(coeff)
        if c == 0:
            return _ZERO
        return cls._make([0] * exp + [c.numerator], c.denominator)

    @classmethod
    def const(cls, value) -> "QPoly":
        v = Fraction(value)
        if v == 0:
            return _ZERO
        return cls._make([v.numerator], v.denominator)

    # -- inspection ----------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self._nums) - 1

    def is_zero(self) -> bool:
        return not self._nums

    def is_one(self) -> bool:
        return self._nums == (1,) and self._den == 1

    def is_constant(self) -> bool:
        return len(self._nums) <= 1

    def is_monic(self) -> bool:
        return bool(self._nums) and self._nums[-1] == self._den

    @property
    def leading(self) -> Fraction:
        if not self._nums:
            return Fraction(0)
        return Fraction(self._nums[-1], self._den)

    def coefficient(self, i: int) -> Fraction:
        if 0 <= i < len(self._nums):
            return Fraction(self._nums[i], self._den)
        return Fraction(0)

    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._nums)

    def trailing_order(self) -> int:
        """Multiplicity of q dividing the polynomial (0 for nonzero constant)."""
        for i, c in enumerate(self._nums):
            if c:
                return i
        return 0

    # -- arithmetic ----------------------------------------------------------

    def __bool__(self):
        return bool(self._nums)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPoly.const(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        return self._nums == other._nums and self._den == other._den

    def __hash__(self):
        return hash((self._nums, self._den))

    def __neg__(self):
        return QPoly._make([-c for c in self._nums], self._den)

    def _coerce(self, other):
        if isinstance(other, QPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return QPoly.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, da, b, db = self._nums, self._den, other._nums, other._den
        if da == db:
            den = da
            sa, sb = 1, 1
        else:
            den = ilcm(da, db)
            sa, sb = den // da, den // db
        n = max(len(a), len(b))
        out = [0] * n
        for i, c in enumerate(a):
            out[i] = c * sa
        for i, c in enumerate(b):
            out[i] += c * sb
        return QPoly._make(out, den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return QPoly._make([c * other for c in self._nums], self._den)
        if isinstance(other, Fraction):
            return QPoly._make(
                [c * other.numerator for c in self._nums], self._den * other.denominator
            )
        if not isinstance(other, QPoly):
            return NotImplemented
        if not self._nums or not other._nums:
            return _ZERO
        return QPoly._make(_mul_lists(self._nums, other._nums), self._den * other._den)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("QPoly power must be nonnegative; use QRat for inverses")
        result = _ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def shift(self, k: int) -> "QPoly":
        """Multiply by q**k; negative k divides and must be exact."""
        if k == 0 or not self._nums:
            return self
        if k > 0:
            return QPoly._make([0] * k + list(self._nums), self._den)
        if self.trailing_order() < -k:
            raise ValueError(f"shift by {k} is not exact")
        return QPoly._make(list(self._nums[-k:]), self._den)

    def eval_at(self, x) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self._nums):
            acc = acc * x + c
        return acc / self._den

    def monic(self) -> "QPoly":
        if not self._nums:
            raise DivisionByZeroPoly("zero polynomial has no monic scaling")
        lead = self._nums[-1]
        return QPoly._make([c * (1 if lead > 0 else -1) for c in self._nums], abs(lead))

    def __repr__(self):
        if not self._nums:
            return "QPoly(0)"
        parts = []
        for i in range(len(self._nums) - 1, -1, -1):
            c = self.coefficient(i)
            if c == 0:
                continue
            if i == 0:
                parts.append(f"{c}")
            else:
                mon = "q" if i == 1 else f"q^{i}"
                if c == 1:
                    parts.append(mon)
                elif c == -1:
                    parts.append(f"-{mon}")
                else:
                    parts.append(f"{c}*{mon}")
        s = " + ".join(parts).replace("+ -", "- ")
        return f"QPoly({s})"


_ZERO = QPoly.__new__(QPoly)
_ZERO._init_canonical([], 1)
_ONE = QPoly.__new__(QPoly)
_ONE._init_canonical([1], 1)


def poly_divrem(f: QPoly, g: QPoly) -> tuple[QPoly, QPoly]:
    """Quotient and remainder with deg(rem) < deg(g); exact over the rationals."""
    if g.is_zero():
        raise DivisionByZeroPoly("polynomial division by zero")
    if f.degree < g.degree:
        return _ZERO, f
    if g._den == 1 and g._nums[-1] == 1:
        return _divrem_monic_int(f, g)
    return _divrem_general(f, g)


def _divrem_monic_int(f: QPoly, g: QPoly) -> tuple[QPoly, QPoly]:
    # Divisor monic with integer coefficients: the loop stays in integers and
    # the shared denominator of f carries through unchanged.
    rem = list(f._nums)
    gn = g._nums
    dg = len(gn) - 1
    quot = [0] * (len(rem) - dg)
    for i in range(len(rem) - 1, dg - 1, -1):
        c = rem[i]
        if c:
            quot[i - dg] = c
            rem[i] = 0
            for j in range(dg):
                rem[i - dg + j] -= c * gn[j]
    return QPoly._make(quot, f._den), QPoly._make(rem[:dg], f._den)


def _divrem_general(f: QPoly, g: QPoly) -> tuple[QPoly, QPoly]:
    rem = [Fraction(c, f._den) for c in f._nums]
    gc = [Fraction(c, g._den) for c in g._nums]
    dg = len(gc) - 1
    lead = gc[-1]
    quot = [Fraction(0)] * (len(rem) - dg)
    for i in range(len(rem) - 1, dg - 1, -1):
        c = rem[i]
        if c:
            c /= lead
            quot[i - dg] = c
            rem[i] = Fraction(0)
            for j in range(dg):
                rem[i - dg + j] -= c * gc[j]
    return QPoly(quot), QPoly(rem[:dg])


def poly_exact_div(f: QPoly, g: QPoly) -> QPoly:
    q, r = poly_divrem(f, g)
    if not r.is_zero():
        raise DivisionByZeroPoly(f"{g!r} does not divide exactly")
    return q


def poly_try_div(f: QPoly, g: QPoly):
    """Quotient if g divides f exactly, else None."""
    q, r = poly_divrem(f, g)
    return q if r.is_zero() else None


def _pseudo_rem_int(a: list[int], b: list[int]) -> list[int]:
    # Remainder of a scaled multiple of a by b, over the integers.  Content is
    # stripped by the caller, so the extra lc factors are harmless.
    db = len(b) - 1
    lc = b[-1]
    rem = list(a)
    steps = 0
    while len(rem) - 1 >= db and rem:
        top = rem[-1]
        if lc != 1:
            rem = [c * lc for c in rem]
        shiftn = len(rem) - 1 - db
        for j in range(db + 1):
            rem[shiftn + j] -= top * b[j]
        rem = _strip(rem)
        steps += 1
        if steps % 32 == 0 and rem:
            g = _content(rem)
            if g > 1:
                rem = [c // g for c in rem]
    return rem


def poly_gcd(f: QPoly, g: QPoly) -> QPoly:
    """Monic gcd via a primitive polynomial remainder sequence over Z."""
    if f.is_zero():
        return g.monic() if not g.is_zero() else _ZERO
    if g.is_zero():
        return f.monic()
    a = list(f._nums)
    b = list(g._nums)
    ga, gb = _content(a), _content(b)
    if ga > 1:
        a = [c // ga for c in a]
    if gb > 1:
        b = [c // gb for c in b]
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _pseudo_rem_int(a, b)
        if r:
            gr = _content(r)
            if gr > 1:
                r = [c // gr for c in r]
        a, b = b, r
    lead = a[-1]
    return QPoly._make([c * (1 if lead > 0 else -1) for c in a], abs(lead))


def poly_gcd_ext(f: QPoly, g: QPoly) -> tuple[QPoly, QPoly, QPoly]:
    """Extended Euclid over Q: returns (monic gcd d, u, v) with u*f + v*g = d."""
    r0, r1 = f, g
    s0, s1 = _ONE, _ZERO
    t0, t1 = _ZERO, _ONE
    while not r1.is_zero():
        q, r = poly_divrem(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return _ZERO, _ZERO, _ZERO
    lead = r0.leading
    inv = 1 / lead
    return r0 * inv, s0 * inv, t0 * inv


def _divisors(n: int) -> list[int]:
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


_CYCLOTOMIC_CACHE: dict[int, QPoly] = {}


def cyclotomic(n: int) -> QPoly:
    """n-th cyclotomic polynomial Phi_n, by exact division of q^n - 1.

    Memoized; the cache is only appended to, never mutated in place.
    """
    if n < 1:
        raise ValueError(f"cyclotomic index must be positive, got {n}")
    hit = _CYCLOTOMIC_CACHE.get(n)
    if hit is not None:
        return hit
    result = QPoly._make([-1] + [0] * (n - 1) + [1], 1)  # q^n - 1
    for d in _divisors(n):
        if d < n:
            result = poly_exact_div(result, cyclotomic(d))
    _CYCLOTOMIC_CACHE[n] = result
    return result


def power_minus_one_factors(e: int) -> list[QPoly]:
    """Monic irreducible factors of q^e - 1 (with multiplicity one each)."""
    return [cyclotomic(d) for d in _divisors(e)]


def power_plus_one_factors(e: int) -> list[QPoly]:
    """Monic irreducible factors of q^e + 1."""
    return [cyclotomic(d) for d in _divisors(2 * e) if e % d != 0]


def q_integer(r: int):
    """q-integer [r] = (1 - q^r)/(1 - q); QPoly for r >= 0, QRat for r < 0."""
    if r >= 0:
        return QPoly._make([1] * r, 1)
    j = -r
    return QRat._raw(QPoly._make([-1] * j, 1), QPoly.monomial(j))


class QRat:
    """Reduced rational function: numerator over a monic denominator, gcd 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, QPoly):
            num = QPoly.const(num)
        if den is None:
            den = _ONE
        elif not isinstance(den, QPoly):
            den = QPoly.const(den)
        if den.is_zero():
            raise DivisionByZeroPoly("rational function with zero denominator")
        if not den.is_one() and not num.is_zero():
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = poly_exact_div(num, g)
                den = poly_exact_div(den, g)
        if num.is_zero():
            den = _ONE
        elif not den.is_monic():
            lead = den.leading
            den = den * (1 / lead)
            num = num * (1 / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("QRat is immutable")

    @classmethod
    def _raw(cls, num: QPoly, den: QPoly) -> "QRat":
        """Trusted constructor: den monic (or one) and gcd(num, den) = 1."""
        r = object.__new__(cls)
        object.__setattr__(r, "num", num)
        object.__setattr__(r, "den", den if not num.is_zero() else _ONE)
        return r

    @classmethod
    def from_value(cls, v) -> "QRat":
        if isinstance(v, QRat):
            return v
        if isinstance(v, QPoly):
            return cls._raw(v, _ONE)
        return cls._raw(QPoly.const(v), _ONE)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.is_one()

    def as_poly(self) -> QPoly:
        if not self.den.is_one():
            raise DivisionByZeroPoly(f"{self!r} is not a polynomial")
        return self.num

    def __bool__(self):
        return not self.num.is_zero()

    def _coerce(self, other):
        if isinstance(other, QRat):
            return other
        if isinstance(other, (QPoly, int, Fraction)):
            return QRat.from_value(other)
        return None

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __neg__(self):
        return QRat._raw(-self.num, self.den)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a1, b1, a2, b2 = self.num, self.den, other.num, other.den
        if b1.is_one():
            if b2.is_one():
                return QRat._raw(a1 + a2, _ONE)
            return QRat._raw(a1 * b2 + a2, b2)
        if b2.is_one():
            return QRat._raw(a1 + a2 * b1, b1)
        g = poly_gcd(b1, b2)
        if g.degree == 0:
            return QRat._raw(a1 * b2 + a2 * b1, b1 * b2)
        b1r = poly_exact_div(b1, g)
        b2r = poly_exact_div(b2, g)
        num = a1 * b2r + a2 * b1r
        h = poly_gcd(num, g)
        if h.degree > 0:
            num = poly_exact_div(num, h)
            g = poly_exact_div(g, h)
        return QRat._raw(num, g * b1r * b2r)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QRat._raw(self.num * Fraction(other), self.den)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a1, b1, a2, b2 = self.num, self.den, other.num, other.den
        if a1.is_zero() or a2.is_zero():
            return _QRAT_ZERO
        if not b2.is_one() and not a1.is_zero():
            g = poly_gcd(a1, b2)
            if g.degree > 0:
                a1 = poly_exact_div(a1, g)
                b2 = poly_exact_div(b2, g)
        if not b1.is_one() and not a2.is_zero():
            g = poly_gcd(a2, b1)
            if g.degree > 0:
                a2 = poly_exact_div(a2, g)
                b1 = poly_exact_div(b1, g)
        return QRat._raw(a1 * a2, b1 * b2)

    __rmul__ = __mul__

    def inverse(self) -> "QRat":
        if self.num.is_zero():
            raise DivisionByZeroPoly("inverse of zero rational function")
        num, den = self.den, self.num
        lead = den.leading
        if lead != 1:
            inv = 1 / lead
            num, den = num * inv, den * inv
        return QRat._raw(num, den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int):
        if e == 0:
            return _QRAT_ONE
        base = self if e > 0 else self.inverse()
        e = abs(e)
        result = _QRAT_ONE
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def eval_at(self, x) -> Fraction:
        d = self.den.eval_at(x)
        if d == 0:
            raise DivisionByZeroPoly(f"denominator vanishes at q = {x}")
        return self.num.eval_at(x) / d

    def __repr__(self):
        if self.den.is_one():
            return f"QRat({self.num!r})"
        return f"QRat({self.num!r} / {self.den!r})"


_QRAT_ZERO = QRat._raw(_ZERO, _ONE)
_QRAT_ONE = QRat._raw(_ONE, _ONE)


def ratfun_normalize(num: QPoly, den: QPoly) -> QRat:
    """Reduced form with monic denominator; DivisionByZeroPoly on zero den."""
    return QRat(num, den)


def crt_combine(r1: QRat, m1: QPoly, r2: QRat, m2: QPoly) -> QRat:
    """The unique residue x mod m1*m2 with x = r1 mod m1 and x = r2 mod m2.

    Moduli must be coprime; residue denominators must be units modulo the
    product.  The result numerator is degree-reduced modulo m1*m2*den.
    """
    r1 = QRat.from_value(r1)
    r2 = QRat.from_value(r2)
    if m1.is_zero() or m2.is_zero():
        raise DivisionByZeroPoly("CRT modulus is zero")
    g, u, _v = poly_gcd_ext(m1, m2)
    if g.degree != 0:
        raise ModuliNotCoprime(f"moduli share factor {g!r}")
    product = m1 * m2
    for r in (r1, r2):
        if not r.den.is_one() and poly_gcd(r.den, product).degree > 0:
            raise DenominatorNotUnit(f"residue denominator {r.den!r} not a unit")
    # u*m1 = 1 mod m2 up to the constant g; fold the constant into u.
    u = u * (1 / g.leading) if g.leading != 1 else u
    x = r1 + QRat.from_value(m1 * u) * (r2 - r1)
    bound = product * x.den
    if x.num.degree >= bound.degree:
        _, rem = poly_divrem(x.num, bound)
        x = QRat._raw(rem, x.den) if not rem.is_zero() else _QRAT_ZERO
    return x
