"""Numeric substrate: exact rationals, exact prime-power monomials and
fixed-precision decimals.

A :class:`Scalar` is either *exact* (backed by :class:`fractions.Fraction`)
or *approximate* (backed by :class:`decimal.Decimal`, carrying the number of
significant digits it was computed to).  Every operation stays exact while it
can and demotes to an approximate value only when it must, e.g. when taking
an irrational root.  ``Scalar.exact`` is the demotion flag callers inspect.

Precision is passed explicitly; no global decimal context is touched, so
scalars can be shared between threads freely.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from decimal import Context, Decimal, ROUND_HALF_EVEN
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Union

DEFAULT_DIGITS = 60
GUARD_DIGITS = 12

Rational = Union[int, Fraction]


class DomainError(ValueError):
    """Argument outside the domain of a numeric operation."""


class DivergenceError(ArithmeticError):
    """An infinite sum or supremum that does not converge."""


@lru_cache(maxsize=None)
def _context(digits: int) -> Context:
    return Context(prec=digits + GUARD_DIGITS, rounding=ROUND_HALF_EVEN)


def decimal_context(digits: int) -> Context:
    """Working decimal context for ``digits`` significant digits (with guard digits)."""
    return _context(digits)


@lru_cache(maxsize=None)
def _output_context(digits: int) -> Context:
    return Context(prec=digits, rounding=ROUND_HALF_EVEN)


def _to_decimal(x: Fraction, digits: int) -> Decimal:
    ctx = _context(digits)
    return ctx.divide(Decimal(x.numerator), Decimal(x.denominator))


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"a/b"`` or ``"a"`` into a Fraction.

    Decimal notation is rejected on purpose: ``0.1`` would silently stand
    for something other than one tenth once it passed through a float.
    """
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"not a rational of the form a or a/b: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@total_ordering
class Scalar:
    """An immutable real number, exact or approximate."""

    __slots__ = ("_value", "_digits")

    def __init__(self, value, digits: int = DEFAULT_DIGITS):
        if isinstance(value, Scalar):
            value = value._value
        elif isinstance(value, int):
            value = Fraction(value)
        elif isinstance(value, float):
            raise TypeError("floats are not accepted; pass a Fraction or Decimal")
        elif not isinstance(value, (Fraction, Decimal)):
            raise TypeError(f"cannot build a Scalar from {type(value).__name__}")
        object.__setattr__(self, "_value", value)
        object.__setattr__(self, "_digits", int(digits))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def approx(cls, value: Decimal, digits: int = DEFAULT_DIGITS) -> "Scalar":
        return cls(_context(digits).plus(value), digits)

    @property
    def exact(self) -> bool:
        return isinstance(self._value, Fraction)

    @property
    def digits(self) -> int:
        return self._digits

    @property
    def value(self) -> Fraction | Decimal:
        return self._value

    def as_fraction(self) -> Fraction:
        if not self.exact:
            raise DomainError("approximate scalar has no exact rational value")
        return self._value

    def as_decimal(self, digits: int | None = None) -> Decimal:
        digits = self._digits if digits is None else digits
        if self.exact:
            return _to_decimal(self._value, digits)
        return self._value

    def with_digits(self, digits: int) -> "Scalar":
        if self.exact:
            return Scalar(self._value, digits)
        return Scalar.approx(self._value, digits)

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other) -> "Scalar | None":
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(Fraction(other), self._digits)
        if isinstance(other, Decimal):
            return Scalar(other, self._digits)
        return None

    def _binary(self, other, op):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        digits = min(self._digits, other._digits)
        if self.exact and other.exact:
            return Scalar(op(self._value, other._value), digits)
        ctx = _context(digits)
        a, b = self.as_decimal(digits), other.as_decimal(digits)
        if op is _add:
            return Scalar(ctx.add(a, b), digits)
        if op is _sub:
            return Scalar(ctx.subtract(a, b), digits)
        if op is _mul:
            return Scalar(ctx.multiply(a, b), digits)
        return Scalar(ctx.divide(a, b), digits)

    def __add__(self, other):
        return self._binary(other, _add)

    def __radd__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else other._binary(self, _add)

    def __sub__(self, other):
        return self._binary(other, _sub)

    def __rsub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else other._binary(self, _sub)

    def __mul__(self, other):
        return self._binary(other, _mul)

    def __rmul__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else other._binary(self, _mul)

    def __truediv__(self, other):
        other_s = self._coerce(other)
        if other_s is None:
            return NotImplemented
        if other_s.is_zero():
            raise ZeroDivisionError("Scalar division by zero")
        return self._binary(other_s, _div)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else other.__truediv__(self)

    def __neg__(self):
        if self.exact:
            return Scalar(-self._value, self._digits)
        # Decimal's unary minus rounds to the ambient context; copy_negate does not.
        return Scalar(self._value.copy_negate(), self._digits)

    def __abs__(self):
        if self.exact:
            return Scalar(abs(self._value), self._digits)
        return Scalar(self._value.copy_abs(), self._digits)

    def __pow__(self, e):
        if not isinstance(e, int):
            return pow_rational(self, Fraction(e))
        if self.exact:
            if e < 0 and self._value == 0:
                raise ZeroDivisionError("0 to a negative power")
            return Scalar(self._value ** e, self._digits)
        ctx = _context(self._digits)
        return Scalar(ctx.power(self._value, Decimal(e)), self._digits)

    def is_zero(self) -> bool:
        return self._value == 0

    def sign(self) -> int:
        return (self._value > 0) - (self._value < 0)

    # -- ordering -------------------------------------------------------

    def _cmp_pair(self, other):
        other = self._coerce(other)
        if other is None:
            return None
        if self.exact and other.exact:
            return self._value, other._value
        digits = max(self._digits, other._digits)
        return self.as_decimal(digits), other.as_decimal(digits)

    def __eq__(self, other):
        pair = self._cmp_pair(other)
        if pair is None:
            return NotImplemented
        return pair[0] == pair[1]

    def __lt__(self, other):
        pair = self._cmp_pair(other)
        if pair is None:
            return NotImplemented
        return pair[0] < pair[1]

    def __hash__(self):
        return hash(self._value)

    def __float__(self):
        return float(self._value)

    def __bool__(self):
        return self._value != 0

    # -- text -----------------------------------------------------------

    def to_decimal_string(self, digits: int | None = None) -> str:
        """Decimal string rounded to ``digits`` significant digits."""
        digits = self._digits if digits is None else digits
        if self.exact and self._value.denominator == 1:
            return str(self._value.numerator)
        ctx = _output_context(digits)
        d = ctx.plus(self.as_decimal(digits))
        if d == 0:
            return "0"
        d = d.normalize(ctx)
        return format(d, "f") if -6 <= d.adjusted() < digits else str(d)

    def to_string(self) -> str:
        """Exact values as ``n/d``, approximate ones as decimals."""
        if self.exact:
            return format_rational(self._value)
        return self.to_decimal_string()

    def __repr__(self):
        tag = "exact" if self.exact else f"approx[{self._digits}]"
        return f"Scalar({self.to_string()}, {tag})"

    __str__ = to_string


def _add(a, b):
    return a + b


def _sub(a, b):
    return a - b


def _mul(a, b):
    return a * b


def _div(a, b):
    return a / b


def as_scalar(x, digits: int = DEFAULT_DIGITS) -> Scalar:
    if isinstance(x, Scalar):
        return x
    return Scalar(x, digits)


def scalar_max(values) -> Scalar:
    best = None
    for v in values:
        if best is None or v > best:
            best = v
    if best is None:
        raise ValueError("scalar_max of an empty sequence")
    return best


def iroot(n: int, k: int) -> int | None:
    """Exact integer k-th root of n >= 0, or None if n is not a k-th power."""
    if n < 0:
        raise DomainError("iroot of a negative integer")
    if n < 2:
        return n
    r = int(round(n ** (1.0 / k))) if n.bit_length() < 1000 else 1 << (n.bit_length() // k)
    # Newton iteration from above.
    x = max(r, 1)
    while x ** k < n:
        x *= 2
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    for cand in (x - 1, x, x + 1):
        if cand >= 0 and cand ** k == n:
            return cand
    return None


def pow_rational(x, e, digits: int | None = None) -> Scalar:
    """Return ``x ** e`` for rational ``e``.

    Exact whenever ``e`` is an integer or ``x`` is an exact perfect power
    for the denominator of ``e``; otherwise computed in decimal arithmetic
    to the scalar's precision.
    """
    x = as_scalar(x, DEFAULT_DIGITS if digits is None else digits)
    if digits is not None:
        x = x.with_digits(digits)
    e = Fraction(e)
    if x.sign() < 0 and e.denominator != 1:
        raise DomainError(f"negative base with non-integer exponent {e}")
    if x.is_zero():
        if e <= 0:
            raise DomainError(f"0 ** {e} is undefined")
        return Scalar(Fraction(0), x.digits)
    if e.denominator == 1:
        return x ** int(e)
    if x.exact:
        v = x.as_fraction()
        b = e.denominator
        rn, rd = iroot(v.numerator, b), iroot(v.denominator, b)
        if rn is not None and rd is not None:
            return Scalar(Fraction(rn, rd) ** e.numerator, x.digits)
    ctx = _context(x.digits)
    base = x.as_decimal()
    expo = ctx.divide(Decimal(e.numerator), Decimal(e.denominator))
    return Scalar.approx(ctx.power(base, expo) if base != 1 else Decimal(1), x.digits)


def geometric_tail_sum(ratio, first_term) -> Scalar:
    """Sum of ``first_term * ratio**k`` over k >= 0."""
    ratio = as_scalar(ratio)
    first_term = as_scalar(first_term, ratio.digits)
    if ratio.sign() <= 0:
        raise DomainError(f"geometric ratio must be positive, got {ratio}")
    if ratio >= 1:
        raise DivergenceError(f"geometric series with ratio {ratio} >= 1 diverges")
    return first_term / (1 - ratio)


@dataclass(frozen=True, eq=False)
class PowExpr:
    """``coefficient * base_prime ** exponent`` with rational exponent.

    Stored normalised so the coefficient is a unit at ``base_prime``; the
    representation is then unique and structural equality is value
    equality.  Comparisons are exact.
    """

    base_prime: int
    exponent: Fraction
    coefficient: Fraction

    def __post_init__(self):
        c = Fraction(self.coefficient)
        e = Fraction(self.exponent)
        if c == 0:
            e = Fraction(0)
        else:
            p = self.base_prime
            num, den = c.numerator, c.denominator
            while num % p == 0:
                num //= p
                e += 1
            while den % p == 0:
                den //= p
                e -= 1
            c = Fraction(num, den)
        object.__setattr__(self, "coefficient", c)
        object.__setattr__(self, "exponent", e)

    @classmethod
    def power(cls, p: int, exponent) -> "PowExpr":
        return cls(p, Fraction(exponent), Fraction(1))

    @classmethod
    def rational(cls, p: int, value) -> "PowExpr":
        return cls(p, Fraction(0), Fraction(value))

    def is_zero(self) -> bool:
        return self.coefficient == 0

    def __mul__(self, other):
        if isinstance(other, PowExpr):
            if other.base_prime != self.base_prime:
                raise ValueError("PowExpr bases differ")
            return PowExpr(self.base_prime, self.exponent + other.exponent,
                           self.coefficient * other.coefficient)
        if isinstance(other, (int, Fraction)):
            return PowExpr(self.base_prime, self.exponent, self.coefficient * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PowExpr):
            if other.base_prime != self.base_prime:
                raise ValueError("PowExpr bases differ")
            if other.is_zero():
                raise ZeroDivisionError("PowExpr division by zero")
            return PowExpr(self.base_prime, self.exponent - other.exponent,
                           self.coefficient / other.coefficient)
        if isinstance(other, (int, Fraction)):
            return PowExpr(self.base_prime, self.exponent, self.coefficient / other)
        return NotImplemented

    def __neg__(self):
        return PowExpr(self.base_prime, self.exponent, -self.coefficient)

    def __abs__(self):
        return PowExpr(self.base_prime, self.exponent, abs(self.coefficient))

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        return PowExpr(self.base_prime, self.exponent * k, self.coefficient ** k)

    def sign(self) -> int:
        c = self.coefficient
        return (c > 0) - (c < 0)

    def compare(self, other: "PowExpr") -> int:
        """Exact three-way comparison."""
        if other.base_prime != self.base_prime:
            raise ValueError("PowExpr bases differ")
        sa, sb = self.sign(), other.sign()
        if sa != sb or sa == 0:
            return (sa > sb) - (sa < sb)
        # Same nonzero sign.  A float log comparison settles clear cases; the
        # margin dwarfs its rounding error.
        gap = self.log_base() - other.log_base()
        if abs(gap) > 1e-6:
            mag = 1 if gap > 0 else -1
            return mag if sa > 0 else -mag
        # Exact: compare |a| with |b| via (ca/cb)^d against p^(d*(eb-ea)).
        ratio = abs(self.coefficient) / abs(other.coefficient)
        diff = other.exponent - self.exponent
        d = diff.denominator
        lhs = ratio ** d
        rhs = Fraction(self.base_prime) ** int(diff * d)
        mag = (lhs > rhs) - (lhs < rhs)
        return mag if sa > 0 else -mag

    def __eq__(self, other):
        if not isinstance(other, PowExpr):
            return NotImplemented
        return (self.base_prime, self.exponent, self.coefficient) == (
            other.base_prime, other.exponent, other.coefficient)

    def __hash__(self):
        return hash((self.base_prime, self.exponent, self.coefficient))

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    @property
    def is_rational(self) -> bool:
        return self.exponent.denominator == 1 or self.is_zero()

    def log_base(self) -> float:
        """Approximate log_p |value| (the value must be nonzero)."""
        c = abs(self.coefficient)
        return (math.log(c.numerator) - math.log(c.denominator)) / math.log(self.base_prime) + float(self.exponent)

    def to_scalar(self, digits: int = DEFAULT_DIGITS) -> Scalar:
        """Lower to a Scalar; exact iff the exponent is an integer."""
        if self.is_rational:
            return Scalar(self.coefficient * Fraction(self.base_prime) ** int(self.exponent), digits)
        whole = math.floor(self.exponent)
        frac = self.exponent - whole
        root = pow_rational(Scalar(Fraction(self.base_prime), digits), frac)
        return root * (self.coefficient * Fraction(self.base_prime) ** whole)

    def __repr__(self):
        return f"PowExpr({format_rational(self.coefficient)}*{self.base_prime}^({format_rational(self.exponent)}))"


def prime_power(p: int, exponent, digits: int = DEFAULT_DIGITS) -> Scalar:
    """``p ** exponent`` as a Scalar (exact for integer exponents)."""
    return _prime_power(p, Fraction(exponent), digits)


@lru_cache(maxsize=4096)
def _prime_power(p: int, exponent: Fraction, digits: int) -> Scalar:
    return PowExpr.power(p, exponent).to_scalar(digits)


def pow_powexpr(v: PowExpr, q, digits: int = DEFAULT_DIGITS) -> Scalar:
    """``|v| ** q`` for rational q >= 0, exact where possible."""
    q = Fraction(q)
    v = abs(v)
    if v.is_zero():
        return Scalar(Fraction(0), digits)
    coef = pow_rational(Scalar(v.coefficient, digits), q)
    return coef * prime_power(v.base_prime, v.exponent * q, digits)


def slack_tolerance(slack: int, digits: int) -> Decimal:
    """``10 ** -(digits - slack)``: a tolerance leaving ``slack`` digits of headroom."""
    return Decimal(1).scaleb(-(digits - slack))
