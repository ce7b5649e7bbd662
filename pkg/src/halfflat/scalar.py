"""Exact arithmetic in the field Q(sqrt(2)).

Every coefficient in the package is a ``Scalar``: a pair (a, b) of
arbitrary-precision rationals representing a + b*sqrt(2).  The extension by
sqrt(2) is the only irrationality occurring in the classification data, so a
fixed quadratic field suffices; plain rationals embed with b = 0.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import FormSyntaxError

try:  # gmpy2's C rationals are ~10x faster; plain Fractions work the same
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

_RATIONAL_TYPES = (int, Fraction, type(_Q(0)))


class Scalar:
    """An element a + b*sqrt(2) of Q(sqrt(2)).

    Immutable; equality and zero-testing are exact.  Division by any nonzero
    element is exact since a^2 - 2 b^2 = 0 forces a = b = 0.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- field operations ---------------------------------------------------
    # Operators construct results through _new to skip Fraction re-coercion;
    # the parts are always Fractions already.

    def __add__(self, other):
        if type(other) is not Scalar:
            other = as_scalar(other)
        return _new(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return _new(-self.a, -self.b)

    def __sub__(self, other):
        if type(other) is not Scalar:
            other = as_scalar(other)
        return _new(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __mul__(self, other):
        if type(other) is not Scalar:
            other = as_scalar(other)
        # (a + b r)(c + d r) = ac + 2bd + (ad + bc) r,  r^2 = 2
        if not self.b and not other.b:
            return _new(self.a * other.a, _FRACTION_ZERO)
        return _new(
            self.a * other.a + 2 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(sqrt2)")
        # 1/(a + b r) = (a - b r)/(a^2 - 2 b^2)
        norm = self.a * self.a - 2 * self.b * self.b
        return _new(self.a / norm, -self.b / norm)

    def __truediv__(self, other):
        return self * as_scalar(other).inverse()

    def __rtruediv__(self, other):
        return as_scalar(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- structure ----------------------------------------------------------

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b))

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def __repr__(self):
        return f"Scalar({self.a!r}, {self.b!r})"

    def __str__(self):
        return format_scalar(self)


_FRACTION_ZERO = Fraction(0)

_set = object.__setattr__


def _new(a: Fraction, b: Fraction) -> Scalar:
    out = object.__new__(Scalar)
    _set(out, "a", a)
    _set(out, "b", b)
    return out


ZERO = Scalar(0)
ONE = Scalar(1)
SQRT2 = Scalar(0, 1)


def as_scalar(x) -> Scalar:
    """Coerce an int, Fraction or Scalar to a Scalar."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar(x)
    raise TypeError(f"cannot interpret {x!r} as a scalar")


def _format_rational(q: Fraction) -> str:
    return str(q)  # Fraction renders as "p" or "p/q" in lowest terms


def format_scalar(s: Scalar) -> str:
    """Render a Scalar as a literal: ``3``, ``-1/2``, ``r2``, ``3/2r2``, ``1+r2``.

    The surd part is written as a rational immediately followed by ``r2``;
    both-part scalars join the two pieces with an explicit sign.
    """
    if not s:
        return "0"
    parts = []
    if s.a:
        parts.append(_format_rational(s.a))
    if s.b:
        if s.b == 1:
            surd = "r2"
        elif s.b == -1:
            surd = "-r2"
        else:
            surd = _format_rational(s.b) + "r2"
        if parts and not surd.startswith("-"):
            parts.append("+" + surd)
        else:
            parts.append(surd)
    return "".join(parts)


class _ScalarScanner:
    """Shared tokenizer for scalar literals inside notation/form grammars.

    A literal is ``rational ['r2'] | 'r2'`` with ``rational = int ['/' int]``.
    """

    def __init__(self, text: str, pos: int = 0):
        self.text = text
        self.pos = pos

    def error(self, msg):
        raise FormSyntaxError(msg, self.pos, self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_scalar(self) -> bool:
        c = self.peek()
        return c.isdigit() or self.text.startswith("r2", self.pos)

    def scan_int(self) -> int:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def scan_rational(self) -> Fraction:
        num = self.scan_int()
        if self.peek() == "/":
            self.pos += 1
            den = self.scan_int()
            if den == 0:
                self.error("zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def scan_scalar(self) -> Scalar:
        """Scan ``rational ['r2']`` or bare ``r2``; no leading sign."""
        if self.text.startswith("r2", self.pos):
            self.pos += 2
            return SQRT2
        q = self.scan_rational()
        if self.text.startswith("r2", self.pos):
            self.pos += 2
            return Scalar(0, q)
        return Scalar(q)


def parse_scalar_literal(text: str) -> Scalar:
    """Parse a full string as a (possibly signed) scalar literal."""
    sc = _ScalarScanner(text)
    sc.skip_ws()
    sign = 1
    while sc.peek() in ("+", "-"):
        if sc.peek() == "-":
            sign = -sign
        sc.pos += 1
        sc.skip_ws()
    value = sc.scan_scalar() * sign
    sc.skip_ws()
    if sc.pos != len(text):
        sc.error("trailing characters after scalar")
    return value
