"""Exact arithmetic in Q(w), w a primitive sixth root of unity.

Elements are stored as ``a + b*w`` with rational ``a`` and ``b`` and the
reduction rule ``w**2 = w - 1``.  Components are plain ``int`` whenever the
value is integral and :class:`fractions.Fraction` otherwise, which keeps the
common integer case fast.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = [
    "Cyclo",
    "CycloZeroDivisionError",
    "OMEGA",
    "ONE",
    "ZERO",
    "cyc_arith",
    "omega_pow",
    "parse_rational",
]


class CycloZeroDivisionError(ZeroDivisionError):
    """Raised when dividing by the zero element of Q(w)."""


def _norm(x):
    if type(x) is int:
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Rational):
        x = Fraction(x.numerator, x.denominator)
        return x.numerator if x.denominator == 1 else x
    raise TypeError(f"not a rational number: {x!r}")


def parse_rational(s: str):
    """Parse ``"p/q"`` or ``"p"`` into an int or Fraction."""
    return _norm(Fraction(s))


def _rat_str(x) -> str:
    if type(x) is int:
        return str(x)
    return f"{x.numerator}/{x.denominator}"


class Cyclo:
    """An element ``a + b*w`` of Q(w) with ``w**2 = w - 1``."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = _norm(a)
        self.b = _norm(b)

    @classmethod
    def _raw(cls, a, b):
        # components already normalised
        obj = cls.__new__(cls)
        obj.a = a
        obj.b = b
        return obj

    @classmethod
    def coerce(cls, x) -> "Cyclo":
        if isinstance(x, Cyclo):
            return x
        return cls(x, 0)

    # -- predicates -----------------------------------------------------
    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self) -> bool:
        return self.b == 0

    def __eq__(self, other):
        if isinstance(other, Cyclo):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    # -- arithmetic -----------------------------------------------------
    def __neg__(self):
        return Cyclo._raw(-self.a, -self.b)

    def __pos__(self):
        return self

    def __add__(self, other):
        if not isinstance(other, Cyclo):
            if isinstance(other, (int, Fraction)):
                return Cyclo._raw(_norm(self.a + other), self.b)
            return NotImplemented
        return Cyclo._raw(_norm(self.a + other.a), _norm(self.b + other.b))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Cyclo):
            if isinstance(other, (int, Fraction)):
                return Cyclo._raw(_norm(self.a - other), self.b)
            return NotImplemented
        return Cyclo._raw(_norm(self.a - other.a), _norm(self.b - other.b))

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclo._raw(_norm(other - self.a), -self.b)
        return NotImplemented

    def __mul__(self, other):
        if not isinstance(other, Cyclo):
            if isinstance(other, (int, Fraction)):
                return Cyclo._raw(_norm(self.a * other), _norm(self.b * other))
            return NotImplemented
        a, b, c, d = self.a, self.b, other.a, other.b
        if b == 0 and d == 0:
            return Cyclo._raw(_norm(a * c), 0)
        bd = b * d
        return Cyclo._raw(_norm(a * c - bd), _norm(a * d + b * c + bd))

    __rmul__ = __mul__

    def norm(self):
        """Field norm N(a + b w) = a**2 + a*b + b**2."""
        a, b = self.a, self.b
        return _norm(a * a + a * b + b * b)

    def conj(self) -> "Cyclo":
        """Complex conjugate, w -> 1/w = 1 - w."""
        return Cyclo._raw(_norm(self.a + self.b), -self.b)

    def inv(self) -> "Cyclo":
        if not self:
            raise CycloZeroDivisionError("inverse of zero in Q(w)")
        n = self.norm()
        c = self.conj()
        return Cyclo._raw(_norm(Fraction(c.a) / n), _norm(Fraction(c.b) / n))

    def __truediv__(self, other):
        if not isinstance(other, Cyclo):
            if isinstance(other, (int, Fraction)):
                if other == 0:
                    raise CycloZeroDivisionError("division by zero in Q(w)")
                return Cyclo._raw(_norm(Fraction(self.a) / other), _norm(Fraction(self.b) / other))
            return NotImplemented
        if other.b == 0:
            return self / other.a
        return self * other.inv()

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclo(other) * self.inv()
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- rendering ------------------------------------------------------
    def __repr__(self):
        return f"Cyclo({_rat_str(self.a)}, {_rat_str(self.b)})"

    def __str__(self):
        a, b = self.a, self.b
        if b == 0:
            return _rat_str(a)
        bs = "w" if b == 1 else "-w" if b == -1 else f"{_rat_str(b)}w"
        if a == 0:
            return bs
        if bs.startswith("-"):
            return f"{_rat_str(a)} - {bs[1:]}"
        return f"{_rat_str(a)} + {bs}"

    def to_json(self) -> dict:
        return {"a": _rat_str(self.a) if type(self.a) is not int else f"{self.a}/1",
                "b": _rat_str(self.b) if type(self.b) is not int else f"{self.b}/1"}

    @classmethod
    def from_json(cls, obj: dict) -> "Cyclo":
        return cls(parse_rational(obj["a"]), parse_rational(obj["b"]))

    def to_complex(self) -> complex:
        """Display-only numeric rendering."""
        import cmath

        w = cmath.exp(1j * cmath.pi / 3)
        return float(self.a) + float(self.b) * w


ZERO = Cyclo._raw(0, 0)
ONE = Cyclo._raw(1, 0)
OMEGA = Cyclo._raw(0, 1)

# w**k for k mod 6, reduced with w**2 = w - 1
_OMEGA_POWERS = (
    Cyclo._raw(1, 0),
    Cyclo._raw(0, 1),
    Cyclo._raw(-1, 1),
    Cyclo._raw(-1, 0),
    Cyclo._raw(0, -1),
    Cyclo._raw(1, -1),
)


def omega_pow(k: int) -> Cyclo:
    """Return ``w**k``; the result has period 6 in ``k``."""
    return _OMEGA_POWERS[k % 6]


def cyc_arith(x: Cyclo, y: Cyclo, op: str) -> Cyclo:
    """Binary field operation selected by name (``add``, ``sub``, ``mul``, ``div``)."""
    x, y = Cyclo.coerce(x), Cyclo.coerce(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")
