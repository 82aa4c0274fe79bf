"""
Exact arithmetic in Q(zeta_m) for m in {1, 2, 3}.

A Scalar is a + b*zeta with rational a, b. For m <= 2 zeta is rational
(1 or -1) so b is folded into a. For m = 3 products reduce with
zeta^2 = -1 - zeta.
"""
import random
from fractions import Fraction
from numbers import Rational
from typing import Union

from exceptions import ScalarError

SUPPORTED_ORDERS = (1, 2, 3)


class Scalar:
    """Element a + b*zeta_m of the cyclotomic field Q(zeta_m)."""

    __slots__ = ("m", "a", "b")

    def __init__(self, a=0, b=0, m=1):
        if m not in SUPPORTED_ORDERS:
            raise ScalarError(f"Unsupported root of unity order: {m}")
        a = Fraction(a)
        b = Fraction(b)
        if m == 1:
            a, b = a + b, Fraction(0)
        elif m == 2:
            a, b = a - b, Fraction(0)
        self.m = m
        self.a = a
        self.b = b

    @classmethod
    def coerce(cls, value, m):
        """Turn an int, Fraction or Scalar into a Scalar of order m."""
        if isinstance(value, Scalar):
            if value.m == m:
                return value
            if value.b == 0:
                return Scalar(value.a, 0, m)
            raise ScalarError(f"Cannot move {value} from Q(zeta_{value.m}) to Q(zeta_{m})")
        if isinstance(value, Rational):
            return Scalar(value, 0, m)
        raise ScalarError(f"Not a scalar: {value!r}")

    def _pair(self, other):
        """Return (lhs, rhs) in a common field, or NotImplemented."""
        if isinstance(other, Scalar):
            if other.m == self.m:
                return self, other
            if other.b == 0:
                return self, Scalar(other.a, 0, self.m)
            if self.b == 0:
                return Scalar(self.a, 0, other.m), other
            raise ScalarError(f"Mismatched orders: zeta_{self.m} and zeta_{other.m}")
        if isinstance(other, Rational):
            return self, Scalar(other, 0, self.m)
        return NotImplemented

    # field operations

    def __add__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        x, y = pair
        return Scalar(x.a + y.a, x.b + y.b, x.m)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.a, -self.b, self.m)

    def __pos__(self):
        return self

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        x, y = pair
        return Scalar(x.a - y.a, x.b - y.b, x.m)

    def __rsub__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        x, y = pair
        return Scalar(y.a - x.a, y.b - x.b, x.m)

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        x, y = pair
        if x.m == 3:
            # (a + b z)(c + d z) with z^2 = -1 - z
            ac = x.a * y.a
            bd = x.b * y.b
            return Scalar(ac - bd, x.a * y.b + x.b * y.a - bd, 3)
        return Scalar(x.a * y.a, 0, x.m)

    __rmul__ = __mul__

    def norm(self):
        """Field norm to Q (a^2 - ab + b^2 for m = 3)."""
        if self.m == 3:
            return self.a * self.a - self.a * self.b + self.b * self.b
        return self.a

    def inverse(self):
        if not self:
            raise ScalarError("Division by zero")
        if self.m == 3:
            n = self.norm()
            # conjugate of a + b z is (a - b) - b z
            return Scalar((self.a - self.b) / n, -self.b / n, 3)
        return Scalar(1 / self.a, 0, self.m)

    def __truediv__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        x, y = pair
        return x * y.inverse()

    def __rtruediv__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        x, y = pair
        return y * x.inverse()

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Scalar(1, 0, self.m)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # comparison and hashing

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            if self.m == other.m:
                return self.a == other.a and self.b == other.b
            return self.b == 0 and other.b == 0 and self.a == other.a
        if isinstance(other, Rational):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.m))

    def sort_key(self):
        """Deterministic total order: lexicographic on canonical coefficients."""
        return (self.a, self.b)

    def is_rational(self):
        return self.b == 0

    def to_fraction(self):
        if not self.is_rational():
            raise ScalarError(f"{self} is not rational")
        return self.a

    # text form

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}*z"

    def __repr__(self):
        return f"Scalar({self}, m={self.m})"


ScalarLike = Union[Scalar, int, Fraction]


def zeta_power(m, e):
    """zeta_m ** e in canonical form."""
    if m not in SUPPORTED_ORDERS:
        raise ScalarError(f"Unsupported root of unity order: {m}")
    e %= m
    if m == 1 or e == 0:
        return Scalar(1, 0, m)
    if m == 2:
        return Scalar(-1, 0, 2)
    if e == 1:
        return Scalar(0, 1, 3)
    return Scalar(-1, -1, 3)


def scalar_arith(x, y, op):
    """Apply op in {add, sub, mul, div} to two scalars of the same order."""
    if isinstance(x, Scalar) and isinstance(y, Scalar) and x.m != y.m:
        raise ScalarError(f"Mismatched orders: zeta_{x.m} and zeta_{y.m}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        if not y:
            raise ScalarError("Division by zero")
        return x / y
    raise ScalarError(f"Unknown operation: {op}")


def _parse_fraction(text, original):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ScalarError(f"Cannot parse scalar: {original!r}")


def parse_scalar(text, m):
    """Parse "a/b" or "a/b+c/d*z" (z standing for zeta_m)."""
    if isinstance(text, Scalar):
        return Scalar.coerce(text, m)
    if isinstance(text, (int, Fraction)):
        return Scalar(text, 0, m)
    original = text
    text = str(text).replace(" ", "")
    if not text:
        raise ScalarError("Cannot parse empty scalar")
    if not text.endswith("z"):
        return Scalar(_parse_fraction(text, original), 0, m)

    body = text[:-1]
    if body.endswith("*"):
        body = body[:-1]
    # split at the last sign that is not the leading one
    split = max(body.rfind("+", 1), body.rfind("-", 1))
    if split > 0 and body[split - 1] not in "/":
        a_text, b_text = body[:split], body[split:]
    else:
        a_text, b_text = "0", body
    if b_text in ("", "+"):
        b = Fraction(1)
    elif b_text == "-":
        b = Fraction(-1)
    else:
        b = _parse_fraction(b_text, original)
    return Scalar(_parse_fraction(a_text, original), b, m)


def random_scalar(rng: random.Random, m, bound=5, nonzero=False):
    """Random element with small integer coordinates (for property tests)."""
    while True:
        b = rng.randint(-bound, bound) if m == 3 else 0
        value = Scalar(rng.randint(-bound, bound), b, m)
        if value or not nonzero:
            return value
