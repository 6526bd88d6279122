"""Exact integer, rational and quadratic-surd arithmetic.

Python integers are already arbitrary precision, so naturals and integers
are plain ``int``; rationals are :class:`fractions.Fraction`, which stores
itself reduced with a positive denominator.  The only structure added here
is :class:`Surd`, the value ``(p + sqrt(d)) / q``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidSurdError

Rational = Fraction

__all__ = [
    "Rational",
    "Surd",
    "divmod_floor",
    "gcd",
    "is_perfect_square",
    "isqrt",
    "parse_rational",
    "sqrt_diff_sign",
    "surd_equal",
    "surd_floor",
    "surd_normalize",
    "surd_reciprocal_of_fractional_part",
]


def gcd(a: int, b: int) -> int:
    """Greatest common divisor by repeated division with remainder."""
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def divmod_floor(a: int, b: int) -> tuple[int, int]:
    """Return ``(q, r)`` with ``a == q*b + r`` and ``0 <= r < b``."""
    if b == 0:
        raise ZeroDivisionError("divmod_floor: division by zero")
    if b < 0:
        raise ValueError("divmod_floor: divisor must be positive")
    # Python's // and % already floor toward -infinity.
    return a // b, a % b


def isqrt(n: int) -> int:
    if n < 0:
        raise ValueError("isqrt of a negative number")
    return math.isqrt(n)


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a reduced fraction, integers only."""
    num, sep, den = text.strip().partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational of the form p/q: {text!r}") from None
    if q == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def sqrt_diff_sign(a: int, x: int, b: int, y: int) -> int:
    """Exact sign of ``a*sqrt(x) - b*sqrt(y)`` for naturals ``x, y``."""
    sa = _sign(a) if x else 0
    sb = _sign(b) if y else 0
    if sa != sb:
        return _sign(sa - sb)
    if sa == 0:
        return 0
    lhs, rhs = a * a * x, b * b * y
    return sa * _sign(lhs - rhs)


@dataclass(frozen=True)
class Surd:
    """The quadratic irrational ``(p + sqrt(d)) / q``.

    Construction enforces ``q != 0``, ``d >= 2`` non-square and
    ``q | (d - p*p)``; use :func:`surd_normalize` to build one from an
    arbitrary triple.
    """

    p: int
    q: int
    d: int

    def __post_init__(self) -> None:
        if self.q == 0:
            raise InvalidSurdError("surd denominator must be nonzero")
        if self.d < 2 or is_perfect_square(self.d):
            raise InvalidSurdError(
                f"d={self.d} is a perfect square (or < 2): the value is rational, use cf_rational"
            )
        if (self.d - self.p * self.p) % self.q:
            raise InvalidSurdError(
                f"({self.p} + sqrt({self.d}))/{self.q} is not normalized: q does not divide d - p^2"
            )

    def __str__(self) -> str:
        num = f"sqrt({self.d})" if self.p == 0 else f"{self.p} + sqrt({self.d})"
        return f"({num})/{self.q}" if self.q != 1 else num

    @property
    def state(self) -> tuple[int, int]:
        return self.p, self.q


def _divisors(n: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def surd_normalize(p: int, q: int, d: int) -> Surd:
    """Return a :class:`Surd` equal to ``(p + sqrt(d)) / q``.

    If ``q`` does not divide ``d - p^2`` the triple is scaled to
    ``(p|q|, q|q|, d q^2)``.  Afterwards the largest common factor ``g``
    of ``p`` and ``q`` with ``g^2 | d`` that keeps the divisibility
    condition is removed.
    """
    if q == 0:
        raise InvalidSurdError("surd denominator must be nonzero")
    if d < 2 or is_perfect_square(d):
        raise InvalidSurdError(f"d={d} is a perfect square (or < 2): the value is rational")
    if (d - p * p) % q:
        p, q, d = p * abs(q), q * abs(q), d * q * q
    common = gcd(gcd(p, q), d)
    for g in reversed(_divisors(common)):
        if d % (g * g):
            continue
        pg, qg, dg = p // g, q // g, d // (g * g)
        if (dg - pg * pg) % qg == 0:
            return Surd(pg, qg, dg)
    raise AssertionError("unreachable: g = 1 always qualifies")


def surd_floor(s: Surd) -> int:
    """Exact ``floor((p + sqrt(d)) / q)`` for either sign of ``q``."""
    r = math.isqrt(s.d)
    if s.q > 0:
        return (s.p + r) // s.q
    # sqrt(d) lies strictly in (r, r+1), so -p - sqrt(d) lies in (-p-r-1, -p-r).
    return (-s.p - r - 1) // -s.q


def surd_reciprocal_of_fractional_part(s: Surd) -> Surd:
    """One continued-fraction step: ``1 / (s - floor(s))``.

    With ``a = floor(s)`` the result is ``(p' + sqrt(d)) / q'`` where
    ``p' = a q - p`` and ``q' = (d - p'^2) / q``; ``d`` never changes.
    """
    a = surd_floor(s)
    p_next = a * s.q - s.p
    q_next, rem = divmod(s.d - p_next * p_next, s.q)
    assert rem == 0
    return Surd(p_next, q_next, s.d)


def surd_equal(s: Surd, t: Surd) -> bool:
    """Exact value equality of two surds, possibly with different ``d``."""
    # (p1 + r1)/q1 == (p2 + r2)/q2  <=>  q2 p1 - q1 p2 == q1 r2 - q2 r1
    lhs = t.q * s.p - s.q * t.p
    rhs_sign = sqrt_diff_sign(s.q, t.d, t.q, s.d)
    if _sign(lhs) != rhs_sign:
        return False
    if lhs == 0:
        return True
    # square both sides: 2 q1 q2 sqrt(d1 d2) == q1^2 d2 + q2^2 d1 - lhs^2
    m = s.q * s.q * t.d + t.q * t.q * s.d - lhs * lhs
    if _sign(m) != _sign(s.q * t.q):
        return False
    return m * m == 4 * (s.q * t.q) ** 2 * s.d * t.d
