"""Simple continued fractions: finite ones for rationals, periodic ones for surds.

Quadratic surds are expanded in exact integer arithmetic.  The state of the
expansion is the pair ``(p, q)`` of the current complete quotient
``(p + sqrt(d)) / q``; the first repeated state closes the period, so the
reported period is a proof of periodicity rather than an observation.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import (
    DegeneratePeriodError,
    InvalidParameterError,
    InvalidSurdError,
    NotFiniteError,
    OutOfRangeError,
)
from .numeric import (
    Surd,
    divmod_floor,
    is_perfect_square,
    surd_equal,
    surd_floor,
    surd_normalize,
    surd_reciprocal_of_fractional_part,
)

CERTIFICATE_KIND = "periodic-continued-fraction"


@dataclass(frozen=True)
class ContinuedFraction:
    """``[a0; a1, ..., (b1, ..., bm)]``: a preperiod followed by a repeating period.

    An empty period means the value is rational.
    """

    preperiod: tuple[int, ...] = ()
    period: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "preperiod", tuple(int(t) for t in self.preperiod))
        object.__setattr__(self, "period", tuple(int(t) for t in self.period))
        if not self.preperiod and not self.period:
            raise ValueError("a continued fraction needs at least one term")
        if any(t < 1 for t in self.preperiod[1:] + self.period):
            raise ValueError("every term after the first must be >= 1")
        if not self.period and len(self.preperiod) >= 2 and self.preperiod[-1] < 2:
            raise ValueError("finite expansions end in a term >= 2 (use [..., a+1] for [..., a, 1])")

    @property
    def is_finite(self) -> bool:
        return not self.period

    def terms(self) -> Iterator[int]:
        """Yield terms lazily, cycling the period forever."""
        yield from self.preperiod
        if self.period:
            yield from itertools.cycle(self.period)

    def __str__(self) -> str:
        head, tail = list(self.preperiod), list(self.period)
        if not head:
            # purely periodic: the first term belongs to the period
            return "[(" + ", ".join(map(str, tail)) + ")]"
        rest = [str(t) for t in head[1:]]
        if tail:
            rest.append("(" + ", ".join(map(str, tail)) + ")")
        return f"[{head[0]}" + ("; " + ", ".join(rest) if rest else "") + "]"

    @classmethod
    def parse(cls, text: str) -> "ContinuedFraction":
        """Inverse of ``str()``."""
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"not a continued fraction: {text!r}")
        body = body[1:-1]
        match = re.search(r"\(([^()]*)\)\s*$", body)
        period: list[int] = []
        if match:
            period = [int(t) for t in match.group(1).split(",")]
            body = body[: match.start()]
        pre = [int(t) for t in re.split(r"[;,]", body) if t.strip()]
        return cls(tuple(pre), tuple(period))


def cf_rational(r: Fraction) -> ContinuedFraction:
    """Finite expansion by the Euclidean algorithm.

    The last quotient of a run of two or more steps is always >= 2, so the
    output is already in canonical form.
    """
    r = Fraction(r)
    a, b = r.numerator, r.denominator
    terms = []
    while True:
        q, rem = divmod_floor(a, b)
        terms.append(q)
        if rem == 0:
            return ContinuedFraction(tuple(terms))
        a, b = b, rem


def reconstruct_rational(cf: ContinuedFraction) -> Fraction:
    if cf.period:
        raise NotFiniteError("periodic continued fraction has no rational value")
    value = Fraction(cf.preperiod[-1])
    for t in reversed(cf.preperiod[:-1]):
        value = t + 1 / value
    return value


def convergent_pairs(terms) -> Iterator[tuple[int, int]]:
    """Yield ``(p_i, q_i)`` for every prefix of ``terms``."""
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    for a in terms:
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        yield p, q


def convergents(cf: ContinuedFraction, k: int) -> list[Fraction]:
    """The convergents ``p_0/q_0, ..., p_k/q_k``."""
    if k < 0:
        raise OutOfRangeError("k must be >= 0")
    if cf.is_finite and len(cf.preperiod) < k + 1:
        raise OutOfRangeError(
            f"finite continued fraction has {len(cf.preperiod)} terms, {k + 1} requested"
        )
    pairs = itertools.islice(convergent_pairs(cf.terms()), k + 1)
    return [Fraction(p, q) for p, q in pairs]


def _sqrt_surd(d: int) -> Surd:
    if d < 2 or is_perfect_square(d):
        raise InvalidParameterError(f"d={d} must be a non-square integer >= 2")
    return Surd(0, 1, d)


@dataclass
class SurdExpansion:
    """Raw result of expanding a surd: terms, visited states and the cycle start."""

    d: int
    terms: list[int]
    states: list[tuple[int, int]]
    cycle_start: int

    @property
    def preperiod(self) -> tuple[int, ...]:
        return tuple(self.terms[: self.cycle_start])

    @property
    def period(self) -> tuple[int, ...]:
        return tuple(self.terms[self.cycle_start :])


def expand_surd(s: Surd) -> SurdExpansion:
    """Run the expansion until a ``(p, q)`` state repeats.

    ``states`` ends with the repeated state, so it is one longer than
    ``terms``.
    """
    seen: dict[tuple[int, int], int] = {}
    terms: list[int] = []
    states: list[tuple[int, int]] = []
    state = s
    while state.state not in seen:
        seen[state.state] = len(states)
        states.append(state.state)
        terms.append(surd_floor(state))
        state = surd_reciprocal_of_fractional_part(state)
    states.append(state.state)
    return SurdExpansion(s.d, terms, states, seen[state.state])


def cf_surd(s: Surd) -> ContinuedFraction:
    if is_perfect_square(s.d):
        raise InvalidSurdError("the value is rational, use cf_rational")
    exp = expand_surd(s)
    return ContinuedFraction(exp.preperiod, exp.period)


def cf_sqrt(d: int) -> ContinuedFraction:
    return cf_surd(_sqrt_surd(d))


def period_matrix(period: Sequence[int]) -> tuple[int, int, int, int]:
    """``(p_k, p_{k-1}, q_k, q_{k-1})`` for the convergents of ``period``."""
    p_prev, p, q_prev, q = 0, 1, 1, 0
    for a in period:
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
    return p, p_prev, q, q_prev


def fixed_point_quadratic(period: Sequence[int]) -> tuple[int, int, int]:
    """Coefficients ``(A, B, C)`` of ``A y^2 + B y + C = 0`` solved by the purely periodic value.

    From ``y = (p_k y + p_{k-1}) / (q_k y + q_{k-1})``.
    """
    if not period:
        raise ValueError("period must be nonempty")
    if any(t < 1 for t in period):
        raise ValueError("period terms must be >= 1")
    pk, pk1, qk, qk1 = period_matrix(period)
    return qk, qk1 - pk, -pk1


def evaluate_quadratic_at(coeffs: tuple[int, int, int], s: Surd) -> tuple[int, int]:
    """``q^2 (A y^2 + B y + C)`` at ``y = s``, as ``(rational part, sqrt(d) coefficient)``.

    Both parts are integers; the quadratic vanishes at ``s`` iff both are zero.
    """
    a, b, c = coeffs
    rational = a * (s.p * s.p + s.d) + b * s.p * s.q + c * s.q * s.q
    irrational = 2 * a * s.p + b * s.q
    return rational, irrational


def periodic_fixed_point(period: Sequence[int]) -> Surd:
    """Exact value of the purely periodic continued fraction ``[(period)]``."""
    a, b, c = fixed_point_quadratic(period)
    disc = b * b - 4 * a * c
    if is_perfect_square(disc):
        raise DegeneratePeriodError(f"discriminant {disc} is a square; fixed point would be rational")
    y = surd_normalize(-b, 2 * a, disc)
    if evaluate_quadratic_at((a, b, c), y) != (0, 0):
        raise AssertionError(f"fixed point {y} does not satisfy its quadratic")
    return y


def approximation_report(d: int, k: int) -> list[tuple[Fraction, int]]:
    """The first ``k`` convergents ``p/q`` of ``sqrt(d)`` with their defects ``p^2 - d q^2``."""
    cf = cf_sqrt(d)
    pairs = itertools.islice(convergent_pairs(cf.terms()), k)
    return [(Fraction(p, q), p * p - d * q * q) for p, q in pairs]


# -- certificates ------------------------------------------------------------


@dataclass
class PeriodicityCertificate:
    d: int
    preperiod: tuple[int, ...]
    period: tuple[int, ...]
    state_trace: list[tuple[int, int]]
    cycle_start: int
    fixed_point: dict = field(default_factory=dict)
    claims: dict = field(default_factory=dict)
    verified: bool = True

    def to_json(self) -> dict:
        s = str
        return {
            "kind": CERTIFICATE_KIND,
            "d": s(self.d),
            "preperiod": [s(t) for t in self.preperiod],
            "period": [s(t) for t in self.period],
            "state_trace": [[s(p), s(q)] for p, q in self.state_trace],
            "fixed_point": self.fixed_point,
            "claims": self.claims,
            "verified": self.verified,
        }


def _claims(d: int) -> dict:
    return {
        "value": f"sqrt({d})",
        "expansion_is_infinite": True,
        "rationals_have_finite_expansions": True,
        "conclusion": f"sqrt({d}) is irrational",
    }


def _fixed_point_record(period: Sequence[int]) -> dict:
    coeffs = fixed_point_quadratic(period)
    root = periodic_fixed_point(period)
    residual = evaluate_quadratic_at(coeffs, root)
    return {
        "quadratic": [str(c) for c in coeffs],
        "root": [str(root.p), str(root.q), str(root.d)],
        "residual": [str(r) for r in residual],
    }


def irrationality_certificate(d: int) -> PeriodicityCertificate:
    """Certificate that ``sqrt(d)`` has an infinite (periodic) continued fraction."""
    exp = expand_surd(_sqrt_surd(d))
    return PeriodicityCertificate(
        d=d,
        preperiod=exp.preperiod,
        period=exp.period,
        state_trace=exp.states,
        cycle_start=exp.cycle_start,
        fixed_point=_fixed_point_record(exp.period),
        claims=_claims(d),
    )


def _as_int(x) -> int:
    # Decimal strings only; JSON numbers and booleans are rejected.
    if not isinstance(x, str) or not re.fullmatch(r"-?[0-9]+", x):
        raise ValueError(f"expected a decimal integer string, got {x!r}")
    return int(x)


def verify_periodicity_certificate(cert: dict) -> bool:
    """Re-derive every claim of a periodicity certificate from ``d`` alone."""
    try:
        return _verify_periodicity(cert)
    except (ValueError, TypeError, KeyError, AttributeError, InvalidSurdError):
        return False


_PERIODIC_KEYS = {"kind", "d", "preperiod", "period", "state_trace", "fixed_point", "claims", "verified"}


def _verify_periodicity(cert: dict) -> bool:
    if set(cert) != _PERIODIC_KEYS or cert["kind"] != CERTIFICATE_KIND or cert["verified"] is not True:
        return False
    d = _as_int(cert["d"])
    if d < 2 or is_perfect_square(d):
        return False
    pre = [_as_int(t) for t in cert["preperiod"]]
    period = [_as_int(t) for t in cert["period"]]
    states = [(_as_int(p), _as_int(q)) for p, q in cert["state_trace"]]
    start = len(pre)

    # Replay: states[i] is the complete quotient before term i.
    if not period or len(states) != len(pre) + len(period) + 1:
        return False
    state = Surd(0, 1, d)
    terms = pre + period
    for i, term in enumerate(terms):
        if state.state != states[i] or surd_floor(state) != term:
            return False
        state = surd_reciprocal_of_fractional_part(state)
    if state.state != states[-1] or states[-1] != states[start]:
        return False
    if len(set(states[:-1])) != len(states) - 1:
        return False

    fp = cert["fixed_point"]
    if set(fp) != {"quadratic", "root", "residual"}:
        return False
    coeffs = tuple(_as_int(c) for c in fp["quadratic"])
    if coeffs != fixed_point_quadratic(period):
        return False
    rp, rq, rd = (_as_int(x) for x in fp["root"])
    root = Surd(rp, rq, rd)
    if root != periodic_fixed_point(period):
        return False
    residual = tuple(_as_int(r) for r in fp["residual"])
    if residual != (0, 0) or evaluate_quadratic_at(coeffs, root) != (0, 0):
        return False
    # The tail after the preperiod is exactly the purely periodic value.
    p0, q0 = states[start]
    if not surd_equal(Surd(p0, q0, d), root):
        return False
    return cert["claims"] == _claims(d)
