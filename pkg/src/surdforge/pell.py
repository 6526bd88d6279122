"""Bounded Pell search, the unit-solution recurrence, descent, and descent certificates.

For a non-square ``n`` the *defect* of a pair ``(a, b)`` is ``a^2 - n b^2``.
Unit solutions are the pairs of defect +-1.  For ``n = 2`` the map
``(a, b) -> (a + 2b, a + b)`` walks up the unit solutions flipping the sign
of the defect and ``(c, d) -> (2d - c, c - d)`` walks back down, lowering
``a + b`` at every step.
"""

from __future__ import annotations

import itertools
import math
import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .contfrac import cf_sqrt, convergent_pairs
from .errors import InvalidParameterError, NotDescendableError
from .numeric import is_perfect_square

THREADS_ENV = "SURDFORGE_THREADS"
NAIVE_LIMIT = 2000
CERTIFICATE_KIND = "descent-no-square-double"
IDENTITY_SAMPLE = 32

# numpy kernel stays inside int64 while n * bound^2 stays below this
_INT64_SAFE = 1 << 62
_CHUNK = 1 << 20


@dataclass(frozen=True)
class Pair:
    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a < 1 or self.b < 1:
            raise ValueError(f"pair entries must be >= 1, got ({self.a}, {self.b})")

    def __iter__(self):
        return iter((self.a, self.b))

    def __str__(self) -> str:
        return f"({self.a},{self.b})"

    def defect(self, n: int = 2) -> int:
        return self.a * self.a - n * self.b * self.b


def _order(p: Pair) -> tuple[int, int]:
    return p.b, p.a


def _check_n(n: int) -> None:
    if n < 2:
        raise InvalidParameterError(f"n must be >= 2, got {n}")
    if is_perfect_square(n):
        raise InvalidParameterError(f"n must not be a perfect square (n={n})")


@dataclass(frozen=True)
class SearchResult:
    n: int
    bound: int
    minimum: int
    witnesses: tuple[Pair, ...]


# -- search kernels ------------------------------------------------------------
#
# Every kernel returns (minimum, witnesses) over b in [lo, hi) with 1 <= a <= bound.
# The per-b kernels rely on |a^2 - n b^2| being minimised over 1 <= a <= bound at
# min(s, bound) or min(s + 1, bound), s = isqrt(n b^2); the two never tie.


def _naive_kernel(n: int, bound: int, lo: int, hi: int):
    best, found = None, []
    for b in range(lo, hi):
        nb2 = n * b * b
        for a in range(1, bound + 1):
            v = abs(a * a - nb2)
            if best is None or v < best:
                best, found = v, [(a, b)]
            elif v == best:
                found.append((a, b))
    return best, found


def _python_kernel(n: int, bound: int, lo: int, hi: int):
    best, found = None, []
    for b in range(lo, hi):
        nb2 = n * b * b
        s = math.isqrt(nb2)
        for a in {min(s, bound), min(s + 1, bound)}:
            v = abs(a * a - nb2)
            if best is None or v < best:
                best, found = v, [(a, b)]
            elif v == best:
                found.append((a, b))
    return best, found


def _numpy_kernel(n: int, bound: int, lo: int, hi: int):
    best, found = None, []
    for start in range(lo, hi, _CHUNK):
        b = np.arange(start, min(start + _CHUNK, hi), dtype=np.int64)
        nb2 = n * b * b
        # float sqrt is only a first guess; the two corrections make it exact
        s = np.sqrt(nb2.astype(np.float64)).astype(np.int64)
        s -= s * s > nb2
        s += (s + 1) * (s + 1) <= nb2
        cand = (np.minimum(s, bound), np.minimum(s + 1, bound))
        vals = [np.abs(a * a - nb2) for a in cand]
        m = int(min(v.min() for v in vals))
        if best is not None and m > best:
            continue
        if best is None or m < best:
            best, found = m, []
        hits = set()
        for a, v in zip(cand, vals):
            idx = np.flatnonzero(v == m)
            hits.update(zip(a[idx].tolist(), b[idx].tolist()))
        found.extend(hits)
    return best, found


_KERNELS = {"naive": _naive_kernel, "python": _python_kernel, "numpy": _numpy_kernel}


def resolve_workers(workers: int | None = None) -> int:
    """Worker count: explicit value, else ``SURDFORGE_THREADS``, else CPU count (0 means auto)."""
    if workers is None:
        raw = os.environ.get(THREADS_ENV, "0").strip() or "0"
        try:
            workers = int(raw)
        except ValueError:
            raise InvalidParameterError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if workers < 0:
        raise InvalidParameterError("worker count must be >= 0")
    return workers or os.cpu_count() or 1


def _merge(parts) -> tuple[int, tuple[Pair, ...]]:
    parts = [p for p in parts if p[0] is not None]
    minimum = min(m for m, _ in parts)
    hits = {w for m, ws in parts if m == minimum for w in ws}
    return minimum, tuple(sorted((Pair(a, b) for a, b in hits), key=_order))


def empirical_min_search(
    n: int, bound: int, *, method: str = "auto", workers: int | None = None
) -> SearchResult:
    """Minimum of ``|a^2 - n b^2|`` over the box ``1 <= a, b <= bound`` and every pair attaining it.

    ``method`` is ``"naive"`` (full O(bound^2) scan, the trusted oracle),
    ``"python"`` or ``"numpy"`` (O(bound) nearest-``a`` scans), or
    ``"auto"``.  The ``b`` range is split across ``workers``; the merged
    result does not depend on the split.
    """
    _check_n(n)
    if bound < 1:
        raise InvalidParameterError("bound must be >= 1")
    if method == "auto":
        method = "numpy" if n * bound * bound < _INT64_SAFE else "python"
    if method not in _KERNELS:
        raise InvalidParameterError(f"unknown search method {method!r}")
    if method == "naive" and bound > NAIVE_LIMIT:
        raise InvalidParameterError(f"naive search is limited to bound <= {NAIVE_LIMIT}")
    if method == "numpy" and n * bound * bound >= _INT64_SAFE:
        raise InvalidParameterError("numpy kernel would overflow int64; use method='python'")

    kernel = _KERNELS[method]
    workers = min(resolve_workers(workers), bound)
    edges = [1 + (bound * i) // workers for i in range(workers + 1)]
    spans = [(lo, hi) for lo, hi in zip(edges, edges[1:]) if lo < hi]
    if len(spans) == 1 or method != "numpy":
        # threads only pay off for the numpy kernel, which releases the GIL
        parts = [kernel(n, bound, 1, bound + 1)]
    else:
        with ThreadPoolExecutor(max_workers=len(spans)) as pool:
            parts = list(pool.map(lambda s: kernel(n, bound, *s), spans))
    minimum, witnesses = _merge(parts)
    return SearchResult(n, bound, minimum, witnesses)


def unit_solutions_in_box(n: int, bound: int, *, method: str = "auto") -> list[Pair]:
    """All pairs with ``|a^2 - n b^2| = 1`` and ``1 <= a, b <= bound``, by increasing ``b``."""
    _check_n(n)
    if bound < 1:
        return []
    result = empirical_min_search(n, bound, method=method)
    return list(result.witnesses) if result.minimum == 1 else []


# -- recurrence and descent ------------------------------------------------------


def step_up(p: Pair) -> Pair:
    return Pair(p.a + 2 * p.b, p.a + p.b)


def step_down(p: Pair) -> Pair:
    """Inverse of :func:`step_up`: ``(c, d) -> (2d - c, c - d)``; needs ``d < c < 2d``."""
    c, d = p.a, p.b
    if not d < c < 2 * d:
        raise NotDescendableError(f"{p} cannot be descended: need b < a < 2b")
    return Pair(2 * d - c, c - d)


def sign_flip_identity_check(a: int, b: int) -> bool:
    return (a + 2 * b) ** 2 - 2 * (a + b) ** 2 + (a * a - 2 * b * b) == 0


def is_unit_solution(p: Pair, n: int = 2) -> bool:
    return abs(p.defect(n)) == 1


def descent_chain(p: Pair) -> list[Pair]:
    """Descend a unit solution of ``a^2 - 2b^2 = +-1`` down to ``(1, 1)``."""
    if not is_unit_solution(p, 2):
        raise NotDescendableError(f"{p} is not a unit solution: |a^2 - 2b^2| = {abs(p.defect(2))}")
    chain = [p]
    while chain[-1] != Pair(1, 1):
        chain.append(step_down(chain[-1]))
    return chain


def compose_solutions(n: int, p: Pair, q: Pair) -> Pair:
    """``(a, b) * (x, y) = (a x + n b y, a y + b x)``; defects multiply."""
    _check_n(n)
    return Pair(p.a * q.a + n * p.b * q.b, p.a * q.b + p.b * q.a)


def fundamental_solution(n: int) -> Pair:
    """Least unit solution, read off the convergents of ``sqrt(n)``."""
    _check_n(n)
    for p, q in convergent_pairs(cf_sqrt(n).terms()):
        if abs(p * p - n * q * q) == 1:
            return Pair(p, q)
    raise AssertionError("unreachable")


def iter_unit_solutions(n: int):
    _check_n(n)
    if n == 2:
        p = Pair(1, 1)
        while True:
            yield p
            p = step_up(p)
    seed = fundamental_solution(n)
    p = seed
    while True:
        yield p
        p = compose_solutions(n, p, seed)


def generate_unit_solutions(n: int, count: int) -> list[Pair]:
    """The first ``count`` unit solutions in increasing order of ``b``."""
    if count < 0:
        raise InvalidParameterError("count must be >= 0")
    return list(itertools.islice(iter_unit_solutions(n), count))


# -- descent certificate ---------------------------------------------------------


def _statement(bound: int) -> str:
    return (
        f"a^2 - 2*b^2 != 0 for all 1 <= a, b <= {bound}: a solution (c, d) would satisfy "
        "d < c < 2d and descend to the solution (2d - c, c - d) with smaller sum, "
        "and neither (1, 1) nor (2, 1) is a solution"
    )


def _box_unit_solutions(bound: int) -> list[Pair]:
    out = []
    for p in iter_unit_solutions(2):
        if p.a > bound:
            return out
        out.append(p)


def _identity_sample(bound: int) -> list[Pair]:
    sample = [Pair(k, k + 1) for k in range(1, IDENTITY_SAMPLE + 1)]
    sample += [p for p in _box_unit_solutions(bound) if p not in sample]
    return sample


BASE_CASES = (Pair(1, 1), Pair(2, 1))


@dataclass
class DescentCertificate:
    n: int
    bound: int
    identity_checks: list[dict]
    base_cases: list[dict]
    chains: list[list[Pair]]
    statement: str
    verified: bool = True

    def to_json(self) -> dict:
        s = str
        return {
            "kind": CERTIFICATE_KIND,
            "n": s(self.n),
            "bound": s(self.bound),
            "identity_checks": self.identity_checks,
            "base_cases": self.base_cases,
            "chains": [[[s(p.a), s(p.b)] for p in chain] for chain in self.chains],
            "statement": self.statement,
            "verified": self.verified,
        }


def _identity_record(p: Pair) -> dict:
    a, b = p.a, p.b
    return {
        "pair": [str(a), str(b)],
        "lhs": str((a + 2 * b) ** 2 - 2 * (a + b) ** 2),
        "rhs": str(-(a * a - 2 * b * b)),
        "holds": sign_flip_identity_check(a, b),
    }


def _base_case_record(p: Pair) -> dict:
    return {"pair": [str(p.a), str(p.b)], "defect": str(p.defect(2)), "is_solution": p.defect(2) == 0}


def descent_no_solution_certificate(bound: int) -> DescentCertificate:
    """Certificate for "a^2 != 2 b^2 on the box 1 <= a, b <= bound"."""
    if bound < 1:
        raise InvalidParameterError("bound must be >= 1")
    return DescentCertificate(
        n=2,
        bound=bound,
        identity_checks=[_identity_record(p) for p in _identity_sample(bound)],
        base_cases=[_base_case_record(p) for p in BASE_CASES],
        chains=[descent_chain(p) for p in _box_unit_solutions(bound)],
        statement=_statement(bound),
    )


_DESCENT_KEYS = {"kind", "n", "bound", "identity_checks", "base_cases", "chains", "statement", "verified"}


def _as_int(x) -> int:
    if not isinstance(x, str) or not re.fullmatch(r"-?[0-9]+", x):
        raise ValueError(f"expected a decimal integer string, got {x!r}")
    return int(x)


def _as_pair(x) -> Pair:
    a, b = x
    return Pair(_as_int(a), _as_int(b))


def verify_descent_certificate(cert: dict) -> bool:
    """Re-run every check recorded in a descent certificate."""
    try:
        return _verify_descent(cert)
    except (ValueError, TypeError, KeyError, AttributeError, NotDescendableError):
        return False


def _verify_descent(cert: dict) -> bool:
    if set(cert) != _DESCENT_KEYS or cert["kind"] != CERTIFICATE_KIND or cert["verified"] is not True:
        return False
    if _as_int(cert["n"]) != 2:
        return False
    bound = _as_int(cert["bound"])
    if bound < 1 or cert["statement"] != _statement(bound):
        return False

    checks = cert["identity_checks"]
    if [_as_pair(c["pair"]) for c in checks] != _identity_sample(bound):
        return False
    for c in checks:
        a, b = _as_pair(c["pair"])
        if set(c) != {"pair", "lhs", "rhs", "holds"} or c["holds"] is not True:
            return False
        lhs, rhs = _as_int(c["lhs"]), _as_int(c["rhs"])
        if lhs != (a + 2 * b) ** 2 - 2 * (a + b) ** 2 or rhs != -(a * a - 2 * b * b) or lhs != rhs:
            return False

    bases = cert["base_cases"]
    if [_as_pair(c["pair"]) for c in bases] != list(BASE_CASES):
        return False
    for c in bases:
        p = _as_pair(c["pair"])
        if set(c) != {"pair", "defect", "is_solution"} or c["is_solution"] is not False:
            return False
        if _as_int(c["defect"]) != p.defect(2) or p.defect(2) == 0:
            return False

    chains = [[_as_pair(x) for x in chain] for chain in cert["chains"]]
    if [chain[0] for chain in chains] != _box_unit_solutions(bound):
        return False
    for chain in chains:
        head = chain[0]
        if head.a > bound or head.b > bound or not is_unit_solution(head):
            return False
        if chain[-1] != Pair(1, 1):
            return False
        for upper, lower in zip(chain, chain[1:]):
            if step_down(upper) != lower or lower.a + lower.b >= upper.a + upper.b:
                return False
            if lower.defect(2) != -upper.defect(2):
                return False
    return True
