"""
Finite and periodic continued fractions
=======================================

Rationals run out of terms under repeated division with remainder;
square roots of non-squares fall into a cycle of (p, q) states.
"""

from fractions import Fraction

from surdforge import (
    Surd,
    cf_rational,
    cf_sqrt,
    cf_surd,
    convergents,
    periodic_fixed_point,
    reconstruct_rational,
    surd_floor,
    surd_reciprocal_of_fractional_part,
)
from surdforge.contfrac import approximation_report, expand_surd

for r in (Fraction(11, 4), Fraction(355, 113), Fraction(-7, 3)):
    cf = cf_rational(r)
    print(f"{str(r):>8} = {cf}   back: {reconstruct_rational(cf)}")

##############################################################################
# The state of the expansion of sqrt(2): after one step we are at 1 + sqrt(2)
# and the next step returns the very same state.

s = Surd(0, 1, 2)
for _ in range(4):
    a = surd_floor(s)
    print(f"state {s!s:>14}  term {a}")
    s = surd_reciprocal_of_fractional_part(s)

print("1 + sqrt(2) =", cf_surd(Surd(1, 1, 2)))
for d in (2, 3, 7, 19, 94):
    exp = expand_surd(Surd(0, 1, d))
    print(f"sqrt({d}) = {cf_sqrt(d)}   states visited: {len(exp.states) - 1}")

##############################################################################
# A purely periodic expansion is the root of a quadratic built from its own
# convergents; for [(2)] this is y = 2 + 1/y.

print("[(2)]    ->", periodic_fixed_point([2]))
print("[(1)]    ->", periodic_fixed_point([1]))
print("[(1, 2)] ->", periodic_fixed_point([1, 2]))

print("convergents of sqrt(2):", [str(c) for c in convergents(cf_sqrt(2), 7)])
for r, defect in approximation_report(3, 6):
    print(f"  sqrt(3) ~ {r}   p^2 - 3 q^2 = {defect:+d}")
