"""
Unit solutions, the recurrence, and descent
===========================================

The pairs with |a^2 - 2 b^2| = 1 obey (a, b) -> (a + 2b, a + b), and the
map runs backwards as (c, d) -> (2d - c, c - d) with a smaller a + b.
"""

from surdforge import (
    Pair,
    compose_solutions,
    descent_chain,
    generate_unit_solutions,
    sign_flip_identity_check,
    step_down,
    step_up,
    unit_solutions_in_box,
)

box = unit_solutions_in_box(2, 1000)
print("found in the box :", ", ".join(map(str, box)))
print("generated        :", ", ".join(map(str, generate_unit_solutions(2, 8))))

##############################################################################
# Each step flips the sign of the defect a^2 - 2 b^2.

p = Pair(1, 1)
for _ in range(6):
    print(f"{str(p):>12}  defect {p.defect():+d}")
    p = step_up(p)

assert all(sign_flip_identity_check(a, a + 1) for a in range(1, 1000))

##############################################################################
# Walking down from any unit solution strictly lowers a + b and stops at (1, 1).

chain = descent_chain(Pair(577, 408))
print(" -> ".join(f"{q}[{q.a + q.b}]" for q in chain))
print("step_down(step_up((10, 7))) =", step_down(step_up(Pair(10, 7))))

##############################################################################
# For other n the seed comes from the continued fraction of sqrt(n) and the
# recurrence becomes composition with that seed.

for n in (3, 5, 13, 61):
    sols = generate_unit_solutions(n, 3)
    print(f"n = {n:>2}:", ", ".join(map(str, sols)))
print("(9,4) * (2,1) for n = 5:", compose_solutions(5, Pair(9, 4), Pair(2, 1)))
