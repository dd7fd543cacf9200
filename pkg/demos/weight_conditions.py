"""
Which weightings keep convexity
===============================

Restricting a convex game along minimum-weight edges can produce a game
that is not convex. Eight local conditions on the weights predict when
that never happens. This script checks them on a few graphs and compares
with a brute-force search over unanimity games.
"""

from gridlock.graph import WeightedGraph
from gridlock.conditions import ORDER, check_all
from gridlock.verifier import cross_validate, inheritance_convexity_unanimity

# %%
# A star whose three weights are all different: the two heaviest differ,
# and the star condition says no.
star = WeightedGraph(4, [(0, 1, 1), (0, 2, 2), (0, 3, 3)])
report = check_all(star)
for c in ORDER:
    print(f"{c.value:28s}", report.status(c))
print(report.violations[0].detail)

# brute force finds a unanimity game whose restriction stops being convex
verdict = inheritance_convexity_unanimity(star)
cex = verdict.counterexample
print("carrier", cex["game"]["S"], "A", cex["A"], "B", cex["B"])

# %%
# Make the two heaviest legs tie and both sides agree the problem is gone.
fixed = WeightedGraph(4, [(0, 1, 1), (0, 2, 3), (0, 3, 3)])
print(check_all(fixed).status("star"), inheritance_convexity_unanimity(fixed).holds)

# %%
# A five-cycle with a pendant edge hanging off the far side. Every plain
# condition is met, but the pendant is not linked back to the light edge.
C5 = WeightedGraph(6, [(0, 1, 1), (1, 2, 2), (2, 3, 2), (3, 4, 2), (4, 0, 2), (3, 5, 2)])
cv = cross_validate(C5)
failing = [c.value for c in ORDER if cv.report.status(c) is False]
print("failing:", failing, "agree:", cv.agree)

# Linking vertex 5 back to vertex 0 repairs that cycle, but the new edge
# closes new cycles with obligations of their own. Brute force still agrees.
linked = C5.with_edges([(5, 0, 2)])
cv = cross_validate(linked)
print("reinforced_cycle:", cv.report.status("reinforced_cycle"))
print("failing:", [c.value for c in ORDER if cv.report.status(c) is False], "agree:", cv.agree)
