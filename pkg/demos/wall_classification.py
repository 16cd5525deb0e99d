"""
Walls through the fiber class
=============================

Enumerate the walls for ``v = 1 - l rho`` that contain ``f`` and compare
with a brute-force search over bounded integral classes.
"""

import time

from mukai_kit import k3_with_a1_fiber, k3_with_section
from mukai_kit.walls import WallProblem, brute_oracle, classify_f_walls

for X in (k3_with_section(), k3_with_a1_fiber()):
    for ell in (1, 2, 3):
        prob = WallProblem(X, ell)
        start = time.perf_counter()
        walls = classify_f_walls(prob, 3)
        oracle = brute_oracle(prob, 3)
        same = {w.key for w in walls} == set(oracle)
        print(f"{X.name:32s} l={ell}: {len(walls):3d} walls, oracle agrees: {same} "
              f"({time.perf_counter() - start:.2f}s)")

## A closer look at l = 1 without reducible fibers
prob = WallProblem(k3_with_section(), 1)
for w in classify_f_walls(prob, 2):
    print(" ", w.key, w.tag, "u =", w.u)
