"""
Agreement on a random corpus
============================

Seeded random graphs with weights in {1, 2, 3}. For each one we ask the
eight conditions and the brute-force search the same question and tally
the answers with numpy.
"""

import time

import numpy as np

from gridlock.io import generate_graph, parse_graph
from gridlock.verifier import cross_validate

seeds = np.arange(120)
outcome = np.zeros((len(seeds), 2), dtype=bool)
t0 = time.perf_counter()
for k, seed in enumerate(seeds.tolist()):
    G = parse_graph(generate_graph(4 + seed % 3, 0.5, ["1", "2", "3"], seed))
    cv = cross_validate(G)
    outcome[k] = cv.conditions_verdict, cv.bruteforce_verdict
print(f"{len(seeds)} graphs in {time.perf_counter() - t0:.2f}s")

# rows: conditions say no / yes; columns: brute force says no / yes
table = np.zeros((2, 2), dtype=int)
np.add.at(table, (outcome[:, 0].astype(int), outcome[:, 1].astype(int)), 1)
print(table)
print("agreement", np.mean(outcome[:, 0] == outcome[:, 1]))

# %%
# Inheritance rate by graph size.
for n in (4, 5, 6):
    rows = outcome[(4 + seeds % 3) == n]
    print(n, "players:", rows[:, 1].mean().round(2), "inherit")
