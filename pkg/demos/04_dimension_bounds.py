"""Dimension: how many weighted games must be intersected to express a game.

Lower bounds come from cliques of pairwise-inseparable losing coalitions,
upper bounds from explicit covers; the exact value is a minimum set cover
with an exact LP feasibility oracle.  The layered families show the two
growth regimes: linear when classes stay fixed, exponential as classes are
added.
"""

import time

from simplegames import (
    Budget,
    exact_dimension,
    kurz_napel_lower,
    losing_witness_family,
    upper_bound_lmax,
)

for k in (2, 3, 4):
    game, witnesses = losing_witness_family(k, 2)
    lower, _ = kurz_napel_lower(game)
    print(f"two classes, k={k}: players={game.n:2d} witness={len(witnesses)} clique lower={lower}")

game, witnesses = losing_witness_family(2, 3)
t0 = time.time()
lower, _ = kurz_napel_lower(game)
count, _ = upper_bound_lmax(game)
print(f"\nthree classes, k=2: players={game.n}, witness={len(witnesses)},"
      f" clique lower={lower}, maximal-losing upper bound={count}  ({time.time()-t0:.1f}s)")

game24, _ = losing_witness_family(2, 2)
report = exact_dimension(game24)
print("\nexact dimension of the 6-player family game:", report.exact)
print("  parts of a minimum intersection:")
for part in report.witness_upper.parts:
    print("   quota", part.quota, "weights", [str(w) for w in part.weights])

from simplegames import HierarchicalSpec, Kind, build, conjunctive_intersection_rep

spec = HierarchicalSpec(Kind.CONJUNCTIVE, (4, 4, 4), (2, 4, 7))
h = build(spec)
t0 = time.time()
report = exact_dimension(h, Budget(max_lmax=700, clique_exact=700))
print(f"\nconjunctive (4,4,4)/(2,4,7): |L_max|={report.num_maximal_losing},"
      f" exact dimension={report.exact}  ({time.time()-t0:.1f}s)")
print("  level-cut upper bound has", len(conjunctive_intersection_rep(spec).parts), "parts")
