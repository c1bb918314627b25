"""Duality swaps intersections for unions: codim(dual G) = dim(G).

The dual game wins with the complements of losing coalitions.  Expressing a
game as a union of weighted games (codimension) is the same cover problem as
dimension, run on the dual; the package also solves the union cover directly
so the two routes can be compared.
"""

import random

from simplegames import (
    Budget,
    codimension,
    codimension_direct,
    dual,
    exact_dimension,
    equivalence_classes,
    losing_witness_family,
    make_game_from_masks,
)

game, _ = losing_witness_family(2, 2)
d = dual(game)
print("family game:", game, " dual:", d)
print("  dual classes:", equivalence_classes(d).sizes)
print("  dim(game) =", exact_dimension(game).exact)
print("  codim(dual) =", codimension(d).exact, " (equal by the union/intersection duality)")

rng = random.Random(7)
budget = Budget(max_lmax=60)
print("\nrandom 5-player games: dim, codim via dual, codim direct")
for _ in range(6):
    masks = [rng.randrange(1, 32) for _ in range(rng.randint(1, 5))]
    g = make_game_from_masks(5, masks)
    print(
        f"  generators {masks!r:28}"
        f" dim={exact_dimension(g, budget).exact}"
        f" codim={codimension(g, budget).exact}"
        f" direct={codimension_direct(g, budget).exact}"
    )
