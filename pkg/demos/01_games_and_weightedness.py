"""Build simple games and decide weightedness with exact arithmetic.

Two classics: the five-player simple majority game, and the fifteen-member
council where five permanent members each hold a veto and a motion needs
nine votes in total.
"""

from itertools import combinations

from simplegames import (
    Coalition,
    WeightedRep,
    dual,
    is_weighted,
    make_game,
    maximal_losing,
    verify_representation,
)

majority = make_game(5, [Coalition.of(c, 5) for c in combinations(range(5), 3)])
print("majority game: ", majority)
print("  minimal winning coalitions:", len(majority.min_winning))
print("  maximal losing coalitions: ", len(maximal_losing(majority)))
print("  self-dual:", dual(majority) == majority)

rep = is_weighted(majority)
print("  weighted:", rep is not None, "- witness", [str(w) for w in rep.weights], "quota", rep.quota)
print("  textbook [3; 1,1,1,1,1] verifies:", verify_representation(majority, WeightedRep((1,) * 5, 3)))

council = make_game(
    15,
    [Coalition.of(list(range(5)) + list(extra), 15) for extra in combinations(range(5, 15), 4)],
)
print("\ncouncil game:", council)
print("  all nine-member coalitions containing the five veto holders win")
print("  minimal winning coalitions:", len(council.min_winning))

rep = is_weighted(council)
print("  weighted:", rep is not None)
print(
    "  classic weights [39; 7x5, 1x10] verify:",
    verify_representation(council, WeightedRep((7,) * 5 + (1,) * 10, 39)),
)

# losing a single permanent member is fatal even with everyone else aboard
big = Coalition.of(list(range(1, 15)), 15)
print("  fourteen members without one veto holder win?", council.wins(big))
