"""Hierarchical games: cumulative class thresholds, structure, and models.

A disjunctive game wins when some level quota is met, a conjunctive game
when all are.  Both are complete: players split into strictly ordered
equivalence classes, so whole orbits of coalitions can be summarised by
count vectors (models).
"""

from simplegames import (
    HierarchicalSpec,
    Kind,
    build,
    equivalence_classes,
    is_roughly_weighted,
    is_weighted,
    minimal_winning_models,
    shift_maximal_losing,
    shift_maximal_losing_models,
    validate_partiteness,
)
from simplegames.hierarchical import dummy_players, reduce as reduce_spec, veto_players

disj = HierarchicalSpec(Kind.DISJUNCTIVE, (2, 5), (2, 5))
g = build(disj)
print("disjunctive, sizes (2,5), thresholds (2,5):", g)
print("  classes:", equivalence_classes(g).classes)
print("  minimal winning models:", minimal_winning_models(g))
print("  shift-maximal losing models:", shift_maximal_losing(g))
print("  weighted:", is_weighted(g) is not None)
print("  roughly weighted:", is_roughly_weighted(g) is not None)

conj = HierarchicalSpec(Kind.CONJUNCTIVE, (4, 4, 4), (2, 4, 7))
h = build(conj)
print("\nconjunctive, sizes (4,4,4), thresholds (2,4,7):", h)
print("  declared classes are the true ones:", validate_partiteness(conj).true_m_partite)
print("  shift-maximal losing models (closed form):", shift_maximal_losing_models(conj))
print("  same by model scan:                       ", shift_maximal_losing(h))

# veto and dummy classes read off the thresholds
veto_spec = HierarchicalSpec(Kind.CONJUNCTIVE, (2, 3), (2, 4))
print("\nsizes (2,3), thresholds (2,4): veto players", veto_players(veto_spec))

stacked = HierarchicalSpec(Kind.CONJUNCTIVE, (2, 3, 4, 2), (2, 3, 5, 5))
print("sizes (2,3,4,2), thresholds (2,3,5,5):")
print("  veto:", veto_players(stacked), " dummies:", dummy_players(stacked))
red = reduce_spec(stacked)
print("  reduced middle game: sizes", red.n_vec, "thresholds", red.k_vec)
