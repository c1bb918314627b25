"""AND/OR formulas over weighted games: a compacter notion of dimension.

A three-class access structure that needs either a quorum of the top class
or simultaneous middle and global quorums is an OR over an AND: three
weighted leaves, even when its plain intersection dimension is larger.
"""

from simplegames import (
    And,
    Leaf,
    Or,
    WeightedRep,
    build_tripartite,
    dual,
    formula_dual,
    formula_game,
    formula_size,
    parse_formula,
    verify_boolean_rep,
)
from simplegames.boolean import format_formula

n, k = (2, 2, 2), (1, 2, 3)
game = build_tripartite(n, k)

cut1 = Leaf(WeightedRep((1, 1, 0, 0, 0, 0), 1))
cut2 = Leaf(WeightedRep((1, 1, 1, 1, 0, 0), 2))
cut3 = Leaf(WeightedRep((1, 1, 1, 1, 1, 1), 3))
formula = Or((cut1, And((cut2, cut3))))

print("formula:", format_formula(formula))
print("  leaves:", formula_size(formula))
print("  denotes the tripartite game:", verify_boolean_rep(game, formula))

flipped = formula_dual(formula)
print("\nits de Morgan dual:", format_formula(flipped))
print("  denotes the dual game:", formula_game(flipped) == dual(game))
print("  size unchanged:", formula_size(flipped) == formula_size(formula))

text = "AND(WG(5; 4,11/10,1,1,1,1,1), WG(5; 11/10,4,1,1,1,1,1))"
parsed = parse_formula(text)
print("\nparsed from text:", format_formula(parsed))
print("  exact fractional weights survive the round trip")
