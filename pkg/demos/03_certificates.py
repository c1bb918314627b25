"""Trading transforms: combinatorial proof that no weighting can exist.

Rearranging the players of winning coalitions into losing ones is fatal for
weights: total weight is conserved, so the winning side would force at least
j*quota while the losing side allows strictly less.
"""

from simplegames import (
    find_certificate,
    is_weighted,
    losing_witness_family,
    pair_incompatibility_certificate,
    verify_certificate,
    verify_trading_transform,
)

game, witnesses = losing_witness_family(2, 2)
print("two top players a0,a1; four bottom players b0..b3; win with 2 top or 4 total")
print("witness losing coalitions:", [w.members for w in witnesses])

cert = pair_incompatibility_certificate(game, witnesses[0], witnesses[1])
print("\nswap certificate with those exact posts:")
print("  winning side:", [c.members for c in cert.pre])
print("  losing side: ", [c.members for c in cert.post])
print("  balanced:", verify_trading_transform(cert))
print("  certifies non-weightedness:", verify_certificate(game, cert))
print("  the exact oracle agrees:", is_weighted(game) is None)

print("\nbounded search finds one too:", find_certificate(game, max_len=2) is not None)

from itertools import combinations
from simplegames import Coalition, make_game

majority = make_game(5, [Coalition.of(c, 5) for c in combinations(range(5), 3)])
print("\nmajority game certificate search (none can exist):", find_certificate(majority, 8))
