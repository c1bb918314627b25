"""Trading transforms and certificates of non-weightedness.

A trading transform rearranges the players of one coalition sequence into
another: every player appears in the pre-sequence exactly as often as in the
post-sequence.  When every pre-coalition wins and every post-coalition loses
it certifies that no weighted representation exists, because any weights
would force ``j*quota <= total weight = total weight <= j*(quota - margin)``.

Certificates found here are always returned verified.  ``find_certificate``
is a bounded search: a None answer is relative to ``max_len`` unless the
underlying exact separation LP was feasible, in which case no certificate of
any length exists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import desirability, lpsep
from .core import (
    MAX_TABLE_PLAYERS,
    Coalition,
    InvalidGameError,
    SimpleGame,
    maximal_losing_masks,
    _bits,
    _popcount,
)
from .lpsep import separable_result

_PAIR_SWAP_LIMIT = 22  # cap on |y1 xor y2| for the length-2 pattern scan


@dataclass(frozen=True)
class TradingTransform:
    pre: tuple[Coalition, ...]
    post: tuple[Coalition, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pre", tuple(self.pre))
        object.__setattr__(self, "post", tuple(self.post))
        if len(self.pre) != len(self.post):
            raise InvalidGameError("pre and post sequences must have equal length")
        if not self.pre:
            raise InvalidGameError("empty trading transform")
        n = self.pre[0].n
        if any(c.n != n for c in self.pre + self.post):
            raise InvalidGameError("all coalitions must share one player universe")

    @property
    def length(self) -> int:
        return len(self.pre)

    @property
    def n(self) -> int:
        return self.pre[0].n


def verify_trading_transform(tt: TradingTransform) -> bool:
    """Balance check: identical per-player multiplicities on both sides."""
    counts = [0] * tt.n
    for c in tt.pre:
        for i in _bits(c.mask):
            counts[i] += 1
    for c in tt.post:
        for i in _bits(c.mask):
            counts[i] -= 1
    return not any(counts)


def verify_certificate(g: SimpleGame, tt: TradingTransform) -> bool:
    """True iff the transform is balanced with winning pres and losing posts."""
    if tt.n != g.n:
        raise InvalidGameError("transform and game player counts differ")
    if not verify_trading_transform(tt):
        raise InvalidGameError("unbalanced trading transform")
    return all(g.wins_mask(c.mask) for c in tt.pre) and not any(
        g.wins_mask(c.mask) for c in tt.post
    )


def _canonical(n: int, pre_masks: list[int], post_masks: list[int]) -> TradingTransform:
    key = lambda m: (_popcount(m), m)
    return TradingTransform(
        tuple(Coalition(m, n) for m in sorted(pre_masks, key=key)),
        tuple(Coalition(m, n) for m in sorted(post_masks, key=key)),
    )


def pair_incompatibility_certificate(
    g: SimpleGame, y1: Coalition, y2: Coalition
) -> TradingTransform | None:
    """Length-2 certificate with posts exactly ``(y1, y2)``, if one exists.

    Balance forces the pre-coalitions to split the multiset union of the
    posts: shared players sit in both pres, the symmetric difference is
    partitioned.  The scan over partitions is complete, so None here rules
    out every length-2 certificate with these posts; the pair may still be
    inseparable, which only the exact LP decides.
    """
    if y1.n != g.n or y2.n != g.n:
        raise InvalidGameError("coalitions and game player counts differ")
    if g.wins_mask(y1.mask) or g.wins_mask(y2.mask):
        raise InvalidGameError("both post coalitions must be losing")
    both = y1.mask & y2.mask
    delta = y1.mask ^ y2.mask
    if delta == 0:
        return None
    if _popcount(delta) > _PAIR_SWAP_LIMIT:
        raise InvalidGameError("symmetric difference too large for the pattern scan")
    low = delta & -delta
    rest = delta ^ low
    # iterate submasks of rest; the fixed low bit breaks X1/X2 symmetry
    sub = rest
    while True:
        x1 = both | low | sub
        x2 = both | (rest ^ sub)
        if g.wins_mask(x1) and g.wins_mask(x2):
            return _canonical(g.n, [x1, x2], [y1.mask, y2.mask])
        if sub == 0:
            break
        sub = (sub - 1) & rest
    return None


def find_certificate(g: SimpleGame, max_len: int = 4) -> TradingTransform | None:
    """Search for a certificate of length at most ``max_len``.

    Strategy: an incomparable player pair yields an immediate swap
    certificate; otherwise all length-2 certificates over maximal losing
    pairs are scanned; finally, if the exact separation LP is infeasible its
    integer multipliers are assembled into a certificate.  A feasible LP
    proves no certificate of any length exists.  None with an infeasible LP
    whose assembled certificate exceeds ``max_len`` is bound-relative.
    """
    if max_len < 2:
        raise InvalidGameError("certificates have length at least 2")
    full = (1 << g.n) - 1
    if g.wins_mask(0) or not g.wins_mask(full):
        return None  # all-win and all-lose games are weighted by convention
    if g.n <= MAX_TABLE_PLAYERS:
        pair = desirability.incomparable_pair(g)
        if pair is not None:
            cert = _incomparability_certificate(g, *pair)
            if cert is not None:
                return cert
    if lpsep.is_weighted(g) is not None:
        return None  # weighted: no certificate of any length exists
    maxlose = maximal_losing_masks(g)
    for a in range(len(maxlose)):
        for b in range(a + 1, len(maxlose)):
            if _popcount(maxlose[a] ^ maxlose[b]) > _PAIR_SWAP_LIMIT:
                continue
            cert = pair_incompatibility_certificate(
                g, Coalition(maxlose[a], g.n), Coalition(maxlose[b], g.n)
            )
            if cert is not None:
                return cert
    res, win_rows, lose_rows = separable_result(g.n, g.minwin_masks, maxlose)
    assert not res.feasible, "weightedness check and separation LP disagree"
    cert = _certificate_from_farkas(g, res.farkas, win_rows, lose_rows)
    if cert is not None and cert.length <= max_len:
        return cert
    return None


def _incomparability_certificate(g: SimpleGame, i: int, j: int) -> TradingTransform | None:
    witness = desirability.incomparability_witness(g, i, j)
    if witness is None:
        return None
    win1, win2 = witness  # win1 = X|{j} wins, X|{i} loses; win2 symmetric
    bi, bj = 1 << i, 1 << j
    post1 = (win1 ^ bj) | bi
    post2 = (win2 ^ bi) | bj
    tt = _canonical(g.n, [win1, win2], [post1, post2])
    assert verify_certificate(g, tt)
    return tt


def _certificate_from_farkas(
    g: SimpleGame,
    farkas,
    win_rows: list[int],
    lose_rows: list[int],
) -> TradingTransform | None:
    """Assemble a certificate from exact multipliers of the infeasible LP.

    Integer-scaled multipliers give per-player winning counts at most the
    losing counts and at least as many pre as post coalitions.  Padding with
    empty losing coalitions equalises the lengths, after which each player
    deficit is absorbed by enlarging pre-coalitions (supersets stay winning).
    """
    mults = list(farkas[: len(win_rows) + len(lose_rows)])
    if not mults:
        return None
    denom = math.lcm(*(m.denominator for m in mults)) if mults else 1
    ints = [int(m * denom) for m in mults]
    common = math.gcd(*ints) if any(ints) else 1
    ints = [v // common for v in ints]
    lam = ints[: len(win_rows)]
    mu = ints[len(win_rows) :]
    pre: list[int] = []
    post: list[int] = []
    for mask, count in zip(win_rows, lam):
        pre.extend([mask] * count)
    for mask, count in zip(lose_rows, mu):
        post.extend([mask] * count)
    if len(pre) < len(post) or not post:
        return None  # cannot arise from a valid certificate; caller re-checks
    post.extend([0] * (len(pre) - len(post)))
    counts = [0] * g.n
    for m in pre:
        for p in _bits(m):
            counts[p] -= 1
    for m in post:
        for p in _bits(m):
            counts[p] += 1
    for p, deficit in enumerate(counts):
        if deficit < 0:
            return None
        bit = 1 << p
        idx = 0
        while deficit > 0 and idx < len(pre):
            if not pre[idx] & bit:
                pre[idx] |= bit
                deficit -= 1
            idx += 1
        if deficit > 0:
            return None
    tt = _canonical(g.n, pre, post)
    assert verify_certificate(g, tt)
    return tt
