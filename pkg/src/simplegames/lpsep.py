"""Weightedness, rough weightedness, and threshold separation.

The central question: do nonnegative rational weights and a quota exist that
put a required family of coalitions at or above the quota and a forbidden
family strictly below?  Over the rationals a strict gap can be normalised to
a margin of one after clearing denominators, so ``separable`` solves the
closed system ``w(M) >= q`` / ``w(Y) <= q - 1`` / ``q >= 1`` exactly and a
returned witness is a genuine strict separator.

All verdicts are exact: the LP layer only accepts float results whose
witnesses survive exact rational verification (see ``_exactlp``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import desirability
from ._exactlp import EQ, GEQ, LEQ, LinearSystem, LPResult
from .core import (
    MAX_TABLE_PLAYERS,
    Coalition,
    InvalidGameError,
    SimpleGame,
    antichain_reduce,
    maximal_losing_masks,
    _bits,
    _popcount,
)

_MODEL_SPACE_LIMIT = 5_000


@dataclass(frozen=True)
class WeightedRep:
    """Nonnegative weights and a quota with ``X wins iff w(X) >= quota``.

    The quota is positive except for the degenerate all-coalitions-win game,
    whose only consistent representation is all-zero weights with quota zero.
    """

    weights: tuple[Fraction, ...]
    quota: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))
        object.__setattr__(self, "quota", Fraction(self.quota))
        if any(w < 0 for w in self.weights):
            raise InvalidGameError("weights must be nonnegative")
        if self.quota < 0:
            raise InvalidGameError("quota must be nonnegative")
        if self.quota == 0 and any(self.weights):
            raise InvalidGameError("zero quota is reserved for the trivial all-win form")

    @property
    def n(self) -> int:
        return len(self.weights)

    def weight_of_mask(self, mask: int) -> Fraction:
        total = Fraction(0)
        for i in _bits(mask):
            total += self.weights[i]
        return total

    def weight_of(self, x: Coalition) -> Fraction:
        return self.weight_of_mask(x.mask)

    def wins_mask(self, mask: int) -> bool:
        return self.weight_of_mask(mask) >= self.quota


@dataclass(frozen=True)
class RoughRep:
    """Weights/quota where strictly-below implies losing and strictly-above
    implies winning; coalitions exactly at the quota are unconstrained."""

    weights: tuple[Fraction, ...]
    quota: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))
        object.__setattr__(self, "quota", Fraction(self.quota))
        if any(w < 0 for w in self.weights):
            raise InvalidGameError("weights must be nonnegative")
        if not any(self.weights) and self.quota == 0:
            raise InvalidGameError("weights and quota cannot all be zero")

    @property
    def n(self) -> int:
        return len(self.weights)

    def weight_of_mask(self, mask: int) -> Fraction:
        total = Fraction(0)
        for i in _bits(mask):
            total += self.weights[i]
        return total


def _canonical_rep(weights: Sequence[Fraction], quota: Fraction) -> WeightedRep:
    """Scale a witness to coprime integers for stable, readable output."""
    denom = math.lcm(quota.denominator, *(w.denominator for w in weights))
    ints = [int(w * denom) for w in weights] + [int(quota * denom)]
    g = math.gcd(*ints) if any(ints) else 1
    scale = Fraction(denom, g if g else 1)
    return WeightedRep(tuple(w * scale for w in weights), quota * scale)


def separable(
    n: int,
    must_win: Iterable[Coalition],
    must_lose: Iterable[Coalition],
) -> WeightedRep | None:
    """Weighted game winning every superset of ``must_win`` members while
    losing every coalition in ``must_lose``, or None if none exists.

    Infeasibility is an answer, not an error; nonnegative weights make the
    win side close upward and the lose side close downward automatically.
    """
    win_masks = [c.mask if isinstance(c, Coalition) else int(c) for c in must_win]
    lose_masks = [c.mask if isinstance(c, Coalition) else int(c) for c in must_lose]
    return separable_masks(n, win_masks, lose_masks)


def separable_masks(n: int, win_masks: Iterable[int], lose_masks: Iterable[int]) -> WeightedRep | None:
    win = antichain_reduce(win_masks)
    lose = _inclusion_maximal(lose_masks)
    for y in lose:
        if any(m & ~y == 0 for m in win):
            return None  # a forbidden coalition is forced winning
    system = LinearSystem(n + 1)
    for m in win:
        system.add(_incidence(m, n) + [-1], GEQ, 0)
    for y in lose:
        system.add(_incidence(y, n) + [-1], LEQ, -1)
    q_row = [0] * n + [1]
    system.add(q_row, GEQ, 1)

    def repair(xf: list[float]) -> tuple[Fraction, ...] | None:
        for denom in (1, 16, 10**4, 10**8):
            w = [Fraction(v).limit_denominator(denom) for v in xf[:n]]
            lo = max((sum(w[i] for i in _bits(y)) for y in lose), default=Fraction(0)) + 1
            hi = min((sum(w[i] for i in _bits(m)) for m in win), default=None)
            q = max(lo, Fraction(1))
            if hi is None or q <= hi:
                return tuple(w) + (q,)
        return None

    res = system.solve(repair=repair)
    if not res.feasible:
        return None
    return _canonical_rep(res.x[:n], res.x[n])


def separable_result(
    n: int, win_masks: Iterable[int], lose_masks: Iterable[int]
) -> tuple[LPResult, list[int], list[int]]:
    """Raw exact LP outcome for the separation system.

    Returns ``(result, win_rows, lose_rows)`` where the row lists are the
    reduced families actually used, ordered as in the system (win rows, then
    lose rows, then the quota row).  Certificate search turns the Farkas
    multipliers of an infeasible system into a trading transform.
    """
    win = antichain_reduce(win_masks)
    lose = _inclusion_maximal(lose_masks)
    system = LinearSystem(n + 1)
    for m in win:
        system.add(_incidence(m, n) + [-1], GEQ, 0)
    for y in lose:
        system.add(_incidence(y, n) + [-1], LEQ, -1)
    system.add([0] * n + [1], GEQ, 1)
    return system.solve(force_exact=True), win, lose


def _incidence(mask: int, n: int) -> list[int]:
    return [(mask >> i) & 1 for i in range(n)]


def _inclusion_maximal(masks: Iterable[int]) -> list[int]:
    ordered = sorted(set(masks), key=lambda m: (-_popcount(m), m))
    kept: list[int] = []
    for m in ordered:
        if not any(m & ~k == 0 for k in kept):
            kept.append(m)
    kept.sort(key=lambda m: (_popcount(m), m))
    return kept


def is_weighted(g: SimpleGame) -> WeightedRep | None:
    """A verified voting representation of the game, or None.

    A returned witness always satisfies :func:`verify_representation`.  The
    all-win game gets the trivial zero-weight representation by convention.
    Non-complete games are rejected without solving (a weighted game's
    desirability order is always total); complete games are solved in
    class-weight space, which is lossless because averaging any
    representation over within-class player swaps, all of them game
    automorphisms, preserves every defining inequality.
    """
    if g._weighted is not False:
        return g._weighted
    rep = _is_weighted_uncached(g)
    g._weighted = rep
    return rep


def _is_weighted_uncached(g: SimpleGame) -> WeightedRep | None:
    if g.wins_mask(0):  # empty coalition wins, hence everything does
        return WeightedRep((Fraction(0),) * g.n, Fraction(0))
    if g.n <= MAX_TABLE_PLAYERS:
        if not desirability.is_complete(g):
            return None
        part = desirability.equivalence_classes(g)
        space = 1
        for s in part.sizes:
            space *= s + 1
        if space <= _MODEL_SPACE_LIMIT:
            return _symmetric_weighted(g, part)
    return separable_masks(g.n, g.minwin_masks, maximal_losing_masks(g))


def _symmetric_weighted(g: SimpleGame, part) -> WeightedRep | None:
    """Weightedness of a complete game decided over class weights.

    One variable per desirability class plus the quota; the binding rows are
    the deletion-minimal winning and addition-maximal losing models.
    """
    m = len(part.classes)
    sizes = part.sizes
    status: dict[tuple[int, ...], bool] = {}
    for model in part.models():
        status[model] = g.wins_mask(part.representative_mask(model))
    win_rows = []
    lose_rows = []
    for model, winning in status.items():
        if winning:
            if not any(
                status[tuple(model[k] - (k == c) for k in range(m))]
                for c in range(m)
                if model[c] > 0
            ):
                win_rows.append(model)
        else:
            if all(
                status[tuple(model[k] + (k == c) for k in range(m))]
                for c in range(m)
                if model[c] < sizes[c]
            ):
                lose_rows.append(model)
    system = LinearSystem(m + 1)
    for u in sorted(win_rows):
        system.add(list(u) + [-1], GEQ, 0)
    for u in sorted(lose_rows):
        system.add(list(u) + [-1], LEQ, -1)
    system.add([0] * m + [1], GEQ, 1)
    res = system.solve(force_exact=True)
    if not res.feasible:
        return None
    weights = tuple(res.x[part.class_of[p]] for p in range(g.n))
    return _canonical_rep(weights, res.x[m])


def is_roughly_weighted(g: SimpleGame) -> RoughRep | None:
    """Rough representation per the two-case normalisation.

    Any valid system with a losing empty coalition scales either to quota 1,
    or to quota 0 with total weight 1 concentrated outside every maximal
    losing coalition.  The all-win game takes a negative quota.
    """
    if g.wins_mask(0):  # all-coalitions-win game needs a negative quota
        return RoughRep((Fraction(0),) * g.n, Fraction(-1))
    lose = maximal_losing_masks(g)
    win = list(g.minwin_masks)
    system = LinearSystem(g.n)
    for m in win:
        system.add(_incidence(m, g.n), GEQ, 1)
    for y in lose:
        system.add(_incidence(y, g.n), LEQ, 1)
    res = system.solve()
    if res.feasible:
        return RoughRep(res.x, Fraction(1))
    system = LinearSystem(g.n)
    system.add([1] * g.n, EQ, 1)
    for y in lose:
        system.add(_incidence(y, g.n), LEQ, 0)
    res = system.solve()
    if res.feasible:
        return RoughRep(res.x, Fraction(0))
    return None


def verify_representation(g: SimpleGame, rep: WeightedRep | RoughRep) -> bool:
    """Exact check of the defining conditions against the game's antichains.

    Nonnegative weights make the antichain test equivalent to the full scan
    over all coalitions: winning coalitions dominate a minimal winning one,
    losing coalitions fit under a maximal losing one.
    """
    if rep.n != g.n:
        raise InvalidGameError(f"representation over {rep.n} players, game over {g.n}")
    strict = isinstance(rep, WeightedRep)
    for m in g.minwin_masks:
        if rep.weight_of_mask(m) < rep.quota:
            return False
    for y in maximal_losing_masks(g):
        w = rep.weight_of_mask(y)
        if strict and w >= rep.quota:
            return False
        if not strict and w > rep.quota:
            return False
    return True


def weighted_game(rep: WeightedRep, n: int | None = None) -> SimpleGame:
    """The simple game induced by a representation (table-gated)."""
    n = rep.n if n is None else n
    if n != rep.n:
        raise InvalidGameError("player count mismatch")
    table = threshold_table(rep.weights, rep.quota, n)
    game = SimpleGame._from_table(n, table)
    game.minwin_masks
    return game


def threshold_table(weights: Sequence[Fraction], quota: Fraction, n: int) -> int:
    """Truth-table int for ``w(X) >= quota`` via exact integer subset sums."""
    denom = math.lcm(Fraction(quota).denominator, *(Fraction(w).denominator for w in weights))
    w_int = [int(Fraction(w) * denom) for w in weights]
    q_int = int(Fraction(quota) * denom)
    sums = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + w_int[low.bit_length() - 1]
    table = 0
    for mask, s in enumerate(sums):
        if s >= q_int:
            table |= 1 << mask
    return table
