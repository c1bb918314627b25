"""Player desirability, completeness, equivalence classes, and models.

Player ``i`` is at least as desirable as ``j`` when swapping ``j`` for ``i``
never turns a winning coalition into a losing one.  A game is complete when
every pair of players is comparable; its players then split into strictly
ordered equivalence classes, and the status of a coalition depends only on
its *model*: the vector counting members per class.

Shift comparisons between models use prefix-sum domination.  Moving a member
of a coalition to a more desirable class (or adding a member) raises some
prefix sums and lowers none, so a model ``u`` is reachable from ``v`` by
deletions and down-shifts exactly when every prefix sum of ``u`` is at most
the corresponding prefix sum of ``v``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from .core import (
    MAX_TABLE_PLAYERS,
    Coalition,
    InvalidGameError,
    SimpleGame,
    TableSizeError,
    _lane,
)

Model = tuple[int, ...]


class Outcome(Enum):
    STRICTLY_MORE = "strictly_more"
    EQUIVALENT = "equivalent"
    STRICTLY_LESS = "strictly_less"
    INCOMPARABLE = "incomparable"


class CompletenessError(ValueError):
    """Raised when an operation requires a complete game but found an
    incomparable pair; carries the witness pair."""

    def __init__(self, i: int, j: int):
        super().__init__(f"players {i} and {j} are incomparable")
        self.pair = (i, j)


def _at_least_as_desirable(g: SimpleGame, i: int, j: int) -> bool:
    """Condition: for all X avoiding both, X+{j} winning implies X+{i} winning."""
    t = g.table
    n = g.n
    li, lj = _lane(n, i), _lane(n, j)
    win_with_j = t & lj & ~li  # positions X|{j}, i absent
    aligned = (win_with_j >> (1 << j)) << (1 << i)  # moved to X|{i}
    return aligned & ~t == 0


def compare_players(g: SimpleGame, i: int, j: int) -> Outcome:
    """Isbell desirability verdict for an ordered pair of distinct players."""
    if i == j:
        raise InvalidGameError("compare_players needs two distinct players")
    if not (0 <= i < g.n and 0 <= j < g.n):
        raise InvalidGameError(f"players {i},{j} outside 0..{g.n - 1}")
    if g.n > MAX_TABLE_PLAYERS:
        raise TableSizeError("desirability comparison is table-gated")
    ij = _at_least_as_desirable(g, i, j)
    ji = _at_least_as_desirable(g, j, i)
    if ij and ji:
        return Outcome.EQUIVALENT
    if ij:
        return Outcome.STRICTLY_MORE
    if ji:
        return Outcome.STRICTLY_LESS
    return Outcome.INCOMPARABLE


def is_complete(g: SimpleGame) -> bool:
    """True iff no pair of players is incomparable."""
    if g._complete is None:
        g._complete = _incomparable_pair(g) is None
    return g._complete


def incomparable_pair(g: SimpleGame) -> tuple[int, int] | None:
    """First incomparable player pair in index order, or None if complete."""
    return _incomparable_pair(g)


def _incomparable_pair(g: SimpleGame) -> tuple[int, int] | None:
    for i in range(g.n):
        for j in range(i + 1, g.n):
            if not _at_least_as_desirable(g, i, j) and not _at_least_as_desirable(g, j, i):
                return (i, j)
    return None


def incomparability_witness(g: SimpleGame, i: int, j: int) -> tuple[int, int] | None:
    """Masks (X|{i}, Y|{j}) witnessing failure in both directions, if any.

    Returns a pair where X+{i} wins while X+{j} loses, combined with
    Y+{j} winning while Y+{i} loses (encoded as the two winning masks).
    """
    t, n = g.table, g.n
    li, lj = _lane(n, i), _lane(n, j)
    bad_ij = (t & lj & ~li) >> (1 << j) << (1 << i) & ~t  # X|{i} losing spots
    bad_ji = (t & li & ~lj) >> (1 << i) << (1 << j) & ~t
    if not bad_ij or not bad_ji:
        return None
    x_i = (bad_ij & -bad_ij).bit_length() - 1  # X|{i} loses -> X|{j} wins
    y_j = (bad_ji & -bad_ji).bit_length() - 1
    win1 = x_i - (1 << i) + (1 << j)
    win2 = y_j - (1 << j) + (1 << i)
    return (win1, win2)


@dataclass(frozen=True)
class ClassPartition:
    """Equivalence classes of players in strictly decreasing desirability."""

    n: int
    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    def model_of_mask(self, mask: int) -> Model:
        counts = [0] * len(self.classes)
        for i in range(self.n):
            if mask >> i & 1:
                counts[self.class_of[i]] += 1
        return tuple(counts)

    def model_of(self, x: Coalition) -> Model:
        return self.model_of_mask(x.mask)

    def representative_mask(self, model: Model) -> int:
        """Canonical coalition realising a model: lowest players per class."""
        mask = 0
        for cls, count in zip(self.classes, model):
            if not 0 <= count <= len(cls):
                raise InvalidGameError(f"model {model} exceeds class sizes {self.sizes}")
            for p in cls[:count]:
                mask |= 1 << p
        return mask

    def models(self):
        return itertools.product(*(range(s + 1) for s in self.sizes))


def equivalence_classes(g: SimpleGame) -> ClassPartition:
    """Class partition of a complete game, most desirable class first."""
    pair = _incomparable_pair(g)
    if pair is not None:
        raise CompletenessError(*pair)
    ge = [[False] * g.n for _ in range(g.n)]
    for i in range(g.n):
        for j in range(g.n):
            if i != j:
                ge[i][j] = _at_least_as_desirable(g, i, j)
    # strict-domination counts separate the classes of a total preorder
    dominated = [sum(1 for j in range(g.n) if i != j and ge[i][j] and not ge[j][i]) for i in range(g.n)]
    order = sorted(range(g.n), key=lambda i: (-dominated[i], i))
    classes: list[list[int]] = []
    for i in order:
        if classes and dominated[classes[-1][0]] == dominated[i]:
            classes[-1].append(i)
        else:
            classes.append([i])
    class_of = [0] * g.n
    for idx, cls in enumerate(classes):
        for p in cls:
            class_of[p] = idx
    return ClassPartition(g.n, tuple(tuple(sorted(c)) for c in classes), tuple(class_of))


def model_winning(g: SimpleGame, part: ClassPartition, model: Model) -> bool:
    return g.wins_mask(part.representative_mask(model))


def _prefix_leq(u: Model, v: Model) -> bool:
    """Shift order: u reachable from v by deletions and down-shifts."""
    acc_u = acc_v = 0
    for a, b in zip(u, v):
        acc_u += a
        acc_v += b
        if acc_u > acc_v:
            return False
    return True


def _model_scan(g: SimpleGame) -> tuple[ClassPartition, list[Model], list[Model]]:
    part = equivalence_classes(g)
    winning: list[Model] = []
    losing: list[Model] = []
    for model in part.models():
        (winning if model_winning(g, part, model) else losing).append(model)
    return part, winning, losing


def minimal_winning_models(g: SimpleGame) -> tuple[Model, ...]:
    """Models of the inclusion-minimal winning coalitions."""
    part, winning, _ = _model_scan(g)
    win_set = set(winning)
    out = []
    for m in winning:
        smaller = (tuple(m[k] - (k == c) for k in range(len(m))) for c in range(len(m)) if m[c] > 0)
        if not any(s in win_set for s in smaller):
            out.append(m)
    return tuple(sorted(out))


def maximal_losing_models(g: SimpleGame) -> tuple[Model, ...]:
    """Models of the inclusion-maximal losing coalitions."""
    part, _, losing = _model_scan(g)
    lose_set = set(losing)
    sizes = part.sizes
    out = []
    for m in losing:
        bigger = (
            tuple(m[k] + (k == c) for k in range(len(m)))
            for c in range(len(m))
            if m[c] < sizes[c]
        )
        if not any(b in lose_set for b in bigger):
            out.append(m)
    return tuple(sorted(out))


def shift_maximal_losing(g: SimpleGame) -> tuple[Model, ...]:
    """Models of losing coalitions maximal under the shift order.

    Every replacement of a member by a strictly more desirable player (and
    every addition) turns them winning.
    """
    _, _, losing = _model_scan(g)
    out = [u for u in losing if not any(v != u and _prefix_leq(u, v) for v in losing)]
    return tuple(sorted(out))


def shift_minimal_winning(g: SimpleGame) -> tuple[Model, ...]:
    """Models of winning coalitions minimal under the shift order."""
    _, winning, _ = _model_scan(g)
    out = [u for u in winning if not any(v != u and _prefix_leq(v, u) for v in winning)]
    return tuple(sorted(out))
