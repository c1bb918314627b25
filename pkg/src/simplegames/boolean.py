"""AND/OR formula representations over weighted games.

A formula tree with weighted-game leaves and only monotone connectives
denotes the game whose winning predicate is the formula evaluated on the
leaves' verdicts.  The leaf count of the smallest such formula is the
Boolean dimension; this module evaluates, extracts, sizes, dualises, and
verifies given formulas but does not minimise (that problem is NP-hard).

Text syntax used by the command line and game files::

    AND(WG(5; 4,11/10,1,1,1,1,1), WG(5; 11/10,4,1,1,1,1,1))

``WG(q; w1,...,wn)`` is a weighted game with exact fraction literals;
``AND``/``OR`` take one or more comma-separated children.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .core import Coalition, InvalidGameError, SimpleGame, dual as dual_game
from .lpsep import WeightedRep, is_weighted, threshold_table


@dataclass(frozen=True)
class Leaf:
    rep: WeightedRep


@dataclass(frozen=True)
class And:
    children: tuple["BoolFormula", ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "children", tuple(self.children))
        if not self.children:
            raise InvalidGameError("AND needs at least one child")


@dataclass(frozen=True)
class Or:
    children: tuple["BoolFormula", ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "children", tuple(self.children))
        if not self.children:
            raise InvalidGameError("OR needs at least one child")


BoolFormula = Leaf | And | Or


def formula_players(f: BoolFormula) -> int:
    leaves = list(_leaves(f))
    n = leaves[0].n
    if any(rep.n != n for rep in leaves):
        raise InvalidGameError("formula leaves disagree on the player count")
    return n


def _leaves(f: BoolFormula):
    if isinstance(f, Leaf):
        yield f.rep
    else:
        for child in f.children:
            yield from _leaves(child)


def eval_formula(f: BoolFormula, x: Coalition) -> bool:
    """Monotone evaluation of the formula on one coalition."""
    if isinstance(f, Leaf):
        if f.rep.n != x.n:
            raise InvalidGameError("coalition and leaf player counts differ")
        return f.rep.wins_mask(x.mask)
    if isinstance(f, And):
        return all(eval_formula(c, x) for c in f.children)
    return any(eval_formula(c, x) for c in f.children)


def _formula_table(f: BoolFormula, n: int) -> int:
    if isinstance(f, Leaf):
        return threshold_table(f.rep.weights, f.rep.quota, n)
    tables = [_formula_table(c, n) for c in f.children]
    out = tables[0]
    for t in tables[1:]:
        out = (out & t) if isinstance(f, And) else (out | t)
    return out


def formula_game(f: BoolFormula, n: int | None = None) -> SimpleGame:
    """The simple game denoted by the formula (monotone by construction)."""
    players = formula_players(f)
    if n is not None and n != players:
        raise InvalidGameError(f"formula is over {players} players, asked for {n}")
    game = SimpleGame._from_table(players, _formula_table(f, players))
    game.minwin_masks
    return game


def formula_size(f: BoolFormula) -> int:
    """Number of leaf occurrences (repeated leaves count each time)."""
    return sum(1 for _ in _leaves(f))


def _dual_leaf(rep: WeightedRep) -> Leaf:
    game = SimpleGame._from_table(rep.n, threshold_table(rep.weights, rep.quota, rep.n))
    game.minwin_masks
    dual_rep = is_weighted(dual_game(game))
    assert dual_rep is not None, "the dual of a weighted game is weighted"
    return Leaf(dual_rep)


def formula_dual(f: BoolFormula) -> BoolFormula:
    """De Morgan dual: swap the connectives, dualise every leaf.

    The denoted game of the result is the dual of the original's, and the
    formula size is unchanged.
    """
    if isinstance(f, Leaf):
        return _dual_leaf(f.rep)
    children = tuple(formula_dual(c) for c in f.children)
    return Or(children) if isinstance(f, And) else And(children)


def verify_boolean_rep(g: SimpleGame, f: BoolFormula) -> bool:
    """True iff the formula denotes exactly the given game."""
    if formula_players(f) != g.n:
        raise InvalidGameError("formula and game player counts differ")
    return formula_game(f) == g


# -- text syntax ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(AND|OR|WG|\(|\)|;|,|-?\d+(?:/\d+)?)")


def format_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def format_formula(f: BoolFormula) -> str:
    if isinstance(f, Leaf):
        weights = ",".join(format_fraction(w) for w in f.rep.weights)
        return f"WG({format_fraction(f.rep.quota)}; {weights})"
    name = "AND" if isinstance(f, And) else "OR"
    return f"{name}({', '.join(format_formula(c) for c in f.children)})"


class FormulaSyntaxError(ValueError):
    pass


def parse_formula(text: str) -> BoolFormula:
    tokens = _tokenize(text)
    formula, pos = _parse_node(tokens, 0)
    if pos != len(tokens):
        raise FormulaSyntaxError(f"trailing input after formula: {tokens[pos:]}")
    return formula


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise FormulaSyntaxError(f"bad token at: {text[pos:pos + 20]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


def _expect(tokens: list[str], pos: int, want: str) -> int:
    if pos >= len(tokens) or tokens[pos] != want:
        got = tokens[pos] if pos < len(tokens) else "end of input"
        raise FormulaSyntaxError(f"expected {want!r}, got {got!r}")
    return pos + 1


def _parse_node(tokens: list[str], pos: int) -> tuple[BoolFormula, int]:
    if pos >= len(tokens):
        raise FormulaSyntaxError("unexpected end of formula")
    head = tokens[pos]
    if head in ("AND", "OR"):
        pos = _expect(tokens, pos + 1, "(")
        children = []
        while True:
            child, pos = _parse_node(tokens, pos)
            children.append(child)
            if pos < len(tokens) and tokens[pos] == ",":
                pos += 1
                continue
            pos = _expect(tokens, pos, ")")
            break
        node = And(tuple(children)) if head == "AND" else Or(tuple(children))
        return node, pos
    if head == "WG":
        pos = _expect(tokens, pos + 1, "(")
        quota, pos = _parse_fraction(tokens, pos)
        pos = _expect(tokens, pos, ";")
        weights = []
        while True:
            w, pos = _parse_fraction(tokens, pos)
            weights.append(w)
            if pos < len(tokens) and tokens[pos] == ",":
                pos += 1
                continue
            pos = _expect(tokens, pos, ")")
            break
        return Leaf(WeightedRep(tuple(weights), quota)), pos
    raise FormulaSyntaxError(f"expected AND, OR or WG, got {head!r}")


def _parse_fraction(tokens: list[str], pos: int) -> tuple[Fraction, int]:
    if pos >= len(tokens):
        raise FormulaSyntaxError("expected a number")
    tok = tokens[pos]
    if not re.fullmatch(r"-?\d+(?:/\d+)?", tok):
        raise FormulaSyntaxError(f"expected a number, got {tok!r}")
    return Fraction(tok), pos + 1
