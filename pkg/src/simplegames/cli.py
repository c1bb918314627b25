"""Command line front end: analyze games, compute dimension, run repro suites.

Game files are line-oriented text::

    sg 1
    n 6
    w 0 1
    w 2 3 4 5

The header names the format version.  Instead of ``n``/``w`` lines a file may
hold one ``hier <disj|conj> n=<list> k=<list>`` line or one
``formula <AND/OR/WG expression>`` line.  Blank lines and ``#`` comments are
ignored.  Exit codes: 0 success, 1 usage or parse error, 2 exact search gave
up under budget, 3 assertion failure in a repro scenario.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Iterable, Sequence

from . import boolean, certificates, desirability, dimension, hierarchical, lpsep
from .core import (
    Coalition,
    InvalidGameError,
    SimpleGame,
    TableSizeError,
    dual,
    dummy_players,
    make_game_from_masks,
    maximal_losing_masks,
    veto_players,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BUDGET = 2
EXIT_ASSERTION = 3


class GameFileError(ValueError):
    pass


# -- game file format ----------------------------------------------------------


def load_game(text: str) -> tuple[SimpleGame, str]:
    """Parse a game file; returns the game and a short source description."""
    lines = [
        (no, line.strip())
        for no, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.strip().startswith("#")
    ]
    if not lines:
        raise GameFileError("empty game file")
    no, header = lines[0]
    if header.split() != ["sg", "1"]:
        raise GameFileError(f"line {no}: expected header 'sg 1', got {header!r}")
    body = lines[1:]
    if not body:
        raise GameFileError("missing game description after header")
    first = body[0][1].split()
    if first[0] == "hier":
        if len(body) > 1:
            raise GameFileError(f"line {body[1][0]}: unexpected content after hier line")
        spec = _parse_hier_tokens(first[1:], body[0][0])
        return hierarchical.build(spec), f"hier {spec.kind.value} n={spec.n_vec} k={spec.k_vec}"
    if first[0] == "formula":
        if len(body) > 1:
            raise GameFileError(f"line {body[1][0]}: unexpected content after formula line")
        raw = body[0][1].split(None, 1)
        if len(raw) < 2:
            raise GameFileError(f"line {body[0][0]}: formula line has no expression")
        try:
            formula = boolean.parse_formula(raw[1])
        except boolean.FormulaSyntaxError as exc:
            raise GameFileError(f"line {body[0][0]}: {exc}") from exc
        return boolean.formula_game(formula), "formula"
    if first[0] != "n" or len(first) != 2:
        raise GameFileError(f"line {body[0][0]}: expected 'n <players>', got {body[0][1]!r}")
    try:
        n = int(first[1])
    except ValueError as exc:
        raise GameFileError(f"line {body[0][0]}: bad player count {first[1]!r}") from exc
    masks = []
    for no, line in body[1:]:
        parts = line.split()
        if parts[0] != "w":
            raise GameFileError(f"line {no}: expected 'w <players...>', got {line!r}")
        try:
            players = [int(p) for p in parts[1:]]
        except ValueError as exc:
            raise GameFileError(f"line {no}: bad player index in {line!r}") from exc
        mask = 0
        for p in players:
            if not 0 <= p < n:
                raise GameFileError(f"line {no}: player {p} outside 0..{n - 1}")
            mask |= 1 << p
        masks.append(mask)
    try:
        return make_game_from_masks(n, masks), f"{len(masks)} coalition lines"
    except InvalidGameError as exc:
        raise GameFileError(str(exc)) from exc


def dump_game(g: SimpleGame) -> str:
    lines = ["sg 1", f"n {g.n}"]
    for c in g.min_winning:
        lines.append("w " + " ".join(str(p) for p in c.members) if c.members else "w")
    return "\n".join(lines) + "\n"


def _parse_int_list(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(",") if tok != "")
    except ValueError as exc:
        raise GameFileError(f"bad {what} list {text!r}") from exc


def _parse_hier_tokens(tokens: Sequence[str], line_no: int | None = None) -> hierarchical.HierarchicalSpec:
    where = f"line {line_no}: " if line_no else ""
    if len(tokens) != 3:
        raise GameFileError(f"{where}expected 'hier <disj|conj> n=<list> k=<list>'")
    kind = _parse_kind(tokens[0])
    n_vec = k_vec = None
    for tok in tokens[1:]:
        if tok.startswith("n="):
            n_vec = _parse_int_list(tok[2:], "n")
        elif tok.startswith("k="):
            k_vec = _parse_int_list(tok[2:], "k")
        else:
            raise GameFileError(f"{where}unexpected token {tok!r}")
    if n_vec is None or k_vec is None:
        raise GameFileError(f"{where}hier line needs both n= and k=")
    try:
        return hierarchical.HierarchicalSpec(kind, n_vec, k_vec)
    except InvalidGameError as exc:
        raise GameFileError(f"{where}{exc}") from exc


def _parse_kind(token: str) -> hierarchical.Kind:
    if token in ("disj", "disjunctive"):
        return hierarchical.Kind.DISJUNCTIVE
    if token in ("conj", "conjunctive"):
        return hierarchical.Kind.CONJUNCTIVE
    raise GameFileError(f"unknown hierarchy kind {token!r} (want disj or conj)")


# -- shared rendering ------------------------------------------------------------


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def format_rep(rep) -> str:
    weights = ",".join(format_fraction(w) for w in rep.weights)
    return f"[{format_fraction(rep.quota)}; {weights}]"


def format_coalition(c: Coalition) -> str:
    return "{" + ",".join(str(p) for p in c.members) + "}"


def format_model(model: Iterable[int]) -> str:
    parts = []
    for cls, count in enumerate(model, start=1):
        if count == 1:
            parts.append(str(cls))
        elif count > 1:
            parts.append(f"{cls}^{count}")
    return "{" + ",".join(parts) + "}"


def format_certificate(tt: certificates.TradingTransform) -> str:
    wins = ",".join(format_coalition(c) for c in tt.pre)
    loses = ",".join(format_coalition(c) for c in tt.post)
    return f"CERT j={tt.length}: WIN {wins} | LOSE {loses}"


def _rep_json(rep) -> dict:
    return {
        "quota": format_fraction(rep.quota),
        "weights": [format_fraction(w) for w in rep.weights],
    }


# -- game source from flags ------------------------------------------------------


def _add_source_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--game", metavar="FILE", help="game file path, or - for stdin")
    parser.add_argument(
        "--hier", "--kind", dest="hier", metavar="KIND", help="hierarchical game: disj or conj"
    )
    parser.add_argument("--n", metavar="LIST", help="class sizes, comma separated")
    parser.add_argument("--k", metavar="LIST", help="thresholds, comma separated")
    parser.add_argument(
        "--os3",
        nargs=2,
        metavar=("k=K", "m=M"),
        help="layered witness-family game, e.g. --os3 k=2 m=3",
    )
    parser.add_argument("--formula", metavar="EXPR", help="AND/OR/WG formula expression")


def _game_from_args(args) -> tuple[SimpleGame, str]:
    sources = [s for s in (args.game, args.hier, args.os3, args.formula) if s]
    if len(sources) != 1:
        raise GameFileError("exactly one of --game, --hier, --os3, --formula is required")
    if args.game:
        text = sys.stdin.read() if args.game == "-" else open(args.game).read()
        return load_game(text)
    if args.hier:
        if not args.n or not args.k:
            raise GameFileError("--hier needs --n and --k")
        spec = hierarchical.HierarchicalSpec(
            _parse_kind(args.hier), _parse_int_list(args.n, "n"), _parse_int_list(args.k, "k")
        )
        return hierarchical.build(spec), f"hier {spec.kind.value} n={spec.n_vec} k={spec.k_vec}"
    if args.os3:
        params = {}
        for tok in args.os3:
            key, _, val = tok.partition("=")
            if key not in ("k", "m") or not val.isdigit():
                raise GameFileError(f"bad --os3 parameter {tok!r} (want k=K m=M)")
            params[key] = int(val)
        if set(params) != {"k", "m"}:
            raise GameFileError("--os3 needs both k= and m=")
        game, _ = hierarchical.losing_witness_family(params["k"], params["m"])
        return game, f"layered family k={params['k']} m={params['m']}"
    try:
        formula = boolean.parse_formula(args.formula)
    except boolean.FormulaSyntaxError as exc:
        raise GameFileError(str(exc)) from exc
    return boolean.formula_game(formula), "formula"


# -- analyze -----------------------------------------------------------------


def cmd_analyze(args) -> int:
    game, source = _game_from_args(args)
    out: dict = {
        "source": source,
        "players": game.n,
        "minimal_winning": len(game.minwin_masks),
        "maximal_losing": len(maximal_losing_masks(game)),
    }
    try:
        complete = desirability.is_complete(game)
    except TableSizeError:
        complete = None  # structure analysis is table-gated
    out["complete"] = complete
    if complete:
        part = desirability.equivalence_classes(game)
        out["class_sizes"] = list(part.sizes)
        out["classes"] = [list(c) for c in part.classes]
        out["minimal_winning_models"] = [list(m) for m in desirability.minimal_winning_models(game)]
        out["shift_maximal_losing_models"] = [list(m) for m in desirability.shift_maximal_losing(game)]
    out["veto"] = list(veto_players(game))
    out["dummies"] = list(dummy_players(game))
    wrep = lpsep.is_weighted(game)
    out["weighted"] = _rep_json(wrep) if wrep else None
    rrep = lpsep.is_roughly_weighted(game)
    out["roughly_weighted"] = _rep_json(rrep) if rrep else None
    cert = None
    if args.certificates and wrep is None:
        cert = certificates.find_certificate(game, max_len=args.max_len)
        out["certificate"] = (
            {
                "pre": [list(c.members) for c in cert.pre],
                "post": [list(c.members) for c in cert.post],
            }
            if cert
            else None
        )
    if args.json:
        print(json.dumps(out, sort_keys=True))
        return EXIT_OK
    print(f"source: {source}")
    print(f"players: {game.n}")
    print(f"minimal-winning: {out['minimal_winning']}")
    print(f"maximal-losing: {out['maximal_losing']}")
    if complete is None:
        print("complete: not computed (player count above the table gate)")
    else:
        print(f"complete: {'yes' if complete else 'no'}")
    if complete:
        print(f"classes: {' > '.join('{' + ','.join(map(str, c)) + '}' for c in out['classes'])}")
        print(
            "minimal-winning-models: "
            + " ".join(format_model(m) for m in reversed(out["minimal_winning_models"]))
        )
        print(
            "shift-maximal-losing-models: "
            + " ".join(format_model(m) for m in reversed(out["shift_maximal_losing_models"]))
        )
    print(f"veto: {','.join(map(str, out['veto'])) or '-'}")
    print(f"dummies: {','.join(map(str, out['dummies'])) or '-'}")
    print(f"weighted: {'yes ' + format_rep(wrep) if wrep else 'no'}")
    print(f"roughly-weighted: {'yes ' + format_rep(rrep) if rrep else 'no'}")
    if args.certificates and wrep is None:
        print(
            format_certificate(cert)
            if cert
            else f"certificate: none found within length {args.max_len} (bound-relative)"
        )
    return EXIT_OK


# -- dimension ---------------------------------------------------------------


def cmd_dimension(args) -> int:
    game, source = _game_from_args(args)
    if args.lower_only:
        lower, witness = dimension.kurz_napel_lower(game)
        if args.json:
            print(
                json.dumps(
                    {
                        "source": source,
                        "players": game.n,
                        "lower": lower,
                        "witness_lower": [list(c.members) for c in witness],
                    },
                    sort_keys=True,
                )
            )
        else:
            print(f"source: {source}")
            print(f"lower: {lower}")
            print("witness-lower: " + ",".join(format_coalition(c) for c in witness))
        return EXIT_OK
    budget = dimension.Budget(
        max_lmax=args.budget, clique_exact=max(args.budget, dimension.Budget.clique_exact)
    )
    report = dimension.exact_dimension(game, budget)
    payload = {
        "source": source,
        "players": report.n,
        "maximal_losing": report.num_maximal_losing,
        "lower": report.lower,
        "upper": report.upper,
        "exact": report.exact,
        "witness_lower": [list(c.members) for c in report.witness_lower],
        "parts": [_rep_json(p) for p in report.witness_upper.parts] if report.witness_upper else None,
        "notes": list(report.notes),
    }
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"source: {source}")
        print(f"players: {report.n}")
        print(f"maximal-losing: {report.num_maximal_losing}")
        print(f"lower: {report.lower}")
        print(f"upper: {report.upper}")
        print(f"exact: {report.exact if report.exact is not None else 'not determined (budget)'}")
        if report.witness_lower:
            print("witness-lower: " + ",".join(format_coalition(c) for c in report.witness_lower))
        if report.witness_upper and report.exact is not None:
            for i, part in enumerate(report.witness_upper.parts, start=1):
                print(f"part {i}: {format_rep(part)}")
        for note in report.notes:
            print(f"note: {note}")
    return EXIT_OK if report.exact is not None else EXIT_BUDGET


# -- repro scenarios -----------------------------------------------------------


def _check(results: list, name: str, ok: bool, detail: str = "") -> None:
    results.append((name, bool(ok), detail))


def _scenario_prop5(results) -> None:
    for d in (2, 3):
        game, witnesses = hierarchical.losing_witness_family(d, 2)
        _check(results, f"prop5 d={d} witnesses losing", all(not game.wins(w) for w in witnesses))
        _check(results, f"prop5 d={d} not weighted", lpsep.is_weighted(game) is None)
        cert = certificates.find_certificate(game, 2)
        _check(
            results,
            f"prop5 d={d} length-2 certificate",
            cert is not None and certificates.verify_certificate(game, cert),
        )
        rough = lpsep.is_roughly_weighted(game)
        _check(
            results,
            f"prop5 d={d} roughly weighted",
            rough is not None and lpsep.verify_representation(game, rough),
        )
        oracle = dimension.PartOracle(game, "lose")
        pairwise = all(
            not oracle.pair_compatible(witnesses[i].mask, witnesses[j].mask)
            for i in range(len(witnesses))
            for j in range(i + 1, len(witnesses))
        )
        _check(results, f"prop5 d={d} witnesses pairwise incompatible", pairwise)
        lower, _ = dimension.kurz_napel_lower(game)
        _check(results, f"prop5 d={d} clique lower bound >= {d}", lower >= d, f"lower={lower}")


def _scenario_os3(results) -> None:
    k, m = 2, 3
    game, witnesses = hierarchical.losing_witness_family(k, m)
    _check(results, "os3 witness family size k^(m-1)", len(witnesses) == k ** (m - 1))
    _check(results, "os3 witnesses losing", all(not game.wins(w) for w in witnesses))
    oracle = dimension.PartOracle(game, "lose")
    pairwise = all(
        not oracle.pair_compatible(witnesses[i].mask, witnesses[j].mask)
        for i in range(len(witnesses))
        for j in range(i + 1, len(witnesses))
    )
    _check(results, "os3 witnesses pairwise incompatible", pairwise)
    lower, _ = dimension.kurz_napel_lower(game)
    _check(results, "os3 clique lower bound >= 4", lower >= 4, f"lower={lower}")
    maxlose = maximal_losing_masks(game)
    shiftmax = desirability.shift_maximal_losing(game)
    shape_count = k ** m * (2 * k - 1) ** (m - 1)
    part = desirability.equivalence_classes(game)
    from math import comb

    per_model = {
        mod: _count_model_coalitions(part, mod, comb) for mod in shiftmax
    }
    _check(
        results,
        "os3 shift-maximal losing count = k^m (2k-1)^(m-1)",
        sum(per_model.values()) == shape_count,
        f"models={shiftmax} count={sum(per_model.values())} |L_max|={len(maxlose)}",
    )


def _count_model_coalitions(part, model, comb) -> int:
    total = 1
    for size, count in zip(part.sizes, model):
        total *= comb(size, count)
    return total


def _scenario_osconj(results) -> None:
    spec = hierarchical.HierarchicalSpec(hierarchical.Kind.CONJUNCTIVE, (4, 4, 4), (2, 4, 7))
    game = hierarchical.build(spec)
    rep = dimension.conjunctive_intersection_rep(spec)
    _check(
        results,
        "osconj level-cut intersection equals the game",
        dimension.intersect_games(rep.parts, game.n) == game,
    )
    closed = hierarchical.shift_maximal_losing_models(spec)
    _check(
        results,
        "osconj closed-form shift-maximal models",
        closed == ((1, 4, 4), (3, 0, 4), (4, 2, 0)),
        f"got {closed}",
    )
    report = dimension.exact_dimension(game, dimension.Budget(max_lmax=700, clique_exact=700))
    _check(
        results,
        "osconj exact dimension within [2, 3]",
        report.exact is not None and 2 <= report.exact <= 3,
        f"exact={report.exact}",
    )


def _scenario_sec4(results) -> None:
    spec = hierarchical.HierarchicalSpec(hierarchical.Kind.DISJUNCTIVE, (2, 5), (2, 5))
    game = hierarchical.build(spec)
    g1 = lpsep.WeightedRep((4, Fraction(11, 10), 1, 1, 1, 1, 1), 5)
    g2 = lpsep.WeightedRep((Fraction(11, 10), 4, 1, 1, 1, 1, 1), 5)
    _check(
        results,
        "sec4 two-game representation equals the game",
        dimension.intersect_games((g1, g2), 7) == game,
    )
    from itertools import combinations

    parts = []
    for chosen in combinations(range(5), 3):
        weights = (3, 3) + tuple(2 if i in chosen else 0 for i in range(5))
        parts.append(lpsep.WeightedRep(weights, 6))
    _check(
        results,
        "sec4 ten-game representation equals the game",
        dimension.intersect_games(tuple(parts), 7) == game,
    )
    report = dimension.exact_dimension(game)
    _check(results, "sec4 exact dimension is 2", report.exact == 2, f"exact={report.exact}")


def _scenario_delta1(results) -> None:
    n, k = (2, 2, 2), (1, 2, 3)
    game = hierarchical.build_tripartite(n, k)
    leaves = []
    for level, threshold in enumerate(k):
        cutoff = sum(n[: level + 1])
        weights = tuple(1 if p < cutoff else 0 for p in range(sum(n)))
        leaves.append(boolean.Leaf(lpsep.WeightedRep(weights, threshold)))
    formula = boolean.Or((leaves[0], boolean.And((leaves[1], leaves[2]))))
    _check(results, "delta1 formula verifies", boolean.verify_boolean_rep(game, formula))
    _check(results, "delta1 formula size 3", boolean.formula_size(formula) == 3)
    dual_formula = boolean.formula_dual(formula)
    _check(
        results,
        "delta1 dual formula denotes the dual game",
        boolean.formula_game(dual_formula) == dual(game),
    )


def _all_monotone_games(n: int) -> list[SimpleGame]:
    tables = [0, 1]
    for bit in range(n):
        width = 1 << (1 << bit)
        tables = [
            f0 | (f1 << (1 << bit))
            for f0 in tables
            for f1 in tables
            if f0 & ~f1 == 0
        ]
        tables = list(dict.fromkeys(tables))
    out = []
    for t in tables:
        game = SimpleGame._from_table(n, t)
        game.minwin_masks
        out.append(game)
    return out


def _scenario_codim(results) -> None:
    budget = dimension.Budget(max_lmax=40)
    for n in (3, 4):
        games = _all_monotone_games(n)
        involution = all(dual(dual(g)) == g for g in games)
        _check(results, f"codim n={n} dual is an involution ({len(games)} games)", involution)
        ok_direct = ok_identity = True
        for g in games:
            via_dual = dimension.codimension(g, budget).exact
            direct = dimension.codimension_direct(g, budget).exact
            if via_dual != direct:
                ok_direct = False
            if dimension.codimension(dual(g), budget).exact != dimension.exact_dimension(g, budget).exact:
                ok_identity = False
        _check(results, f"codim n={n} dual route equals direct union cover", ok_direct)
        _check(results, f"codim n={n} codim(dual) = dim holds", ok_identity)


_SCENARIOS = {
    "prop5": _scenario_prop5,
    "os3": _scenario_os3,
    "osconj": _scenario_osconj,
    "sec4": _scenario_sec4,
    "delta1": _scenario_delta1,
    "codim": _scenario_codim,
}


def cmd_repro(args) -> int:
    if args.name not in _SCENARIOS:
        print(f"unknown scenario {args.name!r}; choose from {', '.join(sorted(_SCENARIOS))}", file=sys.stderr)
        return EXIT_USAGE
    results: list[tuple[str, bool, str]] = []
    _SCENARIOS[args.name](results)
    failed = False
    for name, ok, detail in results:
        tag = "PASS" if ok else "FAIL"
        suffix = f" ({detail})" if detail else ""
        print(f"{tag} {name}{suffix}")
        failed = failed or not ok
    return EXIT_ASSERTION if failed else EXIT_OK


# -- entry point ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simplegames",
        description="Simple games: weightedness, certificates, and dimension bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="structure and weightedness report")
    _add_source_options(p_analyze)
    p_analyze.add_argument("--certificates", action="store_true", help="search for a certificate")
    p_analyze.add_argument("--max-len", type=int, default=4, help="certificate length bound")
    p_analyze.add_argument("--json", action="store_true", help="machine-readable output")
    p_analyze.set_defaults(func=cmd_analyze)

    p_dim = sub.add_parser("dimension", help="dimension bounds and exact value")
    _add_source_options(p_dim)
    p_dim.add_argument("--exact", action="store_true", help="accepted for compatibility; exact is the default")
    p_dim.add_argument("--budget", type=int, default=dimension.Budget.max_lmax, help="max |L_max| for the exact search")
    p_dim.add_argument("--lower-only", action="store_true", help="only the clique lower bound")
    p_dim.add_argument("--json", action="store_true", help="machine-readable output")
    p_dim.set_defaults(func=cmd_dimension)

    p_repro = sub.add_parser("repro", help="run a named acceptance scenario")
    p_repro.add_argument("name", help="one of: " + ", ".join(sorted(_SCENARIOS)))
    p_repro.set_defaults(func=cmd_repro)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (GameFileError, InvalidGameError, TableSizeError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"internal assertion failed: {exc}", file=sys.stderr)
        return EXIT_ASSERTION


def console_main() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    console_main()
