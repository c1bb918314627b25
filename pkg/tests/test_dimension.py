import random
from fractions import Fraction
from itertools import combinations

import pytest

import oracles
from simplegames import (
    Budget,
    Coalition,
    HierarchicalSpec,
    InvalidGameError,
    Kind,
    WeightedRep,
    build,
    codimension,
    codimension_direct,
    conjunctive_intersection_rep,
    dual,
    exact_dimension,
    intersect_games,
    kurz_napel_lower,
    losing_witness_family,
    make_game,
    make_game_from_masks,
    upper_bound_lmax,
    weighted_game,
)
from simplegames.core import maximal_losing_masks
from simplegames.dimension import PartOracle
from simplegames.lpsep import threshold_table

WIDE = Budget(max_lmax=200, clique_exact=250)


class TestIntersectGames:
    def test_single_part_is_the_threshold_game(self, majority5):
        rep = WeightedRep((1, 1, 1, 1, 1), 3)
        assert intersect_games([rep], 5) == majority5

    def test_two_game_representation(self, h_disj_25):
        g1 = WeightedRep((4, Fraction(11, 10), 1, 1, 1, 1, 1), 5)
        g2 = WeightedRep((Fraction(11, 10), 4, 1, 1, 1, 1, 1), 5)
        assert intersect_games([g1, g2], 7) == h_disj_25

    def test_ten_game_representation(self, h_disj_25):
        parts = []
        for chosen in combinations(range(5), 3):
            weights = (3, 3) + tuple(2 if i in chosen else 0 for i in range(5))
            parts.append(WeightedRep(weights, 6))
        assert len(parts) == 10
        assert intersect_games(parts, 7) == h_disj_25

    def test_empty_parts_rejected(self):
        with pytest.raises(InvalidGameError):
            intersect_games([], 3)


class TestUpperBoundLmax:
    def test_majority_bound(self, majority5):
        count, rep = upper_bound_lmax(majority5)
        assert count == 10
        assert intersect_games(rep.parts, 5) == majority5

    def test_h25_bound_matches_maximal_losing(self, h_disj_25):
        count, rep = upper_bound_lmax(h_disj_25)
        assert count == len(maximal_losing_masks(h_disj_25)) == 25
        assert intersect_games(rep.parts, 7) == h_disj_25

    def test_all_win_game_convention(self):
        g = make_game(3, [Coalition.of([], 3)])
        count, rep = upper_bound_lmax(g)
        assert count == 1
        assert intersect_games(rep.parts, 3) == g

    def test_random_games_verify(self):
        rng = random.Random(61)
        for _ in range(25):
            n = rng.randint(2, 6)
            g = make_game_from_masks(n, oracles.random_game_masks(rng, n))
            count, rep = upper_bound_lmax(g)
            assert intersect_games(rep.parts, n) == g


class TestKurzNapelLower:
    def test_weighted_games_have_lower_one(self, majority5, un_council):
        lower, witness = kurz_napel_lower(majority5)
        assert lower == 1 and len(witness) == 1

    def test_witness_family_lower_bounds(self):
        for d in (2, 3):
            game, _ = losing_witness_family(d, 2)
            lower, witness = kurz_napel_lower(game)
            assert lower >= d
            oracle = PartOracle(game, "lose")
            for a, b in combinations(witness, 2):
                assert not oracle.pair_compatible(a.mask, b.mask)

    def test_all_win_game(self):
        g = make_game(3, [Coalition.of([], 3)])
        assert kurz_napel_lower(g) == (1, ())


class TestExactDimension:
    def test_weighted_game_dimension_one(self, majority5, un_council):
        assert exact_dimension(majority5).exact == 1

    def test_witness_family_dimension_two(self):
        game, _ = losing_witness_family(2, 2)
        report = exact_dimension(game)
        assert report.exact == 2
        assert report.lower == 2 and report.upper == 2
        assert intersect_games(report.witness_upper.parts, game.n) == game

    def test_matches_enumeration_oracle_small(self):
        tables = oracles.threshold_tables(4, 16)
        for t in oracles.monotone_tables(4):
            g = make_game_from_masks(
                4, [m for m in range(16) if t >> m & 1 and all(
                    not t >> (m ^ (1 << i)) & 1 for i in range(4) if m >> i & 1)]
            ) if t else make_game_from_masks(4, [])
            want = oracles.oracle_dimension(4, t, tables)
            got = exact_dimension(g, WIDE).exact
            assert got == want, (bin(t), got, want)

    def test_witness_family_oracle_cross_check(self):
        # independent cover oracle on the 6-player family instance
        game, _ = losing_witness_family(2, 2)
        tables = oracles.threshold_tables(6, 8)
        want = oracles.oracle_dimension(6, game.table, tables)
        assert exact_dimension(game).exact == want == 2

    def test_bounds_ordering_random(self):
        rng = random.Random(62)
        for _ in range(30):
            n = rng.randint(2, 6)
            g = make_game_from_masks(n, oracles.random_game_masks(rng, n))
            report = exact_dimension(g, WIDE)
            assert report.lower <= report.exact <= report.upper
            assert intersect_games(report.witness_upper.parts, n) == g

    def test_budget_exceeded_reports_bounds_only(self, h_disj_25):
        report = exact_dimension(h_disj_25, Budget(max_lmax=5))
        assert report.exact is None
        assert report.upper == report.num_maximal_losing
        assert any("budget" in note for note in report.notes)

    def test_degenerate_games(self):
        all_win = make_game(3, [Coalition.of([], 3)])
        all_lose = make_game(3, [])
        assert exact_dimension(all_win).exact == 1
        assert exact_dimension(all_lose).exact == 1


class TestConjunctiveRep:
    def test_example_parts(self):
        spec = HierarchicalSpec(Kind.CONJUNCTIVE, (4, 4, 4), (2, 4, 7))
        rep = conjunctive_intersection_rep(spec)
        assert len(rep.parts) == 3
        part2 = rep.parts[1]
        assert part2.quota == 4
        assert part2.weights == (Fraction(1),) * 8 + (Fraction(0),) * 4

    def test_single_level_is_weighted(self):
        spec = HierarchicalSpec(Kind.CONJUNCTIVE, (4,), (2,))
        rep = conjunctive_intersection_rep(spec)
        assert len(rep.parts) == 1
        assert weighted_game(rep.parts[0]) == build(spec)

    def test_intersects_to_build_on_random_specs(self):
        rng = random.Random(63)
        for _ in range(15):
            sizes, k = oracles.random_conjunctive_params(rng, max_players=10, allow_dummies=True)
            spec = HierarchicalSpec(Kind.CONJUNCTIVE, sizes, k)
            rep = conjunctive_intersection_rep(spec)
            assert intersect_games(rep.parts, spec.num_players) == build(spec)

    def test_rejects_disjunctive(self):
        with pytest.raises(InvalidGameError):
            conjunctive_intersection_rep(HierarchicalSpec(Kind.DISJUNCTIVE, (2, 2), (1, 2)))


class TestCodimension:
    def test_routes_agree_random(self):
        rng = random.Random(64)
        for _ in range(30):
            n = rng.randint(2, 5)
            g = make_game_from_masks(n, oracles.random_game_masks(rng, n))
            assert codimension(g, WIDE).exact == codimension_direct(g, WIDE).exact

    def test_against_enumeration_oracle(self):
        tables = oracles.threshold_tables(4, 16)
        rng = random.Random(65)
        for _ in range(40):
            g = make_game_from_masks(4, oracles.random_game_masks(rng, 4))
            want = oracles.oracle_codimension(4, g.table, tables)
            assert codimension(g, WIDE).exact == want

    def test_identity_with_dual_dimension(self):
        rng = random.Random(66)
        for _ in range(25):
            n = rng.randint(2, 6)
            g = make_game_from_masks(n, oracles.random_game_masks(rng, n))
            assert codimension(dual(g), WIDE).exact == exact_dimension(g, WIDE).exact

    def test_self_dual_majority(self, majority5):
        assert codimension(majority5).exact == 1

    def test_dual_of_layered_family_has_codimension_four(self):
        # codim(dual g) = dim(g); the 10-player layered game pins it at 4
        game, _ = losing_witness_family(2, 3)
        report = codimension(dual(game), Budget(max_lmax=200, clique_exact=250))
        assert report.exact == 4
        assert report.lower >= 4

    def test_union_witness_verifies(self):
        rng = random.Random(67)
        for _ in range(20):
            n = rng.randint(2, 5)
            g = make_game_from_masks(n, oracles.random_game_masks(rng, n))
            report = codimension_direct(g, WIDE)
            union = 0
            for part in report.witness_upper.parts:
                union |= threshold_table(part.weights, part.quota, n)
            assert union == g.table


class TestOracleState:
    def test_orbit_memo_counts_lp_calls(self, h_conj_444):
        oracle = PartOracle(h_conj_444, "lose")
        maxlose = maximal_losing_masks(h_conj_444)
        rng = random.Random(68)
        pairs = [tuple(rng.sample(range(len(maxlose)), 2)) for _ in range(300)]
        for i, j in pairs:
            oracle.pair_compatible(maxlose[i], maxlose[j])
        # orbit classes are far fewer than queried pairs
        assert oracle.lp_calls < 60

    def test_separable_set_memoised(self, majority5):
        oracle = PartOracle(majority5, "lose")
        maxlose = maximal_losing_masks(majority5)
        s = frozenset(maxlose[:3])
        first = oracle.separable_set(s)
        calls = oracle.lp_calls
        again = oracle.separable_set(s)
        assert first == again and oracle.lp_calls == calls
