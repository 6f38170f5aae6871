from fractions import Fraction as F
from itertools import permutations

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from tugame import (
    Allocation,
    BalancedWeighting,
    Game,
    check_balancing_inequality,
    coalition,
    construct_core_element_3p,
    core_nonempty,
    core_nonempty_3p,
    in_core,
    is_convex,
    is_convex_3p_closed_form,
    is_superadditive,
    marginal_vector,
    shapley_by_subsets,
    subgame,
    three_player_stats,
)
from tugame.errors import CapExceeded, GameInputError, PreconditionError
from tugame.generators import GeneratorConfig, gen_superadditive_3p, uniform_game

from .oracles import core_max_slack, table_of
from .strategies import convex_games, games


def alloc(*values):
    return Allocation({i: v for i, v in enumerate(values, start=1)})


class TestInCore:
    def test_tau_of_table1_is_in_core(self, table1):
        report = in_core(table1, alloc(F(18, 11), F(18, 11), F(18, 11), F(12, 11)))
        assert report.member and report.efficient and report.violation is None

    def test_additive(self, additive4):
        assert in_core(additive4, alloc(2, -1, F(1, 2), 3)).member

    def test_first_violation_by_bitmask(self, table1):
        x = alloc(6, 0, 0, 0)
        report = in_core(table1, x)
        assert not report.member and report.efficient
        assert report.violation.coalition == coalition(2, 3)
        assert (report.violation.allocated, report.violation.worth) == (0, 1)
        # the deepest shortfall is also detected as a violation
        assert x.total(coalition(2, 3, 4)) == 0 < table1.value(coalition(2, 3, 4)) == 3

    def test_inefficient(self, table1):
        report = in_core(table1, alloc(2, 2, 2, 2))
        assert not report.member and not report.efficient and report.violation is None

    def test_carrier_mismatch(self, table1):
        with pytest.raises(GameInputError):
            in_core(table1, alloc(6, 0, 0))

    @settings(max_examples=80)
    @given(convex_games(max_n=5), st.data())
    def test_marginal_vectors_and_shapley_in_core(self, game, data):
        order = data.draw(st.permutations(game.players))
        assert in_core(game, marginal_vector(game, order)).member
        assert in_core(game, shapley_by_subsets(game)).member


class TestCoreNonempty:
    def test_half_core_game(self, half_core_game):
        ok, cert = core_nonempty(half_core_game)
        assert ok and in_core(half_core_game, cert).member
        assert cert == alloc(F(1, 2), F(1, 2), F(1, 2))

    def test_empty(self, empty_core_game):
        assert core_nonempty(empty_core_game) == (False, None)

    def test_additive(self, additive4):
        assert core_nonempty(additive4) == (True, alloc(2, -1, F(1, 2), 3))

    def test_single_player(self):
        assert core_nonempty(Game(1, {1: -3})) == (True, Allocation({1: -3}))

    def test_cap(self):
        with pytest.raises(CapExceeded):
            core_nonempty(Game.from_function(6, lambda m: 0))

    def test_subgame_carrier(self, half_core_game):
        ok, cert = core_nonempty(subgame(half_core_game, coalition(1, 3)))
        assert ok and list(cert) == [1, 3]

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_agrees_with_lp_oracle(self, n):
        decided = 0
        for seed in range(60):
            game = _nearly_balanced(n, seed)
            slack = core_max_slack(table_of(game))
            ok, cert = core_nonempty(game)
            if ok:
                assert in_core(game, cert).member
            if abs(slack) > 1e-7:
                assert ok == (slack > 0)
                decided += 1
        assert decided > 40

    @settings(max_examples=100)
    @given(games(min_n=2, max_n=4))
    def test_certificates_are_core_members(self, game):
        ok, cert = core_nonempty(game)
        if ok:
            assert in_core(game, cert).member


def _nearly_balanced(n, seed):
    """Games near the boundary: an additive base minus slack, plus random bumps."""
    from tugame.generators import SplitMix64
    from tugame.coalition import grand, members, subsets

    rng = SplitMix64(seed)
    x = {p: rng.integer(0, 8) for p in range(1, n + 1)}
    full = grand(n)
    values = {}
    for m in subsets(full, include_empty=False):
        base = sum(x[p] for p in members(m))
        if m != full:
            base += rng.integer(-3, 1)
        values[m] = F(base)
    return Game(n, values)


class TestBalancing:
    def test_half_weights(self, half_core_game, empty_core_game):
        w = BalancedWeighting([coalition(1, 2), coalition(1, 3), coalition(2, 3)], ["1/2"] * 3)
        assert check_balancing_inequality(half_core_game, w) == (True, True)
        assert check_balancing_inequality(empty_core_game, w) == (True, False)

    def test_grand_coalition(self, table1):
        w = BalancedWeighting([table1.carrier], [1])
        assert check_balancing_inequality(table1, w) == (True, True)

    def test_overloaded(self, table1):
        w = BalancedWeighting([coalition(1, 2), coalition(1, 3)], [1, 1])
        pointwise, _ = check_balancing_inequality(table1, w)
        assert not pointwise

    def test_negative_payoffs_break_the_inequality(self):
        """Sub-unit weights lose the bound once a core payoff is negative."""
        g = Game.from_table(2, {(1,): 1, (2,): -2, (1, 2): 0})
        assert in_core(g, alloc(1, -1)).member
        w = BalancedWeighting([coalition(1)], ["1/10"])
        assert check_balancing_inequality(g, w) == (True, False)

    def test_validation(self):
        with pytest.raises(GameInputError):
            BalancedWeighting([1, 2], [1])
        with pytest.raises(GameInputError):
            BalancedWeighting([1], [0])
        with pytest.raises(GameInputError):
            BalancedWeighting([0], [1])

    @settings(max_examples=100)
    @given(convex_games(max_n=4), st.data())
    def test_core_member_implies_inequality(self, game, data):
        """Whenever the weights fit under the all-ones vector, a nonnegative core
        element bounds the weighted sum."""
        assume(all(game.value(coalition(i)) >= 0 for i in game.players))
        _, cert = core_nonempty(game)
        masks = [m for m, _ in game.items()[1:]]
        sets = data.draw(st.lists(st.sampled_from(masks), min_size=1, max_size=5))
        weights = data.draw(st.lists(st.fractions(min_value=F(1, 10), max_value=1, max_denominator=10),
                                     min_size=len(sets), max_size=len(sets)))
        pointwise, holds = check_balancing_inequality(game, BalancedWeighting(sets, weights))
        assert in_core(game, cert).member
        if pointwise:
            assert holds


class TestThreePlayer:
    def test_stats(self, sub123, half_core_game, additive4):
        st_ = three_player_stats(sub123)
        assert (st_.M12, st_.M13, st_.M23, st_.S) == (2, 2, 1, 4)
        st_ = three_player_stats(half_core_game)
        assert (st_.M12, st_.M13, st_.M23, st_.S) == (1, 1, 1, F(3, 2))
        st_ = three_player_stats(Game.additive([3, 1, 4]))
        assert (st_.M12, st_.M13, st_.M23, st_.S) == (0, 0, 0, 0)
        with pytest.raises(GameInputError):
            three_player_stats(additive4)

    def test_closed_forms(self, sub123, half_core_game, empty_core_game):
        assert core_nonempty_3p(half_core_game)
        assert not core_nonempty_3p(empty_core_game)
        assert core_nonempty_3p(Game.additive([3, 1, 4]))
        assert is_convex_3p_closed_form(sub123)
        assert not is_convex_3p_closed_form(half_core_game)
        assert is_convex_3p_closed_form(Game.additive([3, 1, 4]))

    def test_requires_superadditivity(self):
        g = Game.from_table(3, {(1,): 2, (2,): 0, (3,): 0, (1, 2): 1, (1, 3): 2, (2, 3): 0, (1, 2, 3): 2})
        with pytest.raises(PreconditionError):
            core_nonempty_3p(g)

    @settings(max_examples=300)
    @given(games(min_n=3, max_n=3))
    def test_closed_forms_match_general_checks(self, game):
        if not is_superadditive(game):
            return
        assert core_nonempty_3p(game) == core_nonempty(game)[0]
        assert is_convex_3p_closed_form(game) == is_convex(game).holds


class TestConstruction:
    def test_triangle(self, half_core_game):
        built = construct_core_element_3p(half_core_game)
        assert built.case == "triangle"
        assert built.a == (F(1, 2),) * 3 and built.t == 0
        assert built.allocation == alloc(F(1, 2), F(1, 2), F(1, 2))
        assert in_core(half_core_game, built.allocation).member

    def test_additive(self):
        built = construct_core_element_3p(Game.additive([3, 1, 4]))
        assert built.case == "triangle" and built.allocation == alloc(3, 1, 4)

    def test_broken_triangle(self):
        g = Game.from_table(3, {(1,): 0, (2,): 0, (3,): 0, (1, 2): 4, (1, 3): 1, (2, 3): 1, (1, 2, 3): 5})
        built = construct_core_element_3p(g)
        assert built.case == "broken-triangle" and built.t == F(3, 2)
        assert built.allocation == alloc(F(5, 2), F(5, 2), 0)
        assert in_core(g, built.allocation).member

    @pytest.mark.parametrize("big", [(1, 3), (2, 3)])
    def test_broken_triangle_other_pairs(self, big):
        """The dominant pair is detected whichever pair it is."""
        table = {(1,): 1, (2,): 2, (3,): 0, (1, 2): 4, (1, 3): 2, (2, 3): 3, (1, 2, 3): 12}
        table[big] = sum(table[(p,)] for p in big) + 7
        g = Game.from_table(3, table)
        built = construct_core_element_3p(g)
        assert built.case == "broken-triangle" and built.t > 0
        outsider = ({1, 2, 3} - set(big)).pop()
        assert built.allocation[outsider] == g.value(coalition(outsider))
        assert in_core(g, built.allocation).member

    def test_empty_core_rejected(self, empty_core_game):
        with pytest.raises(PreconditionError, match="core is empty"):
            construct_core_element_3p(empty_core_game)

    def test_seeded_games_both_branches(self):
        seen = set()
        for seed in range(300):
            g = gen_superadditive_3p(GeneratorConfig(n=3, seed=seed, mode="superadditive3p"))
            if not core_nonempty_3p(g):
                continue
            built = construct_core_element_3p(g)
            seen.add(built.case)
            assert built.t >= 0
            if built.case == "broken-triangle":
                assert built.t > 0
            else:
                assert all(a >= 0 for a in built.a)
            assert in_core(g, built.allocation).member
        assert seen == {"triangle", "broken-triangle"}


def test_uniform_games_mostly_have_empty_cores():
    # sanity check on the generator used for the 3-player agreement runs
    results = [core_nonempty(uniform_game(3, s, -3, 6))[0] for s in range(50)]
    assert any(results) and not all(results)
