"""Relay-subset selection strategies and their proven fraction floors."""

from fractions import Fraction as F

import pytest

from hddiamond import (
    STRATEGIES,
    DiamondNetwork,
    GuardExceeded,
    Schedule,
    drop_worst,
    gen_half_tight,
    gen_random,
    gen_worst_case,
    guarantee_bound,
    hd_capacity,
    select_drop_one_schedule_reuse,
    select_k,
    select_k_exhaustive,
    select_k_iterative,
    worst_relay_index,
)


class TestGuaranteeBound:
    def test_table(self):
        assert guarantee_bound("worst-drop", 5, 4) == F(1, 2)
        assert guarantee_bound("worst-drop", 5, 3) == F(1, 4)
        assert guarantee_bound("worst-drop", 10, 1) == F(1, 512)
        assert guarantee_bound("schedule-reuse", 5, 4) == F(4, 5)
        assert guarantee_bound("iterative", 8, 3) == F(3, 8)
        assert guarantee_bound("exhaustive", 10, 1) == F(1, 4)
        assert guarantee_bound("exhaustive", 10, 7) == F(7, 10)
        assert guarantee_bound("exhaustive", 10, 3) == F(1, 2)
        for strategy in STRATEGIES:
            assert guarantee_bound(strategy, 6, 6) == 1

    def test_errors(self):
        with pytest.raises(ValueError):
            guarantee_bound("nope", 3, 1)
        with pytest.raises(ValueError):
            guarantee_bound("iterative", 3, 0)
        with pytest.raises(ValueError):
            guarantee_bound("schedule-reuse", 5, 3)


class TestWorstRelayIndex:
    def test_picks_smallest_single_capacity(self):
        net = DiamondNetwork((1, 3, 2), (1, 3, 2))
        assert worst_relay_index(net) == 1

    def test_ties_break_low(self):
        net = DiamondNetwork((2, 1), (1, 2))  # both singles are 2/3
        assert worst_relay_index(net) == 1
        assert worst_relay_index(DiamondNetwork((1, 1), (1, 1))) == 1


class TestDropWorst:
    def test_half_tight_default_keeps_the_pair(self):
        net = gen_half_tight(4)
        rep = drop_worst(net, 3, arithmetic="rational")
        assert rep.strategy == "worst-drop"
        assert rep.value_kind == "capacity"
        assert rep.k == 3 and len(rep.selected) == 3
        assert 4 in rep.selected  # the mirrored relay survives a tie-break drop
        assert rep.value == 1 and rep.full_value == 1
        assert rep.fraction == 1
        assert rep.bound == F(1, 2)
        assert rep.notes == ()

    def test_forced_removal_voids_bound(self):
        net = gen_half_tight(4)
        rep = drop_worst(net, 3, force_remove=[4], arithmetic="rational")
        assert rep.selected == (1, 2, 3)
        assert rep.fraction == F(1, 2)
        assert rep.bound is None
        assert rep.notes and "forced" in rep.notes[0]

    def test_forced_removal_validation(self):
        net = gen_random(4, seed=0)
        with pytest.raises(ValueError):
            drop_worst(net, 3, force_remove=[9])
        with pytest.raises(ValueError):
            drop_worst(net, 3, force_remove=[1, 1])
        with pytest.raises(ValueError):
            drop_worst(net, 3, force_remove=[1, 2])  # two removals, one slot

    def test_floor_holds_on_random_nets(self):
        for seed in range(20):
            net = gen_random(seed % 4 + 2, seed=seed + 50)
            for k in range(1, net.n + 1):
                rep = drop_worst(net, k)
                assert float(rep.fraction) >= float(rep.bound) - 1e-9

    def test_k_bounds(self):
        net = gen_random(3, seed=1)
        with pytest.raises(ValueError):
            drop_worst(net, 0)
        with pytest.raises(ValueError):
            drop_worst(net, 4)


class TestScheduleReuse:
    def test_worst_case_family_exact(self):
        # The derived two-phase schedule attains the capacity 1 on even
        # sizes; on odd sizes its rate is (n-1)/n because the appended
        # relay never gets a listening phase.  Either way the reuse
        # fraction honors the (n-1)/n floor relative to that rate.
        for n in (2, 3, 4, 5):
            rep = select_drop_one_schedule_reuse(gen_worst_case(n), arithmetic="rational")
            assert rep.value_kind == "rate"
            expected_full = 1 if n % 2 == 0 else F(n - 1, n)
            assert rep.full_value == expected_full
            assert rep.fraction >= F(n - 1, n)
            assert rep.bound == F(n - 1, n)

    def test_floor_on_random_nets(self):
        for seed in range(25):
            net = gen_random(seed % 4 + 2, seed=seed + 200)
            rep = select_drop_one_schedule_reuse(net)
            assert float(rep.fraction) >= float(rep.bound) - 1e-8

    def test_caller_supplied_schedule_is_the_yardstick(self):
        net = gen_worst_case(2)
        sched = Schedule(2, {0b01: F(1, 2), 0b10: F(1, 2)})
        rep = select_drop_one_schedule_reuse(net, sched, arithmetic="rational")
        assert rep.full_value == 1  # this schedule attains the capacity
        assert rep.value >= F(1, 2) * rep.full_value

    def test_needs_two_relays(self):
        with pytest.raises(ValueError):
            select_drop_one_schedule_reuse(DiamondNetwork((1,), (1,)))


class TestIterative:
    def test_floor_all_k(self):
        for seed in range(15):
            net = gen_random(seed % 3 + 3, seed=seed + 300)
            for k in range(1, net.n + 1):
                rep = select_k_iterative(net, k)
                assert rep.value_kind == "rate"
                assert rep.bound == F(k, net.n)
                assert float(rep.fraction) >= float(rep.bound) - 1e-8

    def test_k_equals_n_is_identity(self):
        net = gen_random(4, seed=9)
        rep = select_k_iterative(net, 4)
        assert rep.selected == (1, 2, 3, 4)
        assert rep.fraction == pytest.approx(1.0)


class TestExhaustive:
    def test_dominates_other_strategies(self):
        for seed in range(12):
            net = gen_random(seed % 3 + 3, seed=seed + 700)
            for k in range(1, net.n):
                ex = select_k_exhaustive(net, k)
                it = select_k_iterative(net, k)
                dw = drop_worst(net, k)
                assert float(ex.value) >= float(it.value) - 1e-8
                assert float(ex.value) >= float(dw.value) - 1e-8

    def test_worst_case_family_keeps_fraction(self):
        net = gen_worst_case(4)
        rep = select_k_exhaustive(net, 3, arithmetic="rational")
        assert rep.full_value == 1
        assert rep.fraction == F(3, 4)

    def test_guard_allows_small_k(self):
        net = gen_random(11, seed=2)
        with pytest.raises(GuardExceeded):
            select_k_exhaustive(net, 3)
        rep = select_k_exhaustive(net, 2)  # k <= 2 bypasses the relay guard
        assert rep.k == 2

    def test_ties_keep_smallest_set(self):
        net = DiamondNetwork((1, 1), (1, 1))
        rep = select_k_exhaustive(net, 1, arithmetic="rational")
        assert rep.selected == (1,)


class TestSelectKDispatch:
    def test_routes_by_name(self):
        net = gen_random(3, seed=4)
        for strategy in STRATEGIES:
            k = 2 if strategy == "schedule-reuse" else 1
            rep = select_k(net, k, strategy)
            assert rep.strategy == strategy

    def test_force_remove_only_for_worst_drop(self):
        net = gen_random(3, seed=4)
        with pytest.raises(ValueError):
            select_k(net, 2, "iterative", force_remove=[1])
        rep = select_k(net, 2, "worst-drop", force_remove=[1])
        assert rep.bound is None

    def test_schedule_reuse_needs_k_n_minus_1(self):
        net = gen_random(3, seed=4)
        with pytest.raises(ValueError):
            select_k(net, 1, "schedule-reuse")

    def test_unknown_strategy(self):
        with pytest.raises(ValueError):
            select_k(gen_random(2, seed=0), 1, "magic")


class TestLabels:
    def test_original_labels_survive_nesting(self):
        net = gen_random(6, seed=11)
        sub = net.subnetwork((2, 4, 6))
        rep = drop_worst(sub, 2)
        assert set(rep.selected) <= {2, 4, 6}
        rep2 = select_k_exhaustive(sub, 1)
        assert set(rep2.selected) <= {2, 4, 6}

    def test_exact_fraction_types(self):
        rep = drop_worst(gen_worst_case(4), 2, arithmetic="rational")
        assert isinstance(rep.fraction, F)
        assert isinstance(rep.bound, F)
