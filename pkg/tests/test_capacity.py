"""Capacity oracles: closed forms, game LP, duality, unbounded links."""

import math
from fractions import Fraction as F

import pytest

from hddiamond import (
    UNBOUNDED,
    DiamondNetwork,
    GuardExceeded,
    Schedule,
    cut_state_value,
    dual_capacity,
    fd_capacity,
    fd_capacity_fast,
    fixed_schedule_rate,
    gen_half_tight,
    gen_random,
    gen_two_phase_schedule,
    gen_worst_case,
    hd_capacity,
    single_relay_capacity,
    sparsify_schedule,
)


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------

class TestSingleRelay:
    def test_harmonic_form(self):
        assert single_relay_capacity(F(1), F(1, 2)) == F(1, 3)
        assert single_relay_capacity(F(2, 5), F(14, 5)) == F(7, 20)
        assert single_relay_capacity(1.0, 1.0) == pytest.approx(0.5)

    def test_edge_cases(self):
        assert single_relay_capacity(0, 5) == 0
        assert single_relay_capacity(0, 0) == 0
        assert single_relay_capacity(UNBOUNDED, F(1, 2)) == F(1, 2)
        assert single_relay_capacity(3, UNBOUNDED) == 3
        assert single_relay_capacity(UNBOUNDED, UNBOUNDED) == UNBOUNDED

    def test_matches_game_solution(self):
        for l, r in [(F(1), F(1, 2)), (F(2, 5), F(14, 5)), (F(3), F(3))]:
            net = DiamondNetwork((l,), (r,))
            res = hd_capacity(net, "rational")
            assert res.value == single_relay_capacity(l, r)


class TestCutStateValue:
    def test_components(self):
        net = DiamondNetwork((1, 2), (4, 8))
        # cut {1,2}, all listening: best uplink among {1,2}
        assert cut_state_value(net, "11", "00") == 2
        # empty cut, all transmitting: best downlink among {1,2}
        assert cut_state_value(net, "00", "11") == 8
        # cut {1}: relay 1 listens (uplink 1), relay 2 transmits (downlink 8)
        assert cut_state_value(net, "10", "01") == 9
        # mismatched roles contribute nothing
        assert cut_state_value(net, "10", "10") == 0

    def test_unbounded_participation(self):
        net = DiamondNetwork((UNBOUNDED, 1), (1, 1))
        assert cut_state_value(net, "10", "00") == UNBOUNDED
        # relay 1 transmits outside the cut: only its finite downlink counts
        assert cut_state_value(net, "00", "10") == 1


# ---------------------------------------------------------------------------
# Scheduled rates
# ---------------------------------------------------------------------------

class TestFixedScheduleRate:
    def test_one_relay_split(self):
        net = DiamondNetwork((F(1),), (F(1, 2),))
        rv = fixed_schedule_rate(net, Schedule(1, {0: F(1, 3), 1: F(2, 3)}))
        assert rv.value == F(1, 3)
        rv_bad = fixed_schedule_rate(net, Schedule(1, {0: F(1, 2), 1: F(1, 2)}))
        assert rv_bad.value == F(1, 4)  # downlink starves: min(1/2*1, 1/2*1/2)

    def test_always_listen_carries_nothing(self):
        net = DiamondNetwork((F(1, 2),), (UNBOUNDED,))
        rv = fixed_schedule_rate(net, Schedule(1, {0: F(1)}))
        assert rv.value == 0  # nothing ever transmits toward the destination
        assert rv.min_cut == 0

    def test_two_phase_on_worst_case_even_is_full_rate(self):
        for n in (2, 4, 6, 8):
            net = gen_worst_case(n)
            rv = fixed_schedule_rate(net, gen_two_phase_schedule(n))
            assert rv.value == 1

    def test_two_phase_on_worst_case_odd_loses_one_nth(self):
        # The extra relay appended for odd sizes never gets a listening
        # phase of its own, so two alternating phases leave exactly the
        # capacity share of one relay on the table.
        for n in (3, 5, 7):
            net = gen_worst_case(n)
            rv = fixed_schedule_rate(net, gen_two_phase_schedule(n))
            assert rv.value == F(n - 1, n)

    def test_mismatched_size_raises(self):
        with pytest.raises(ValueError):
            fixed_schedule_rate(DiamondNetwork((1,), (1,)), Schedule(2, {0: 1}))

    def test_float_path_matches_exact(self):
        net = DiamondNetwork((1.0, 2.0), (2.0, 1.0))
        sched = Schedule(2, {0b01: 0.5, 0b10: 0.5})
        exact = fixed_schedule_rate(
            DiamondNetwork((F(1), F(2)), (F(2), F(1))),
            Schedule(2, {0b01: F(1, 2), 0b10: F(1, 2)}),
        )
        approx = fixed_schedule_rate(net, sched)
        assert approx.value == pytest.approx(float(exact.value), abs=1e-12)
        assert approx.min_cut == exact.min_cut


# ---------------------------------------------------------------------------
# Full-duplex capacity
# ---------------------------------------------------------------------------

class TestFullDuplex:
    def test_symmetric_two_relay(self):
        net = DiamondNetwork((F(1), F(1)), (F(1), F(1)))
        res = fd_capacity(net)
        assert res.value == 1
        assert res.optimal_schedule is None
        assert res.tight_cuts == (0, 3)
        assert res.arithmetic == "rational"

    def test_fast_matches_dense_random(self):
        for seed in range(120):
            net = gen_random(seed % 11 + 1, seed=seed)
            assert fd_capacity_fast(net) == fd_capacity(net).value

    def test_fast_matches_dense_exact_and_unbounded(self):
        nets = [
            gen_worst_case(6),
            gen_half_tight(4),
            DiamondNetwork((UNBOUNDED, 1), (2, UNBOUNDED)),
            DiamondNetwork((UNBOUNDED,), (UNBOUNDED,)),
            DiamondNetwork((F(1, 3), F(1, 7)), (F(1, 7), F(1, 3))),
        ]
        for net in nets:
            assert fd_capacity_fast(net) == fd_capacity(net).value

    def test_fully_unbounded(self):
        net = DiamondNetwork((UNBOUNDED,), (UNBOUNDED,))
        res = fd_capacity(net)
        assert res.value == UNBOUNDED
        assert res.tight_cuts == (0,)


# ---------------------------------------------------------------------------
# Half-duplex capacity: the scheduling game
# ---------------------------------------------------------------------------

class TestHalfDuplex:
    def test_one_relay_schedule_and_duals(self):
        net = DiamondNetwork((F(1),), (F(1, 2),))
        res = hd_capacity(net, "rational")
        assert res.value == F(1, 3)
        assert res.arithmetic == "rational"
        assert res.optimal_schedule.probs == {0: F(1, 3), 1: F(2, 3)}
        dual = dual_capacity(net, "rational")
        assert dual.value == F(1, 3)
        assert dual.cut_probs == {0: F(2, 3), 1: F(1, 3)}

    def test_reported_schedule_attains_value(self):
        for seed in range(25):
            net = gen_random(seed % 5 + 1, seed=seed + 1000)
            res = hd_capacity(net)
            rv = fixed_schedule_rate(net, res.optimal_schedule)
            assert rv.value == res.value  # certificate, not an approximation
            assert rv.min_cut in res.tight_cuts

    def test_tight_cuts_are_minimizers(self):
        net = gen_worst_case(4)
        res = hd_capacity(net, "rational")
        sched = res.optimal_schedule
        for a in res.tight_cuts:
            vals = [
                sum(p * cut_state_value(net, a, s) for s, p in sched.items())
            ]
            assert vals[0] == res.value

    def test_worst_case_family_capacity_one(self):
        for n in range(2, 7):
            assert hd_capacity(gen_worst_case(n), "rational").value == 1

    def test_half_tight_full_and_pair(self):
        for n in (2, 3, 4, 5):
            net = gen_half_tight(n)
            assert hd_capacity(net, "rational").value == 1
            pair = net.subnetwork((1, n))
            assert hd_capacity(pair, "rational").value == 1

    def test_hd_at_most_fd(self):
        for seed in range(40):
            net = gen_random(seed % 6 + 1, seed=seed + 7)
            hd = hd_capacity(net).value
            fd = fd_capacity_fast(net)
            assert hd <= fd + 1e-9

    def test_subnetwork_monotonicity(self):
        for seed in range(12):
            net = gen_random(4, seed=seed + 99)
            full = hd_capacity(net).value
            for keep in (0b0111, 0b1011, 0b0011, 0b1000):
                sub = hd_capacity(net.subnetwork(keep)).value
                assert sub <= full + 1e-9

    def test_rational_matches_float(self):
        for seed in range(15):
            rnd = gen_random(seed % 4 + 1, seed=seed)
            net = DiamondNetwork(
                tuple(F(v).limit_denominator(64) for v in rnd.uplinks),
                tuple(F(v).limit_denominator(64) for v in rnd.downlinks),
            )
            exact = hd_capacity(net, "rational").value
            approx = hd_capacity(net, "float").value
            assert approx == pytest.approx(float(exact), abs=1e-6)

    def test_guard(self):
        big = gen_random(17, seed=0)
        with pytest.raises(GuardExceeded):
            hd_capacity(big)
        with pytest.raises(GuardExceeded):
            hd_capacity(gen_random(3, seed=0), guard=2)
        # explicit guard raise lets it through
        res = hd_capacity(gen_random(3, seed=0), guard=3)
        assert res.value > 0

    def test_guard_env_var(self, monkeypatch):
        monkeypatch.setenv("HDDIAMOND_LP_GUARD", "2")
        with pytest.raises(GuardExceeded):
            hd_capacity(gen_random(3, seed=0))
        monkeypatch.setenv("HDDIAMOND_LP_GUARD", "nonsense")
        with pytest.raises(GuardExceeded):
            hd_capacity(gen_random(3, seed=0))


class TestUnboundedLinks:
    def test_one_relay_unbounded_downlink(self):
        # (1/2, unbounded): value is the large-capacity limit 1/2, but no
        # fixed schedule attains it; always-listen scores 0.
        net = DiamondNetwork((F(1, 2),), (UNBOUNDED,))
        res = hd_capacity(net, "rational")
        assert res.value == F(1, 2)
        assert res.tight_cuts == (1,)
        assert fixed_schedule_rate(net, res.optimal_schedule).value == 0

    def test_all_unbounded(self):
        net = DiamondNetwork((UNBOUNDED, UNBOUNDED), (UNBOUNDED, UNBOUNDED))
        res = hd_capacity(net, "rational")
        assert res.value == UNBOUNDED
        dual = dual_capacity(net, "rational")
        assert dual.value == UNBOUNDED
        assert dual.cut_probs == {}

    def test_limit_matches_large_finite_substitute(self):
        net = gen_half_tight(3)
        limit = hd_capacity(net, "rational").value
        finite = hd_capacity(net.substitute_unbounded(10**6)).value
        assert float(limit) == pytest.approx(finite, abs=1e-4)

    def test_odd_worst_case_uses_row_deletion(self):
        net = gen_worst_case(5)  # relay 5 has an unbounded uplink
        assert net.has_unbounded
        res = hd_capacity(net, "rational")
        assert res.value == 1


class TestDualConsistency:
    def test_dual_equals_primal_float(self):
        for seed in range(40):
            net = gen_random(seed % 6 + 1, seed=seed + 31)
            hd = hd_capacity(net).value
            du = dual_capacity(net).value
            assert du == pytest.approx(hd, abs=1e-6)

    def test_dual_equals_primal_exact(self):
        for seed in range(10):
            rnd = gen_random(seed % 3 + 1, seed=seed)
            net = DiamondNetwork(
                tuple(F(v).limit_denominator(32) for v in rnd.uplinks),
                tuple(F(v).limit_denominator(32) for v in rnd.downlinks),
            )
            assert dual_capacity(net, "rational").value == hd_capacity(net, "rational").value

    def test_dual_guard(self):
        with pytest.raises(GuardExceeded):
            dual_capacity(gen_random(11, seed=0))

    def test_cut_mixture_is_distribution(self):
        dual = dual_capacity(gen_random(4, seed=5))
        total = sum(dual.cut_probs.values())
        assert total == pytest.approx(1.0, abs=1e-9)
        assert all(p > 0 for p in dual.cut_probs.values())


class TestSparsify:
    def test_support_bound_and_rate(self):
        for seed in range(12):
            n = seed % 3 + 2
            net = gen_random(n, seed=seed + 400)
            cap = hd_capacity(net).value
            sched = sparsify_schedule(net)
            assert sched is not None
            assert len(sched.support) <= n + 1
            assert fixed_schedule_rate(net, sched).value >= cap - 1e-8

    def test_guard(self):
        with pytest.raises(GuardExceeded):
            sparsify_schedule(gen_random(5, seed=0))

    def test_unbounded_target_returns_none(self):
        net = DiamondNetwork((UNBOUNDED,), (UNBOUNDED,))
        assert sparsify_schedule(net) is None


# ---------------------------------------------------------------------------
# Independent oracle: tiny networks, dense LP via scipy
# ---------------------------------------------------------------------------

class TestBruteForceOracle:
    def test_matches_scipy_dense_game(self):
        scipy_opt = pytest.importorskip("scipy.optimize")
        import numpy as np

        for seed in range(30):
            n = seed % 3 + 1
            net = gen_random(n, seed=seed + 800)
            size = 1 << n
            m = np.array(
                [[float(cut_state_value(net, a, s)) for s in range(size)] for a in range(size)]
            )
            # max v  s.t.  M q >= v per cut, sum q = 1, q >= 0
            c = np.zeros(size + 1)
            c[-1] = -1.0
            a_ub = np.hstack([-m, np.ones((size, 1))])
            a_eq = np.hstack([np.ones((1, size)), np.zeros((1, 1))])
            ref = scipy_opt.linprog(
                c,
                A_ub=a_ub,
                b_ub=np.zeros(size),
                A_eq=a_eq,
                b_eq=[1.0],
                bounds=[(0, None)] * size + [(None, None)],
                method="highs",
            )
            assert ref.status == 0
            mine = hd_capacity(net).value
            assert mine == pytest.approx(-ref.fun, abs=1e-7)
