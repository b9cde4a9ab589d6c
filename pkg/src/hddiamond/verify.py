"""Randomized and deterministic self-verification suites.

Each suite hammers one family of proven statements on generated instances
and returns a :class:`SuiteReport`; a failure is a counterexample to
something that is mathematically guaranteed, so a healthy build passes every
suite at any seed.  All randomness flows from one seeded generator, so a
(suite, trials, seed, n_max) tuple always reproduces the same instances.

Suites (names are the CLI tokens):

* ``partition``   — rates and capacities are subadditive across any split of
  the relays into two camps (with naturally derived schedules).
* ``submodular``  — the threshold-set rearrangement inequality for
  max-weight functions, its k-wise exchange step, and submodularity itself.
* ``lemma3``      — completing leave-one-out subnetwork cuts into full
  cuts never increases the total value; includes the complement duality.
* ``guarantees``  — every selection strategy meets its proven floor.
* ``lemma5``      — the sum of leave-one-out reused-schedule rates is at
  least (n-1) times the full rate.
* ``fig2``        — the hard even family: full value 1, best drop-one
  fraction exactly (n-1)/n.
* ``theorem3``    — the same family's best-1 and best-2 fractions follow
  their closed forms toward the 1/4 and 1/2 limits (exact-arithmetic
  sandwich past the LP guard).
* ``sparsify``    — an optimal schedule with at most n+1 states exists and
  is found.
* ``edge-delta``  — dropping relay i costs at most min(uplink_i, downlink_i).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .capacity import (
    fd_capacity,
    fixed_schedule_rate,
    hd_capacity,
    single_relay_capacity,
    sparsify_schedule,
)
from .network import (
    DiamondNetwork,
    Schedule,
    derive_natural_schedule,
    gen_random,
    gen_two_phase_schedule,
    gen_worst_case,
    invert_mask,
    relays_from_mask,
)
from .selection import (
    drop_worst,
    select_drop_one_schedule_reuse,
    select_k_exhaustive,
    select_k_iterative,
)
from .submodular import (
    check_complement_duality,
    check_cut_completion_bound,
    check_kwise_intersection_inequality,
    check_threshold_sum_inequality,
    is_submodular,
    max_weight_function,
)

__all__ = ["SuiteReport", "SUITES", "run_suite"]

_TOL = 1e-8


@dataclass
class SuiteReport:
    suite: str
    instances: int = 0
    passes: int = 0
    failures: list[dict] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, instance: str, ok: bool, expected: object, got: object) -> None:
        self.instances += 1
        if ok:
            self.passes += 1
        else:
            self.failures.append(
                {"instance": instance, "expected": str(expected), "got": str(got)}
            )

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "instances": self.instances,
            "passes": self.passes,
            "failures": list(self.failures),
            "seconds": round(self.seconds, 3),
        }


def _random_schedule(rng: np.random.Generator, n: int) -> Schedule:
    weights = rng.dirichlet(np.ones(1 << n))
    probs = {s: float(p) for s, p in enumerate(weights) if p > 1e-12}
    total = sum(probs.values())
    return Schedule(n, {s: p / total for s, p in probs.items()})


def _random_net(rng: np.random.Generator, n: int) -> DiamondNetwork:
    return gen_random(n, seed=int(rng.integers(0, 2**31)))


def _proper_subset(rng: np.random.Generator, n: int) -> int:
    return int(rng.integers(1, (1 << n) - 1))


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

def _suite_partition(trials: int, seed: int, n_max: int) -> SuiteReport:
    rep = SuiteReport("partition")
    rng = np.random.default_rng(seed)
    n_max = max(2, n_max)
    for t in range(trials):
        n = int(rng.integers(2, n_max + 1))
        net = _random_net(rng, n)
        sched = _random_schedule(rng, n)
        full_rate = fixed_schedule_rate(net, sched).value
        ok = True
        worst = ""
        for mask in range(1, (1 << n) - 1):
            comp = invert_mask(mask, n)
            lhs = full_rate
            rhs = (
                fixed_schedule_rate(
                    net.subnetwork(mask), derive_natural_schedule(sched, mask)
                ).value
                + fixed_schedule_rate(
                    net.subnetwork(comp), derive_natural_schedule(sched, comp)
                ).value
            )
            if lhs > rhs + _TOL:
                ok = False
                worst = f"rate split {relays_from_mask(mask)}: {lhs} > {rhs}"
                break
        split = _proper_subset(rng, n)
        comp = invert_mask(split, n)
        c_full = hd_capacity(net).value
        c_parts = (
            hd_capacity(net.subnetwork(split)).value
            + hd_capacity(net.subnetwork(comp)).value
        )
        if c_full > c_parts + _TOL:
            ok = False
            worst = f"capacity split {relays_from_mask(split)}: {c_full} > {c_parts}"
        rep.record(
            f"trial{t:03d}(n={n})",
            ok,
            "whole <= sum of parts",
            worst or "held",
        )
    return rep


def _suite_submodular(trials: int, seed: int, n_max: int) -> SuiteReport:
    rep = SuiteReport("submodular")
    rng = np.random.default_rng(seed)

    # The worked example: three sets over 1..7 with f = max element.
    f = max_weight_function({i: i for i in range(1, 8)})
    family = [{1, 2, 5, 7}, {4, 5}, {2, 4, 5, 6}]
    chk = check_threshold_sum_inequality(f, family)
    rep.record(
        "worked-example",
        chk.holds and chk.lhs == 18 and chk.rhs == 17,
        "18 >= 17",
        f"{chk.lhs} >= {chk.rhs}",
    )

    ground = list(range(1, 2 * max(2, n_max) + 1))
    for t in range(trials):
        m = int(rng.integers(2, 6))
        weights = {x: float(w) for x, w in zip(ground, rng.uniform(0, 10, len(ground)))}
        f = max_weight_function(weights)
        fam = [
            set(int(x) for x in rng.choice(ground, size=rng.integers(0, len(ground) + 1), replace=False))
            for _ in range(m)
        ]
        chk = check_threshold_sum_inequality(f, fam)
        ok = chk.holds
        detail = f"{chk.lhs} >= {chk.rhs}"
        extra = set(
            int(x) for x in rng.choice(ground, size=rng.integers(0, len(ground) + 1), replace=False)
        )
        for k in range(len(fam)):
            step = check_kwise_intersection_inequality(f, fam, extra, k)
            if not step.holds:
                ok = False
                detail = f"exchange step k={k}: {step.lhs} < {step.rhs}"
                break
        if t % 10 == 0:
            small = {x: weights[x] for x in ground[:5]}
            sub = is_submodular(max_weight_function(small), small)
            if not sub.holds:
                ok = False
                detail = f"max-weight not submodular: witness {sub.witness}"
        rep.record(f"trial{t:03d}(m={m})", ok, "inequalities hold", detail)
    return rep


def _suite_lemma3(trials: int, seed: int, n_max: int) -> SuiteReport:
    rep = SuiteReport("lemma3")
    rng = np.random.default_rng(seed)
    n_max = max(3, n_max)

    # Exhaustive sweep at n=3: all 4^3 combinations of per-relay cuts.
    net3 = _random_net(rng, 3)
    all_ok = True
    detail = "held"
    others = {1: (2, 3), 2: (1, 3), 3: (1, 2)}
    for c1 in range(4):
        for c2 in range(4):
            for c3 in range(4):
                cuts = [
                    {x for x, bit in zip(others[i], (1, 2)) if c & bit}
                    for i, c in ((1, c1), (2, c2), (3, c3))
                ]
                chk = check_cut_completion_bound(net3, cuts)
                if not chk.holds or not check_complement_duality(cuts, 3):
                    all_ok = False
                    detail = f"cuts {cuts}: {chk.lhs} < {chk.rhs}"
    rep.record("exhaustive-n3", all_ok, "all 64 cut combinations hold", detail)

    for t in range(trials):
        n = int(rng.integers(3, n_max + 1))
        net = _random_net(rng, n)
        cuts = []
        for i in range(1, n + 1):
            pool = [x for x in range(1, n + 1) if x != i]
            take = int(rng.integers(0, n))
            cuts.append(set(int(x) for x in rng.choice(pool, size=min(take, n - 1), replace=False)))
        chk = check_cut_completion_bound(net, cuts)
        dual_ok = check_complement_duality(cuts, n)
        rep.record(
            f"trial{t:03d}(n={n})",
            chk.holds and dual_ok,
            "completion bound + duality",
            f"{chk.lhs} >= {chk.rhs}, duality={dual_ok}",
        )
    return rep


def _suite_guarantees(trials: int, seed: int, n_max: int) -> SuiteReport:
    rep = SuiteReport("guarantees")
    rng = np.random.default_rng(seed)
    n_max = max(2, n_max)
    for t in range(trials):
        n = int(rng.integers(2, n_max + 1))
        net = _random_net(rng, n)
        ok = True
        detail = "all floors met"
        for k in range(1, n + 1):
            wd = drop_worst(net, k)
            if wd.fraction < wd.bound - _TOL:
                ok, detail = False, f"worst-drop k={k}: {wd.fraction} < {wd.bound}"
                break
            it = select_k_iterative(net, k)
            if it.fraction < it.bound - _TOL:
                ok, detail = False, f"iterative k={k}: {it.fraction} < {it.bound}"
                break
            ex = select_k_exhaustive(net, k)
            if ex.fraction < ex.bound - _TOL:
                ok, detail = False, f"exhaustive k={k}: {ex.fraction} < {ex.bound}"
                break
            if ex.value < it.value - _TOL:
                ok, detail = False, f"exhaustive k={k} below iterative: {ex.value} < {it.value}"
                break
        if ok and n >= 2:
            sr = select_drop_one_schedule_reuse(net)
            if sr.fraction < sr.bound - _TOL:
                ok, detail = False, f"schedule-reuse: {sr.fraction} < {sr.bound}"
        rep.record(f"trial{t:03d}(n={n})", ok, "fraction >= bound", detail)
    return rep


def _suite_lemma5(trials: int, seed: int, n_max: int) -> SuiteReport:
    rep = SuiteReport("lemma5")
    rng = np.random.default_rng(seed)
    n_max = max(2, n_max)
    for t in range(trials):
        n = int(rng.integers(2, n_max + 1))
        net = _random_net(rng, n)
        sched = _random_schedule(rng, n)
        full = fixed_schedule_rate(net, sched).value
        total = 0.0
        for i in range(1, n + 1):
            keep = [p for p in range(1, n + 1) if p != i]
            total += fixed_schedule_rate(
                net.subnetwork(keep), derive_natural_schedule(sched, keep)
            ).value
        ok = total >= (n - 1) * full - _TOL
        rep.record(
            f"trial{t:03d}(n={n})",
            ok,
            f"sum of leave-one-out rates >= {(n - 1)} * {full}",
            f"{total}",
        )
    return rep


def _suite_fig2(trials: int, seed: int, n_max: int) -> SuiteReport:
    rep = SuiteReport("fig2")
    for n in range(2, 11):
        net = gen_worst_case(n)
        cap = hd_capacity(net)
        ok = abs(cap.value - 1.0) <= 1e-9
        detail = f"C={cap.value}"
        if ok:
            best = select_k_exhaustive(net, n - 1)
            expect = Fraction(n - 1, n)
            ok = abs(best.fraction - float(expect)) <= 1e-9
            detail = f"C={cap.value}, best drop-one fraction={best.fraction}"
        rep.record(f"n={n}", ok, f"C=1, fraction={n - 1}/{n}", detail)
    return rep


def _suite_theorem3(trials: int, seed: int, n_max: int) -> SuiteReport:
    rep = SuiteReport("theorem3")
    best1_seen: list[float] = []
    best2_seen: list[float] = []
    for t in range(1, 6):
        n = 4 * t - 2
        net = gen_worst_case(n)
        expect1 = Fraction(t, 4 * t - 2)
        expect2 = Fraction(t, 2 * t - 1)
        if n <= 10:
            cap = hd_capacity(net)
            full_ok = abs(cap.value - 1.0) <= 1e-9
            b1 = select_k_exhaustive(net, 1)
            b2 = select_k_exhaustive(net, 2)
            f1, f2 = b1.fraction, b2.fraction
            ok = (
                full_ok
                and abs(f1 - float(expect1)) <= 1e-9
                and abs(f2 - float(expect2)) <= 1e-9
            )
            how = "lp"
        else:
            # Past the comfortable LP range: pin the full value by the
            # exact-arithmetic sandwich (two-phase rate = FD bound = 1) and
            # the best subnetworks by exact small solves.
            lower = fixed_schedule_rate(net, gen_two_phase_schedule(n)).value
            upper = fd_capacity(net).value
            full_ok = lower == 1 == upper
            singles = [
                single_relay_capacity(net.uplinks[i], net.downlinks[i])
                for i in range(n)
            ]
            f1 = max(singles)
            f2 = max(
                hd_capacity(net.subnetwork((i, j)), "rational").value
                for i in range(1, n + 1)
                for j in range(i + 1, n + 1)
            )
            ok = full_ok and f1 == expect1 and f2 == expect2
            how = "exact sandwich"
        best1_seen.append(float(f1))
        best2_seen.append(float(f2))
        rep.record(
            f"t={t}(n={n},{how})",
            ok,
            f"full=1, best1={expect1}, best2={expect2}",
            f"best1={f1}, best2={f2}",
        )
    # The family is built to make small subsets progressively weaker: the
    # best-single fraction decreases toward 1/4 and the best-pair fraction
    # toward 1/2, both from above, as the network grows.
    falling1 = all(a >= b - 1e-12 for a, b in zip(best1_seen, best1_seen[1:]))
    falling2 = all(a >= b - 1e-12 for a, b in zip(best2_seen, best2_seen[1:]))
    above = all(f > 0.25 - 1e-12 for f in best1_seen) and all(
        f > 0.5 - 1e-12 for f in best2_seen
    )
    near = abs(best1_seen[-1] - 0.25) < 0.05 and abs(best2_seen[-1] - 0.5) < 0.1
    rep.record(
        "monotone-limits",
        falling1 and falling2 and above and near,
        "fractions decrease toward the 1/4 and 1/2 floors",
        f"best1={best1_seen}, best2={best2_seen}",
    )
    return rep


def _suite_sparsify(trials: int, seed: int, n_max: int) -> SuiteReport:
    rep = SuiteReport("sparsify")
    rng = np.random.default_rng(seed)
    n_cap = max(2, min(4, n_max))
    for t in range(trials):
        n = int(rng.integers(2, n_cap + 1))
        net = _random_net(rng, n)
        cap = hd_capacity(net).value
        sched = sparsify_schedule(net)
        if sched is None:
            rep.record(f"trial{t:03d}(n={n})", False, "sparse schedule found", "None")
            continue
        rate = fixed_schedule_rate(net, sched).value
        ok = len(sched.support) <= n + 1 and abs(rate - cap) <= _TOL
        rep.record(
            f"trial{t:03d}(n={n})",
            ok,
            f"<= {n + 1} states at rate {cap}",
            f"{len(sched.support)} states at rate {rate}",
        )
    return rep


def _suite_edge_delta(trials: int, seed: int, n_max: int) -> SuiteReport:
    rep = SuiteReport("edge-delta")
    rng = np.random.default_rng(seed)
    n_max = max(2, n_max)
    for t in range(trials):
        n = int(rng.integers(2, n_max + 1))
        net = _random_net(rng, n)
        cap = hd_capacity(net).value
        ok = True
        detail = "all drops within delta"
        for i in range(1, n + 1):
            sub_cap = hd_capacity(net.drop((i,))).value
            delta = min(net.uplinks[i - 1], net.downlinks[i - 1])
            if sub_cap < cap - delta - _TOL:
                ok = False
                detail = f"drop {i}: {sub_cap} < {cap} - {delta}"
                break
        rep.record(f"trial{t:03d}(n={n})", ok, "loss <= min(uplink, downlink)", detail)
    return rep


SUITES = {
    "partition": _suite_partition,
    "submodular": _suite_submodular,
    "lemma3": _suite_lemma3,
    "guarantees": _suite_guarantees,
    "lemma5": _suite_lemma5,
    "fig2": _suite_fig2,
    "theorem3": _suite_theorem3,
    "sparsify": _suite_sparsify,
    "edge-delta": _suite_edge_delta,
}


def run_suite(suite: str, trials: int = 100, seed: int = 0, n_max: int = 5) -> SuiteReport:
    """Run one named suite and return its report (with wall time filled)."""
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; have {sorted(SUITES)}")
    start = time.perf_counter()
    rep = SUITES[suite](trials, seed, n_max)
    rep.seconds = time.perf_counter() - start
    return rep
