"""Capacity computations for half-duplex diamond networks.

The half-duplex (HD) approximate capacity of an n-relay diamond network is
the value of a finite zero-sum game: the scheduler mixes over the ``2**n``
listen/transmit states, an adversary picks a network cut, and the payoff of
(cut A, state s) is

    value(A, s) = max uplink over relays of A that are listening in s
                + max downlink over relays outside A that are transmitting,

with empty maxima reading 0.  The full-duplex (FD) capacity replaces the
scheduling game by a plain minimum over cuts of (max uplink in A + max
downlink outside A) and always dominates the HD value.

Unbounded links: a cut whose FD value is infinite can never bind as the
number of channel uses grows, so the HD value with unbounded links is the
limit of substituting an ever-larger finite capacity.  That limit equals the
value of the reduced game over the cuts with finite FD value (and is itself
infinite exactly when every cut's FD value is, i.e. when the FD capacity is
infinite).  ``hd_capacity`` computes the reduced game directly; see its
docstring for what that means for the reported schedule.

Everything runs in either float64 or exact ``Fraction`` arithmetic through
the same self-contained simplex engine; the game is solved by deterministic
strategy generation (grow small cut/state subsets by exact best-response
scans), so the full ``2**n x 2**n`` payoff matrix is never materialized.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import GuardExceeded, SolverFailure
from .network import (
    UNBOUNDED,
    DiamondNetwork,
    LinkValue,
    Schedule,
    _as_mask,
    _check_link,
    _is_exact,
    gen_two_phase_schedule,
    invert_mask,
    is_unbounded,
)
from .simplex import solve_lp

__all__ = [
    "CapacityResult",
    "RateValue",
    "DualCapacity",
    "DEFAULT_LP_GUARD",
    "LP_GUARD_ENV",
    "cut_state_value",
    "fixed_schedule_rate",
    "fd_capacity",
    "fd_capacity_fast",
    "hd_capacity",
    "single_relay_capacity",
    "dual_capacity",
    "sparsify_schedule",
]

#: Largest relay count hd_capacity accepts unless overridden.
DEFAULT_LP_GUARD = 16
LP_GUARD_ENV = "HDDIAMOND_LP_GUARD"

_DUAL_GUARD = 10  # dual_capacity materializes a dense (cuts x states) matrix


@dataclass(frozen=True)
class CapacityResult:
    """Outcome of a capacity computation.

    ``value`` is the capacity; ``optimal_schedule`` is the maximizing state
    distribution (HD only, None for FD); ``tight_cuts`` are the cut masks
    achieving the minimum that defines ``value`` (for an infinite value,
    where every cut qualifies, the single representative cut 0 is reported);
    ``arithmetic`` records which mode produced the numbers ("float" or
    "rational").
    """

    value: LinkValue
    optimal_schedule: Schedule | None
    tight_cuts: tuple[int, ...]
    arithmetic: str


@dataclass(frozen=True)
class RateValue:
    """A rate certified by a minimum cut: the smallest scheduled cut value
    and the lowest cut mask attaining it."""

    value: LinkValue
    min_cut: int


@dataclass(frozen=True)
class DualCapacity:
    """Value and optimal cut mixture of the adversary's side of the game."""

    value: LinkValue
    cut_probs: Mapping[int, LinkValue]
    arithmetic: str


# ---------------------------------------------------------------------------
# Guards and arithmetic selection
# ---------------------------------------------------------------------------

def _effective_guard(guard: int | None) -> int:
    if guard is not None:
        return guard
    env = os.environ.get(LP_GUARD_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise GuardExceeded(f"bad {LP_GUARD_ENV} value {env!r}") from None
    return DEFAULT_LP_GUARD


def _check_arithmetic(arithmetic: str) -> bool:
    if arithmetic not in ("float", "rational"):
        raise ValueError(f"arithmetic must be 'float' or 'rational', not {arithmetic!r}")
    return arithmetic == "rational"


def _net_is_exact(net: DiamondNetwork) -> bool:
    return all(
        _is_exact(v) or is_unbounded(v) for v in net.uplinks + net.downlinks
    )


# ---------------------------------------------------------------------------
# Subset-max tables
# ---------------------------------------------------------------------------
#
# maxl[m] = max uplink over the relays in mask m (0 for the empty mask), and
# likewise maxr for downlinks.  Built by doubling, so the whole table costs
# O(n * 2^n).  Every cut/state payoff is then two table lookups:
#     value(A, s) = maxl[A & ~s] + maxr[s & ~A].

def _tables_float(net: DiamondNetwork) -> tuple[np.ndarray, np.ndarray]:
    def build(vals: Sequence[LinkValue]) -> np.ndarray:
        table = np.zeros(1)
        for v in vals:
            table = np.concatenate([table, np.maximum(table, float(v))])
        return table

    return build(net.uplinks), build(net.downlinks)


def _tables_exact(net: DiamondNetwork) -> tuple[list, list]:
    def build(vals: Sequence[LinkValue]) -> list:
        table: list = [Fraction(0)]
        for v in vals:
            x = UNBOUNDED if is_unbounded(v) else Fraction(v)
            table = table + [x if x > t else t for t in table]
        return table

    return build(net.uplinks), build(net.downlinks)


def _cut_values_float(
    n: int, maxl: np.ndarray, maxr: np.ndarray, items: Iterable[tuple[int, LinkValue]]
) -> np.ndarray:
    """Scheduled value of every cut mask under the given (state, prob) items."""
    size = 1 << n
    cuts = np.arange(size)
    acc = np.zeros(size)
    for s, p in items:
        acc += float(p) * (maxl[cuts & (size - 1 - s)] + maxr[s & (size - 1 - cuts)])
    return acc


def _cut_values_exact(
    n: int, maxl: list, maxr: list, items: Sequence[tuple[int, LinkValue]]
) -> list:
    size = 1 << n
    out = []
    for cut in range(size):
        total: LinkValue = Fraction(0)
        for s, p in items:
            entry = maxl[cut & ~s] + maxr[s & ~cut & (size - 1)]
            if is_unbounded(entry):
                total = UNBOUNDED
                break
            total = total + p * entry
        out.append(total)
    return out


# ---------------------------------------------------------------------------
# Pointwise values and fixed-schedule rates
# ---------------------------------------------------------------------------

def cut_state_value(
    net: DiamondNetwork,
    cut: int | str | Iterable[int],
    state: int | str | Iterable[int],
) -> LinkValue:
    """Payoff of one (cut, state) pair.

    Relays in the cut that are listening contribute their best uplink;
    relays outside the cut that are transmitting contribute their best
    downlink; either group may be empty (contributing 0).  Unbounded
    participating links make the value unbounded.
    """
    n = net.n
    a = _as_mask(cut, n)
    s = _as_mask(state, n)
    listen_in = a & invert_mask(s, n)
    transmit_out = s & invert_mask(a, n)
    best_l: LinkValue = max(
        (net.uplinks[k] for k in range(n) if listen_in >> k & 1), default=0
    )
    best_r: LinkValue = max(
        (net.downlinks[k] for k in range(n) if transmit_out >> k & 1), default=0
    )
    return best_l + best_r


def fixed_schedule_rate(net: DiamondNetwork, sched: Schedule) -> RateValue:
    """Rate the network carries under a fixed schedule: the minimum over all
    cuts of the schedule-averaged cut value, with the lowest minimizing cut
    mask.  Exact inputs (int/Fraction links and probabilities) are evaluated
    exactly; anything else in float64.
    """
    if sched.n != net.n:
        raise ValueError(f"schedule is over {sched.n} relays, network has {net.n}")
    items = list(sched.items())
    if _net_is_exact(net) and sched.is_exact:
        maxl, maxr = _tables_exact(net)
        vals = _cut_values_exact(net.n, maxl, maxr, items)
        best = min(vals)
        return RateValue(best, vals.index(best))
    maxl, maxr = _tables_float(net)
    vals = _cut_values_float(net.n, maxl, maxr, items)
    cut = int(np.argmin(vals))
    return RateValue(float(vals[cut]), cut)


# ---------------------------------------------------------------------------
# Full-duplex capacity
# ---------------------------------------------------------------------------

def _fd_values(net: DiamondNetwork):
    """(values per cut mask, exact?) for the FD cut function."""
    if _net_is_exact(net):
        maxl, maxr = _tables_exact(net)
        size = 1 << net.n
        return [maxl[a] + maxr[size - 1 - a] for a in range(size)], True
    maxl, maxr = _tables_float(net)
    return maxl + maxr[::-1], False


def fd_capacity(net: DiamondNetwork) -> CapacityResult:
    """Full-duplex cut-set capacity: min over cuts A of (best uplink in A +
    best downlink outside A).  Enumerates all ``2**n`` cuts; use
    :func:`fd_capacity_fast` for large networks.
    """
    vals, exact = _fd_values(net)
    if exact:
        value = min(vals)
        if is_unbounded(value):
            tight: tuple[int, ...] = (0,)
        else:
            tight = tuple(a for a, v in enumerate(vals) if v == value)
    else:
        value = float(np.min(vals))
        if math.isinf(value):
            tight = (0,)
        else:
            tol = 1e-12 * max(1.0, abs(value))
            tight = tuple(int(a) for a in np.nonzero(vals <= value + tol)[0])
    return CapacityResult(
        value=value,
        optimal_schedule=None,
        tight_cuts=tight,
        arithmetic="rational" if exact else "float",
    )


def fd_capacity_fast(net: DiamondNetwork) -> LinkValue:
    """FD capacity in O(n log n): only cuts of the form {relays whose
    downlink exceeds a threshold} can be minimal, so it suffices to scan
    thresholds in downlink order.  Agrees with :func:`fd_capacity` exactly.
    """
    n = net.n
    order = sorted(range(n), key=lambda k: net.downlinks[k], reverse=True)
    best: LinkValue | None = None
    run_max: LinkValue = 0
    k = 0
    while k < n:
        t = net.downlinks[order[k]]
        # candidate cut {i : downlink_i > t}: relays strictly above t listed
        # before position k in the order
        cand = run_max + t
        if best is None or cand < best:
            best = cand
        while k < n and net.downlinks[order[k]] == t:
            up = net.uplinks[order[k]]
            if up > run_max:
                run_max = up
            k += 1
    cand = run_max  # the all-relays cut: no downlink term
    if best is None or cand < best:
        best = cand
    return best


def single_relay_capacity(l: LinkValue, r: LinkValue) -> LinkValue:
    """HD capacity of a one-relay network in closed form: l*r/(l+r), with 0
    when both links are 0 and the natural limits when a link is unbounded
    (the finite link's value, or unbounded if both are)."""
    _check_link(l, "uplink")
    _check_link(r, "downlink")
    if is_unbounded(l) and is_unbounded(r):
        return UNBOUNDED
    if is_unbounded(l):
        return r
    if is_unbounded(r):
        return l
    if l + r == 0:
        return 0
    if _is_exact(l) and _is_exact(r):
        return Fraction(l) * Fraction(r) / (Fraction(l) + Fraction(r))
    return float(l) * float(r) / (float(l) + float(r))


# ---------------------------------------------------------------------------
# The scheduling game
# ---------------------------------------------------------------------------

def _normalized_floor_lp(a_ub: list[list], exact: bool):
    """Optimal x of ``max sum(x)  s.t.  A x <= 1, x >= 0`` for a matrix with
    every entry >= 1, returned as ``(1/sum(x), x/sum(x))``.

    This is the shift-normalized matrix-game workhorse: the all-slack basis
    is feasible (rhs is all ones, never the degenerate all-zeros of the
    value-variable formulation), there are no equality rows, no free
    variables, and no phase-1 artificials, so the float tableau stays well
    conditioned.  Entries >= 1 make the LP bounded: each constraint row
    alone caps sum(x) at 1.
    """
    rows = len(a_ub)
    cols = len(a_ub[0])
    one = Fraction(1) if exact else 1.0
    res = solve_lp([-one] * cols, a_ub, [one] * rows, exact=exact)
    if not res.ok:
        raise SolverFailure(f"game LP came back {res.status}")
    total = sum(res.x)
    if total <= 0:
        raise SolverFailure("game LP returned an empty mixture")
    return one / total, [x / total for x in res.x]


def _unit_scaled(matrix: list[list]) -> tuple[list[list], float]:
    """Rescale a float payoff table so its largest magnitude falls in
    [1/2, 1), returning ``(scaled, scale)``.

    The simplex tolerances are absolute, so a table mixing tiny entries
    with huge finite stand-ins for unbounded links (1e6 and up) can stall
    the float solver at a non-optimal vertex.  Mixtures are invariant under
    positive scaling of the payoffs and the value scales linearly, so
    dividing everything by a power of two (lossless in binary floating
    point) fixes the conditioning without touching the result.
    """
    top = max(abs(v) for row in matrix for v in row)
    if top == 0 or not math.isfinite(top):
        return matrix, 1.0
    scale = math.ldexp(1.0, math.frexp(top)[1])
    return [[v / scale for v in row] for row in matrix], scale


def _game_primal(matrix: list[list], exact: bool):
    """Value and maximizing column mixture of a finite matrix game where
    the column player picks a mixture q over columns to maximize the
    worst row average ``min_i (G q)_i``.

    Derivation: a mixture q guarantees floor V exactly when
    ``(K - G) q <= (K - V) * 1`` for any constant K, so with K large enough
    that K - G has entries >= 1, the normalized LP over ``A = K - G``
    returns ``1/sum(x) = K - V`` and ``q = x/sum(x)`` — and optimality of
    sum(x) is optimality of the floor.  (Solving ``(G + K) x <= 1`` instead
    would yield the *ceiling*-minimizing mixture of the transposed game:
    the guarantee direction lives in the constraint sense, not the
    objective.)
    """
    one = Fraction(1) if exact else 1.0
    scale = 1.0
    if not exact:
        matrix, scale = _unit_scaled(matrix)
    shift = one + max(max(row) for row in matrix)
    a_ub = [[shift - v for v in row] for row in matrix]
    inv, weights = _normalized_floor_lp(a_ub, exact)
    value = shift - inv
    return (value if exact else scale * value), weights


def _game_dual(matrix: list[list], exact: bool):
    """Value and minimizing row mixture of the same game: the mixture p
    over rows minimizing the best column average ``max_j (p^T G)_j``.

    Symmetric derivation: p caps the ceiling at V exactly when
    ``(G + K)^T p <= (V + K) * 1``, so the normalized LP over the shifted
    transpose returns ``1/sum(x) = V + K`` and ``p = x/sum(x)``.
    """
    rows = len(matrix)
    cols = len(matrix[0])
    one = Fraction(1) if exact else 1.0
    scale = 1.0
    if not exact:
        matrix, scale = _unit_scaled(matrix)
    shift = one - min(min(row) for row in matrix)
    a_ub = [[matrix[i][j] + shift for i in range(rows)] for j in range(cols)]
    inv, weights = _normalized_floor_lp(a_ub, exact)
    value = inv - shift
    return (value if exact else scale * value), weights


def _clean_weights(masks: Sequence[int], weights: Sequence, exact: bool) -> dict[int, LinkValue]:
    floor = 0 if exact else 1e-12
    out: dict[int, LinkValue] = {}
    for m, w in zip(masks, weights):
        if w > floor:
            out[m] = w if exact else float(w)
    return out


def _entry(maxl, maxr, size: int, cut: int, state: int) -> LinkValue:
    return maxl[cut & (size - 1 - state)] + maxr[state & (size - 1 - cut)]


def hd_capacity(
    net: DiamondNetwork,
    arithmetic: str = "float",
    *,
    guard: int | None = None,
) -> CapacityResult:
    """Half-duplex approximate capacity, optimal schedule, and tight cuts.

    Solves the scheduling game restricted to the cuts with finite FD value
    (see the module docstring): for finite networks that is every cut, and
    the returned schedule satisfies ``fixed_schedule_rate(net, schedule) ==
    value`` with ``tight_cuts`` its minimizing cuts.  For networks with
    unbounded links the value is the exact large-capacity limit; a single
    fixed schedule need not attain it (the limit may be approached, not
    reached), so the reported schedule is the reduced game's maximizer and
    ``tight_cuts`` lists the finite-FD cuts that pin its value.

    ``guard`` caps the relay count (default 16, or the HDDIAMOND_LP_GUARD
    environment variable); past it, raise instead of grinding.
    """
    exact = _check_arithmetic(arithmetic)
    n = net.n
    g = _effective_guard(guard)
    if n > g:
        raise GuardExceeded(f"hd_capacity on {n} relays exceeds guard {g}")

    size = 1 << n
    arith = "rational" if exact else "float"

    if exact:
        maxl, maxr = _tables_exact(net)
        fdv = [maxl[a] + maxr[size - 1 - a] for a in range(size)]
        kept = [a for a in range(size) if not is_unbounded(fdv[a])]
    else:
        maxl, maxr = _tables_float(net)
        fdv_arr = maxl + maxr[::-1]
        kept = [int(a) for a in np.nonzero(np.isfinite(fdv_arr))[0]]

    if not kept:
        # Every cut has infinite FD value, so the HD value is infinite too
        # (any schedule with full support certifies it).
        return CapacityResult(
            value=UNBOUNDED,
            optimal_schedule=Schedule.uniform(n),
            tight_cuts=(0,),
            arithmetic=arith,
        )

    kept_set = set(kept)
    eps = Fraction(0) if exact else 1e-11

    # Strategy generation: start from the bookend cuts and the natural
    # two-phase states, then alternate exact best-response scans with small
    # sub-game solves until neither side can improve.
    cut_pool = sorted({kept[0], kept[-1]})
    state_pool = {0, size - 1}
    if n >= 2:
        state_pool.update(gen_two_phase_schedule(n).support)
    state_pool = sorted(state_pool)

    probs: dict[int, LinkValue] = {}
    value: LinkValue = 0
    rounds = 0
    while True:
        rounds += 1
        if rounds > 4 * size + 8:
            raise SolverFailure("strategy generation failed to converge")
        matrix = [
            [_entry(maxl, maxr, size, a, s) for s in state_pool] for a in cut_pool
        ]
        _, lam = _game_primal(matrix, exact)
        _, mu = _game_dual(matrix, exact)
        probs = _clean_weights(state_pool, lam, exact)
        cut_probs = _clean_weights(cut_pool, mu, exact)

        # Scheduler's certificate: minimum over kept cuts of the scheduled
        # cut value (for finite nets this IS the fixed-schedule rate).
        items = sorted(probs.items())
        if exact:
            cut_vals = _cut_values_exact(n, maxl, maxr, items)
            value, best_cut = None, -1
            for a in kept:
                v = cut_vals[a]
                if value is None or v < value:
                    value, best_cut = v, a
        else:
            cut_vals = _cut_values_float(n, maxl, maxr, items)
            masked = cut_vals.copy()
            masked[[a for a in range(size) if a not in kept_set]] = np.inf
            best_cut = int(np.argmin(masked))
            value = float(masked[best_cut])

        # Adversary's certificate: maximum over states of the cut-mixture
        # averaged value.
        if exact:
            best_state, state_val = 0, None
            for s in range(size):
                v = Fraction(0)
                for a, w in cut_probs.items():
                    v += w * _entry(maxl, maxr, size, a, s)
                if state_val is None or v > state_val:
                    state_val, best_state = v, s
        else:
            states_arr = np.arange(size)
            acc = np.zeros(size)
            for a, w in cut_probs.items():
                acc += float(w) * (
                    maxl[a & (size - 1 - states_arr)]
                    + maxr[states_arr & (size - 1 - a)]
                )
            best_state = int(np.argmax(acc))
            state_val = float(acc[best_state])

        grew = False
        if best_cut not in cut_pool and value < state_val - eps:
            cut_pool = sorted(cut_pool + [best_cut])
            grew = True
        if best_state not in state_pool and state_val > value + eps:
            state_pool = sorted(state_pool + [best_state])
            grew = True
        if not grew:
            break

    if exact:
        tight = tuple(a for a in kept if cut_vals[a] == value)
    else:
        tol = 1e-9 * max(1.0, abs(value))
        tight = tuple(a for a in kept if cut_vals[a] <= value + tol)

    return CapacityResult(
        value=value,
        optimal_schedule=Schedule(n, probs),
        tight_cuts=tight,
        arithmetic=arith,
    )


def dual_capacity(
    net: DiamondNetwork,
    arithmetic: str = "float",
    *,
    guard: int = _DUAL_GUARD,
) -> DualCapacity:
    """Adversary-side oracle for the HD value: materializes the full payoff
    matrix over the finite-FD cuts and solves the min-max LP densely.

    An independent route to the same number as :func:`hd_capacity` (which
    generates strategies incrementally); keeping both honest against each
    other is the point.  The dense matrix caps the practical size, hence the
    smaller default guard.
    """
    exact = _check_arithmetic(arithmetic)
    n = net.n
    if n > guard:
        raise GuardExceeded(f"dual_capacity on {n} relays exceeds guard {guard}")
    size = 1 << n

    if exact:
        maxl, maxr = _tables_exact(net)
        fdv = [maxl[a] + maxr[size - 1 - a] for a in range(size)]
        kept = [a for a in range(size) if not is_unbounded(fdv[a])]
    else:
        maxl, maxr = _tables_float(net)
        kept = [int(a) for a in np.nonzero(np.isfinite(maxl + maxr[::-1]))[0]]

    arith = "rational" if exact else "float"
    if not kept:
        return DualCapacity(UNBOUNDED, {}, arith)

    matrix = [[_entry(maxl, maxr, size, a, s) for s in range(size)] for a in kept]
    _lp_value, mu = _game_dual(matrix, exact)
    cut_probs = _clean_weights(kept, mu, exact)

    # Certify directly from the cut mixture: its guaranteed ceiling is the
    # worst (largest) mixed cut value over all states.  Swapping the two
    # subset-max tables turns the scheduled-cut-value kernel into exactly
    # this state-indexed average, so the certificate shares the primal
    # certificate's code path rather than trusting the LP's own objective.
    items = sorted(cut_probs.items())
    if exact:
        value = max(_cut_values_exact(n, maxr, maxl, items))
    else:
        value = float(np.max(_cut_values_float(n, maxr, maxl, items)))
    return DualCapacity(value, cut_probs, arith)


def sparsify_schedule(
    net: DiamondNetwork,
    target_value: LinkValue | None = None,
    *,
    tol: float = 1e-8,
    guard: int = 4,
) -> Schedule | None:
    """Find a schedule with at most ``n + 1`` active states whose rate is
    within ``tol`` of ``target_value`` (the HD capacity when omitted).

    An optimal schedule this sparse always exists (the game value lies in
    the convex hull of at most n+1 state columns), but this routine promises
    honesty over speed: it first searches the states made tight by an
    optimal cut mixture, then falls back to exhaustive subset search, and
    returns None rather than an approximation if nothing qualifies.
    """
    n = net.n
    if n > guard:
        raise GuardExceeded(f"sparsify_schedule on {n} relays exceeds guard {guard}")
    if target_value is None:
        target_value = hd_capacity(net).value
    if is_unbounded(target_value):
        return None
    target = float(target_value)
    size = 1 << n

    maxl, maxr = _tables_float(net)
    kept = [int(a) for a in np.nonzero(np.isfinite(maxl + maxr[::-1]))[0]]
    if not kept:
        return None
    kept_set = set(kept)

    def kept_min(sched_probs: dict[int, float]) -> float:
        vals = _cut_values_float(n, maxl, maxr, sorted(sched_probs.items()))
        return min(vals[a] for a in kept)

    def blend_down(probs: dict[int, float]) -> dict[int, float] | None:
        # The restricted game beat the target; walk the rate down by mixing
        # toward the all-listen state (rate 0: the empty cut charges it
        # nothing), bisecting on the mixing weight.
        if 0 not in probs and len(probs) > n:
            return None  # no room for one more state
        lo, hi = 0.0, 1.0  # rate(lo) >= target >= rate(hi)
        for _ in range(80):
            mid = (lo + hi) / 2
            mixed = {s: (1 - mid) * p for s, p in probs.items()}
            mixed[0] = mixed.get(0, 0.0) + mid
            r = kept_min(mixed)
            if abs(r - target) <= tol / 2:
                return mixed
            if r >= target:
                lo = mid
            else:
                hi = mid
        return None

    def attempt(states: tuple[int, ...]) -> Schedule | None:
        matrix = [[_entry(maxl, maxr, size, a, s) for s in states] for a in kept]
        try:
            value, lam = _game_primal(matrix, False)
        except SolverFailure:
            return None
        if value < target - tol:
            return None
        probs = _clean_weights(states, lam, False)
        if not probs:
            return None
        if kept_min(probs) > target + tol:
            probs = blend_down(probs)
            if probs is None:
                return None
        if abs(kept_min(probs) - target) > tol:
            return None
        return Schedule(n, probs)

    dual = dual_capacity(net)
    col = np.zeros(size)
    states_arr = np.arange(size)
    for a, w in dual.cut_probs.items():
        col += float(w) * (
            maxl[a & (size - 1 - states_arr)] + maxr[states_arr & (size - 1 - a)]
        )
    tight_states = [int(s) for s in np.nonzero(col >= float(dual.value) - 1e-7)[0]]

    tried: set[tuple[int, ...]] = set()
    for pool in (tight_states, list(range(size))):
        for k in range(1, n + 2):
            for combo in combinations(pool, k):
                if combo in tried:
                    continue
                tried.add(combo)
                found = attempt(combo)
                if found is not None:
                    return found
    return None
