"""Relay-subset selection with provable fraction-of-capacity guarantees.

Four strategies pick k of the n relays:

* ``worst-drop``   — repeatedly delete the relay whose single-relay capacity
  is smallest.  Cheap (n single-relay closed forms per round) and guarantees
  the surviving subnetwork keeps at least 2^-(n-k) of the capacity — 1/2 for
  k = n-1, which is tight (see ``gen_half_tight``).
* ``schedule-reuse`` — k = n-1 only: take an optimal schedule of the full
  network, marginalize it onto each leave-one-out subnetwork, and keep the
  best.  Certifies an actual *rate* of at least (n-1)/n of the full value.
* ``iterative``    — repeat schedule-reuse n-k times, re-deriving the
  schedule each round; the certified rate keeps at least k/n of the full
  value (each round keeps (m-1)/m of the current one).
* ``exhaustive``   — solve every size-k subnetwork and keep the best.
  Dominates everything above; its guarantee combines the k/n rate floor
  with a capacity floor of 1/2 (k >= 2) or 1/4 (k = 1).

Capacity-valued strategies report ``value_kind="capacity"``; the
schedule-driven ones certify rates (``value_kind="rate"``), with
``full_value`` the same yardstick the guarantee is stated against (the HD
capacity, resp. the reused schedule's full-network rate — identical when
the schedule is the optimal one).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .capacity import fixed_schedule_rate, hd_capacity, single_relay_capacity
from .errors import BoundViolation, GuardExceeded
from .network import DiamondNetwork, LinkValue, Schedule, derive_natural_schedule

__all__ = [
    "SelectionReport",
    "STRATEGIES",
    "worst_relay_index",
    "drop_worst",
    "select_drop_one_schedule_reuse",
    "select_k_iterative",
    "select_k_exhaustive",
    "select_k",
    "guarantee_bound",
]

STRATEGIES = ("worst-drop", "schedule-reuse", "iterative", "exhaustive")

_ROUND_TOL = 1e-8  # slack for the per-round floor assertion in float mode


@dataclass(frozen=True)
class SelectionReport:
    """What a selection strategy found.

    ``selected`` holds original relay labels, ascending.  ``value`` is the
    kept subnetwork's capacity (value_kind "capacity") or certified rate
    (value_kind "rate"); ``full_value`` is the matching full-network
    yardstick, ``fraction`` their ratio (1 when both are 0), and ``bound``
    the proven floor for the fraction — None when it does not apply (forced
    removals).  ``notes`` records anything unusual.
    """

    strategy: str
    selected: tuple[int, ...]
    k: int
    value_kind: str
    value: LinkValue
    full_value: LinkValue
    fraction: LinkValue
    bound: Fraction | None
    notes: tuple[str, ...] = ()


def _ratio(value: LinkValue, full: LinkValue) -> LinkValue:
    if full == 0:
        return Fraction(1)
    if isinstance(full, float) and math.isinf(full):
        return Fraction(1) if isinstance(value, float) and math.isinf(value) else 0.0
    if isinstance(value, (int, Fraction)) and isinstance(full, (int, Fraction)):
        return Fraction(value) / Fraction(full)
    return float(value) / float(full)


def guarantee_bound(strategy: str, n: int, k: int) -> Fraction:
    """Proven floor on the kept fraction for a strategy at (n, k)."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if k == n:
        return Fraction(1)
    if strategy == "worst-drop":
        return Fraction(1, 1 << (n - k))
    if strategy == "schedule-reuse":
        if k != n - 1:
            raise ValueError("schedule-reuse only drops a single relay")
        return Fraction(n - 1, n)
    if strategy == "iterative":
        return Fraction(k, n)
    # exhaustive: the best subnetwork beats both the iterative rate floor
    # and the capacity floor (1/4 for a single relay, 1/2 for more).
    floor = Fraction(1, 4) if k == 1 else Fraction(1, 2)
    return max(Fraction(k, n), floor)


def worst_relay_index(net: DiamondNetwork) -> int:
    """1-based position (within this network) of the relay with the smallest
    single-relay capacity; ties break to the lowest position."""
    singles = [
        single_relay_capacity(net.uplinks[i], net.downlinks[i]) for i in range(net.n)
    ]
    return min(range(net.n), key=lambda i: (singles[i], i)) + 1


def _resolve_forced(net: DiamondNetwork, force_remove: Iterable[int] | None) -> list[int]:
    forced = list(force_remove or ())
    labels = set(net.labels)
    for lab in forced:
        if lab not in labels:
            raise ValueError(f"cannot force-remove unknown relay {lab!r}")
    if len(set(forced)) != len(forced):
        raise ValueError("force_remove lists a relay twice")
    return forced


def drop_worst(
    net: DiamondNetwork,
    k: int,
    *,
    force_remove: Iterable[int] | None = None,
    arithmetic: str = "float",
) -> SelectionReport:
    """Keep k relays by repeatedly deleting the worst single relay.

    ``force_remove`` (original labels) overrides the choice for the first
    removals, in the order given; the remaining rounds fall back to the
    worst-single rule.  Forced removals void the proven bound (reported as
    None): the guarantee only covers the strategy's own choices.
    """
    n = net.n
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= {n}, got k={k}")
    forced = _resolve_forced(net, force_remove)
    if len(forced) > n - k:
        raise ValueError(f"cannot force {len(forced)} removals when dropping {n - k}")

    current = net
    removed: list[int] = []
    while current.n > k:
        if len(removed) < len(forced):
            label = forced[len(removed)]
            pos = current.labels.index(label) + 1
        else:
            pos = worst_relay_index(current)
            label = current.labels[pos - 1]
        removed.append(label)
        current = current.drop((pos,))

    full = hd_capacity(net, arithmetic)
    sub = hd_capacity(current, arithmetic)
    fraction = _ratio(sub.value, full.value)
    notes: tuple[str, ...] = ()
    bound: Fraction | None = guarantee_bound("worst-drop", n, k)
    if forced:
        bound = None
        notes = (
            f"forced removal of relays {tuple(forced)}: the worst-drop bound "
            "does not apply",
        )
    return SelectionReport(
        strategy="worst-drop",
        selected=current.labels,
        k=k,
        value_kind="capacity",
        value=sub.value,
        full_value=full.value,
        fraction=fraction,
        bound=bound,
        notes=notes,
    )


def _reuse_round(
    net: DiamondNetwork, sched: Schedule
) -> tuple[int, DiamondNetwork, Schedule, LinkValue]:
    """One leave-one-out round: returns (dropped position, subnetwork,
    derived schedule, certified rate) for the best relay to drop under the
    given schedule; ties keep the lowest dropped position."""
    best = None
    for pos in range(1, net.n + 1):
        keep = [p for p in range(1, net.n + 1) if p != pos]
        sub = net.subnetwork(keep)
        sub_sched = derive_natural_schedule(sched, keep)
        rate = fixed_schedule_rate(sub, sub_sched).value
        if best is None or rate > best[3]:
            best = (pos, sub, sub_sched, rate)
    return best


def select_drop_one_schedule_reuse(
    net: DiamondNetwork,
    schedule: Schedule | None = None,
    *,
    arithmetic: str = "float",
) -> SelectionReport:
    """Drop one relay, reusing (the marginal of) the full network's schedule.

    Certifies value_kind "rate": the reported value is what the kept n-1
    relays really achieve under the derived schedule, at least (n-1)/n of
    the schedule's full-network rate.  With the default schedule (an optimal
    one) the yardstick equals the HD capacity.
    """
    n = net.n
    if n < 2:
        raise ValueError("need at least 2 relays to drop one")
    sched = schedule if schedule is not None else hd_capacity(net, arithmetic).optimal_schedule
    full_rate = fixed_schedule_rate(net, sched).value
    _, sub, _, rate = _reuse_round(net, sched)
    bound = guarantee_bound("schedule-reuse", n, n - 1)
    if rate < bound * full_rate - _ROUND_TOL:
        raise BoundViolation(
            f"schedule-reuse rate {rate} fell below {bound} of {full_rate}"
        )
    return SelectionReport(
        strategy="schedule-reuse",
        selected=sub.labels,
        k=n - 1,
        value_kind="rate",
        value=rate,
        full_value=full_rate,
        fraction=_ratio(rate, full_rate),
        bound=bound,
        notes=(),
    )


def select_k_iterative(
    net: DiamondNetwork,
    k: int,
    schedule: Schedule | None = None,
    *,
    arithmetic: str = "float",
) -> SelectionReport:
    """Drop relays one at a time, re-deriving the reused schedule each round.

    Round m -> m-1 keeps at least (m-1)/m of the current certified rate
    (checked, BoundViolation if numerically breached), so the final rate
    keeps at least k/n of the starting full-network rate.
    """
    n = net.n
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= {n}, got k={k}")
    sched = schedule if schedule is not None else hd_capacity(net, arithmetic).optimal_schedule
    full_rate = fixed_schedule_rate(net, sched).value

    current, cur_sched = net, sched
    rate = full_rate
    while current.n > k:
        m = current.n
        _, sub, sub_sched, new_rate = _reuse_round(current, cur_sched)
        floor = Fraction(m - 1, m) * rate
        if new_rate < floor - _ROUND_TOL:
            raise BoundViolation(
                f"round {m}->{m - 1} rate {new_rate} fell below floor {floor}"
            )
        current, cur_sched, rate = sub, sub_sched, new_rate

    return SelectionReport(
        strategy="iterative",
        selected=current.labels,
        k=k,
        value_kind="rate",
        value=rate,
        full_value=full_rate,
        fraction=_ratio(rate, full_rate),
        bound=guarantee_bound("iterative", n, k),
        notes=(),
    )


def select_k_exhaustive(
    net: DiamondNetwork,
    k: int,
    *,
    arithmetic: str = "float",
    guard: int = 10,
) -> SelectionReport:
    """Solve every size-k subnetwork and keep the best (ties: smallest
    relay set).  Guarded: allowed when n <= guard or k <= 2 (where the
    number of subnetworks stays trivial even for larger n)."""
    n = net.n
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= {n}, got k={k}")
    if n > guard and k > 2:
        raise GuardExceeded(
            f"select_k_exhaustive on {n} relays with k={k} exceeds guard {guard}"
        )
    full = hd_capacity(net, arithmetic)
    best_value: LinkValue | None = None
    best_sub: DiamondNetwork | None = None
    for positions in combinations(range(1, n + 1), k):
        sub = net.subnetwork(positions)
        value = hd_capacity(sub, arithmetic).value
        if best_value is None or value > best_value:
            best_value, best_sub = value, sub
    return SelectionReport(
        strategy="exhaustive",
        selected=best_sub.labels,
        k=k,
        value_kind="capacity",
        value=best_value,
        full_value=full.value,
        fraction=_ratio(best_value, full.value),
        bound=guarantee_bound("exhaustive", n, k),
        notes=(),
    )


def select_k(
    net: DiamondNetwork,
    k: int,
    strategy: str = "exhaustive",
    *,
    schedule: Schedule | None = None,
    force_remove: Iterable[int] | None = None,
    arithmetic: str = "float",
) -> SelectionReport:
    """Dispatch to a strategy by name (the CLI entry point)."""
    if strategy == "worst-drop":
        return drop_worst(net, k, force_remove=force_remove, arithmetic=arithmetic)
    if force_remove:
        raise ValueError("force_remove only applies to the worst-drop strategy")
    if strategy == "schedule-reuse":
        if k != net.n - 1:
            raise ValueError("schedule-reuse requires k = n - 1")
        return select_drop_one_schedule_reuse(net, schedule, arithmetic=arithmetic)
    if strategy == "iterative":
        return select_k_iterative(net, k, schedule, arithmetic=arithmetic)
    if strategy == "exhaustive":
        return select_k_exhaustive(net, k, arithmetic=arithmetic)
    raise ValueError(f"unknown strategy {strategy!r}")
