"""Dense two-phase simplex for small linear programs.

Solves  min c.x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0  with no
external solver.  Two interchangeable arithmetic modes share one code path:
float64 (numpy) and exact rational (``fractions.Fraction`` in object
arrays).  The programs this package generates are matrix-game programs with
at most a few thousand rows/columns, so a dense tableau is the simple and
fast-enough choice.

Pivoting: Dantzig's most-negative-reduced-cost entering rule with a
deterministic lowest-index tie-break, and the lexicographic minimum-ratio
leaving rule, the classical anti-cycling guarantee.  The matrix-game
tableaus this package produces are full of identical rows and columns, so
degenerate ties are routine and a plain index tie-break can mill for
thousands of pivots.  Runs are fully deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import SolverFailure

__all__ = ["LPResult", "solve_lp"]

@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    objective: float | Fraction | None
    x: tuple | None

    @property
    def ok(self) -> bool:
        return self.status == "optimal"


# Basic values closer to zero than this are treated as exactly zero when a
# pivot is taken or a ratio is formed.  A degenerate vertex leaves rhs
# entries that are pure roundoff (~1e-15); dividing one by a near-threshold
# pivot element (~1e-8..1e-6) would otherwise amplify that noise into a
# "step" that walks the basis out of the feasible region.
_EPS_ZERO_RHS = 1e-11


class _Mode:
    """Arithmetic-mode shims so both code paths stay identical."""

    def __init__(self, exact: bool):
        self.exact = exact
        if exact:
            self.zero = Fraction(0)
            self.eps_rc = Fraction(0)      # reduced-cost threshold
            self.eps_piv = Fraction(0)     # smallest usable pivot
            self.eps_feas = Fraction(0)    # feasibility tolerance
            self.tie = Fraction(0)
        else:
            self.zero = 0.0
            self.eps_rc = 1e-9
            self.eps_piv = 1e-8
            self.eps_feas = 1e-8
            self.tie = 1e-9

    def num(self, v) -> float | Fraction:
        if self.exact:
            return v if isinstance(v, Fraction) else Fraction(v)
        return float(v)

    def array(self, rows: int, cols: int) -> np.ndarray:
        if self.exact:
            return np.full((rows, cols), Fraction(0), dtype=object)
        return np.zeros((rows, cols))

    def vector(self, cols: int) -> np.ndarray:
        if self.exact:
            return np.full(cols, Fraction(0), dtype=object)
        return np.zeros(cols)


def _pivot(t: np.ndarray, obj: np.ndarray | None, basis: list[int], row: int, col: int) -> None:
    piv = t[row, col]
    if t.dtype != object and -_EPS_ZERO_RHS < t[row, -1] < _EPS_ZERO_RHS:
        t[row, -1] = 0.0  # keep a degenerate pivot exactly degenerate
    t[row] = t[row] / piv
    for i in range(t.shape[0]):
        if i != row and t[i, col] != 0:
            t[i] = t[i] - t[i, col] * t[row]
    if obj is not None and obj[col] != 0:
        obj -= obj[col] * t[row]
    basis[row] = col


def _priced_objective(t: np.ndarray, basis: list[int], c_full: np.ndarray, mode: _Mode) -> np.ndarray:
    obj = mode.vector(t.shape[1])
    obj[: c_full.shape[0]] = c_full
    for i, b in enumerate(basis):
        if obj[b] != 0:
            obj = obj - obj[b] * t[i]
    return obj


def _lexico_less(t: np.ndarray, i: int, ai, j: int, aj, mode: _Mode) -> bool:
    """Is row i's ratio vector lexicographically below row j's?

    Compares ``t[i] / ai`` against ``t[j] / aj`` entry by entry, rhs first
    then left to right.  The columns of the initial basis are among those
    scanned, so two distinct rows can never tie exactly (that would make
    the basis inverse singular).
    """
    ncols = t.shape[1]
    order = [ncols - 1] + list(range(ncols - 1))
    for k in order:
        d = t[i, k] / ai - t[j, k] / aj
        if d < -mode.tie:
            return True
        if d > mode.tie:
            return False
    return False


def _refactor(
    t: np.ndarray,
    obj: np.ndarray,
    basis: list[int],
    orig: np.ndarray,
    c_full: np.ndarray,
    mode: _Mode,
) -> None:
    """Rebuild the float tableau as B^-1 [A | b] from the *original* system
    and the current basis, wiping out accumulated pivot roundoff, then
    re-price the objective row.  The mathematical tableau is unchanged."""
    base = orig[:, basis]
    try:
        fresh = np.linalg.solve(base, orig)
    except np.linalg.LinAlgError:
        return  # singular to working precision: keep the pivoted tableau
    t[:] = fresh
    obj[:] = _priced_objective(t, basis, c_full, mode)


_REFACTOR_EVERY = 64


def _dual_repair(
    t: np.ndarray,
    obj: np.ndarray,
    basis: list[int],
    mode: _Mode,
    budget: list[int],
) -> bool:
    """Drive negative basic values out of a dual-feasible basis.

    Dual simplex: the leaving row is the most negative rhs entry, the
    entering column the dual ratio test over that row's negative entries.
    Used as the backstop when the refactorized tableau shows the current
    basis is primal-infeasible beyond tolerance (a mis-stepped degenerate
    pivot can cause that); reduced costs are already ~nonnegative here, so
    each pivot keeps dual feasibility while restoring primal feasibility.
    Returns False if some infeasible row has no negative entry to pivot on.
    """
    ncols = t.shape[1] - 1
    while True:
        row = int(np.argmin(t[:, -1]))
        if t[row, -1] >= -mode.eps_feas:
            return True
        col = -1
        best = None
        for j in range(ncols):
            a = t[row, j]
            if a < -mode.eps_piv:
                ratio = obj[j] / -a
                if best is None or ratio < best - mode.tie or (
                    ratio <= best + mode.tie and a < t[row, col]
                ):
                    best, col = ratio, j
        if col < 0:
            return False
        _pivot(t, obj, basis, row, col)
        budget[0] -= 1
        if budget[0] <= 0:
            raise SolverFailure("pivot budget exhausted")


def _iterate(
    t: np.ndarray,
    obj: np.ndarray,
    basis: list[int],
    mode: _Mode,
    budget: list[int],
    c_full: np.ndarray,
    orig: np.ndarray | None,
) -> str:
    """Run simplex pivots until optimal/unbounded. obj[-1] is -objective.

    Entering column: Dantzig's most-negative reduced cost (lowest index on
    ties).  Leaving row: minimum ratio with *lexicographic* tie-breaking,
    the classical anti-cycling rule — the game matrices this package feeds
    in are saturated with identical rows/columns, so degenerate ties are
    the norm, not the exception.

    Float mode refactorizes every ``_REFACTOR_EVERY`` pivots and again
    whenever optimality is about to be declared: long degenerate runs
    otherwise accumulate enough tableau roundoff for phantom optima (and
    mildly infeasible bases) to slip through.  The pre-optimality refactor
    also audits the rhs column and runs a dual-simplex repair if the basis
    drifted infeasible — "optimal" is only ever returned for a basis that
    is feasible and priced out at the same time.  Exact mode needs none of
    this.
    """
    ncols = t.shape[1] - 1
    refreshes = 0
    since_refactor = 0
    while True:
        col = -1
        j = int(np.argmin(obj[:ncols]))
        if obj[j] < -mode.eps_rc:
            col = j
        if col < 0:
            if mode.exact:
                return "optimal"
            _refactor(t, obj, basis, orig, c_full, mode)
            since_refactor = 0
            if t[:, -1].min() < -mode.eps_feas:
                if not _dual_repair(t, obj, basis, mode, budget):
                    raise SolverFailure("basis would not refeasibilize")
                _refactor(t, obj, basis, orig, c_full, mode)
            j = int(np.argmin(obj[:ncols]))
            if obj[j] >= -mode.eps_rc:
                if t[:, -1].min() < -mode.eps_feas:
                    raise SolverFailure("basis would not refeasibilize")
                return "optimal"
            refreshes += 1
            if refreshes > 50:
                raise SolverFailure("reduced costs will not settle")
            col = j

        row = -1
        best = None
        best_a = None
        for i in range(t.shape[0]):
            a = t[i, col]
            if a > mode.eps_piv:
                num = t[i, -1]
                if not mode.exact and -_EPS_ZERO_RHS < num < _EPS_ZERO_RHS:
                    num = 0.0  # degenerate to tolerance: noise must not set the step
                ratio = num / a
                if best is None or ratio < best - mode.tie:
                    best, row, best_a = ratio, i, a
                elif ratio <= best + mode.tie and _lexico_less(t, i, a, row, best_a, mode):
                    best, row, best_a = ratio, i, a
        if row < 0:
            return "unbounded"

        _pivot(t, obj, basis, row, col)
        budget[0] -= 1
        if budget[0] <= 0:
            raise SolverFailure("pivot budget exhausted")
        since_refactor += 1
        if not mode.exact and since_refactor >= _REFACTOR_EVERY:
            _refactor(t, obj, basis, orig, c_full, mode)
            since_refactor = 0


def solve_lp(
    c: Sequence,
    a_ub: Sequence[Sequence] | None = None,
    b_ub: Sequence | None = None,
    a_eq: Sequence[Sequence] | None = None,
    b_eq: Sequence | None = None,
    *,
    exact: bool = False,
    max_pivots: int = 500_000,
) -> LPResult:
    """Minimize ``c.x`` over ``A_ub x <= b_ub``, ``A_eq x = b_eq``, ``x >= 0``."""
    mode = _Mode(exact)
    a_ub = [] if a_ub is None else a_ub
    b_ub = [] if b_ub is None else b_ub
    a_eq = [] if a_eq is None else a_eq
    b_eq = [] if b_eq is None else b_eq
    if len(a_ub) != len(b_ub) or len(a_eq) != len(b_eq):
        raise ValueError("constraint matrix/rhs length mismatch")

    nv = len(c)
    m_ub, m_eq = len(a_ub), len(a_eq)
    m = m_ub + m_eq
    if m == 0:
        raise ValueError("no constraints")

    # Column layout: structural | slacks (one per ub row) | artificials | rhs.
    # Rows are sign-normalized to rhs >= 0 first; a flipped ub row's slack
    # gets coefficient -1 and the row needs an artificial, like eq rows.
    rows: list[tuple[list, object, int]] = []  # (coeffs, rhs, ub-index or -1)
    for k in range(m_ub):
        if len(a_ub[k]) != nv:
            raise ValueError("A_ub row length mismatch")
        rows.append(([mode.num(v) for v in a_ub[k]], mode.num(b_ub[k]), k))
    for k in range(m_eq):
        if len(a_eq[k]) != nv:
            raise ValueError("A_eq row length mismatch")
        rows.append(([mode.num(v) for v in a_eq[k]], mode.num(b_eq[k]), -1))

    needs_art = []
    for idx, (coeffs, rhs, slack) in enumerate(rows):
        flipped = rhs < 0
        if flipped:
            rows[idx] = ([-v for v in coeffs], -rhs, slack)
        needs_art.append(slack < 0 or flipped)
    n_art = sum(needs_art)
    ncols = nv + m_ub + n_art

    t = mode.array(m, ncols + 1)
    basis = [-1] * m
    art_at = nv + m_ub
    for i, (coeffs, rhs, slack) in enumerate(rows):
        for j, v in enumerate(coeffs):
            t[i, j] = v
        t[i, -1] = rhs
        if slack >= 0:
            t[i, nv + slack] = mode.num(1) if not needs_art[i] else mode.num(-1)
        if needs_art[i]:
            t[i, art_at] = mode.num(1)
            basis[i] = art_at
            art_at += 1
        else:
            basis[i] = nv + slack

    budget = [max_pivots]
    # Pristine copy of the initial system for float refactorization.
    orig = None if exact else t.copy()

    if n_art:
        c1 = mode.vector(ncols)
        c1[nv + m_ub :] = mode.num(1)
        obj1 = _priced_objective(t, basis, c1, mode)
        status = _iterate(t, obj1, basis, mode, budget, c1, orig)
        if status != "optimal" or -obj1[-1] > mode.eps_feas:
            return LPResult("infeasible", None, None)
        # Clear leftover degenerate artificials from the basis, then drop
        # the artificial columns entirely.
        drop_rows = []
        for i in range(m):
            if basis[i] >= nv + m_ub:
                col = next(
                    (j for j in range(nv + m_ub) if abs(t[i, j]) > mode.eps_piv),
                    -1,
                )
                if col < 0:
                    drop_rows.append(i)  # redundant constraint
                else:
                    _pivot(t, None, basis, i, col)
                    budget[0] -= 1
        if drop_rows:
            keep = [i for i in range(m) if i not in drop_rows]
            t = t[keep]
            basis = [basis[i] for i in keep]
            m = len(keep)
            if orig is not None:
                orig = orig[keep]
        t = np.concatenate([t[:, : nv + m_ub], t[:, -1:]], axis=1)
        if orig is not None:
            orig = np.concatenate([orig[:, : nv + m_ub], orig[:, -1:]], axis=1)
        ncols = nv + m_ub

    c2 = mode.vector(ncols)
    for j in range(nv):
        c2[j] = mode.num(c[j])
    obj2 = _priced_objective(t, basis, c2, mode)
    status = _iterate(t, obj2, basis, mode, budget, c2, orig)
    if status != "optimal":
        return LPResult(status, None, None)

    x = [mode.zero] * nv
    for i, b in enumerate(basis):
        if b < nv:
            x[b] = t[i, -1]
    objective = sum((xi * mode.num(ci) for xi, ci in zip(x, c)), mode.zero)
    return LPResult("optimal", objective, tuple(x))
