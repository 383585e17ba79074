"""Minimum-cost assignment on square matrices.

Shortest-augmenting-path solver with dual potentials, O(n^3) overall: a
row/column reduction seeds the duals and a greedy pass matches zero-reduced-
cost pairs, then each remaining row is matched along a shortest augmenting
path in the reduced-cost graph. Entries must be finite and nonnegative.

``solve`` is the assignment step of the fixed-size clustering loop but works
on any square cost matrix. ``brute_force_solve`` enumerates permutations and
exists only as a reference for tests.
"""

from dataclasses import dataclass
from itertools import permutations

import numpy as np
from numba import njit

from .errors import SizeLimitError

BRUTE_FORCE_LIMIT = 10


@dataclass(frozen=True)
class Matching:
    """A bijection row -> column together with the summed cost it selects."""

    assignment: np.ndarray
    total_cost: float


def check_cost_matrix(costs) -> np.ndarray:
    """Validate a cost matrix: square, n >= 1, every entry finite and >= 0.

    Returns the matrix as a contiguous float array.
    """
    costs = np.ascontiguousarray(costs, dtype=float)
    if costs.ndim != 2 or costs.shape[0] != costs.shape[1]:
        raise ValueError(f"cost matrix must be square, got shape {costs.shape}")
    if costs.shape[0] == 0:
        raise ValueError("cost matrix must have at least one row")
    bad = ~np.isfinite(costs)
    if bad.any():
        r, c = np.argwhere(bad)[0]
        raise ValueError(f"cost matrix entry ({r}, {c}) is {costs[r, c]}, not finite")
    neg = costs < 0.0
    if neg.any():
        r, c = np.argwhere(neg)[0]
        raise ValueError(f"cost matrix entry ({r}, {c}) is {costs[r, c]}, negative")
    return costs


@njit(cache=True)
def _reduce_and_seed(costs, u, v, col_to_row):
    """Row/column reduction plus a greedy matching of zero-reduced-cost pairs.

    Fills the dual potentials and a partial matching in place. Reduced costs
    stay nonnegative, matched pairs have reduced cost exactly zero, so the
    augmenting-path phase can start from this state.
    """
    n = costs.shape[0]
    for i in range(1, n + 1):
        m = costs[i - 1, 0]
        for j in range(1, n):
            if costs[i - 1, j] < m:
                m = costs[i - 1, j]
        u[i] = m
    for j in range(1, n + 1):
        m = costs[0, j - 1] - u[1]
        for i in range(2, n + 1):
            c = costs[i - 1, j - 1] - u[i]
            if c < m:
                m = c
        v[j] = m
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if col_to_row[j] == 0 and costs[i - 1, j - 1] - u[i] - v[j] <= 0.0:
                col_to_row[j] = i
                break


@njit(cache=True)
def _augment_all(costs, u, v, col_to_row):
    """Match every still-unmatched row along a shortest augmenting path.

    Indices are 1-based with column 0 as the virtual root of each search;
    col_to_row[j] == 0 marks a free column. Rows and columns are scanned in
    ascending order, which fixes the tie-break among equal-cost matchings.
    """
    n = costs.shape[0]
    way = np.zeros(n + 1, np.int64)
    minv = np.empty(n + 1)
    used = np.empty(n + 1, np.bool_)
    matched = np.zeros(n + 1, np.bool_)
    for j in range(1, n + 1):
        if col_to_row[j] != 0:
            matched[col_to_row[j]] = True
    for i in range(1, n + 1):
        if matched[i]:
            continue
        col_to_row[0] = i
        j0 = 0
        for j in range(n + 1):
            minv[j] = np.inf
            used[j] = False
        while True:
            used[j0] = True
            i0 = col_to_row[j0]
            delta = np.inf
            j1 = 0
            for j in range(1, n + 1):
                if not used[j]:
                    cur = costs[i0 - 1, j - 1] - u[i0] - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[col_to_row[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if col_to_row[j0] == 0:
                break
        while j0 != 0:
            j1 = way[j0]
            col_to_row[j0] = col_to_row[j1]
            j0 = j1
    assignment = np.empty(n, np.int64)
    for j in range(1, n + 1):
        assignment[col_to_row[j] - 1] = j - 1
    return assignment


def solve(costs) -> Matching:
    """Return a minimum-cost row -> column bijection for a square cost matrix.

    Raises ValueError for non-square input or entries that are not finite
    and nonnegative; the message names the offending entry.
    """
    costs = check_cost_matrix(costs)
    n = costs.shape[0]
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    col_to_row = np.zeros(n + 1, np.int64)
    _reduce_and_seed(costs, u, v, col_to_row)
    assignment = _augment_all(costs, u, v, col_to_row)
    total = float(costs[np.arange(n), assignment].sum())
    return Matching(assignment=assignment, total_cost=total)


def brute_force_solve(costs) -> Matching:
    """Minimum-cost matching by enumerating all n! permutations.

    Ties go to the lexicographically smallest permutation. Guarded to
    n <= BRUTE_FORCE_LIMIT; use solve() for anything real.
    """
    costs = check_cost_matrix(costs)
    n = costs.shape[0]
    if n > BRUTE_FORCE_LIMIT:
        raise SizeLimitError(
            f"brute force enumerates n! permutations; n = {n} exceeds the limit {BRUTE_FORCE_LIMIT}"
        )
    perms = np.array(list(permutations(range(n))), dtype=np.int64)
    totals = costs[np.arange(n), perms].sum(axis=1)
    best = int(np.argmin(totals))
    return Matching(assignment=perms[best].copy(), total_cost=float(totals[best]))
