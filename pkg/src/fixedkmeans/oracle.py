"""Exhaustive references for small instances.

Everything here enumerates partitions outright and recomputes costs with
plain loops, independent of the solver path it is meant to check. Budgets
are enforced so a typo cannot start a week-long loop. Test-only surface:
correctness, not speed.
"""

import math
from itertools import combinations, product

import numpy as np

from .clustering import Assignment, ClusteringResult, build_layout, check_points, check_sizes
from .errors import SizeLimitError

PARTITION_BUDGET = 10**6


def multinomial(sizes) -> int:
    """Number of ordered ways to deal sum(sizes) items into groups of the given sizes."""
    sizes = [int(s) for s in sizes]
    count = math.factorial(sum(sizes))
    for s in sizes:
        count //= math.factorial(s)
    return count


def _check_budget(sizes):
    count = multinomial(sizes)
    if count > PARTITION_BUDGET:
        raise SizeLimitError(
            f"{count} balanced partitions exceed the enumeration budget {PARTITION_BUDGET}"
        )


def iter_balanced_partitions(n: int, sizes, ordered: bool = False):
    """Yield every partition of range(n) into clusters of the given sizes.

    Each partition is a tuple of index tuples, one per cluster, members
    ascending. With ordered=False, families that differ only by swapping
    equal-sized clusters are emitted once, canonically with the smallest
    leading member first; with ordered=True cluster identity matters and
    all orders appear.
    """
    sizes = [int(s) for s in sizes]
    if sum(sizes) != n:
        raise ValueError(f"sizes sum {sum(sizes)} != n {n}")
    _check_budget(sizes)

    # class_min[s]: leading member of the latest cluster of size s, so that
    # clusters of equal size appear with strictly increasing leading members
    def rec(remaining, j, class_min, acc):
        if j == len(sizes):
            yield tuple(acc)
            return
        size = sizes[j]
        floor = class_min.get(size, -1) if not ordered else -1
        for chosen in combinations(remaining, size):
            if chosen[0] <= floor:
                continue
            rest = tuple(x for x in remaining if x not in set(chosen))
            previous = class_min.get(size)
            class_min[size] = chosen[0]
            acc.append(chosen)
            yield from rec(rest, j + 1, class_min, acc)
            acc.pop()
            if previous is None:
                class_min.pop(size)
            else:
                class_min[size] = previous

    yield from rec(tuple(range(n)), 0, {}, [])


def _labels_from(clusters, n) -> np.ndarray:
    labels = np.empty(n, dtype=int)
    for j, members in enumerate(clusters):
        for i in members:
            labels[i] = j
    return labels


def best_balanced_partition(points, sizes) -> ClusteringResult:
    """Globally best partition with the given sizes, by full enumeration.

    For each size-respecting partition the centroids are the cluster means;
    the minimum mean-squared-error partition wins, first one in enumeration
    order on ties.
    """
    points = check_points(points)
    n = points.shape[0]
    sizes = check_sizes(sizes, n)
    best_sse = math.inf
    best_clusters = None
    for clusters in iter_balanced_partitions(n, sizes):
        sse = 0.0
        for members in clusters:
            sub = points[list(members)]
            centroid = sub.mean(axis=0)
            sse += float(((sub - centroid) ** 2).sum())
        if sse < best_sse:
            best_sse = sse
            best_clusters = clusters
    labels = _labels_from(best_clusters, n)
    centroids = np.array([points[list(members)].mean(axis=0) for members in best_clusters])
    mse = best_sse / n
    return ClusteringResult(
        labels=labels,
        centroids=centroids,
        mse=mse,
        iterations=0,
        restarts_used=0,
        converged=True,
        mse_history=(mse,),
    )


def best_fixed_centroid_assignment(points, centroids, sizes) -> Assignment:
    """Cheapest size-respecting assignment to the given fixed centroids.

    Clusters are distinguishable here (each has its own centroid), so all
    ordered partitions are tried. The returned slot matching pairs each
    cluster's slots with its members in ascending order.
    """
    points = check_points(points)
    n = points.shape[0]
    sizes = check_sizes(sizes, n)
    centroids = np.asarray(centroids, dtype=float)
    if centroids.shape != (len(sizes), points.shape[1]):
        raise ValueError(
            f"expected {len(sizes)} centroids of dimension {points.shape[1]}, "
            f"got shape {centroids.shape}"
        )
    point_cost = np.empty((len(sizes), n))
    for j in range(len(sizes)):
        for i in range(n):
            delta = points[i] - centroids[j]
            point_cost[j, i] = float((delta * delta).sum())

    best_cost = math.inf
    best_clusters = None
    for clusters in iter_balanced_partitions(n, sizes, ordered=True):
        cost = 0.0
        for j, members in enumerate(clusters):
            for i in members:
                cost += point_cost[j, i]
        if cost < best_cost:
            best_cost = cost
            best_clusters = clusters

    layout = build_layout(sizes)
    slot_to_point = np.empty(n, dtype=int)
    start = 0
    for j, members in enumerate(best_clusters):
        for offset, i in enumerate(sorted(members)):
            slot_to_point[start + offset] = i
        start += len(members)
    labels = _labels_from(best_clusters, n)
    assert np.array_equal(labels[slot_to_point], layout.slot_to_cluster)
    return Assignment(slot_to_point=slot_to_point, labels=labels, cost=best_cost)
