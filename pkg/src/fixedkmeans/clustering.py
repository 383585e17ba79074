"""k-means with exact per-cluster sizes.

Every point is matched to one of n cluster slots, where slot a belongs to
cluster j when the cumulative size count first reaches a. The assignment
step builds the n x n matrix of squared distances from each point to each
slot's centroid and solves it as a minimum-cost assignment, so cluster j
always ends up with exactly sizes[j] members. The update step recomputes
centroids as cluster means, as in plain k-means. Iteration stops when the
induced partition repeats, which makes the centroid update a no-op.
"""

from dataclasses import dataclass, replace

import numpy as np

from . import hungarian

DEFAULT_SEED = 0
DEFAULT_RESTARTS = 10
DEFAULT_MAX_ITER = 10_000
DEFAULT_MDS_TOL = 1e-9


@dataclass(frozen=True)
class RunConfig:
    """Knobs shared by the clustering and seating-plan entry points.

    seed feeds a deterministic per-restart generator; restarts is the number
    of independent initializations; max_iter caps a single run in case the
    natural stop never fires; mds_tol is the eigenvalue retention threshold
    used when embedding a dissimilarity matrix.
    """

    seed: int = DEFAULT_SEED
    restarts: int = DEFAULT_RESTARTS
    max_iter: int = DEFAULT_MAX_ITER
    mds_tol: float = DEFAULT_MDS_TOL

    def __post_init__(self):
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1, got {self.restarts}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")
        if not self.mds_tol > 0:
            raise ValueError(f"mds_tol must be > 0, got {self.mds_tol}")


@dataclass(frozen=True)
class SlotLayout:
    """Which cluster each of the n matching slots belongs to.

    cumulative[j] is the total size of clusters 0..j, so slot a (0-based)
    belongs to the first cluster j with cumulative[j] > a; slot_to_cluster
    spells that map out, giving cluster j exactly sizes[j] slots.
    """

    sizes: np.ndarray
    cumulative: np.ndarray
    slot_to_cluster: np.ndarray

    @property
    def n_slots(self) -> int:
        return int(self.cumulative[-1])

    @property
    def n_clusters(self) -> int:
        return len(self.sizes)


@dataclass(frozen=True)
class Assignment:
    """One assignment-step result: the slot matching and what it implies."""

    slot_to_point: np.ndarray
    labels: np.ndarray
    cost: float


@dataclass(frozen=True)
class ClusteringResult:
    """Final partition of one clustering run (or the best of several restarts)."""

    labels: np.ndarray
    centroids: np.ndarray
    mse: float
    iterations: int
    restarts_used: int
    converged: bool
    mse_history: tuple


def check_points(points) -> np.ndarray:
    """Validate points as a finite (n, d) float array with n, d >= 1."""
    points = np.asarray(points, dtype=float)
    if points.ndim != 2:
        raise ValueError(f"points must be a 2-d array of shape (n, d), got ndim {points.ndim}")
    if points.shape[0] < 1 or points.shape[1] < 1:
        raise ValueError(f"points must be non-empty, got shape {points.shape}")
    if not np.isfinite(points).all():
        i = int(np.argwhere(~np.isfinite(points).all(axis=1))[0][0])
        raise ValueError(f"point {i} has a non-finite coordinate")
    return points


def check_sizes(sizes, n: int | None = None) -> np.ndarray:
    """Validate cluster sizes: positive integers, summing to n when n is given."""
    sizes = np.asarray(sizes)
    if sizes.ndim != 1 or sizes.size < 1:
        raise ValueError("sizes must be a non-empty sequence of integers")
    if not np.issubdtype(sizes.dtype, np.integer):
        rounded = np.rint(np.asarray(sizes, dtype=float))
        if not np.array_equal(np.asarray(sizes, dtype=float), rounded):
            raise ValueError(f"sizes must be integers, got {sizes.tolist()}")
        sizes = rounded
    sizes = sizes.astype(int)
    if (sizes < 1).any():
        bad = int(np.argwhere(sizes < 1)[0][0])
        raise ValueError(f"sizes[{bad}] = {sizes[bad]}; every cluster size must be >= 1")
    if n is not None and int(sizes.sum()) != n:
        raise ValueError(f"sizes sum {int(sizes.sum())} != n {n}")
    return sizes


def build_layout(sizes) -> SlotLayout:
    """Lay out sum(sizes) slots, the first sizes[0] for cluster 0 and so on."""
    sizes = check_sizes(sizes)
    cumulative = np.cumsum(sizes)
    slot_to_cluster = np.repeat(np.arange(len(sizes)), sizes)
    return SlotLayout(sizes=sizes, cumulative=cumulative, slot_to_cluster=slot_to_cluster)


def compute_mse(points, labels, centroids) -> float:
    """Mean squared distance from each point to its cluster centroid."""
    points = check_points(points)
    centroids = np.asarray(centroids, dtype=float)
    labels = np.asarray(labels)
    if labels.shape != (points.shape[0],):
        raise ValueError(f"labels must map all {points.shape[0]} points, got shape {labels.shape}")
    k = centroids.shape[0]
    if (labels < 0).any() or (labels >= k).any():
        bad = int(np.argwhere((labels < 0) | (labels >= k))[0][0])
        raise ValueError(f"point {bad} assigned to cluster {labels[bad]}, but only {k} clusters exist")
    if centroids.shape[1] != points.shape[1]:
        raise ValueError(
            f"centroid dimension {centroids.shape[1]} != point dimension {points.shape[1]}"
        )
    diffs = points - centroids[labels]
    return float((diffs * diffs).sum() / points.shape[0])


def compute_weights(points, centroids, layout: SlotLayout) -> np.ndarray:
    """n x n matrix of squared distances from each point to each slot's centroid.

    Entry (a, i) is the squared Euclidean distance between point i and the
    centroid of the cluster that owns slot a.
    """
    points = check_points(points)
    centroids = np.asarray(centroids, dtype=float)
    n = points.shape[0]
    if layout.n_slots != n:
        raise ValueError(f"layout has {layout.n_slots} slots but there are {n} points")
    if centroids.shape != (layout.n_clusters, points.shape[1]):
        raise ValueError(
            f"expected {layout.n_clusters} centroids of dimension {points.shape[1]}, "
            f"got shape {centroids.shape}"
        )
    diffs = points[None, :, :] - centroids[:, None, :]
    cluster_dist = (diffs * diffs).sum(axis=2)
    return np.ascontiguousarray(cluster_dist[layout.slot_to_cluster, :])


def assignment_step(points, centroids, layout: SlotLayout) -> Assignment:
    """Assign points to slots at minimum total squared distance.

    The matching is optimal over all partitions with the layout's exact
    cluster sizes, for the given centroids.
    """
    weights = compute_weights(points, centroids, layout)
    matching = hungarian.solve(weights)
    labels = np.empty(layout.n_slots, dtype=int)
    labels[matching.assignment] = layout.slot_to_cluster
    return Assignment(slot_to_point=matching.assignment, labels=labels, cost=matching.total_cost)


def update_step(points, assignment: Assignment) -> np.ndarray:
    """New centroids: the mean of the points assigned to each cluster."""
    points = np.asarray(points, dtype=float)
    labels = assignment.labels
    k = int(labels.max()) + 1
    return np.array([points[labels == j].mean(axis=0) for j in range(k)])


def _check_balance(labels, sizes):
    counts = np.bincount(labels, minlength=len(sizes))
    if not np.array_equal(counts, sizes):
        raise RuntimeError(f"balance violated: cluster counts {counts.tolist()} != sizes {sizes.tolist()}")


def _restart_rng(seed: int, restart: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(restart,)))


def cluster(points, sizes, config: RunConfig | None = None, *, rng=None, init_indices=None) -> ClusteringResult:
    """Run fixed-size k-means once and return the final partition.

    Initial centroids are k distinct data points drawn with the seeded
    generator (or taken from init_indices when given). Assignment and update
    steps alternate until the partition repeats or config.max_iter update
    steps have run; hitting the cap is reported via converged=False, not an
    error. mse_history holds the mean squared error after every update step
    and is non-increasing.
    """
    config = config if config is not None else RunConfig()
    points = check_points(points)
    n = points.shape[0]
    sizes = check_sizes(sizes, n)
    k = len(sizes)
    layout = build_layout(sizes)

    if init_indices is not None:
        init_indices = np.asarray(init_indices, dtype=int)
        if init_indices.shape != (k,) or len(set(init_indices.tolist())) != k:
            raise ValueError(f"init_indices must be {k} distinct point indices")
        if (init_indices < 0).any() or (init_indices >= n).any():
            raise ValueError(f"init_indices out of range 0..{n - 1}")
    else:
        if rng is None:
            rng = _restart_rng(config.seed, 0)
        init_indices = rng.choice(n, size=k, replace=False)
    centroids = points[init_indices].copy()

    labels_prev = None
    mse_history = []
    iterations = 0
    converged = False
    while iterations < config.max_iter:
        step = assignment_step(points, centroids, layout)
        if labels_prev is not None and np.array_equal(step.labels, labels_prev):
            converged = True
            break
        iterations += 1
        centroids = update_step(points, step)
        mse_history.append(compute_mse(points, step.labels, centroids))
        labels_prev = step.labels

    _check_balance(labels_prev, sizes)
    return ClusteringResult(
        labels=labels_prev,
        centroids=centroids,
        mse=mse_history[-1],
        iterations=iterations,
        restarts_used=1,
        converged=converged,
        mse_history=tuple(mse_history),
    )


def cluster_multi_restart(points, sizes, config: RunConfig | None = None) -> ClusteringResult:
    """Best of config.restarts independent runs, by lowest mean squared error.

    Restart r uses the generator spawned from (seed, r), so results are
    deterministic for a fixed seed, restart 0 matches a plain cluster() call,
    and raising restarts only ever improves the returned error. Ties keep
    the earliest restart.
    """
    config = config if config is not None else RunConfig()
    best = None
    for r in range(config.restarts):
        result = cluster(points, sizes, config, rng=_restart_rng(config.seed, r))
        if best is None or result.mse < best.mse:
            best = result
    return replace(best, restarts_used=config.restarts)


def balanced_sizes(n: int, k: int) -> list:
    """Split n into k sizes as equal as possible; the first n % k get one extra."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k = {k}, n = {n}")
    base, extra = divmod(n, k)
    return [base + 1] * extra + [base] * (k - extra)
