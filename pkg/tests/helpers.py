"""Small shared helpers for the test suite."""

import numpy as np


def random_sizes(rng, n, k=None, k_max=None):
    """Random composition of n into k positive parts (k drawn if not given)."""
    if k is None:
        hi = min(k_max, n) if k_max else n
        k = int(rng.integers(1, hi + 1))
    if k == 1:
        return [n]
    cuts = np.sort(rng.choice(np.arange(1, n), size=k - 1, replace=False))
    return np.diff(np.concatenate(([0], cuts, [n]))).astype(int).tolist()


def assert_balanced(labels, sizes):
    counts = np.bincount(np.asarray(labels), minlength=len(sizes))
    assert counts.tolist() == list(sizes), f"counts {counts.tolist()} != sizes {list(sizes)}"
