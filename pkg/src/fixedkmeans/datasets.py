"""Synthetic data generators for benchmarks and tests."""

import numpy as np


def gaussian_mixture(n, dim=2, components=8, seed=0, spread=10.0, scale=1.0):
    """n points from equally weighted spherical Gaussians with random centers.

    Centers are uniform in [0, spread]^dim, each component has standard
    deviation scale, and the n points are split across components as evenly
    as possible. Deterministic for a fixed seed.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    components = min(int(components), int(n))
    rng = np.random.default_rng(seed)
    centers = rng.uniform(0.0, spread, size=(components, dim))
    base, extra = divmod(n, components)
    counts = [base + 1] * extra + [base] * (components - extra)
    parts = [
        centers[j] + scale * rng.standard_normal((counts[j], dim))
        for j in range(components)
    ]
    return np.concatenate(parts)
