"""k-means with exact per-cluster sizes, via minimum-cost assignment.

The assignment step of each iteration matches points to pre-allocated
cluster slots with a Hungarian-style solver, so every cluster ends up with
exactly the requested number of members. A classical-MDS front end turns a
pairwise dissimilarity matrix into coordinates, which powers the seating
planner.
"""

from .clustering import (
    Assignment,
    ClusteringResult,
    RunConfig,
    SlotLayout,
    assignment_step,
    balanced_sizes,
    build_layout,
    cluster,
    cluster_multi_restart,
    compute_mse,
    compute_weights,
    update_step,
)
from .errors import DegenerateEmbeddingError, SizeLimitError
from .hungarian import Matching, brute_force_solve, solve
from .mds import Embedding, embed, pairwise_distances, symmetric_eigendecompose
from .seatplan import SeatingPlan, load_compatibility_csv, plan

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "ClusteringResult",
    "DegenerateEmbeddingError",
    "Embedding",
    "Matching",
    "RunConfig",
    "SeatingPlan",
    "SizeLimitError",
    "SlotLayout",
    "assignment_step",
    "balanced_sizes",
    "brute_force_solve",
    "build_layout",
    "cluster",
    "cluster_multi_restart",
    "compute_mse",
    "compute_weights",
    "embed",
    "load_compatibility_csv",
    "pairwise_distances",
    "plan",
    "solve",
    "symmetric_eigendecompose",
    "update_step",
]
