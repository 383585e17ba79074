"""Seating plans from pairwise compatibility distances.

Pipeline: embed the distance matrix into Euclidean coordinates, run
fixed-size clustering with one cluster per table, then read the tables off
the partition. Guests that should sit together get small distances; the
planner minimizes the spread of each table in the embedded space.
"""

import csv
from dataclasses import dataclass

import numpy as np

from . import mds
from .clustering import RunConfig, check_sizes, cluster_multi_restart

SEATPLAN_RESTARTS = 1000


@dataclass(frozen=True)
class SeatingPlan:
    """Tables in input-size order; guests alphabetical within each table."""

    tables: tuple
    mse: float
    restarts: int
    seed: int
    embedding_dim: int
    negative_mass: float


def check_guests(names) -> list:
    """Validate guest names: non-empty and unique after whitespace trimming."""
    trimmed = [str(name).strip() for name in names]
    for pos, name in enumerate(trimmed):
        if not name:
            raise ValueError(f"guest {pos} has an empty name")
    seen = {}
    for pos, name in enumerate(trimmed):
        if name in seen:
            raise ValueError(f"duplicate guest name {name!r} at positions {seen[name]} and {pos}")
        seen[name] = pos
    return trimmed


def plan(matrix, guests, sizes, config: RunConfig | None = None) -> SeatingPlan:
    """Compute a seating plan for the given compatibility distances.

    matrix is an n x n symmetric nonnegative distance matrix with zero
    diagonal, guests its n labels, sizes the table sizes in order. Runs
    config.restarts independent clusterings of the embedded guests and keeps
    the best; deterministic for a fixed config.seed.
    """
    if config is None:
        config = RunConfig(restarts=SEATPLAN_RESTARTS)
    guests = check_guests(guests)
    matrix = mds.check_dissimilarity_matrix(matrix)
    n = matrix.shape[0]
    if len(guests) != n:
        raise ValueError(f"matrix is {n}x{n} but there are {len(guests)} guests")
    sizes = check_sizes(sizes, n)

    embedding = mds.embed(matrix, tol=config.mds_tol)
    result = cluster_multi_restart(embedding.points, sizes, config)
    tables = tuple(
        tuple(sorted(guests[i] for i in np.flatnonzero(result.labels == j)))
        for j in range(len(sizes))
    )
    return SeatingPlan(
        tables=tables,
        mse=result.mse,
        restarts=result.restarts_used,
        seed=config.seed,
        embedding_dim=embedding.dimension,
        negative_mass=embedding.negative_mass,
    )


def load_compatibility_csv(path) -> tuple:
    """Read a compatibility matrix CSV; returns (matrix, guest names).

    Expected shape: a header row whose first cell is ignored and whose
    remaining cells are the guest names, then one row per guest holding its
    name followed by the n distances. Row names must repeat the header names
    in the same order.
    """
    with open(path, newline="") as fh:
        rows = [row for row in csv.reader(fh) if row and any(cell.strip() for cell in row)]
    if len(rows) < 2:
        raise ValueError(f"{path}: expected a header row and at least one data row")
    names = [cell.strip() for cell in rows[0][1:]]
    if not names:
        raise ValueError(f"{path}: header row names no guests")
    n = len(names)
    if len(rows) - 1 != n:
        raise ValueError(f"{path}: header names {n} guests but there are {len(rows) - 1} data rows")
    matrix = np.zeros((n, n))
    for i, row in enumerate(rows[1:]):
        if len(row) != n + 1:
            raise ValueError(
                f"{path} row {i + 2}: expected a name and {n} values, got {len(row)} cells"
            )
        row_name = row[0].strip()
        if row_name != names[i]:
            raise ValueError(
                f"{path} row {i + 2}: row name {row_name!r} != header name {names[i]!r}"
            )
        for j, cell in enumerate(row[1:]):
            try:
                matrix[i, j] = float(cell)
            except ValueError:
                raise ValueError(
                    f"{path} row {i + 2}: cell for {names[j]!r} is {cell.strip()!r}, not a number"
                ) from None
    return matrix, names


def format_plan_text(seating: SeatingPlan) -> str:
    """Human-readable plan: one block per table."""
    lines = []
    for j, table in enumerate(seating.tables):
        lines.append(f"Table {j + 1} ({len(table)} seats):")
        for name in table:
            lines.append(f"  {name}")
        lines.append("")
    lines.append(f"mse: {seating.mse!r}")
    lines.append(f"restarts: {seating.restarts}")
    lines.append(f"seed: {seating.seed}")
    lines.append(f"embedding dimension: {seating.embedding_dim}")
    return "\n".join(lines) + "\n"


def plan_to_dict(seating: SeatingPlan) -> dict:
    """JSON-ready form of a plan, with stable content for golden files."""
    return {
        "tables": [list(table) for table in seating.tables],
        "sizes": [len(table) for table in seating.tables],
        "mse": seating.mse,
        "restarts": seating.restarts,
        "seed": seating.seed,
        "embedding_dim": seating.embedding_dim,
        "negative_mass": seating.negative_mass,
    }
