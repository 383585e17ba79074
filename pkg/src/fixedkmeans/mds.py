"""Classical (Torgerson) multidimensional scaling.

Squares the dissimilarities, double-centers them into a Gram matrix
B = -1/2 J D^2 J with J = I - (1/n) 1 1^T, and reads coordinates off the
eigendecomposition of B: each retained eigenvector scaled by the square root
of its eigenvalue. When D is consistent with some Euclidean point set the
embedding reproduces its pairwise distances; otherwise the negative part of
the spectrum is dropped and reported.

The eigensolver is a cyclic Jacobi sweep, which is deterministic and more
than accurate enough for the matrix sizes this package deals with.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateEmbeddingError

JACOBI_OFFDIAG_TOL = 1e-12
MAX_SWEEPS = 100


@dataclass(frozen=True)
class Embedding:
    """Euclidean coordinates recovered from a dissimilarity matrix.

    points has one row per object; eigenvalues is the retained positive
    spectrum in descending order; negative_mass is the total magnitude of
    discarded negative eigenvalues (zero iff D was Euclidean-consistent).
    """

    points: np.ndarray
    eigenvalues: np.ndarray
    negative_mass: float

    @property
    def dimension(self) -> int:
        return self.points.shape[1]


def check_dissimilarity_matrix(matrix) -> np.ndarray:
    """Validate an n x n dissimilarity matrix.

    Must be square, finite, symmetric within 1e-9, nonnegative, with a zero
    diagonal. Errors name the first offending entry.
    """
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"dissimilarity matrix must be square, got shape {matrix.shape}")
    if matrix.shape[0] < 1:
        raise ValueError("dissimilarity matrix must have at least one row")
    bad = ~np.isfinite(matrix)
    if bad.any():
        i, j = np.argwhere(bad)[0]
        raise ValueError(f"matrix entry ({i}, {j}) is {matrix[i, j]}, not finite")
    asym = np.abs(matrix - matrix.T) > 1e-9
    if asym.any():
        i, j = np.argwhere(asym)[0]
        raise ValueError(
            f"matrix not symmetric at ({i}, {j}): {matrix[i, j]} vs {matrix[j, i]}"
        )
    neg = matrix < 0.0
    if neg.any():
        i, j = np.argwhere(neg)[0]
        raise ValueError(f"matrix entry ({i}, {j}) is {matrix[i, j]}, negative")
    diag = np.diagonal(matrix)
    if (diag != 0.0).any():
        i = int(np.argwhere(diag != 0.0)[0][0])
        raise ValueError(f"matrix diagonal entry ({i}, {i}) is {diag[i]}, expected 0")
    return matrix


def _max_offdiag(A: np.ndarray) -> float:
    off = np.abs(A - np.diag(np.diagonal(A)))
    return float(off.max())


def symmetric_eigendecompose(matrix):
    """Full spectral decomposition of a symmetric matrix by cyclic Jacobi sweeps.

    Returns (eigenvalues, eigenvectors) with eigenvalues descending and
    eigenvectors as orthonormal columns, each sign-normalized so its first
    nonzero component is positive. Sweeps stop once every off-diagonal
    magnitude falls below JACOBI_OFFDIAG_TOL times the Frobenius norm.
    """
    A = np.asarray(matrix, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"matrix must be square, got shape {A.shape}")
    asym = np.abs(A - A.T)
    if asym.size and asym.max() > 1e-9:
        i, j = np.argwhere(asym == asym.max())[0]
        raise ValueError(f"matrix not symmetric at ({i}, {j}): {A[i, j]} vs {A[j, i]}")
    n = A.shape[0]
    A = (A + A.T) / 2.0
    V = np.eye(n)
    norm = float(np.linalg.norm(A))
    if norm == 0.0 or n == 1:
        return np.diagonal(A).copy(), V

    threshold = JACOBI_OFFDIAG_TOL * norm
    sweeps = 0
    while _max_offdiag(A) >= threshold:
        if sweeps >= MAX_SWEEPS:
            raise RuntimeError(f"Jacobi sweeps did not converge in {MAX_SWEEPS} iterations")
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                if theta == 0.0:
                    t = 1.0
                else:
                    t = np.sign(theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c
                row_p, row_q = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
                col_p, col_q = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                A[p, q] = A[q, p] = 0.0
                vcol_p, vcol_q = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * vcol_p - s * vcol_q
                V[:, q] = s * vcol_p + c * vcol_q

    eigenvalues = np.diagonal(A).copy()
    order = np.argsort(-eigenvalues, kind="stable")
    eigenvalues = eigenvalues[order]
    V = V[:, order]
    for j in range(n):
        nz = np.flatnonzero(V[:, j])
        if nz.size and V[nz[0], j] < 0.0:
            V[:, j] = -V[:, j]
    return eigenvalues, V


def embed(matrix, tol: float = 1e-9) -> Embedding:
    """Embed a dissimilarity matrix into Euclidean coordinates.

    Eigenpairs of the double-centered matrix are kept while their eigenvalue
    exceeds tol times the largest one; everything below, including any
    negative spectrum, is dropped. Raises DegenerateEmbeddingError when
    nothing clears the threshold (all objects mutually identical).
    """
    matrix = check_dissimilarity_matrix(matrix)
    if not tol > 0:
        raise ValueError(f"tol must be > 0, got {tol}")
    n = matrix.shape[0]
    centering = np.eye(n) - np.full((n, n), 1.0 / n)
    B = -0.5 * centering @ (matrix * matrix) @ centering
    B = (B + B.T) / 2.0
    eigenvalues, eigenvectors = symmetric_eigendecompose(B)
    lam_max = eigenvalues[0]
    keep = eigenvalues > tol * lam_max if lam_max > 0 else np.zeros(n, dtype=bool)
    if not keep.any():
        raise DegenerateEmbeddingError(
            "no eigenvalue above tolerance; all objects are mutually identical"
        )
    negative_mass = float(-eigenvalues[eigenvalues < 0.0].sum())
    retained = eigenvalues[keep]
    points = eigenvectors[:, keep] * np.sqrt(retained)
    return Embedding(points=points, eigenvalues=retained, negative_mass=negative_mass)


def pairwise_distances(points) -> np.ndarray:
    """Euclidean distance matrix of a point set (a valid dissimilarity matrix)."""
    points = np.asarray(points, dtype=float)
    diffs = points[:, None, :] - points[None, :, :]
    return np.sqrt((diffs * diffs).sum(axis=2))
