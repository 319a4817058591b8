"""
Dissimilarity matrices and their centered Gram decomposition.

Everything downstream (both embeddings, the projections and the reports)
starts from a validated DissimilarityMatrix and the GramDecomposition of
-CDC/2 computed here.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import linalg
from scipy.spatial.distance import cdist

import config


class DissimilarityError(ValueError):
    """Input is not a usable symmetric hollow dissimilarity matrix."""


class NumericalError(RuntimeError):
    """A numerical routine failed or was handed data outside its domain."""


def readonly_array(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class DissimilarityMatrix:
    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'entries', readonly_array(self.entries))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def max_abs(self) -> float:
        return float(np.max(np.abs(self.entries))) if self.n else 0.0


@dataclass(frozen=True)
class GramDecomposition:
    eigenvalues: np.ndarray  # descending
    eigenvectors: np.ndarray  # columns paired with eigenvalues
    p: int
    q: int
    zero_rank: int
    tau: float

    def __post_init__(self):
        object.__setattr__(self, 'eigenvalues', readonly_array(self.eigenvalues))
        object.__setattr__(self, 'eigenvectors', readonly_array(self.eigenvectors))

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    @property
    def smallest(self) -> float:
        """e_n, the least eigenvalue."""
        return float(self.eigenvalues[-1])

    def reconstruct(self) -> np.ndarray:
        U = self.eigenvectors
        return (U * self.eigenvalues) @ U.T


def as_array(D) -> np.ndarray:
    if isinstance(D, DissimilarityMatrix):
        return D.entries
    return np.asarray(D, dtype=float)


def validate_matrix(raw, tol: Optional[float] = None) -> DissimilarityMatrix:
    """
    Check and symmetrize a raw dissimilarity matrix.

    Args:
        raw: n x n array-like of reals
        tol (float): relative tolerance for asymmetry and diagonal entries

    Returns:
        DissimilarityMatrix: (raw + raw^T)/2 with an exactly zero diagonal
    """
    tol = config.SYMMETRY_TOL if tol is None else tol
    try:
        M = np.asarray(raw, dtype=float)
    except (TypeError, ValueError) as e:
        raise DissimilarityError(f"matrix entries are not numeric: {e}")
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DissimilarityError(f"matrix must be square, got shape {M.shape}")

    bad = np.argwhere(~np.isfinite(M))
    if len(bad):
        i, j = bad[0]
        raise DissimilarityError(f"non-finite entry {M[i, j]} at ({i},{j})")

    n = M.shape[0]
    limit = tol * max(1.0, float(np.max(np.abs(M)))) if n else 0.0

    diag = np.abs(np.diag(M))
    if n and diag.max() > limit:
        i = int(np.argmax(diag > limit))
        raise DissimilarityError(f"non-zero diagonal entry {M[i, i]} at ({i},{i})")

    asym = np.abs(M - M.T)
    offending = np.argwhere(np.triu(asym > limit, k=1))
    if len(offending):
        i, j = offending[0]
        raise DissimilarityError(
            f"asymmetry at ({i},{j}): {M[i, j]} vs {M[j, i]}")

    sym = (M + M.T) / 2.0
    np.fill_diagonal(sym, 0.0)
    return DissimilarityMatrix(sym)


def center_gram(D) -> np.ndarray:
    """B = -CDC/2 by double centering (row, column and grand means)."""
    M = as_array(D)
    row_means = M.mean(axis=1, keepdims=True)
    col_means = M.mean(axis=0, keepdims=True)
    B = -0.5 * (M - row_means - col_means + M.mean())
    return (B + B.T) / 2.0


def decompose(B, tau_rel: Optional[float] = None) -> GramDecomposition:
    """
    Full dense symmetric eigendecomposition with signature bookkeeping.

    Eigenvalues with |λ| <= tau = tau_rel * max(1, max|λ|) form the zero
    bucket and are counted in neither p nor q.
    """
    tau_rel = config.TAU_REL if tau_rel is None else tau_rel
    B = np.asarray(B, dtype=float)
    if B.ndim != 2 or B.shape[0] != B.shape[1]:
        raise DissimilarityError(f"Gram matrix must be square, got shape {B.shape}")
    scale = max(1.0, float(np.max(np.abs(B)))) if B.size else 1.0
    if B.size and np.max(np.abs(B - B.T)) > config.GRAM_SYMMETRY_TOL * scale:
        raise DissimilarityError("Gram matrix is not symmetric")

    if B.shape[0] == 0:
        return GramDecomposition(np.zeros(0), np.zeros((0, 0)), 0, 0, 0, tau_rel)
    try:
        values, vectors = linalg.eigh(B)
    except (linalg.LinAlgError, ValueError) as e:
        raise NumericalError(f"symmetric eigensolver failed: {e}")

    values = values[::-1]
    vectors = vectors[:, ::-1]
    tau = tau_rel * max(1.0, float(np.max(np.abs(values))))
    p = int(np.sum(values > tau))
    q = int(np.sum(values < -tau))
    return GramDecomposition(values, vectors, p, q, len(values) - p - q, tau)


def gram_decomposition(D, tau_rel: Optional[float] = None) -> GramDecomposition:
    return decompose(center_gram(D), tau_rel)


def squared_distances(X) -> np.ndarray:
    """Pairwise squared Euclidean distances of the rows of X, zero diagonal."""
    X = np.asarray(X, dtype=float)
    n = X.shape[0]
    if X.ndim != 2 or X.shape[1] == 0:
        return np.zeros((n, n))
    S = cdist(X, X, 'sqeuclidean')
    np.fill_diagonal(S, 0.0)
    return S


def find_triangle_violation(D, tol: Optional[float] = None) -> Optional[Tuple[int, int, int]]:
    """First (i, j, k) with D_ik > D_ij + D_jk, or None if the inequality holds."""
    M = as_array(D)
    tol = config.SYMMETRY_TOL if tol is None else tol
    slack = tol * max(1.0, float(np.max(np.abs(M)))) if M.size else 0.0
    for j in range(M.shape[0]):
        through_j = M[:, j][:, None] + M[j, :][None, :]
        hits = np.argwhere(M > through_j + slack)
        if len(hits):
            i, k = hits[0]
            return int(i), j, int(k)
    return None


def is_metric(D) -> bool:
    M = as_array(D)
    return bool(np.all(M >= 0)) and find_triangle_violation(M) is None
