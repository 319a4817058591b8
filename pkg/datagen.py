"""
Synthetic non-Euclidean datasets and graph hop-count matrices.
"""

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components, shortest_path
from scipy.spatial.distance import cdist

import config
from dissim_core import DissimilarityMatrix, validate_matrix


@dataclass(frozen=True)
class SimplexSpec:
    n: int
    dominance: Optional[float] = None  # alpha; None -> SIMPLEX_DOMINANCE_PER_POINT * n
    seed: int = 0
    gap_power: float = config.SIMPLEX_GAP_POWER

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"simplex needs n >= 2, got {self.n}")
        if self.dominance is not None and self.dominance <= 0:
            raise ValueError(f"dominance must be positive, got {self.dominance}")
        if self.gap_power <= 0 or self.gap_power > 2:
            raise ValueError(f"gap power must lie in (0, 2], got {self.gap_power}")

    @property
    def alpha(self) -> float:
        if self.dominance is None:
            return config.SIMPLEX_DOMINANCE_PER_POINT * self.n
        return self.dominance


@dataclass(frozen=True)
class BallSpec:
    n: int
    dim: int = config.BALL_DIM
    radius_range: Tuple[float, float] = (config.BALL_RMIN, config.BALL_RMAX)
    seed: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"need at least two balls, got {self.n}")
        if self.dim < 1:
            raise ValueError(f"dimension must be positive, got {self.dim}")
        r_min, r_max = self.radius_range
        if r_min < 0 or r_min > r_max:
            raise ValueError(f"invalid radius range ({r_min}, {r_max})")


@dataclass(frozen=True)
class SpectrumSpec:
    """Prescribed non-zero Gram eigenvalues; magnitudes in `negative`."""
    n: int
    positive: Sequence[float] = field(default_factory=tuple)
    negative: Sequence[float] = field(default_factory=tuple)
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'positive', tuple(float(v) for v in self.positive))
        object.__setattr__(self, 'negative', tuple(float(v) for v in self.negative))
        if self.n < 2:
            raise ValueError(f"need n >= 2, got {self.n}")
        if len(self.positive) + len(self.negative) > self.n - 1:
            raise ValueError(
                f"at most n-1 = {self.n - 1} non-zero eigenvalues, got "
                f"{len(self.positive) + len(self.negative)}")
        if any(v <= 0 for v in self.positive + self.negative):
            raise ValueError("eigenvalue magnitudes must be positive")


def gen_simplex(spec: SimplexSpec) -> DissimilarityMatrix:
    """
    Regular simplex vertices plus one dominating coordinate z ~ U[0, alpha].

    D_ij = ||e_i - e_j||^2 - |z_i - z_j|^gap_power. With gap_power = 1 the
    subtracted matrix is the resistance metric of a path, whose Gram part has
    n-1 large eigenvalues, so most of Gram(D) turns negative; gap_power = 2
    concentrates the deficit in a single large negative eigenvalue.
    """
    rng = np.random.default_rng(spec.seed)
    z = rng.uniform(0.0, spec.alpha, size=spec.n)
    gaps = np.abs(z[:, None] - z[None, :]) ** spec.gap_power
    D = 2.0 - gaps
    np.fill_diagonal(D, 0.0)
    return validate_matrix(D)


def gen_balls(spec: BallSpec) -> DissimilarityMatrix:
    """Surface-to-surface gap max(0, ||c_i - c_j|| - r_i - r_j) between random balls."""
    rng = np.random.default_rng(spec.seed)
    centers = rng.standard_normal((spec.n, spec.dim))
    radii = rng.uniform(spec.radius_range[0], spec.radius_range[1], size=spec.n)
    gaps = cdist(centers, centers) - radii[:, None] - radii[None, :]
    D = np.maximum(gaps, 0.0)
    np.fill_diagonal(D, 0.0)
    return validate_matrix(D)


def gen_spectrum(spec: SpectrumSpec) -> DissimilarityMatrix:
    """D whose centered Gram matrix has exactly the requested spectrum."""
    rng = np.random.default_rng(spec.seed)
    values = np.array(spec.positive + tuple(-v for v in spec.negative))
    k = len(values)
    n = spec.n
    if k == 0:
        return validate_matrix(np.zeros((n, n)))

    G = rng.standard_normal((n, k))
    G -= G.mean(axis=0, keepdims=True)  # orthogonal to the all-ones vector
    U, _ = np.linalg.qr(G)
    B = (U * values) @ U.T
    diag = np.diag(B)
    D = diag[:, None] + diag[None, :] - 2.0 * B
    np.fill_diagonal(D, 0.0)
    return validate_matrix(D)


def pq_favoring_spec(n: int, seed: int = 0) -> SpectrumSpec:
    """Signature (n-2, 1): one very large negative eigenvalue, the rest positive."""
    positive = np.linspace(1.0, 2.0, n - 2)
    return SpectrumSpec(n, tuple(positive), (10.0 * n,), seed)


def power_favoring_spec(n: int, seed: int = 0, negative_fraction: float = 0.5) -> SpectrumSpec:
    """A constant fraction of small negative eigenvalues: small radius, large distortion."""
    if not 0 < negative_fraction < 1:
        raise ValueError("negative fraction must lie in (0, 1)")
    q = max(1, int(round((n - 1) * negative_fraction)))
    p = n - 1 - q
    positive = np.linspace(1.0, 2.0, p)
    negative = np.linspace(0.01, 0.05, q)
    return SpectrumSpec(n, tuple(positive), tuple(negative), seed)


def largest_component(adjacency: sparse.spmatrix) -> np.ndarray:
    """Sorted vertex ids of the largest connected component."""
    _, labels = connected_components(adjacency, directed=False)
    biggest = np.argmax(np.bincount(labels))
    return np.flatnonzero(labels == biggest)


def graph_hops(edges: Iterable[Tuple[int, int]]) -> DissimilarityMatrix:
    """
    Unweighted shortest-path hop counts of an undirected graph.

    Self-loops and duplicate edges are ignored. A disconnected graph is
    reduced to its largest connected component (vertices renumbered in
    increasing id order).
    """
    pairs = [(int(u), int(v)) for u, v in edges]
    if not pairs:
        raise ValueError("edge list is empty")
    if any(u < 0 or v < 0 for u, v in pairs):
        raise ValueError("vertex ids must be non-negative")

    n = max(max(u, v) for u, v in pairs) + 1
    kept = np.array([(u, v) for u, v in pairs if u != v], dtype=int).reshape(-1, 2)
    adjacency = sparse.coo_matrix(
        (np.ones(len(kept)), (kept[:, 0], kept[:, 1])), shape=(n, n)).tocsr()
    adjacency = ((adjacency + adjacency.T) > 0).astype(float)

    vertices = largest_component(adjacency)
    if len(vertices) < n:
        print(f"⚠️ Graph is disconnected: keeping largest component "
              f"({len(vertices)} of {n} vertices)")
        adjacency = adjacency[vertices][:, vertices]

    hops = shortest_path(adjacency, directed=False, unweighted=True)
    return validate_matrix(hops)
