"""
Seeded Gaussian random projections for the three JL routes.

Every route uses the same map constructor so a single seed reproduces a run:
the classical baseline and the power route draw one map, the (p, q) route
draws one per block (seed and seed + 1).
"""

import math
from dataclasses import dataclass

import numpy as np

import config
from dissim_core import readonly_array, squared_distances
from pq_embed import PseudoEuclideanEmbedding
from power_embed import PowerRepresentation


class ConfigError(ValueError):
    """Invalid projection settings."""


@dataclass(frozen=True)
class ProjectionConfig:
    epsilon: float = config.EPSILON
    dim_constant: float = config.DIM_CONSTANT
    seed: int = config.SEED

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise ConfigError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if not self.dim_constant > 0:
            raise ConfigError(f"dimension constant must be positive, got {self.dim_constant}")
        if int(self.seed) != self.seed or self.seed < 0:
            raise ConfigError(f"seed must be a non-negative integer, got {self.seed}")

    @property
    def log_base(self) -> int:
        return config.LOG_BASE


@dataclass(frozen=True)
class JLMap:
    matrix: np.ndarray  # m x d

    def __post_init__(self):
        object.__setattr__(self, 'matrix', readonly_array(self.matrix))

    @property
    def rows(self) -> int:
        return self.matrix.shape[0]

    @property
    def cols(self) -> int:
        return self.matrix.shape[1]

    def apply(self, X) -> np.ndarray:
        """Map each row of X (n x d) to R^m."""
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.cols:
            raise ValueError(f"expected rows of dimension {self.cols}, got shape {X.shape}")
        return X @ self.matrix.T


@dataclass(frozen=True)
class ProjectedPQ:
    pos_coords: np.ndarray
    neg_coords: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'pos_coords', readonly_array(self.pos_coords))
        object.__setattr__(self, 'neg_coords', readonly_array(self.neg_coords))

    @property
    def n(self) -> int:
        return self.pos_coords.shape[0]

    @property
    def p_dim(self) -> int:
        return self.pos_coords.shape[1]

    @property
    def q_dim(self) -> int:
        return self.neg_coords.shape[1]


@dataclass(frozen=True)
class ProjectedPower:
    centers: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, 'centers', readonly_array(self.centers))

    @property
    def n(self) -> int:
        return self.centers.shape[0]

    @property
    def dim(self) -> int:
        return self.centers.shape[1]


def target_dim(n: int, cfg: ProjectionConfig) -> int:
    """ceil(c * log2(n) / eps^2), at least 1."""
    if n < 2:
        raise ValueError(f"target dimension needs at least two points, got n={n}")
    m = cfg.dim_constant * math.log(n, cfg.log_base) / cfg.epsilon ** 2
    return max(1, math.ceil(m))


def gaussian_map(m: int, d: int, seed: int) -> JLMap:
    """m x d map with i.i.d. N(0, 1/m) entries."""
    if m < 1:
        raise ValueError(f"target dimension must be positive, got {m}")
    if d < 0:
        raise ValueError(f"source dimension must be non-negative, got {d}")
    rng = np.random.default_rng(seed)
    return JLMap(rng.normal(0.0, 1.0 / math.sqrt(m), size=(m, d)))


def project_classical(coords, cfg: ProjectionConfig) -> np.ndarray:
    coords = np.asarray(coords, dtype=float)
    m = target_dim(coords.shape[0], cfg)
    return gaussian_map(m, coords.shape[1], cfg.seed).apply(coords)


def _project_block(block: np.ndarray, m: int, seed: int) -> np.ndarray:
    if block.shape[1] == 0:
        return np.zeros((block.shape[0], 0))
    return gaussian_map(m, block.shape[1], seed).apply(block)


def project_pq(emb: PseudoEuclideanEmbedding, cfg: ProjectionConfig) -> ProjectedPQ:
    """Project the positive and negative blocks independently, each to target_dim(n)."""
    m = target_dim(emb.n, cfg)
    pos = _project_block(emb.pos_coords, m, cfg.seed)
    neg = _project_block(emb.neg_coords, m, cfg.seed + 1)
    return ProjectedPQ(pos, neg)


def project_power(rep: PowerRepresentation, cfg: ProjectionConfig) -> ProjectedPower:
    m = target_dim(rep.n, cfg)
    return ProjectedPower(gaussian_map(m, rep.dim, cfg.seed).apply(rep.centers), rep.radius)


def reconstruct(projected) -> np.ndarray:
    """
    Dissimilarities implied by projected points.

    Args:
        projected: ProjectedPQ (interval squares), ProjectedPower (power
            distances, hollow) or an n x m array (squared distances)

    Returns:
        np.ndarray: symmetric n x n matrix with zero diagonal
    """
    if isinstance(projected, ProjectedPQ):
        return squared_distances(projected.pos_coords) - squared_distances(projected.neg_coords)
    if isinstance(projected, ProjectedPower):
        D_hat = squared_distances(projected.centers) - 4.0 * projected.radius ** 2
        np.fill_diagonal(D_hat, 0.0)
        return D_hat
    return squared_distances(projected)
