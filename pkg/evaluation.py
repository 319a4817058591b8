"""
Distortion statistics, bound checks and relational k-means.
"""

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np
import pandas as pd
from sklearn.cluster import KMeans

import config
from dissim_core import as_array
from pq_embed import PseudoEuclideanEmbedding, distortion_factors

METHODS = ('jl', 'jl-pq', 'jl-power')


class RelativeErrorStats(NamedTuple):
    max_rel: float
    mean_rel: float
    median_rel: float
    excluded: int

    def to_dict(self) -> dict:
        return {
            'max_rel': self.max_rel,
            'mean_rel': self.mean_rel,
            'median_rel': self.median_rel,
            'excluded': self.excluded,
        }


@dataclass
class PQBoundCheck:
    violation_rate: float
    records: pd.DataFrame
    null_pairs: int


@dataclass
class PowerResidualCheck:
    max_residual: float
    bound: float
    fraction_within: float
    records: pd.DataFrame


@dataclass
class KMeansResult:
    k: int
    labels: np.ndarray
    relational_cost: float
    iterations: int
    seed: int

    def to_dict(self) -> dict:
        return {
            'k': self.k,
            'relational_cost': self.relational_cost,
            'iterations': self.iterations,
            'seed': self.seed,
            'cluster_sizes': np.bincount(self.labels, minlength=self.k).tolist(),
        }


@dataclass
class ProjectionReport:
    method: str
    n: int
    m: int
    epsilon: float
    dim_constant: float
    seed: int
    stats: RelativeErrorStats
    signature: tuple = (0, 0)
    radius: Optional[float] = None
    bounds: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method '{self.method}', expected one of {METHODS}")

    @property
    def m_total(self) -> int:
        """Output dimensions; the (p, q) route uses m per non-empty block."""
        if self.method != 'jl-pq':
            return self.m
        p, q = self.signature
        return self.m * (int(p > 0) + int(q > 0))

    def to_dict(self, manifest: Optional[dict] = None) -> dict:
        return {
            'manifest': manifest or {},
            'method': self.method,
            'n': self.n,
            'm': self.m,
            'm_total': self.m_total,
            'epsilon': self.epsilon,
            'const': self.dim_constant,
            'seed': self.seed,
            'signature': {'p': int(self.signature[0]), 'q': int(self.signature[1])},
            'radius': self.radius,
            'stats': self.stats.to_dict(),
            'bounds': dict(self.bounds),
        }


def _check_shapes(D: np.ndarray, D_hat: np.ndarray):
    if D.shape != D_hat.shape or D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise ValueError(f"shape mismatch: D {D.shape} vs D_hat {D_hat.shape}")


def relative_error_stats(D, D_hat) -> RelativeErrorStats:
    """
    |D_ij - D_hat_ij| / |D_ij| over off-diagonal pairs with D_ij != 0.

    Zero pairs are excluded and counted; non-finite reconstructions give an
    infinite max and mean. With no usable pair all statistics are 0.
    """
    D = as_array(D)
    D_hat = np.asarray(D_hat, dtype=float)
    _check_shapes(D, D_hat)
    iu = np.triu_indices(D.shape[0], k=1)
    d = D[iu]
    d_hat = D_hat[iu]
    keep = d != 0
    excluded = int(np.sum(~keep))
    if not keep.any():
        return RelativeErrorStats(0.0, 0.0, 0.0, excluded)

    with np.errstate(invalid='ignore'):
        rel = np.abs(d[keep] - d_hat[keep]) / np.abs(d[keep])
    rel[~np.isfinite(rel)] = np.inf
    if np.isinf(rel).any():
        return RelativeErrorStats(np.inf, np.inf, float(np.median(rel)), excluded)
    return RelativeErrorStats(float(rel.max()), float(rel.mean()), float(np.median(rel)), excluded)


def validate_pq_bound(D, emb: PseudoEuclideanEmbedding, D_hat, epsilon: float) -> PQBoundCheck:
    """
    Check D_hat_ij in D_ij (1 +- eps * C_ij) for every pair with finite C_ij.

    The band is centered at D_ij with half-width eps * C_ij * |D_ij|, so it
    stays well formed for negative dissimilarities.
    """
    D = as_array(D)
    D_hat = np.asarray(D_hat, dtype=float)
    _check_shapes(D, D_hat)
    if emb.n != D.shape[0]:
        raise ValueError(f"embedding has {emb.n} points, matrix has {D.shape[0]}")

    iu = np.triu_indices(D.shape[0], k=1)
    d = D[iu]
    d_hat = D_hat[iu]
    c = distortion_factors(emb)[iu]
    finite = np.isfinite(c)
    slack = config.REPRODUCTION_TOL * max(1.0, float(np.max(np.abs(D)))) if D.size else 0.0

    half_width = epsilon * np.where(finite, c, 0.0) * np.abs(d)
    lower = d - half_width
    upper = d + half_width
    within = (d_hat >= lower - slack) & (d_hat <= upper + slack)
    with np.errstate(divide='ignore', invalid='ignore'):
        ratio = np.where(d != 0, d_hat / d, np.nan)

    records = pd.DataFrame({
        'i': iu[0], 'j': iu[1], 'd': d, 'd_hat': d_hat, 'ratio': ratio,
        'c_ij': c, 'lower': lower, 'upper': upper, 'within': within,
    })
    records = records[finite].reset_index(drop=True)
    rate = float(1.0 - records['within'].mean()) if len(records) else 0.0
    return PQBoundCheck(rate, records, int(np.sum(~finite)))


def validate_power_residual(D, radius: float, D_hat, epsilon: float) -> PowerResidualCheck:
    """Residual max(0, |D_hat - D| - eps |D|) against the additive bound 4 eps r^2."""
    D = as_array(D)
    D_hat = np.asarray(D_hat, dtype=float)
    _check_shapes(D, D_hat)
    iu = np.triu_indices(D.shape[0], k=1)
    d = D[iu]
    d_hat = D_hat[iu]
    bound = 4.0 * epsilon * radius ** 2
    slack = config.REPRODUCTION_TOL * max(1.0, float(np.max(np.abs(D)))) if D.size else 0.0

    residual = np.maximum(0.0, np.abs(d_hat - d) - epsilon * np.abs(d))
    within = residual <= bound + slack
    records = pd.DataFrame({
        'i': iu[0], 'j': iu[1], 'd': d, 'd_hat': d_hat,
        'residual': residual, 'bound': bound, 'within': within,
    })
    if not len(records):
        return PowerResidualCheck(0.0, bound, 1.0, records)
    return PowerResidualCheck(float(residual.max()), bound, float(within.mean()), records)


def relational_cost(D, labels) -> float:
    """Sum over clusters of (1 / (2|C|)) * sum_{i,j in C} D_ij."""
    D = as_array(D)
    labels = np.asarray(labels)
    if labels.shape != (D.shape[0],):
        raise ValueError(f"expected {D.shape[0]} labels, got shape {labels.shape}")
    cost = 0.0
    for label in np.unique(labels):
        members = np.flatnonzero(labels == label)
        cost += D[np.ix_(members, members)].sum() / (2.0 * len(members))
    return float(cost)


def _check_k(k: int, n: int):
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in [1, {n}], got {k}")


def _count(value: Optional[int], default: int, name: str) -> int:
    value = default if value is None else value
    if value < 1:
        raise ValueError(f"{name} must be at least 1, got {value}")
    return int(value)


def _cluster_distances(D: np.ndarray, labels: np.ndarray, k: int) -> np.ndarray:
    """n x k relational point-to-cluster distances; inf for empty clusters."""
    H = np.zeros((D.shape[0], k))
    H[np.arange(D.shape[0]), labels] = 1.0
    sizes = H.sum(axis=0)
    S = D @ H
    within = np.einsum('ik,ij,jk->k', H, D, H)
    with np.errstate(divide='ignore', invalid='ignore'):
        dist = S / sizes - within / (2.0 * sizes ** 2)
    dist[:, sizes == 0] = np.inf
    return dist


def _lloyd_once(D: np.ndarray, k: int, rng: np.random.Generator, max_iter: int):
    n = D.shape[0]
    seeds = rng.choice(n, size=k, replace=False)
    labels = np.argmin(D[:, seeds], axis=1)
    labels[seeds] = np.arange(k)

    iterations = 0
    for iterations in range(1, max_iter + 1):
        dist = _cluster_distances(D, labels, k)
        new_labels = np.argmin(dist, axis=1)
        # reseed empty clusters with the worst-fitting points
        for empty in np.setdiff1d(np.arange(k), new_labels):
            fit = dist[np.arange(n), new_labels]
            counts = np.bincount(new_labels, minlength=k)
            movable = counts[new_labels] > 1
            if not movable.any():
                break
            worst = int(np.argmax(np.where(movable, fit, -np.inf)))
            new_labels[worst] = empty
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
    return labels, iterations


def relational_kmeans(D, k: int, seed: int = 0, max_iter: Optional[int] = None,
                      restarts: Optional[int] = None) -> KMeansResult:
    """
    Lloyd iterations driven only by the dissimilarity matrix.

    The distance of point i to cluster C is
    (1/|C|) sum_j D_ij - (1/(2|C|^2)) sum_{j,l} D_jl, which for squared
    Euclidean D is the squared distance to the centroid. Best of `restarts`
    runs by relational cost.
    """
    D = as_array(D)
    n = D.shape[0]
    _check_k(k, n)
    max_iter = _count(max_iter, config.KMEANS_MAX_ITER, 'max_iter')
    restarts = _count(restarts, config.KMEANS_RESTARTS, 'restarts')
    if k == n:
        return KMeansResult(k, np.arange(n), 0.0, 0, seed)

    rng = np.random.default_rng(seed)
    best = None
    for _ in range(restarts):
        labels, iterations = _lloyd_once(D, k, rng, max_iter)
        cost = relational_cost(D, labels)
        if best is None or cost < best.relational_cost:
            best = KMeansResult(k, labels, cost, iterations, seed)
    return best


def kmeans_projected(coords, D, k: int, seed: int = 0,
                     restarts: Optional[int] = None) -> KMeansResult:
    """Euclidean k-means on embedded rows, scored by relational cost on the original D."""
    coords = np.asarray(coords, dtype=float)
    D = as_array(D)
    n = D.shape[0]
    _check_k(k, n)
    if coords.shape[0] != n:
        raise ValueError(f"coords have {coords.shape[0]} rows, matrix has {n}")
    restarts = _count(restarts, config.KMEANS_RESTARTS, 'restarts')
    if k == n:
        return KMeansResult(k, np.arange(n), 0.0, 0, seed)
    if coords.shape[1] == 0:
        coords = np.zeros((n, 1))

    model = KMeans(n_clusters=k, n_init=restarts, max_iter=config.KMEANS_MAX_ITER,
                   random_state=seed)
    labels = model.fit_predict(coords)
    return KMeansResult(k, labels, relational_cost(D, labels), int(model.n_iter_), seed)
