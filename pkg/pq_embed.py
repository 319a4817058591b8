"""
Signature-(p, q) coordinates recovered from a Gram decomposition.

A point set in R^{p,q} is stored split into its positive part (first p
coordinates) and negative part (last q coordinates); the interval square
of a difference vector v is ||v_p||^2 - ||v_q||^2.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

import config
from dissim_core import GramDecomposition, readonly_array, squared_distances


@dataclass(frozen=True)
class PseudoEuclideanEmbedding:
    pos_coords: np.ndarray  # n x p
    neg_coords: np.ndarray  # n x q

    def __post_init__(self):
        pos = readonly_array(self.pos_coords)
        neg = readonly_array(self.neg_coords)
        if pos.ndim != 2 or neg.ndim != 2 or pos.shape[0] != neg.shape[0]:
            raise ValueError(
                f"coordinate blocks must be 2-D with equal row counts, got {pos.shape} and {neg.shape}")
        object.__setattr__(self, 'pos_coords', pos)
        object.__setattr__(self, 'neg_coords', neg)

    @property
    def n(self) -> int:
        return self.pos_coords.shape[0]

    @property
    def p(self) -> int:
        return self.pos_coords.shape[1]

    @property
    def q(self) -> int:
        return self.neg_coords.shape[1]


def embed_pq(dec: GramDecomposition) -> PseudoEuclideanEmbedding:
    """
    Coordinates sqrt(|λ_k|) * U[:, k], split by the sign of λ_k.

    Columns in the zero bucket (|λ| <= tau) are dropped.
    """
    values = dec.eigenvalues
    U = dec.eigenvectors
    pos = values > dec.tau
    neg = values < -dec.tau
    pos_coords = U[:, pos] * np.sqrt(values[pos])
    neg_coords = U[:, neg] * np.sqrt(-values[neg])
    return PseudoEuclideanEmbedding(pos_coords, neg_coords)


def absolute_coords(emb: PseudoEuclideanEmbedding) -> np.ndarray:
    """The |λ| embedding (signs discarded), used as the classical JL input."""
    return np.hstack([emb.pos_coords, emb.neg_coords])


def _check_index(emb: PseudoEuclideanEmbedding, i: int, j: int):
    for idx in (i, j):
        if not 0 <= idx < emb.n:
            raise IndexError(f"point index {idx} out of range for n={emb.n}")


def _block_sq(block: np.ndarray, i: int, j: int) -> float:
    diff = block[i] - block[j]
    return float(diff @ diff)


def pq_interval(emb: PseudoEuclideanEmbedding, i: int, j: int) -> float:
    _check_index(emb, i, j)
    return _block_sq(emb.pos_coords, i, j) - _block_sq(emb.neg_coords, i, j)


def euclid_interval(emb: PseudoEuclideanEmbedding, i: int, j: int) -> float:
    _check_index(emb, i, j)
    return _block_sq(emb.pos_coords, i, j) + _block_sq(emb.neg_coords, i, j)


def _factor(euclid: float, interval: float, null_tol: float) -> float:
    if euclid == 0.0:
        return 1.0
    if abs(interval) <= null_tol * euclid:
        return math.inf
    return abs(euclid / interval)


def distortion_factor(emb: PseudoEuclideanEmbedding, i: int, j: int,
                      null_tol: Optional[float] = None) -> float:
    """
    C_ij = |euclidean interval / (p,q) interval| for a pair of distinct points.

    Null-like pairs (vanishing (p,q) interval, positive euclidean interval)
    return math.inf.
    """
    if i == j:
        raise ValueError("distortion factor needs two distinct points")
    null_tol = config.NULL_TOL if null_tol is None else null_tol
    return _factor(euclid_interval(emb, i, j), pq_interval(emb, i, j), null_tol)


def pairwise_pq_intervals(emb: PseudoEuclideanEmbedding) -> np.ndarray:
    return squared_distances(emb.pos_coords) - squared_distances(emb.neg_coords)


def pairwise_euclid_intervals(emb: PseudoEuclideanEmbedding) -> np.ndarray:
    return squared_distances(emb.pos_coords) + squared_distances(emb.neg_coords)


def distortion_factors(emb: PseudoEuclideanEmbedding, null_tol: Optional[float] = None) -> np.ndarray:
    """All C_ij at once; inf marks null pairs and the diagonal is 1."""
    null_tol = config.NULL_TOL if null_tol is None else null_tol
    pos = squared_distances(emb.pos_coords)
    neg = squared_distances(emb.neg_coords)
    euclid = pos + neg
    interval = pos - neg
    factors = np.ones_like(euclid)
    moving = euclid > 0
    null = moving & (np.abs(interval) <= null_tol * euclid)
    regular = moving & ~null
    factors[regular] = np.abs(euclid[regular] / interval[regular])
    factors[null] = np.inf
    return factors


def expected_norm_ratio(p: int, q: int) -> Optional[float]:
    """(p+q)/(p-q), the concentration point of ||v||_E^2 / ||v||_{p,q}^2."""
    if p == q:
        return None
    return (p + q) / (p - q)


def max_negative_dim(p: int, c: float) -> int:
    """Largest q with q < ((c-1)/(c+1)) p, i.e. expected ratio below c."""
    if c <= 1:
        raise ValueError("distortion constant must exceed 1")
    bound = (c - 1) / (c + 1) * p
    return max(0, math.ceil(bound) - 1)


@dataclass(frozen=True)
class NormRatioSample:
    p: int
    q: int
    samples: np.ndarray
    expected_ratio: Optional[float]

    @property
    def degenerate(self) -> bool:
        return self.p == self.q

    def fraction_below(self, c: float) -> float:
        """Share of samples with |ratio| < c; negative ratios count by magnitude."""
        return float(np.mean(np.abs(self.samples) < c))

    @property
    def fraction_negative(self) -> float:
        return float(np.mean(self.samples < 0))

    def summary(self, c: Optional[float] = None) -> dict:
        finite = self.samples[np.isfinite(self.samples)]
        result = {
            'p': self.p,
            'q': self.q,
            'trials': int(len(self.samples)),
            'expected_ratio': self.expected_ratio,
            'degenerate': self.degenerate,
            'mean': float(finite.mean()) if len(finite) else None,
            'median': float(np.median(self.samples)),
            'fraction_negative': self.fraction_negative,
        }
        if c is not None:
            result['c'] = c
            result['fraction_below_c'] = self.fraction_below(c)
        return result


def norm_ratio_sample(p: int, q: int, trials: int, seed: int) -> NormRatioSample:
    """
    Draw unit vectors uniformly on S^{p+q-1} and return ||v||_E^2 / ||v||_{p,q}^2.

    Args:
        p (int): positive dimensions
        q (int): negative dimensions
        trials (int): number of sphere samples
        seed (int): generator seed

    Returns:
        NormRatioSample: samples and the expected ratio (None when p == q)
    """
    if p < 0 or q < 0 or p + q < 1:
        raise ValueError(f"need p, q >= 0 and p + q >= 1, got p={p}, q={q}")
    if trials < 1:
        raise ValueError("trials must be positive")
    if p == q:
        print(f"⚠️ p = q = {p}: expected norm ratio is undefined, samples returned unchecked")

    rng = np.random.default_rng(seed)
    V = rng.standard_normal((trials, p + q))
    V /= np.linalg.norm(V, axis=1, keepdims=True)
    pos = np.sum(V[:, :p] ** 2, axis=1)
    neg = np.sum(V[:, p:] ** 2, axis=1)
    with np.errstate(divide='ignore'):
        ratios = (pos + neg) / (pos - neg)
    return NormRatioSample(p, q, ratios, expected_norm_ratio(p, q))
