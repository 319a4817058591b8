"""
Generalized power distances of equal-radius weighted points.

Any symmetric hollow D equals E + 4r^2(I - J) for a Euclidean squared
distance matrix E once 2r^2 >= |e_n| (e_n the least eigenvalue of Gram(D)),
so D_ij = ||p_i - p_j||^2 - (r + r)^2 for the MDS centers p_i of E.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

import config
from dissim_core import (GramDecomposition, NumericalError, as_array,
                         center_gram, decompose, gram_decomposition,
                         readonly_array, squared_distances)

RADIUS_RULES = ('minimal', 'half-root')


@dataclass(frozen=True)
class PowerRepresentation:
    centers: np.ndarray  # n x d
    radius: float
    discarded: float = 0.0  # negative Gram(E) mass clamped away below the minimal radius

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError(f"radius must be non-negative, got {self.radius}")
        object.__setattr__(self, 'centers', readonly_array(np.atleast_2d(self.centers)))

    @property
    def n(self) -> int:
        return self.centers.shape[0]

    @property
    def dim(self) -> int:
        return self.centers.shape[1]

    @property
    def clamped(self) -> bool:
        return self.discarded > 0.0


@dataclass(frozen=True)
class GaussianCluster:
    mean: np.ndarray
    sigma: float  # root total variance: E||x - mean||^2 = sigma^2

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError(f"sigma must be non-negative, got {self.sigma}")
        object.__setattr__(self, 'mean', readonly_array(np.atleast_1d(self.mean)))


def power_distance(c1, r1: float, c2, r2: float) -> float:
    """||c1 - c2||^2 - (r1 + r2)^2; negative when the balls overlap."""
    c1 = np.atleast_1d(np.asarray(c1, dtype=float))
    c2 = np.atleast_1d(np.asarray(c2, dtype=float))
    if c1.shape != c2.shape:
        raise ValueError(f"center dimensions differ: {c1.shape} vs {c2.shape}")
    if r1 < 0 or r2 < 0:
        raise ValueError("radii must be non-negative")
    diff = c1 - c2
    return float(diff @ diff) - (r1 + r2) ** 2


def power_radius(dec: GramDecomposition, rule: str = 'minimal') -> float:
    """
    Common radius that turns D into a Euclidean matrix after the off-diagonal shift.

    Args:
        dec (GramDecomposition): decomposition of Gram(D)
        rule (str): 'minimal' gives the minimal r = sqrt(|e_n|/2) (2r^2 = |e_n|);
            'half-root' gives r = sqrt(|e_n|)/2, which is smaller when |e_n| > 0

    Returns:
        float: 0 when e_n >= -tau
    """
    if rule not in RADIUS_RULES:
        raise ValueError(f"unknown radius rule '{rule}', expected one of {RADIUS_RULES}")
    e_n = dec.smallest if dec.n else 0.0
    if e_n >= -dec.tau:
        return 0.0
    if rule == 'half-root':
        return math.sqrt(-e_n) / 2.0
    return math.sqrt(-e_n / 2.0)


def euclideanize(D, r: float) -> np.ndarray:
    """E = D + 4r^2 (J - I): every off-diagonal entry shifted by 4r^2."""
    if r < 0:
        raise ValueError(f"radius must be non-negative, got {r}")
    E = as_array(D) + 4.0 * r * r
    np.fill_diagonal(E, 0.0)
    return E


def _mds(E, tau_rel: Optional[float], clamp: bool) -> Tuple[np.ndarray, float]:
    dec = decompose(center_gram(E), tau_rel)
    if not clamp and dec.n and dec.smallest < -config.NON_EUCLIDEAN_FACTOR * dec.tau:
        raise NumericalError(
            f"matrix is not Euclidean: Gram eigenvalue {dec.smallest:.6g} below "
            f"-{config.NON_EUCLIDEAN_FACTOR:g} * tau ({dec.tau:.3g})")
    keep = dec.eigenvalues > dec.tau
    negative = dec.eigenvalues[dec.eigenvalues < -dec.tau]
    centers = dec.eigenvectors[:, keep] * np.sqrt(dec.eigenvalues[keep])
    return centers, float(-negative.sum())


def recover_centers(E, tau_rel: Optional[float] = None, clamp: bool = False) -> np.ndarray:
    """
    Classical MDS coordinates of a Euclidean squared-distance matrix.

    With clamp=True the negative Gram eigenvalues are set to 0 instead of
    raising, giving the nearest PSD realization of E.
    """
    return _mds(E, tau_rel, clamp)[0]


def power_representation(D, radius: Optional[float] = None, rule: str = 'minimal',
                         dec: Optional[GramDecomposition] = None,
                         tau_rel: Optional[float] = None) -> PowerRepresentation:
    """
    Equal-radius weighted points reproducing D; `radius` overrides the rule.

    A radius below the minimal one leaves Gram(E) indefinite. Its negative
    eigenvalues are clamped to 0 and their total magnitude is kept in
    `discarded`, so D is then only approximated.
    """
    dec = dec if dec is not None else gram_decomposition(D, tau_rel)
    minimal = power_radius(dec, 'minimal')
    if radius is None:
        radius = power_radius(dec, rule)
    below_minimal = radius < minimal * (1.0 - 1e-9)
    centers, discarded = _mds(euclideanize(D, radius), tau_rel, clamp=below_minimal)
    return PowerRepresentation(centers, radius, discarded if below_minimal else 0.0)


def pairwise_power_distances(rep: PowerRepresentation, hollow: bool = True) -> np.ndarray:
    P = squared_distances(rep.centers) - 4.0 * rep.radius ** 2
    if hollow:
        np.fill_diagonal(P, 0.0)
    return P


def silhouette_gaussian(a: GaussianCluster, b: GaussianCluster) -> float:
    """SC_W = ||mu_a - mu_b||^2 - (sigma_a + sigma_b)^2, the power distance of (mu, sigma)."""
    return power_distance(a.mean, a.sigma, b.mean, b.sigma)


def silhouette_normalized(a: GaussianCluster, b: GaussianCluster) -> float:
    """Normalized score in [-1, 1]; -1 for two identical delta distributions."""
    sc = silhouette_gaussian(a, b)
    spread = (a.sigma + b.sigma) ** 2
    total = sc + 2.0 * spread  # ||mu_a - mu_b||^2 + (sigma_a + sigma_b)^2
    if total == 0.0:
        return -1.0
    return sc / total


def silhouette_tradeoff(a: GaussianCluster, b: GaussianCluster, c: float = 1.0) -> float:
    """Unnormalized score with inner-distance weight c >= 1: ||mu_a - mu_b||^2 - (c-1)(sigma_a^2 + sigma_b^2)."""
    if c < 1:
        raise ValueError("trade-off constant c must be at least 1")
    if a.mean.shape != b.mean.shape:
        raise ValueError(f"mean dimensions differ: {a.mean.shape} vs {b.mean.shape}")
    diff = a.mean - b.mean
    return float(diff @ diff) - (c - 1.0) * (a.sigma ** 2 + b.sigma ** 2)


def silhouette_monte_carlo(a: GaussianCluster, b: GaussianCluster,
                           samples: int, seed: int) -> Tuple[float, float]:
    """
    Sampling estimate of SC_W with its standard error.

    The squared 2-Wasserstein term is sampled through the optimal coupling
    (both clusters driven by the same standard normal draw); each spread term
    E||x - x'||^2 uses independent pairs.
    """
    if a.mean.shape != b.mean.shape:
        raise ValueError(f"mean dimensions differ: {a.mean.shape} vs {b.mean.shape}")
    if samples < 2:
        raise ValueError("need at least two samples")
    m = a.mean.shape[0]
    rng = np.random.default_rng(seed)
    noise = rng.standard_normal((5, samples, m)) / math.sqrt(m)

    coupled = (a.mean - b.mean) + (a.sigma - b.sigma) * noise[0]
    spread_a = a.sigma * (noise[1] - noise[2])
    spread_b = b.sigma * (noise[3] - noise[4])
    terms = (np.sum(coupled ** 2, axis=1)
             - np.sum(spread_a ** 2, axis=1)
             - np.sum(spread_b ** 2, axis=1))
    return float(terms.mean()), float(terms.std(ddof=1) / math.sqrt(samples))
