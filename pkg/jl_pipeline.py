from dataclasses import dataclass
from typing import Optional

import numpy as np

import config
from dissim_core import (DissimilarityMatrix, GramDecomposition, as_array,
                         gram_decomposition, is_metric)
from evaluation import (METHODS, ProjectionReport, kmeans_projected,
                        relational_kmeans, relative_error_stats,
                        validate_pq_bound, validate_power_residual)
from pq_embed import PseudoEuclideanEmbedding, absolute_coords, embed_pq
from power_embed import PowerRepresentation, power_radius, power_representation
from projection import (ProjectedPower, ProjectedPQ, ProjectionConfig,
                        project_classical, project_pq, project_power,
                        reconstruct, target_dim)


@dataclass
class ProjectionResult:
    method: str
    config: ProjectionConfig
    m: int
    projected: object  # ndarray | ProjectedPQ | ProjectedPower
    D_hat: np.ndarray
    radius: Optional[float] = None
    discarded: float = 0.0

    def coordinates(self) -> np.ndarray:
        """Projected rows as one Euclidean array (pq blocks concatenated)."""
        if isinstance(self.projected, ProjectedPQ):
            return np.hstack([self.projected.pos_coords, self.projected.neg_coords])
        if isinstance(self.projected, ProjectedPower):
            return np.asarray(self.projected.centers)
        return np.asarray(self.projected)


class JLPipeline:
    def __init__(self, matrix: DissimilarityMatrix, quiet: bool = False):
        """Wrap a validated matrix; decompositions are computed once and cached."""
        self.matrix = matrix
        self.quiet = quiet
        self._decomposition = None
        self._embedding = None
        self._power = {}

    def say(self, message: str):
        if not self.quiet:
            print(message)

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def decomposition(self) -> GramDecomposition:
        if self._decomposition is None:
            self.say("📊 Decomposing Gram matrix...")
            self._decomposition = gram_decomposition(self.matrix)
            dec = self._decomposition
            self.say(f"✓ Signature (p, q) = ({dec.p}, {dec.q}), zero rank {dec.zero_rank}")
        return self._decomposition

    @property
    def embedding(self) -> PseudoEuclideanEmbedding:
        if self._embedding is None:
            self._embedding = embed_pq(self.decomposition)
        return self._embedding

    def power(self, radius: Optional[float] = None, rule: str = 'minimal') -> PowerRepresentation:
        key = (radius, rule)
        if key not in self._power:
            rep = power_representation(self.matrix, radius=radius, rule=rule,
                                       dec=self.decomposition)
            self.say(f"✓ Power representation: radius {rep.radius:.6g}, {rep.dim} center dimensions")
            if rep.clamped:
                self.say(f"⚠️ Radius {rep.radius:.6g} is below the minimal {power_radius(self.decomposition):.6g}; "
                         f"clamped negative Gram mass {rep.discarded:.6g}")
            self._power[key] = rep
        return self._power[key]

    def project(self, method: str, cfg: ProjectionConfig, radius: Optional[float] = None,
                rule: str = 'minimal') -> ProjectionResult:
        """
        Run one JL route end to end.

        Args:
            method (str): 'jl' (absolute-eigenvalue baseline), 'jl-pq' or 'jl-power'
            cfg (ProjectionConfig): epsilon, dimension constant and seed
            radius (float): power radius override (jl-power only)
            rule (str): radius rule when no override is given

        Returns:
            ProjectionResult: projected points and the reconstructed matrix
        """
        if method not in METHODS:
            raise ValueError(f"unknown method '{method}', expected one of {METHODS}")
        m = target_dim(self.n, cfg)
        self.say(f"🚀 Projecting with {method} to m = {m} (epsilon {cfg.epsilon}, const {cfg.dim_constant}, seed {cfg.seed})")

        if method == 'jl':
            projected = project_classical(absolute_coords(self.embedding), cfg)
            return ProjectionResult(method, cfg, m, projected, reconstruct(projected))
        if method == 'jl-pq':
            projected = project_pq(self.embedding, cfg)
            return ProjectionResult(method, cfg, m, projected, reconstruct(projected))

        rep = self.power(radius, rule)
        projected = project_power(rep, cfg)
        return ProjectionResult(method, cfg, m, projected, reconstruct(projected), rep.radius,
                                rep.discarded)

    def validate(self, result: ProjectionResult, D_hat: Optional[np.ndarray] = None):
        """Bound check for a result: (p, q) band for jl-pq, residual check otherwise."""
        D_hat = result.D_hat if D_hat is None else D_hat
        eps = result.config.epsilon
        if result.method == 'jl-pq':
            return validate_pq_bound(self.matrix, self.embedding, D_hat, eps)
        radius = result.radius or 0.0
        return validate_power_residual(self.matrix, radius, D_hat, eps)

    def report(self, result: ProjectionResult, with_bounds: bool = True) -> ProjectionReport:
        stats = relative_error_stats(self.matrix, result.D_hat)
        dec = self.decomposition
        bounds = {}
        if with_bounds:
            check = self.validate(result)
            if result.method == 'jl-pq':
                bounds['pq_violation_rate'] = check.violation_rate
                bounds['null_pairs'] = check.null_pairs
            elif result.method == 'jl-power':
                bounds['power_residual_max'] = check.max_residual
                bounds['bound_4er2'] = check.bound
                bounds['fraction_within'] = check.fraction_within
                bounds['clamped_mass'] = result.discarded
        cfg = result.config
        return ProjectionReport(result.method, self.n, result.m, cfg.epsilon, cfg.dim_constant,
                                cfg.seed, stats, (dec.p, dec.q), result.radius, bounds)

    def describe(self) -> dict:
        """Dataset statistics: signature, smallest eigenvalue, radius, metric check."""
        dec = self.decomposition
        D = as_array(self.matrix)
        return {
            'n': self.n,
            'p': dec.p,
            'q': dec.q,
            'zero_rank': dec.zero_rank,
            'negative_eigenvalues': dec.q,
            'smallest_eigenvalue': dec.smallest,
            'largest_eigenvalue': float(dec.eigenvalues[0]),
            'power_radius': power_radius(dec),
            'metric': is_metric(D),
            'negative_entries': int(np.sum(D < 0)),
        }

    def compare(self, cfg: ProjectionConfig, radius: Optional[float] = None,
                rule: str = 'minimal') -> list:
        """Reports for all three routes on the same matrix and seed."""
        return [self.report(self.project(method, cfg, radius, rule)) for method in METHODS]

    def kmeans_comparison(self, k: int, cfg: ProjectionConfig, restarts: Optional[int] = None,
                          methods=METHODS) -> dict:
        """Relational k-means cost on the original matrix versus each projected route."""
        restarts = config.KMEANS_RESTARTS if restarts is None else restarts
        self.say(f"🔄 Relational k-means on the original matrix (k = {k}, {restarts} restarts)...")
        original = relational_kmeans(self.matrix, k, seed=cfg.seed, restarts=restarts)
        results = {'original': original.to_dict(), 'methods': {}}
        for method in methods:
            projected = self.project(method, cfg)
            clustered = kmeans_projected(projected.coordinates(), self.matrix, k,
                                         seed=cfg.seed, restarts=restarts)
            entry = clustered.to_dict()
            entry['ratio_to_original'] = (clustered.relational_cost / original.relational_cost
                                          if original.relational_cost != 0 else None)
            results['methods'][method] = entry
            self.say(f"✓ {method}: relational cost {clustered.relational_cost:.6g}")
        return results
