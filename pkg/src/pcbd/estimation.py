"""Response simulation under the linear block model and block-adjusted estimation.

Model: y = F beta + Z gamma + eps with eps ~ N(0, sigma^2 I). Block effects
are removed with P = I - Z (Z^T Z)^{-1} Z^T, so the estimate solves
(F^T P F) beta_hat = F^T P y. Noise for replication r comes from
``numpy.random.default_rng([seed, r])`` (PCG64) and standard normals, so each
replication has its own reproducible stream.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .design import BlockedDesign, indicator
from .errors import ShapeError, SingularityError
from .info import InfoMatrix, compute_info, fraction_matrix, inverse, is_orthogonally_blocked

Number = Fraction | float


@dataclass(frozen=True)
class ModelParams:
    beta: tuple[Number, ...]
    gamma: tuple[Number, ...]
    sigma: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError(f"sigma must be non-negative; got {self.sigma}")
        object.__setattr__(self, "beta", tuple(_num(x) for x in self.beta))
        object.__setattr__(self, "gamma", tuple(_num(x) for x in self.gamma))

    def check(self, d: BlockedDesign) -> None:
        if len(self.beta) != d.k:
            raise ShapeError(f"beta has length {len(self.beta)}, design has K={d.k}")
        if len(self.gamma) != d.layout.b:
            raise ShapeError(f"gamma has length {len(self.gamma)}, design has b={d.layout.b}")


@dataclass(frozen=True)
class ResponseVector:
    y: tuple[Number, ...]

    @property
    def exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in self.y)

    def __len__(self) -> int:
        return len(self.y)


@dataclass(frozen=True)
class EstimateReport:
    beta_hat: tuple[Number, ...]
    info: InfoMatrix
    residual_norm: float
    exact: bool

    def as_dict(self) -> dict[str, Any]:
        return {
            "beta_hat": [str(v) if self.exact else float(v) for v in self.beta_hat],
            "info_matrix": self.info.to_strings(),
            "residual_norm": self.residual_norm,
            "exact": self.exact,
        }


def _num(x) -> Number:
    if isinstance(x, (Fraction, int, np.integer)):
        return Fraction(int(x)) if not isinstance(x, Fraction) else x
    if isinstance(x, str):
        return Fraction(x)
    return float(x)


def _projector(d: BlockedDesign) -> list[list[Fraction]]:
    """P = I - Z (Z^T Z)^{-1} Z^T: subtract the block mean inside each block."""
    n = d.n
    p = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for r in d.layout.ranges():
        w = Fraction(1, len(r))
        for i in r:
            for j in r:
                p[i][j] -= w
    return p


def _projector_float(d: BlockedDesign) -> np.ndarray:
    z = indicator(d.layout).astype(float)
    return np.eye(d.n) - z @ np.diag(1.0 / np.array(d.layout.sizes, float)) @ z.T


def simulate(d: BlockedDesign, p: ModelParams, replication: int = 0) -> ResponseVector:
    """One response vector; exact rationals when sigma = 0 and the effects are rational."""
    p.check(d)
    z = indicator(d.layout)
    mean = [
        sum((int(d.f[i, j]) * p.beta[j] for j in range(d.k)), Fraction(0))
        + sum((int(z[i, c]) * p.gamma[c] for c in range(d.layout.b)), Fraction(0))
        for i in range(d.n)
    ]
    if p.sigma == 0:
        return ResponseVector(tuple(mean))
    eps = np.random.default_rng([p.seed, replication]).standard_normal(d.n) * p.sigma
    return ResponseVector(tuple(float(m) + float(e) for m, e in zip(mean, eps)))


def estimator_matrix(d: BlockedDesign, project_blocks: bool = True) -> tuple[tuple[Fraction, ...], ...]:
    """W with beta_hat = W y, exactly: (F^T P F)^{-1} F^T P, or (F^T F)^{-1} F^T without P."""
    f = d.f.astype(object)
    p = _projector(d) if project_blocks else [[Fraction(int(i == j)) for j in range(d.n)] for i in range(d.n)]
    ftp = [[sum((f[r, a] * p[r][c] for r in range(d.n)), Fraction(0)) for c in range(d.n)] for a in range(d.k)]
    gram = [[sum((ftp[a][r] * f[r, b] for r in range(d.n)), Fraction(0)) for b in range(d.k)] for a in range(d.k)]
    inv = inverse(fraction_matrix(gram))
    return tuple(
        tuple(sum((inv[a][c] * ftp[c][r] for c in range(d.k)), Fraction(0)) for r in range(d.n))
        for a in range(d.k)
    )


def estimate(d: BlockedDesign, y: ResponseVector | Sequence, project_blocks: bool = True) -> EstimateReport:
    """Solve the reduced normal equations M beta_hat = Q (both on the 1/4 scale)."""
    if not isinstance(y, ResponseVector):
        y = ResponseVector(tuple(_num(v) for v in y))
    if len(y) != d.n:
        raise ShapeError(f"response has length {len(y)}, design has N={d.n}")
    info = compute_info(d)
    if y.exact:
        try:
            w = estimator_matrix(d, project_blocks)
        except SingularityError as exc:
            raise SingularityError(f"rank-deficient information matrix: {exc}") from exc
        beta = tuple(sum((w[a][r] * y.y[r] for r in range(d.n)), Fraction(0)) for a in range(d.k))
        gram = np.array(info.as_float()) * 4
        q = _projector_float(d) @ np.array([float(v) for v in y.y]) if project_blocks else np.array([float(v) for v in y.y])
        resid = float(np.linalg.norm(gram @ np.array([float(b) for b in beta]) - d.f.T.astype(float) @ q))
        return EstimateReport(beta, info, resid, True)
    f = d.f.astype(float)
    pf = _projector_float(d) @ f if project_blocks else f
    gram = f.T @ pf
    if np.linalg.matrix_rank(gram) < d.k:
        raise SingularityError("rank-deficient information matrix")
    rhs = pf.T @ np.array(y.y, dtype=float)
    beta = np.linalg.solve(gram, rhs)
    resid = float(np.linalg.norm(gram @ beta - rhs))
    return EstimateReport(tuple(float(b) for b in beta), info, resid, False)


@dataclass(frozen=True)
class MonteCarloReport:
    reps: int
    sigma: float
    seed: int
    mean_beta_hat: tuple[float, ...]
    empirical_cov: np.ndarray
    target_cov: np.ndarray
    unblocked_target_cov: np.ndarray
    relative_frobenius_error: float

    def as_dict(self) -> dict[str, Any]:
        return {
            "reps": self.reps,
            "sigma": self.sigma,
            "seed": self.seed,
            "mean_beta_hat": [float(v) for v in self.mean_beta_hat],
            "empirical_cov": self.empirical_cov.tolist(),
            "target_cov": self.target_cov.tolist(),
            "unblocked_target_cov": self.unblocked_target_cov.tolist(),
            "relative_frobenius_error": self.relative_frobenius_error,
        }


def noise_matrix(n: int, reps: int, seed: int) -> np.ndarray:
    return np.stack([np.random.default_rng([seed, r]).standard_normal(n) for r in range(reps)])


def monte_carlo(d: BlockedDesign, p: ModelParams, reps: int) -> MonteCarloReport:
    """Empirical covariance of beta_hat over independent replications.

    The target is sigma^2 (F^T P F)^{-1}, which is sigma^2 (F^T F)^{-1} when
    the blocking is orthogonal.
    """
    p.check(d)
    if reps < 2:
        raise ValueError("need at least two replications")
    f = d.f.astype(float)
    pf = _projector_float(d) @ f
    gram = f.T @ pf
    w = np.linalg.solve(gram, pf.T)
    mean = f @ np.array([float(b) for b in p.beta]) + indicator(d.layout) @ np.array([float(g) for g in p.gamma])
    ys = mean + p.sigma * noise_matrix(d.n, reps, p.seed)
    betas = ys @ w.T
    cov = np.cov(betas, rowvar=False).reshape(d.k, d.k)
    target = p.sigma**2 * np.linalg.inv(gram)
    plain = p.sigma**2 * np.linalg.inv(f.T @ f)
    denom = np.linalg.norm(target)
    err = float(np.linalg.norm(cov - target) / denom) if denom > 0 else float(np.linalg.norm(cov))
    return MonteCarloReport(reps, p.sigma, p.seed, tuple(betas.mean(axis=0)), cov, target, plain, err)


@dataclass(frozen=True)
class PayoffReport:
    orthogonally_blocked: bool
    identical_estimates: bool
    max_abs_difference: Fraction

    def as_dict(self) -> dict[str, Any]:
        return {
            "orthogonally_blocked": self.orthogonally_blocked,
            "identical_estimates": self.identical_estimates,
            "max_abs_difference": str(self.max_abs_difference),
        }


def orthogonality_payoff(d: BlockedDesign) -> PayoffReport:
    """Compare block-adjusted and plain least squares estimators for every response vector."""
    with_p = estimator_matrix(d, True)
    without = estimator_matrix(d, False)
    diff = max((abs(a - b) for ra, rb in zip(with_p, without) for a, b in zip(ra, rb)), default=Fraction(0))
    return PayoffReport(is_orthogonally_blocked(d), diff == 0, diff)
