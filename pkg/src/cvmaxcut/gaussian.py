"""Gaussian covariance representation of graphs, and moment propagation.

Two independent roles live here.  First, the covariance-matrix route for
turning an adjacency matrix into a candidate Gaussian state, with the
validity checks that decide whether the candidate is physical, and a
grid search over the (c, d) scaling parameters of the block-doubled
construction.  Second, exact propagation of Gaussian moments through
symplectic actions, which serves as an independent oracle for the
truncated Fock simulator.

Covariance matrices follow the package convention: vacuum = I/2 in
(x₁..x_N, p₁..p_N) ordering, uncertainty relation σ + (i/2)J ⪰ 0, and a
pure state satisfies (2σJ)² = -I.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import block_diag

from . import fock, gates
from .errors import ScalingNotFoundError, SingularityError

#: Default scaling grids: c ∈ {0, 0.1, ..., 2}, d ∈ {0.01, 0.02, ..., 1}.
DEFAULT_C_GRID = np.round(np.linspace(0.0, 2.0, 21), 12)
DEFAULT_D_GRID = np.round(np.linspace(0.01, 1.0, 100), 12)


@dataclass(frozen=True, eq=False)
class GaussianMoments:
    """First and second quadrature moments of a Gaussian state."""

    mean: np.ndarray        # (2n,)
    covariance: np.ndarray  # (2n, 2n), symmetric

    @property
    def n_modes(self) -> int:
        return self.mean.shape[0] // 2


@dataclass(frozen=True)
class ScalingParams:
    """Auxiliary scaling (c, d) for the block-doubled covariance."""

    c: float
    d: float

    def __post_init__(self):
        if not self.d > 0:
            raise ValueError(f"d must be positive, got {self.d}")


@dataclass(frozen=True)
class CovarianceValidity:
    """Three readings of 'this covariance describes a Gaussian state'."""

    positive_definite: bool
    uncertainty_ok: bool
    pure: bool

    def as_dict(self) -> dict:
        return {
            "positive_definite": self.positive_definite,
            "uncertainty_ok": self.uncertainty_ok,
            "pure": self.pure,
        }


def vacuum_moments(n_modes: int) -> GaussianMoments:
    """Zero mean, covariance I/2."""
    return GaussianMoments(np.zeros(2 * n_modes), 0.5 * np.eye(2 * n_modes))


def _resolvent_covariance(m: np.ndarray) -> np.ndarray:
    """(I - [[0, M], [M, 0]])⁻¹ - I/2 for a symmetric matrix M."""
    dim = m.shape[0]
    doubled = np.block([[np.zeros((dim, dim)), m], [m, np.zeros((dim, dim))]])
    eigenvalues = np.linalg.eigvalsh(doubled)
    if np.min(np.abs(1.0 - eigenvalues)) < 1e-12:
        raise SingularityError(
            "resolvent does not exist: the doubled matrix has a unit eigenvalue"
        )
    resolvent = np.linalg.inv(np.eye(2 * dim) - doubled)
    return resolvent - 0.5 * np.eye(2 * dim)


def _check_symmetric(a: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if np.max(np.abs(a - a.T), initial=0.0) > tol:
        raise ValueError("matrix is not symmetric")
    return a


def covariance_from_adjacency(
    adjacency: np.ndarray,
) -> tuple[GaussianMoments, CovarianceValidity]:
    """Candidate covariance (I - XA)⁻¹ - I/2 for a symmetric A, plus validity.

    The construction does not produce a physical Gaussian state for every
    A; the returned report makes the failure modes visible instead of
    raising.  A unit eigenvalue of XA (i.e. an eigenvalue ±1 of A) makes
    the resolvent singular, which does raise.
    """
    adjacency = _check_symmetric(adjacency)
    covariance = _resolvent_covariance(adjacency)
    moments = GaussianMoments(np.zeros(covariance.shape[0]), covariance)
    return moments, is_valid_covariance(moments)


def doubled_covariance(adjacency: np.ndarray, scaling: ScalingParams) -> GaussianMoments:
    """Block-doubled construction on d·(c·I + diag(A, A)); output is 4n×4n."""
    adjacency = _check_symmetric(adjacency)
    doubled_a = block_diag(adjacency, adjacency)
    m = scaling.d * (scaling.c * np.eye(doubled_a.shape[0]) + doubled_a)
    covariance = _resolvent_covariance(m)
    return GaussianMoments(np.zeros(covariance.shape[0]), covariance)


def is_valid_covariance(moments: GaussianMoments) -> CovarianceValidity:
    """Check positive definiteness, the uncertainty relation, and purity."""
    sigma = moments.covariance
    n2 = sigma.shape[0]
    j = gates.symplectic_form(n2 // 2)
    sym = 0.5 * (sigma + sigma.T)
    positive_definite = bool(np.linalg.eigvalsh(sym).min() > 1e-10)
    herm = sym + 0.5j * j
    uncertainty_ok = bool(np.linalg.eigvalsh(herm).min() >= -1e-9)
    sj = 2.0 * sym @ j
    pure = bool(np.linalg.norm(sj @ sj + np.eye(n2)) <= 1e-6)
    return CovarianceValidity(positive_definite, uncertainty_ok, pure)


def search_scaling(adjacency: np.ndarray, c_values=None, d_values=None) -> ScalingParams:
    """First (ascending d, then c) grid point whose doubled covariance is valid.

    Validity here means positive definite and satisfying the uncertainty
    relation; purity is reported but not required.  The scan order is
    deterministic regardless of any parallel evaluation.
    """
    adjacency = _check_symmetric(adjacency)
    c_values = DEFAULT_C_GRID if c_values is None else np.asarray(c_values, dtype=float)
    d_values = DEFAULT_D_GRID if d_values is None else np.asarray(d_values, dtype=float)
    for d in d_values:
        for c in c_values:
            if not d > 0:
                continue
            scaling = ScalingParams(c=float(c), d=float(d))
            try:
                report = is_valid_covariance(doubled_covariance(adjacency, scaling))
            except SingularityError:
                continue
            if report.positive_definite and report.uncertainty_ok:
                return scaling
    raise ScalingNotFoundError(
        f"no valid (c, d) on a grid of {len(c_values)}×{len(d_values)} points",
        c_values=c_values,
        d_values=d_values,
    )


def propagate(moments: GaussianMoments, actions) -> GaussianMoments:
    """Fold symplectic actions left to right: mean → M·mean + disp, σ → MσMᵀ."""
    mean = moments.mean.copy()
    cov = moments.covariance.copy()
    for action in actions:
        m = action.matrix
        if m.shape[0] != mean.shape[0]:
            raise ValueError(
                f"symplectic dimension {m.shape[0]} does not match state "
                f"dimension {mean.shape[0]}"
            )
        mean = m @ mean + action.displacement
        cov = m @ cov @ m.T
    return GaussianMoments(mean, cov)


def moments_from_fock(state: fock.FockState) -> GaussianMoments:
    """First and second quadrature moments of a truncated Fock state.

    Cross-check bridge to the symplectic oracle.  Expectations are taken
    in the normalized state, using only annihilation operators so the
    truncation never spills past the cutoff.
    """
    n = state.n_modes
    a = gates.annihilation_matrix(state.cutoff)
    norm2 = state.norm_squared()
    if norm2 <= 0.0:
        raise ValueError("cannot take moments of a zero state")
    amp = state.amplitudes
    a_psi = [fock.apply_single_mode(state, i, a).amplitudes for i in range(n)]

    mean_a = np.array([np.vdot(amp, a_psi[i]) for i in range(n)]) / norm2
    num = np.empty((n, n), dtype=complex)   # ⟨a_i† a_j⟩
    sq = np.empty((n, n), dtype=complex)    # ⟨a_i a_j⟩
    for i in range(n):
        for j in range(n):
            num[i, j] = np.vdot(a_psi[i], a_psi[j]) / norm2
            aa = fock.apply_single_mode(
                fock.FockState(n, state.cutoff, a_psi[i]), j, a
            ).amplitudes
            sq[i, j] = np.vdot(amp, aa) / norm2

    mean_x = np.sqrt(2.0) * mean_a.real
    mean_p = np.sqrt(2.0) * mean_a.imag
    eye = np.eye(n)
    s_xx = (sq + num).real + 0.5 * eye
    s_pp = (num - sq).real + 0.5 * eye
    s_xp = (sq + num).imag

    cov_xx = s_xx - np.outer(mean_x, mean_x)
    cov_pp = s_pp - np.outer(mean_p, mean_p)
    cov_xp = s_xp - np.outer(mean_x, mean_p)
    cov = np.block([[cov_xx, cov_xp], [cov_xp.T, cov_pp]])
    return GaussianMoments(np.concatenate([mean_x, mean_p]), cov)


def vacuum_probability(moments: GaussianMoments) -> float:
    """P(0,...,0) of a Gaussian state: overlap with the vacuum.

    Equals exp(-μᵀ(σ + I/2)⁻¹μ/2) / √det(σ + I/2); reduces to the
    covariance-determinant formula for zero-mean states.
    """
    q = moments.covariance + 0.5 * np.eye(moments.covariance.shape[0])
    sign, logdet = np.linalg.slogdet(q)
    if sign <= 0:
        raise SingularityError("covariance + I/2 is not positive definite")
    quad = float(moments.mean @ np.linalg.solve(q, moments.mean))
    return float(np.exp(-0.5 * quad - 0.5 * logdet))
