"""Multi-qumode quantum states in a truncated Fock basis.

A state over ``n_modes`` qumodes is a dense complex tensor with one axis
per mode, each axis of length ``cutoff`` (photon numbers 0..cutoff-1).
All operations are pure functions returning new states; ``FockState``
instances are treated as immutable values, which makes them safe to
evaluate in parallel.

Quadrature convention used throughout the package: x = (a + a†)/√2 and
p = -i(a - a†)/√2, so the vacuum has quadrature variance 1/2 and the
vacuum covariance matrix is I/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import SizeLimitError

#: Default limit on the amplitude tensor, in bytes (complex128 entries).
DEFAULT_MEMORY_BUDGET = 2 * 1024**3


@dataclass(frozen=True, eq=False)
class FockState:
    """Pure state of ``n_modes`` qumodes truncated at ``cutoff`` levels."""

    n_modes: int
    cutoff: int
    amplitudes: np.ndarray

    def norm_squared(self) -> float:
        """Σ|a|²; stays 1 under unitary gates, may shrink under truncation."""
        return float(np.vdot(self.amplitudes, self.amplitudes).real)


@dataclass(frozen=True, eq=False)
class OutcomeDistribution:
    """Photon-count probabilities plus the mass lost to truncation.

    ``probabilities`` has the same shape as the state tensor it came
    from; ``leakage`` is 1 minus the captured probability mass and is
    kept explicit rather than renormalized away so that truncation
    error stays observable.
    """

    probabilities: np.ndarray
    leakage: float

    @property
    def n_modes(self) -> int:
        return self.probabilities.ndim

    @property
    def cutoff(self) -> int:
        return self.probabilities.shape[0]

    def prob(self, counts) -> float:
        return float(self.probabilities[tuple(int(c) for c in counts)])

    def total_probability(self) -> float:
        return float(self.probabilities.sum())

    def most_probable(self) -> tuple[int, ...]:
        flat = int(np.argmax(self.probabilities))
        return tuple(int(i) for i in np.unravel_index(flat, self.probabilities.shape))

    def items(self) -> Iterator[tuple[tuple[int, ...], float]]:
        """Yield (photon-count tuple, probability) in row-major order."""
        for idx in np.ndindex(*self.probabilities.shape):
            yield tuple(int(i) for i in idx), float(self.probabilities[idx])


@dataclass(frozen=True, eq=False)
class SingleModeDensity:
    """Reduced density operator of one mode, a cutoff×cutoff matrix."""

    matrix: np.ndarray

    @property
    def cutoff(self) -> int:
        return self.matrix.shape[0]

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)


def new_vacuum(n_modes: int, cutoff: int,
               memory_budget: int = DEFAULT_MEMORY_BUDGET) -> FockState:
    """All-zero photon state |0,...,0⟩ with unit norm."""
    if n_modes < 1:
        raise ValueError(f"n_modes must be >= 1, got {n_modes}")
    if cutoff < 2:
        raise ValueError(f"cutoff must be >= 2, got {cutoff}")
    n_amplitudes = cutoff**n_modes
    needed = 16 * n_amplitudes  # complex128
    if needed > memory_budget:
        raise SizeLimitError(
            f"state of {n_modes} modes at cutoff {cutoff} needs "
            f"{needed:,} bytes of amplitudes, exceeding the budget of "
            f"{memory_budget:,} bytes"
        )
    amplitudes = np.zeros((cutoff,) * n_modes, dtype=np.complex128)
    amplitudes[(0,) * n_modes] = 1.0
    return FockState(n_modes, cutoff, amplitudes)


def _check_mode(state: FockState, mode: int) -> None:
    if not 0 <= mode < state.n_modes:
        raise ValueError(f"mode {mode} out of range for {state.n_modes} modes")


def apply_single_mode(state: FockState, mode: int, gate: np.ndarray) -> FockState:
    """Contract a cutoff×cutoff matrix with the chosen mode axis."""
    _check_mode(state, mode)
    gate = np.asarray(gate)
    if gate.shape != (state.cutoff, state.cutoff):
        raise ValueError(
            f"gate shape {gate.shape} does not match cutoff {state.cutoff}"
        )
    out = np.tensordot(gate, state.amplitudes, axes=(1, mode))
    out = np.moveaxis(out, 0, mode)
    return FockState(state.n_modes, state.cutoff, out)


def apply_two_mode(state: FockState, mode_a: int, mode_b: int,
                   gate: np.ndarray) -> FockState:
    """Contract a cutoff²×cutoff² matrix with two mode axes jointly.

    The joint index is row-major, i.e. index = n_a * cutoff + n_b.
    """
    _check_mode(state, mode_a)
    _check_mode(state, mode_b)
    if mode_a == mode_b:
        raise ValueError(f"two-mode gate needs distinct modes, got {mode_a} twice")
    d = state.cutoff
    gate = np.asarray(gate)
    if gate.shape != (d * d, d * d):
        raise ValueError(
            f"gate shape {gate.shape} does not match cutoff² = {d * d}"
        )
    work = np.moveaxis(state.amplitudes, (mode_a, mode_b), (0, 1))
    shape = work.shape
    work = gate @ work.reshape(d * d, -1)
    work = np.moveaxis(work.reshape(shape), (0, 1), (mode_a, mode_b))
    return FockState(state.n_modes, state.cutoff, np.ascontiguousarray(work))


def photon_count_distribution(state: FockState) -> OutcomeDistribution:
    """Projective photon counting on every mode: P(n₁..n_N) = |amplitude|²."""
    probabilities = np.abs(state.amplitudes) ** 2
    total = float(probabilities.sum())
    return OutcomeDistribution(probabilities, leakage=max(0.0, 1.0 - total))


def reduce_single_mode(state: FockState, mode: int) -> SingleModeDensity:
    """Partial trace over all modes except ``mode``."""
    _check_mode(state, mode)
    d = state.cutoff
    m = np.moveaxis(state.amplitudes, mode, 0).reshape(d, -1)
    return SingleModeDensity(m @ m.conj().T)


def _check_grid(grid: np.ndarray, name: str) -> np.ndarray:
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError(f"{name} grid must be a nonempty 1-d array")
    if grid.size > 1 and not np.all(np.diff(grid) > 0):
        raise ValueError(f"{name} grid must be strictly increasing")
    return grid


def wigner(density: SingleModeDensity, x_grid, p_grid) -> np.ndarray:
    """Wigner quasi-probability of a single-mode density on a grid.

    Returns W with shape (len(x_grid), len(p_grid)), W[i, j] = W(x_i, p_j).
    Uses the standard iterative scheme over Fock indices; in this
    convention ∬ W dx dp = trace(ρ) and the vacuum is exp(-x²-p²)/π.
    Values may be negative for non-Gaussian states.
    """
    xs = _check_grid(x_grid, "x")
    ps = _check_grid(p_grid, "p")
    rho = density.matrix
    m_dim = rho.shape[0]
    x_mesh, p_mesh = np.meshgrid(xs, ps, indexing="ij")
    amp = (x_mesh + 1j * p_mesh) / np.sqrt(2.0)

    w_list = np.empty((m_dim,) + amp.shape, dtype=np.complex128)
    w_list[0] = np.exp(-2.0 * np.abs(amp) ** 2) / np.pi
    w_total = rho[0, 0].real * w_list[0].real
    for n in range(1, m_dim):
        w_list[n] = (2.0 * amp * w_list[n - 1]) / np.sqrt(n)
        w_total = w_total + 2.0 * (rho[0, n] * w_list[n]).real
    for m in range(1, m_dim):
        temp = w_list[m].copy()
        w_list[m] = (2.0 * amp.conj() * temp - np.sqrt(m) * w_list[m - 1]) / np.sqrt(m)
        w_total = w_total + (rho[m, m] * w_list[m]).real
        for n in range(m + 1, m_dim):
            temp2 = (2.0 * amp * w_list[n - 1] - np.sqrt(m) * temp) / np.sqrt(n)
            temp = w_list[n].copy()
            w_list[n] = temp2
            w_total = w_total + 2.0 * (rho[m, n] * w_list[n]).real
    return w_total
