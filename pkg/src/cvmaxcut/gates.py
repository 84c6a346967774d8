"""Gate synthesis: truncated Fock matrices and exact symplectic actions.

Every non-diagonal gate is built as the matrix exponential of its
truncated generator.  Since the truncated generators are exactly
anti-Hermitian, the resulting matrices are unitary to machine precision
on the truncated space; truncation error shows up as distorted
amplitudes near the cutoff rather than as norm loss.

Symplectic actions are given in (x₁..x_N, p₁..p_N) ordering with the
phase-space convention of :mod:`cvmaxcut.fock` (vacuum covariance I/2).
The matrices are the ones that propagate measured first/second moments,
so composing Fock gates and composing their symplectic actions agree.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.linalg import expm

from . import fock
from .errors import UnsupportedGateError

#: Stability guards; beyond these magnitudes truncation error dominates.
MAX_SQUEEZE = 5.0
MAX_DISPLACEMENT = 5.0
MAX_CUBIC_PHASE = 2.0


class GateKind(Enum):
    SQUEEZE = "squeeze"
    DISPLACEMENT = "displacement"
    ROTATION = "rotation"
    BEAMSPLITTER = "beamsplitter"
    KERR = "kerr"
    CUBIC_PHASE = "cubic_phase"


_PARAM_COUNT = {
    GateKind.SQUEEZE: 2,
    GateKind.DISPLACEMENT: 2,
    GateKind.ROTATION: 1,
    GateKind.BEAMSPLITTER: 2,
    GateKind.KERR: 1,
    GateKind.CUBIC_PHASE: 1,
}

_ARITY = {
    GateKind.SQUEEZE: 1,
    GateKind.DISPLACEMENT: 1,
    GateKind.ROTATION: 1,
    GateKind.BEAMSPLITTER: 2,
    GateKind.KERR: 1,
    GateKind.CUBIC_PHASE: 1,
}

GAUSSIAN_KINDS = frozenset(
    {GateKind.SQUEEZE, GateKind.DISPLACEMENT, GateKind.ROTATION, GateKind.BEAMSPLITTER}
)


@dataclass(frozen=True)
class GateSpec:
    """One gate of a circuit: kind, real parameters, target mode(s)."""

    kind: GateKind
    params: tuple[float, ...]
    modes: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        object.__setattr__(self, "modes", tuple(int(m) for m in self.modes))
        if len(self.params) != _PARAM_COUNT[self.kind]:
            raise ValueError(
                f"{self.kind.value} takes {_PARAM_COUNT[self.kind]} parameter(s), "
                f"got {len(self.params)}"
            )
        if len(self.modes) != _ARITY[self.kind]:
            raise ValueError(
                f"{self.kind.value} acts on {_ARITY[self.kind]} mode(s), "
                f"got {len(self.modes)}"
            )
        if len(set(self.modes)) != len(self.modes):
            raise ValueError(f"gate modes must be distinct, got {self.modes}")
        if any(m < 0 for m in self.modes):
            raise ValueError(f"gate modes must be nonnegative, got {self.modes}")
        if not all(np.isfinite(self.params)):
            raise ValueError(f"gate parameters must be finite, got {self.params}")


def squeeze(r: float, phi: float, mode: int) -> GateSpec:
    return GateSpec(GateKind.SQUEEZE, (r, phi), (mode,))


def displacement(magnitude: float, phase: float, mode: int) -> GateSpec:
    return GateSpec(GateKind.DISPLACEMENT, (magnitude, phase), (mode,))


def rotation(phi: float, mode: int) -> GateSpec:
    return GateSpec(GateKind.ROTATION, (phi,), (mode,))


def beamsplitter(theta: float, phi: float, mode_a: int, mode_b: int) -> GateSpec:
    return GateSpec(GateKind.BEAMSPLITTER, (theta, phi), (mode_a, mode_b))


def kerr(kappa: float, mode: int) -> GateSpec:
    return GateSpec(GateKind.KERR, (kappa,), (mode,))


def cubic_phase(gamma: float, mode: int) -> GateSpec:
    return GateSpec(GateKind.CUBIC_PHASE, (gamma,), (mode,))


# ---------------------------------------------------------------------------
# Fock-basis matrices
# ---------------------------------------------------------------------------

def annihilation_matrix(cutoff: int) -> np.ndarray:
    """Truncated annihilation operator: √n on the first superdiagonal."""
    if cutoff < 2:
        raise ValueError(f"cutoff must be >= 2, got {cutoff}")
    return np.diag(np.sqrt(np.arange(1, cutoff, dtype=float)), 1).astype(np.complex128)


def position_matrix(cutoff: int) -> np.ndarray:
    """x = (a + a†)/√2 in the truncated basis."""
    a = annihilation_matrix(cutoff)
    return (a + a.conj().T) / np.sqrt(2.0)


def momentum_matrix(cutoff: int) -> np.ndarray:
    """p = -i(a - a†)/√2 in the truncated basis."""
    a = annihilation_matrix(cutoff)
    return -1j * (a - a.conj().T) / np.sqrt(2.0)


def squeeze_fock(r: float, phi: float, cutoff: int) -> np.ndarray:
    """exp{(r/2)(e^{-iφ}a² - e^{iφ}a†²)} truncated at ``cutoff``.

    For φ = 0 this shrinks the position quadrature: x → e^{-r} x.
    """
    if abs(r) > MAX_SQUEEZE:
        raise ValueError(f"|r| = {abs(r)} exceeds stability guard {MAX_SQUEEZE}")
    a = annihilation_matrix(cutoff)
    a2 = a @ a
    gen = 0.5 * r * (np.exp(-1j * phi) * a2 - np.exp(1j * phi) * a2.conj().T)
    return expm(gen)


def displacement_fock(alpha: complex, cutoff: int) -> np.ndarray:
    """exp{αa† - α*a} truncated at ``cutoff``; column 0 is |α⟩."""
    if abs(alpha) > MAX_DISPLACEMENT:
        raise ValueError(
            f"|alpha| = {abs(alpha)} exceeds stability guard {MAX_DISPLACEMENT}"
        )
    a = annihilation_matrix(cutoff)
    gen = alpha * a.conj().T - np.conj(alpha) * a
    return expm(gen)


def rotation_fock(phi: float, cutoff: int) -> np.ndarray:
    """Phase-space rotation, diagonal in the Fock basis: diag(e^{inφ})."""
    return np.diag(np.exp(1j * phi * np.arange(cutoff)))


def kerr_fock(kappa: float, cutoff: int) -> np.ndarray:
    """Kerr gate exp{iκn̂²}, diagonal with entries e^{iκn²}."""
    n = np.arange(cutoff)
    return np.diag(np.exp(1j * kappa * n**2))


def cubic_phase_fock(gamma: float, cutoff: int) -> np.ndarray:
    """Cubic phase gate exp{iγx̂³/3} with x̂ = (a + a†)/√2."""
    if abs(gamma) > MAX_CUBIC_PHASE:
        raise ValueError(
            f"|gamma| = {abs(gamma)} exceeds stability guard {MAX_CUBIC_PHASE}"
        )
    x = position_matrix(cutoff)
    return expm(1j * gamma * (x @ x @ x) / 3.0)


def beamsplitter_fock(theta: float, phi: float, cutoff: int) -> np.ndarray:
    """Two-mode gate exp{θ(e^{iφ}a†b - e^{-iφ}ab†)}, cutoff²×cutoff².

    The generator commutes with the total photon number, so matrix
    elements between different total-photon sectors are exactly zero.
    The joint index is row-major: (n_a, n_b) → n_a * cutoff + n_b.
    """
    a = annihilation_matrix(cutoff)
    ad = a.conj().T
    cross = np.kron(ad, a)
    gen = theta * (np.exp(1j * phi) * cross - np.exp(-1j * phi) * cross.conj().T)
    return expm(gen)


def number_expectation_matrix(cutoff: int) -> np.ndarray:
    """Number operator n̂ = a†a, diagonal (0, 1, ..., cutoff-1)."""
    a = annihilation_matrix(cutoff)
    return a.conj().T @ a


# ---------------------------------------------------------------------------
# Symplectic actions
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SymplecticAction:
    """Phase-space action of a Gaussian gate: r → matrix·r + displacement."""

    matrix: np.ndarray
    displacement: np.ndarray


def symplectic_form(n_modes: int) -> np.ndarray:
    """Canonical antisymmetric form J = [[0, I], [-I, 0]] in xxpp order."""
    eye = np.eye(n_modes)
    zero = np.zeros((n_modes, n_modes))
    return np.block([[zero, eye], [-eye, zero]])


def _rot2(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s], [s, c]])


def _beamsplitter_block(theta: float, phi: float) -> np.ndarray:
    # Ordering (x_a, x_b, p_a, p_b); derived from a → a cosθ + e^{iφ} b sinθ,
    # b → b cosθ - e^{-iφ} a sinθ.
    c, s = np.cos(theta), np.sin(theta)
    cp, sp = np.cos(phi), np.sin(phi)
    return np.array(
        [
            [c, s * cp, 0.0, -s * sp],
            [-s * cp, c, -s * sp, 0.0],
            [0.0, s * sp, c, s * cp],
            [s * sp, 0.0, -s * cp, c],
        ]
    )


def symplectic_of(gate: GateSpec, n_modes: int) -> SymplecticAction:
    """Exact phase-space form of a Gaussian gate embedded in 2N dimensions."""
    if gate.kind not in GAUSSIAN_KINDS:
        raise UnsupportedGateError(
            f"{gate.kind.value} is non-Gaussian and has no symplectic action"
        )
    if any(m >= n_modes for m in gate.modes):
        raise ValueError(f"gate modes {gate.modes} out of range for {n_modes} modes")
    matrix = np.eye(2 * n_modes)
    disp = np.zeros(2 * n_modes)
    if gate.kind is GateKind.SQUEEZE:
        r, phi = gate.params
        block = _rot2(phi / 2) @ np.diag([np.exp(-r), np.exp(r)]) @ _rot2(-phi / 2)
        (m,) = gate.modes
        idx = np.array([m, n_modes + m])
        matrix[np.ix_(idx, idx)] = block
    elif gate.kind is GateKind.ROTATION:
        (phi,) = gate.params
        (m,) = gate.modes
        idx = np.array([m, n_modes + m])
        matrix[np.ix_(idx, idx)] = _rot2(phi)
    elif gate.kind is GateKind.DISPLACEMENT:
        magnitude, phase = gate.params
        (m,) = gate.modes
        disp[m] = np.sqrt(2.0) * magnitude * np.cos(phase)
        disp[n_modes + m] = np.sqrt(2.0) * magnitude * np.sin(phase)
    else:  # beamsplitter
        theta, phi = gate.params
        ma, mb = gate.modes
        idx = np.array([ma, mb, n_modes + ma, n_modes + mb])
        matrix[np.ix_(idx, idx)] = _beamsplitter_block(theta, phi)
    return SymplecticAction(matrix, disp)


# ---------------------------------------------------------------------------
# Application to Fock states
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=4096)
def _fock_matrix_cached(kind: GateKind, params: tuple, cutoff: int) -> np.ndarray:
    if kind is GateKind.SQUEEZE:
        mat = squeeze_fock(params[0], params[1], cutoff)
    elif kind is GateKind.DISPLACEMENT:
        mat = displacement_fock(params[0] * np.exp(1j * params[1]), cutoff)
    elif kind is GateKind.ROTATION:
        mat = rotation_fock(params[0], cutoff)
    elif kind is GateKind.BEAMSPLITTER:
        mat = beamsplitter_fock(params[0], params[1], cutoff)
    elif kind is GateKind.KERR:
        mat = kerr_fock(params[0], cutoff)
    else:
        mat = cubic_phase_fock(params[0], cutoff)
    mat.setflags(write=False)
    return mat


def fock_matrix_of(gate: GateSpec, cutoff: int) -> np.ndarray:
    """Truncated matrix of a gate, memoized on (kind, params, cutoff)."""
    return _fock_matrix_cached(gate.kind, gate.params, cutoff)


def apply_gate(state: fock.FockState, gate: GateSpec) -> fock.FockState:
    matrix = fock_matrix_of(gate, state.cutoff)
    if len(gate.modes) == 1:
        return fock.apply_single_mode(state, gate.modes[0], matrix)
    return fock.apply_two_mode(state, gate.modes[0], gate.modes[1], matrix)


def apply_circuit(state: fock.FockState, gate_sequence) -> fock.FockState:
    """Apply gates in order (first element acts first)."""
    for gate in gate_sequence:
        state = apply_gate(state, gate)
    return state
