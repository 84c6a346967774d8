"""Graph embedding into a photonic state-preparation program.

Pipeline: rescale the adjacency matrix so its spectrum fits inside
(-1, 1), Takagi-factorize it as B = U diag(d) Uᵀ, map the singular
values to squeezing via r = arctanh(d), and compile U into a mesh of
nearest-neighbour beamsplitters plus a final layer of rotations.  The
resulting program (squeezers, then the mesh) prepares the Gaussian
state whose photon statistics encode the graph.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gates
from .errors import DegenerateGraphError
from .gates import GateKind, GateSpec
from .graphs import WeightedGraph

#: Default spectral margin: eigenvalues land in [-(1-margin), 1-margin].
DEFAULT_MARGIN = 0.05


@dataclass(frozen=True, eq=False)
class EmbeddingProgram:
    """Squeezing values plus the interferometer mesh realizing U."""

    squeezings: np.ndarray
    mesh: tuple[GateSpec, ...]
    scale: float

    @property
    def n_modes(self) -> int:
        return self.squeezings.shape[0]

    def gate_sequence(self) -> tuple[GateSpec, ...]:
        """Full preparation circuit: per-mode squeezers, then the mesh."""
        squeezers = tuple(
            gates.squeeze(float(r), 0.0, mode)
            for mode, r in enumerate(self.squeezings)
        )
        return squeezers + self.mesh


def rescale_adjacency(adjacency: np.ndarray, margin: float = DEFAULT_MARGIN):
    """Uniformly rescale A so its spectral radius equals 1 - margin.

    Returns (A / scale, scale).  The rule is applied both up and down so
    the output is deterministic regardless of the input's norm.
    """
    if not 0.0 < margin < 1.0:
        raise ValueError(f"margin must be in (0, 1), got {margin}")
    adjacency = np.asarray(adjacency, dtype=float)
    if np.max(np.abs(adjacency - adjacency.T), initial=0.0) > 1e-10:
        raise ValueError("adjacency must be symmetric")
    radius = float(np.max(np.abs(np.linalg.eigvalsh(adjacency)), initial=0.0))
    if radius <= 0.0:
        raise DegenerateGraphError("adjacency matrix is zero; nothing to embed")
    scale = radius / (1.0 - margin)
    return adjacency / scale, scale


def takagi(b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Takagi factorization B = U diag(d) Uᵀ of a real symmetric matrix.

    Built from the eigendecomposition B = QΛQᵀ: columns of Q belonging
    to negative eigenvalues pick up a factor i, and d = |Λ| is returned
    sorted in descending order.  U is unitary; for degenerate
    eigenvalues it is one valid choice among many, and only the
    reconstruction property is contractual.
    """
    b = np.asarray(b, dtype=float)
    if b.ndim != 2 or b.shape[0] != b.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {b.shape}")
    if np.max(np.abs(b - b.T), initial=0.0) > 1e-10:
        raise ValueError("Takagi factorization needs a symmetric matrix")
    eigenvalues, q = np.linalg.eigh(b)
    phases = np.where(eigenvalues < 0.0, 1j, 1.0 + 0j)
    u = q.astype(complex) * phases[np.newaxis, :]
    d = np.abs(eigenvalues)
    order = np.argsort(-d, kind="stable")
    return u[:, order], d[order]


def squeezings_from_takagi(d: np.ndarray) -> np.ndarray:
    """r_i = arctanh(d_i); every d_i must lie in [0, 1)."""
    d = np.asarray(d, dtype=float)
    if np.any(d < 0.0) or np.any(d >= 1.0):
        raise ValueError(
            f"singular values must lie in [0, 1) for arctanh, got {d}"
        )
    return np.arctanh(d)


# ---------------------------------------------------------------------------
# Mesh synthesis (rectangular nearest-neighbour elimination)
# ---------------------------------------------------------------------------
#
# A beamsplitter gate BS(θ, φ) on modes (m, m+1) has the single-photon
# transfer block
#
#     T(θ, φ) = [[cosθ, e^{iφ} sinθ], [-e^{-iφ} sinθ, cosθ]],
#
# with T(θ, φ)⁻¹ = T(-θ, φ), so products of T's and their inverses are
# directly realizable as gates.  The elimination sweeps anti-diagonals,
# alternating column operations (right multiplication) and row
# operations (left multiplication), zeroes the lower triangle, and
# leaves a diagonal unitary D that is pushed to the end of the circuit
# through the identity T(θ, φ)·D = D·T(θ, φ + β - α).


def _transfer_block(theta: float, phi: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array(
        [[c, np.exp(1j * phi) * s], [-np.exp(-1j * phi) * s, c]], dtype=complex
    )


def _column_null_params(v: np.ndarray, row: int, col: int) -> tuple[float, float]:
    # Choose (θ, φ) with tanθ·e^{-iφ} = v[row, col] / v[row, col+1].
    a, b = v[row, col], v[row, col + 1]
    theta = np.arctan2(abs(a), abs(b))
    phi = float(np.angle(b) - np.angle(a)) if abs(a) > 0 and abs(b) > 0 else 0.0
    return float(theta), phi


def _row_null_params(v: np.ndarray, row: int, col: int) -> tuple[float, float]:
    # Choose (θ, φ) with tanθ·e^{-iφ} = v[row, col] / v[row-1, col].
    a, b = v[row, col], v[row - 1, col]
    theta = np.arctan2(abs(a), abs(b))
    phi = float(np.angle(b) - np.angle(a)) if abs(a) > 0 and abs(b) > 0 else 0.0
    return float(theta), phi


def interferometer_mesh(u: np.ndarray, tol: float = 1e-8) -> tuple[GateSpec, ...]:
    """Compile a unitary into nearest-neighbour beamsplitters + rotations.

    The composed single-photon transfer matrix of the returned gates
    reproduces ``u``; at most n(n-1)/2 beamsplitters and n final
    rotations are emitted.
    """
    u = np.asarray(u, dtype=complex)
    n = u.shape[0]
    if u.ndim != 2 or u.shape != (n, n):
        raise ValueError(f"expected a square matrix, got shape {u.shape}")
    if np.max(np.abs(u.conj().T @ u - np.eye(n))) > tol:
        raise ValueError("interferometer matrix is not unitary")

    v = u.copy()
    right_ops: list[tuple[int, float, float]] = []  # (mode, θ, φ)
    left_ops: list[tuple[int, float, float]] = []
    for k, i in enumerate(range(n - 2, -1, -1)):
        if k % 2 == 0:
            for j in reversed(range(n - 1 - i)):
                row, col = i + j + 1, j
                if abs(v[row, col]) <= 1e-14:
                    continue
                theta, phi = _column_null_params(v, row, col)
                v[:, [col, col + 1]] = v[:, [col, col + 1]] @ _transfer_block(theta, phi)
                right_ops.append((col, theta, phi))
        else:
            for j in range(n - 1 - i):
                row, col = i + j + 1, j
                if abs(v[row, col]) <= 1e-14:
                    continue
                theta, phi = _row_null_params(v, row, col)
                v[[row - 1, row], :] = _transfer_block(theta, phi) @ v[[row - 1, row], :]
                left_ops.append((row - 1, theta, phi))

    diag = np.diag(v).copy()
    if np.max(np.abs(v - np.diag(diag))) > 1e-8:
        raise RuntimeError("mesh elimination failed to reach a diagonal matrix")
    angles = np.angle(diag)

    mesh: list[GateSpec] = []
    for mode, theta, phi in right_ops:
        mesh.append(gates.beamsplitter(-theta, phi, mode, mode + 1))
    for mode, theta, phi in reversed(left_ops):
        shifted = phi + angles[mode + 1] - angles[mode]
        mesh.append(gates.beamsplitter(-theta, float(shifted), mode, mode + 1))
    for mode in range(n):
        if abs(angles[mode]) > 1e-12:
            mesh.append(gates.rotation(float(angles[mode]), mode))
    return tuple(mesh)


def transfer_matrix(gate_sequence, n_modes: int) -> np.ndarray:
    """Single-photon transfer matrix of a beamsplitter/rotation sequence."""
    total = np.eye(n_modes, dtype=complex)
    for gate in gate_sequence:
        if gate.kind is GateKind.ROTATION:
            total[gate.modes[0], :] *= np.exp(1j * gate.params[0])
        elif gate.kind is GateKind.BEAMSPLITTER:
            block = _transfer_block(gate.params[0], gate.params[1])
            ma, mb = gate.modes
            total[[ma, mb], :] = block @ total[[ma, mb], :]
        else:
            raise ValueError(
                f"transfer matrix is only defined for meshes, got {gate.kind.value}"
            )
    return total


def embed(graph: WeightedGraph, margin: float = DEFAULT_MARGIN) -> EmbeddingProgram:
    """Compile a graph into its state-preparation program."""
    rescaled, scale = rescale_adjacency(graph.adjacency, margin)
    u, d = takagi(rescaled)
    squeezings = squeezings_from_takagi(d)
    mesh = interferometer_mesh(u)
    return EmbeddingProgram(squeezings=squeezings, mesh=mesh, scale=scale)
