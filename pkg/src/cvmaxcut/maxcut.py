"""Classical Max-Cut machinery: cut evaluation, exhaustive oracle, and
photon-count binarization.

A cut assignment is a tuple of n bits; bit i gives the group of node i.
The cut weight is the total weight of edges whose endpoints differ,
which is invariant under flipping every bit, so the exhaustive oracle
fixes node 0 on side 0 and enumerates the 2^(n-1) distinct bipartitions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SizeLimitError
from .graphs import WeightedGraph

#: Exhaustive enumeration guard.
MAX_BRUTE_FORCE_NODES = 24

_CHUNK = 1 << 16

CutAssignment = tuple[int, ...]


@dataclass(frozen=True)
class MaxCutResult:
    """Maximum cut weight and every maximizer (up to complement)."""

    mc: float
    maximizers: tuple[CutAssignment, ...]


def _check_assignment(graph: WeightedGraph, cut) -> np.ndarray:
    bits = np.asarray(list(cut), dtype=int)
    if bits.shape != (graph.n,):
        raise ValueError(
            f"assignment length {bits.shape[0]} does not match {graph.n} nodes"
        )
    if not np.all((bits == 0) | (bits == 1)):
        raise ValueError("assignment entries must be 0 or 1")
    return bits


def cut_weight(graph: WeightedGraph, cut) -> float:
    """Total weight of edges crossing the bipartition."""
    bits = _check_assignment(graph, cut)
    crossing = bits[:, None] != bits[None, :]
    return float(0.5 * np.sum(graph.adjacency * crossing))


def _chunked_cut_values(graph: WeightedGraph):
    """Yield (codes, cut values) over all assignments with node 0 fixed to 0."""
    n = graph.n
    iu, ju = np.nonzero(np.triu(graph.adjacency, k=1))
    weights = graph.adjacency[iu, ju]
    total = 1 << (n - 1)
    shifts = np.arange(n - 1)
    for start in range(0, total, _CHUNK):
        codes = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        bits = np.zeros((codes.shape[0], n), dtype=np.int8)
        bits[:, 1:] = (codes[:, None] >> shifts[None, :]) & 1
        crossing = bits[:, iu] != bits[:, ju]
        yield codes, bits, crossing.astype(float) @ weights


def brute_force_maxcut(graph: WeightedGraph) -> MaxCutResult:
    """Exhaustive Max-Cut oracle; every maximizer is reported with bit 0 = 0."""
    if graph.n > MAX_BRUTE_FORCE_NODES:
        raise SizeLimitError(
            f"brute force is guarded at {MAX_BRUTE_FORCE_NODES} nodes, "
            f"got {graph.n}"
        )
    best = -np.inf
    for _, _, values in _chunked_cut_values(graph):
        best = max(best, float(values.max()))
    maximizers: list[CutAssignment] = []
    for _, bits, values in _chunked_cut_values(graph):
        for row in np.nonzero(values == best)[0]:
            maximizers.append(tuple(int(b) for b in bits[row]))
    return MaxCutResult(mc=float(best), maximizers=tuple(maximizers))


def binarize(counts) -> CutAssignment:
    """Map photon counts to a cut: zero count → 0, any photons → 1."""
    return tuple(0 if int(c) == 0 else 1 for c in counts)


def canonical_assignment(cut) -> CutAssignment:
    """Complement-invariant form: flip all bits if bit 0 is set."""
    bits = tuple(int(b) for b in cut)
    if bits and bits[0] == 1:
        bits = tuple(1 - b for b in bits)
    return bits
