"""Weighted graphs and their JSON interchange format.

The on-disk format, shared by the CLI and the embedding pipeline, is

    {"n": <node count>, "edges": [[i, j, weight], ...]}

with 0-based node indices.  Self-loops, duplicate edges (in either
orientation), and out-of-range indices are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import GraphFormatError


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """Symmetric weighted adjacency matrix with a zero diagonal."""

    n: int
    adjacency: np.ndarray

    def __post_init__(self):
        adj = np.asarray(self.adjacency, dtype=float)
        if adj.ndim != 2 or adj.shape != (self.n, self.n):
            raise ValueError(
                f"adjacency shape {adj.shape} does not match n = {self.n}"
            )
        if self.n < 1:
            raise ValueError("graph needs at least one node")
        if not np.all(np.isfinite(adj)):
            raise ValueError("adjacency entries must be finite")
        if np.max(np.abs(adj - adj.T), initial=0.0) > 1e-12:
            raise ValueError("adjacency must be symmetric")
        if np.max(np.abs(np.diag(adj)), initial=0.0) > 0.0:
            raise ValueError("adjacency diagonal must be zero")
        object.__setattr__(self, "adjacency", adj)

    @classmethod
    def from_adjacency(cls, adjacency) -> "WeightedGraph":
        adjacency = np.asarray(adjacency, dtype=float)
        return cls(adjacency.shape[0], adjacency)

    @classmethod
    def from_edges(cls, n: int, edge_list) -> "WeightedGraph":
        adj = np.zeros((n, n))
        seen: set[frozenset] = set()
        for edge in edge_list:
            try:
                i, j, w = edge
            except (TypeError, ValueError) as exc:
                raise GraphFormatError(
                    f"edge {edge!r} is not an [i, j, weight] triple"
                ) from exc
            i, j, w = int(i), int(j), float(w)
            if i == j:
                raise GraphFormatError(f"self-loop at edge ({i}, {j})")
            if not (0 <= i < n and 0 <= j < n):
                raise GraphFormatError(
                    f"edge ({i}, {j}) out of range for {n} nodes"
                )
            key = frozenset((i, j))
            if key in seen:
                raise GraphFormatError(f"duplicate edge ({i}, {j})")
            seen.add(key)
            if not np.isfinite(w):
                raise GraphFormatError(f"edge ({i}, {j}) has non-finite weight")
            adj[i, j] = w
            adj[j, i] = w
        return cls(n, adj)

    def edges(self) -> list[tuple[int, int, float]]:
        """Upper-triangle nonzero entries as (i, j, weight) triples."""
        iu, ju = np.nonzero(np.triu(self.adjacency, k=1))
        return [(int(i), int(j), float(self.adjacency[i, j])) for i, j in zip(iu, ju)]

    def to_json_dict(self) -> dict:
        return {"n": self.n, "edges": [[i, j, w] for i, j, w in self.edges()]}


def parse_graph(obj) -> WeightedGraph:
    """Build a graph from a decoded JSON object, validating the schema."""
    if not isinstance(obj, dict):
        raise GraphFormatError(f"graph JSON must be an object, got {type(obj).__name__}")
    extra = set(obj) - {"n", "edges"}
    if extra:
        raise GraphFormatError(f"unknown graph keys: {sorted(extra)}")
    if "n" not in obj or "edges" not in obj:
        raise GraphFormatError('graph JSON needs keys "n" and "edges"')
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise GraphFormatError(f'"n" must be a positive integer, got {n!r}')
    edges = obj["edges"]
    if not isinstance(edges, list):
        raise GraphFormatError('"edges" must be a list of [i, j, weight] triples')
    return WeightedGraph.from_edges(n, edges)


def load_graph(path) -> WeightedGraph:
    """Read a graph JSON file."""
    text = Path(path).read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"{path}: invalid JSON: {exc}") from exc
    try:
        return parse_graph(obj)
    except GraphFormatError as exc:
        raise GraphFormatError(f"{path}: {exc}") from exc
