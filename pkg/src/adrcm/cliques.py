"""Clique complexes and generalized degree distributions.

A set of k+1 vertices is a k-simplex exactly when it is a (k+1)-clique of the
underlying graph.  The generalized degree of an m-simplex counts the
m'-simplices containing it; deg(vertex in edges) recovers the usual degree,
deg(edge in triangles) the edge degree, deg(triangle in tetrahedra) the
triangle degree.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import _kernels
from .errors import ValidationError
from .graph_builder import EdgeSet
from .point_process import ModelParams, PalmSample, Vertices


@dataclass(eq=False)
class SimplicialComplex:
    """Simplices by dimension as (count, dim+1) id arrays.

    Rows have ascending vertex ids and are stored in lexicographic order;
    the complex is closed under taking faces up to max_dim.
    """

    simplices: dict[int, np.ndarray]
    max_dim: int
    n_vertices: int

    def counts(self) -> dict[int, int]:
        return {k: len(v) for k, v in self.simplices.items()}

    def simplex_count(self, dim: int) -> int:
        arr = self.simplices.get(dim)
        return 0 if arr is None else len(arr)


@dataclass
class DegreeDistribution:
    """Sparse value -> frequency map of generalized degrees."""

    m: int
    m_prime: int
    counts: dict[int, int]

    @classmethod
    def from_values(cls, m: int, m_prime: int, values) -> "DegreeDistribution":
        values = np.asarray(values, dtype=np.int64)
        uniq, freq = np.unique(values, return_counts=True)
        return cls(m, m_prime, dict(zip(uniq.tolist(), freq.tolist())))

    def total(self) -> int:
        return sum(self.counts.values())

    def mean(self) -> float:
        total = self.total()
        if total == 0:
            return float("nan")
        return sum(v * c for v, c in self.counts.items()) / total

    def to_value_counts(self) -> np.ndarray:
        items = sorted(self.counts.items())
        return np.array(items, dtype=np.int64).reshape(-1, 2)

    def merge(self, other: "DegreeDistribution") -> "DegreeDistribution":
        if (self.m, self.m_prime) != (other.m, other.m_prime):
            raise ValidationError("cannot merge distributions of different orders")
        merged = Counter(self.counts)
        merged.update(other.counts)
        return DegreeDistribution(self.m, self.m_prime, dict(merged))


def _canonical_rows(rows: np.ndarray) -> np.ndarray:
    rows = np.sort(np.asarray(rows, dtype=np.int64), axis=1)
    order = np.lexsort(rows.T[::-1])
    return rows[order]


def clique_complex(edge_set: EdgeSet, vertices: Vertices, max_dim: int = 3) -> SimplicialComplex:
    """Enumerate all cliques of size <= max_dim + 1 by ordered expansion.

    A clique is only ever extended by common neighbors ranked above its last
    vertex, so each one is emitted exactly once.
    """
    if max_dim < 1:
        raise ValidationError(f"max_dim must be >= 1, got {max_dim}")
    n = edge_set.n_vertices
    if len(vertices) and int(vertices.ids.max()) >= n:
        n = int(vertices.ids.max()) + 1
    simplices: dict[int, np.ndarray] = {
        0: np.sort(np.asarray(vertices.ids, dtype=np.int64)).reshape(-1, 1)
    }
    offsets, adj, eid = _kernels.undirected_csr(n, edge_set.younger_ids, edge_set.older_ids)
    edges = np.stack(
        [
            np.minimum(edge_set.younger_ids, edge_set.older_ids),
            np.maximum(edge_set.younger_ids, edge_set.older_ids),
        ],
        axis=1,
    )
    simplices[1] = _canonical_rows(edges) if len(edges) else np.empty((0, 2), np.int64)
    if max_dim >= 2:
        tri_v, _, _ = _kernels.triangles(n, offsets, adj, eid, len(edge_set))
        simplices[2] = _canonical_rows(tri_v) if len(tri_v) else np.empty((0, 3), np.int64)
    for dim in range(3, max_dim + 1):
        prev = simplices[dim - 1]
        if len(prev) == 0:
            simplices[dim] = np.empty((0, dim + 1), np.int64)
            continue
        ext = _kernels.extend_cliques(prev, offsets, adj)
        simplices[dim] = _canonical_rows(ext) if len(ext) else np.empty((0, dim + 1), np.int64)
    return SimplicialComplex(simplices=simplices, max_dim=max_dim, n_vertices=n)


def _row_view(rows: np.ndarray) -> np.ndarray:
    # big-endian byte view: lexicographic row order equals byte order for
    # nonnegative ints, making rows searchable with np.searchsorted
    rows = np.ascontiguousarray(np.asarray(rows, dtype=np.int64).astype(">i8"))
    return rows.view(f"V{rows.shape[1] * 8}").ravel()


def find_rows(sorted_rows: np.ndarray, queries: np.ndarray) -> np.ndarray:
    """Indices of query rows inside a lexsorted row array, -1 when absent."""
    if len(queries) == 0:
        return np.empty(0, np.int64)
    haystack = _row_view(sorted_rows)
    needles = _row_view(np.sort(np.asarray(queries, dtype=np.int64), axis=1))
    idx = np.searchsorted(haystack, needles)
    out = np.full(len(needles), -1, np.int64)
    inside = idx < len(haystack)
    hits = np.zeros(len(needles), bool)
    hits[inside] = haystack[idx[inside]] == needles[inside]
    out[hits] = idx[hits]
    return out


def per_simplex_degrees(cplx: SimplicialComplex, m: int, m_prime: int) -> np.ndarray:
    """Generalized degree of every m-simplex, aligned with simplices[m]."""
    if not 0 <= m <= m_prime <= cplx.max_dim:
        raise ValidationError(
            f"need 0 <= m <= m_prime <= max_dim, got m={m}, m_prime={m_prime}, "
            f"max_dim={cplx.max_dim}"
        )
    base = cplx.simplices[m]
    counts = np.zeros(len(base), np.int64)
    high = cplx.simplices[m_prime]
    if len(high) == 0 or len(base) == 0:
        return counts
    for cols in combinations(range(m_prime + 1), m + 1):
        idx = find_rows(base, high[:, cols])
        if np.any(idx < 0):
            raise ValidationError("complex is not closed under faces")
        np.add.at(counts, idx, 1)
    return counts


def generalized_degrees(cplx: SimplicialComplex, m: int, m_prime: int) -> DegreeDistribution:
    """Distribution of the number of m'-simplices containing each m-simplex."""
    return DegreeDistribution.from_values(m, m_prime, per_simplex_degrees(cplx, m, m_prime))


def palm_generalized_degrees(
    palm_sample: PalmSample, params: ModelParams, m: int, m_prime: int
) -> DegreeDistribution:
    """Generalized degrees restricted to simplices containing the Palm center.

    Simplices through the center are free of finite-size effects; degrees of
    simplices avoiding the center would be biased and are not reported.
    """
    if palm_sample.edges is None:
        raise ValidationError("palm sample lacks materialized neighbor edges")
    cplx = clique_complex(palm_sample.edges, palm_sample.vertices, max_dim=max(m_prime, 1))
    degrees = per_simplex_degrees(cplx, m, m_prime)
    contains_center = np.any(cplx.simplices[m] == palm_sample.center_id, axis=1)
    return DegreeDistribution.from_values(m, m_prime, degrees[contains_center])


def vertex_degrees(edge_set: EdgeSet) -> np.ndarray:
    """Fast path for the (0, 1) degrees of every vertex."""
    return edge_set.degrees()


def edge_degrees(edge_set: EdgeSet) -> np.ndarray:
    """Fast path for the (1, 2) degrees: triangles through each edge."""
    offsets, adj, eid = edge_set.adjacency()
    _, _, per_edge = _kernels.triangles(edge_set.n_vertices, offsets, adj, eid, len(edge_set))
    return per_edge


def triangle_degrees(edge_set: EdgeSet) -> np.ndarray:
    """Fast path for the (2, 3) degrees: tetrahedra through each triangle."""
    offsets, adj, eid = edge_set.adjacency()
    tri_v, _, _ = _kernels.triangles(edge_set.n_vertices, offsets, adj, eid, len(edge_set))
    return _kernels.triangle_degrees(tri_v, offsets, adj)
