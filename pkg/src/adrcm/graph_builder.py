"""Directed younger-to-older edge sets, protected-edge flags and thinning.

An edge (y, v) -> (x, u) with u <= v exists when
|x - y| <= profile_a * beta * u^-gamma * v^(gamma-1); for profile_a = 1/2 the
rule is deterministic, otherwise a candidate is retained independently with
probability 1/(2 * profile_a).  Thinning removes exposed edges with retention
probability u^eta, u being the older endpoint's birth.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import _kernels
from .errors import ValidationError
from .point_process import ModelParams, Vertices, validate_thinning_exponent


class Edge(NamedTuple):
    younger_id: int
    older_id: int
    protected: bool | None


@dataclass(eq=False)
class EdgeSet:
    """Columnar edge list with an optional protected flag per edge.

    Edges are stored over vertex ids; (younger_id, older_id) pairs are unique
    and the undirected view is simple.  Adjacency indexes are built lazily.
    """

    younger_ids: np.ndarray
    older_ids: np.ndarray
    n_vertices: int
    protected: np.ndarray | None = None
    _csr: tuple | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.younger_ids = np.asarray(self.younger_ids, dtype=np.int64)
        self.older_ids = np.asarray(self.older_ids, dtype=np.int64)
        if self.protected is not None:
            self.protected = np.asarray(self.protected, dtype=bool)
            if len(self.protected) != len(self.younger_ids):
                raise ValidationError("protected flags must match edge count")

    def __len__(self) -> int:
        return len(self.younger_ids)

    def __getitem__(self, i: int) -> Edge:
        flag = None if self.protected is None else bool(self.protected[i])
        return Edge(int(self.younger_ids[i]), int(self.older_ids[i]), flag)

    def undirected_pairs(self) -> set[tuple[int, int]]:
        return {
            (min(a, b), max(a, b))
            for a, b in zip(self.younger_ids.tolist(), self.older_ids.tolist())
        }

    def adjacency(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Sorted CSR (offsets, neighbors, edge_ids) of the undirected view."""
        if self._csr is None:
            self._csr = _kernels.undirected_csr(
                self.n_vertices, self.younger_ids, self.older_ids
            )
        return self._csr

    def degrees(self) -> np.ndarray:
        offsets, _, _ = self.adjacency()
        return np.diff(offsets)


def _ranked_views(vertices: Vertices):
    births = vertices.births
    if np.any(np.diff(births) < 0):
        raise ValidationError("vertices must be sorted by birth ascending")
    # ties broken by id: lower id is treated as older
    order = np.lexsort((vertices.ids, births))
    return order, births[order], vertices.positions[order]


def build_edges(
    vertices: Vertices, params: ModelParams, rng: np.random.Generator | None = None
) -> EdgeSet:
    """Build the directed edge set; deterministic when profile_a = 1/2.

    For profile_a > 1/2 candidate edges are retained with probability
    1/(2 * profile_a) using counter-based draws keyed by (seed, pair), so the
    result depends only on the rng state at entry, never on scan order.
    """
    if params.profile_a > 0.5 and rng is None:
        raise ValidationError("profile_a > 1/2 requires a random source")
    order, births, positions = _ranked_views(vertices)
    if len(vertices) == 0:
        return EdgeSet(np.empty(0, np.int64), np.empty(0, np.int64), 0)
    edge_seed = int(rng.integers(2**63)) if params.profile_a > 0.5 else 0
    ranked_younger, ranked_older = _kernels.build_edges_ranked(
        births,
        positions,
        params.beta,
        params.gamma,
        params.profile_a,
        params.window_length,
        params.torus,
        edge_seed,
    )
    n_vertices = max(len(vertices), int(vertices.ids.max()) + 1)
    return EdgeSet(
        younger_ids=vertices.ids[order[ranked_younger]],
        older_ids=vertices.ids[order[ranked_older]],
        n_vertices=n_vertices,
    )


def classify_protected(edge_set: EdgeSet, vertices: Vertices) -> EdgeSet:
    """Fill protected flags: (z, w) -> (x, u) is protected iff w <= 2u or z
    has another older neighbor (y, v) with u/2 <= v <= 2u."""
    birth_of = _birth_lookup(vertices)
    flags = _kernels.classify_protected_ranked(
        edge_set.younger_ids, edge_set.older_ids, birth_of
    )
    return EdgeSet(
        younger_ids=edge_set.younger_ids.copy(),
        older_ids=edge_set.older_ids.copy(),
        n_vertices=edge_set.n_vertices,
        protected=flags,
    )


def thin(
    edge_set: EdgeSet,
    vertices: Vertices,
    eta: float,
    rng: np.random.Generator | None,
    gamma: float | None = None,
    force: bool = False,
) -> EdgeSet:
    """Drop exposed edges independently, keeping each with probability u^eta.

    Protected edges always survive.  When gamma is supplied, the admissibility
    constraint 2/gamma - 1 > 1/(gamma - eta) is enforced unless force is set.
    Draws are keyed by (seed, edge index) so the output is schedule-free.
    """
    if eta < 0:
        raise ValidationError(f"eta must be nonnegative, got {eta}")
    if eta > 0 and gamma is not None and not force:
        validate_thinning_exponent(gamma, eta)
    if eta == 0:
        return EdgeSet(
            edge_set.younger_ids.copy(),
            edge_set.older_ids.copy(),
            edge_set.n_vertices,
            None if edge_set.protected is None else edge_set.protected.copy(),
        )
    if edge_set.protected is None:
        raise ValidationError("thin requires protected flags; run classify_protected first")
    if rng is None:
        raise ValidationError("thinning requires a random source")
    birth_of = _birth_lookup(vertices)
    thin_seed = int(rng.integers(2**63))
    keep = _kernels.thin_keep_mask(
        birth_of[edge_set.older_ids], edge_set.protected, eta, thin_seed
    )
    return EdgeSet(
        younger_ids=edge_set.younger_ids[keep],
        older_ids=edge_set.older_ids[keep],
        n_vertices=edge_set.n_vertices,
        protected=edge_set.protected[keep],
    )


def _birth_lookup(vertices: Vertices) -> np.ndarray:
    """Map vertex id -> birth; ids must be usable as array indices."""
    ids = vertices.ids
    if len(ids) == 0:
        return np.empty(0, np.float64)
    top = int(ids.max())
    if ids.min() < 0:
        raise ValidationError("vertex ids must be nonnegative")
    birth_of = np.full(top + 1, np.nan)
    birth_of[ids] = vertices.births
    return birth_of
