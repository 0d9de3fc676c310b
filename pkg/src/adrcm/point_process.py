"""Marked Poisson point process sampling: finite windows and Palm neighborhoods.

Vertices are space-time points (position, birth) of a unit-intensity Poisson
process on [0, n] x (0, 1].  A vertex born at time u expects
mu(u) = (beta/gamma) * (u^-gamma - 1) younger neighbors, so the whole window
carries n * beta / (1 - gamma) edges on average.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import ValidationError


class Vertex(NamedTuple):
    id: int
    position: float
    birth: float


@dataclass(frozen=True)
class ModelParams:
    """Model parameters; beta controls edge density, gamma the tail weight.

    profile_a widens the connection kernel (a = 1/2 is the deterministic
    rule), eta > 0 switches on thinning of exposed edges with retention u^eta.
    """

    beta: float
    gamma: float
    window_length: float
    profile_a: float = 0.5
    eta: float = 0.0
    torus: bool = False

    def __post_init__(self):
        if not self.beta > 0:
            raise ValidationError(f"beta must be positive, got {self.beta}")
        if not 0.0 < self.gamma < 1.0:
            raise ValidationError(f"gamma must lie in (0, 1), got {self.gamma}")
        if not self.window_length >= 0:
            raise ValidationError("window_length must be nonnegative")
        if not self.profile_a >= 0.5:
            raise ValidationError(f"profile_a must be >= 1/2, got {self.profile_a}")
        if self.eta < 0:
            raise ValidationError(f"eta must be nonnegative, got {self.eta}")
        if self.eta > 0:
            validate_thinning_exponent(self.gamma, self.eta)


def validate_thinning_exponent(gamma: float, eta: float) -> None:
    """Admissibility of the thinning exponent: 2/gamma - 1 > 1/(gamma - eta)."""
    if eta >= gamma:
        raise ValidationError(f"eta={eta} must be smaller than gamma={gamma}")
    if not 2.0 / gamma - 1.0 > 1.0 / (gamma - eta):
        raise ValidationError(
            f"inadmissible thinning: require 2/gamma - 1 > 1/(gamma - eta), "
            f"got gamma={gamma}, eta={eta}"
        )


@dataclass(eq=False)
class Vertices:
    """Columnar vertex set; indexable like a sequence of Vertex tuples."""

    ids: np.ndarray
    positions: np.ndarray
    births: np.ndarray

    def __post_init__(self):
        self.ids = np.asarray(self.ids, dtype=np.int64)
        self.positions = np.asarray(self.positions, dtype=np.float64)
        self.births = np.asarray(self.births, dtype=np.float64)
        if not (len(self.ids) == len(self.positions) == len(self.births)):
            raise ValidationError("vertex columns must have equal length")

    def __len__(self) -> int:
        return len(self.ids)

    def __getitem__(self, i: int) -> Vertex:
        return Vertex(int(self.ids[i]), float(self.positions[i]), float(self.births[i]))

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    @classmethod
    def from_rows(cls, rows) -> "Vertices":
        rows = list(rows)
        return cls(
            ids=np.array([r[0] for r in rows], dtype=np.int64),
            positions=np.array([r[1] for r in rows], dtype=np.float64),
            births=np.array([r[2] for r in rows], dtype=np.float64),
        )

    def sorted_by_birth(self) -> "Vertices":
        order = np.lexsort((self.ids, self.births))
        return Vertices(self.ids[order], self.positions[order], self.births[order])


def sample_finite(params: ModelParams, rng: np.random.Generator) -> Vertices:
    """Sample the vertex set of a finite window of volume n = window_length.

    The vertex count is Poisson(n); births are iid uniform on (0, 1] and
    positions iid uniform on [0, n].  Output is sorted by birth ascending
    with ids equal to birth ranks.
    """
    n = params.window_length
    count = int(rng.poisson(n)) if n > 0 else 0
    births = 1.0 - rng.random(count)  # (0, 1]; birth 0 would be singular
    positions = rng.random(count) * n
    order = np.argsort(births, kind="stable")
    return Vertices(
        ids=np.arange(count, dtype=np.int64),
        positions=positions[order],
        births=births[order],
    )


def expected_in_degree(u: float, params: ModelParams) -> float:
    """Expected number of younger neighbors of a vertex born at time u."""
    if not 0.0 < u <= 1.0:
        raise ValidationError(f"birth time must lie in (0, 1], got {u}")
    return params.beta / params.gamma * (u ** -params.gamma - 1.0)


def expected_edge_count(params: ModelParams) -> float:
    """Mean total edge count of the window: n * beta / (1 - gamma)."""
    return params.window_length * params.beta / (1.0 - params.gamma)


@dataclass(eq=False)
class PalmSample:
    """Neighborhood of a typical vertex at the origin with birth center_birth.

    vertices holds the center plus all its neighbors sorted by birth (ids are
    birth ranks, positions relative to the origin); edges are filled in by the
    graph builder, covering center-neighbor and neighbor-neighbor adjacency.
    Only simplices containing the center carry valid typical-simplex
    statistics: vertices not adjacent to the center are never generated.
    """

    center_birth: float
    vertices: Vertices
    center_id: int
    edges: "object" = field(default=None, repr=False)

    @property
    def older(self) -> list[Vertex]:
        mask = (self.vertices.births <= self.center_birth) & (self.vertices.ids != self.center_id)
        return [self.vertices[i] for i in np.nonzero(mask)[0]]

    @property
    def younger(self) -> list[Vertex]:
        mask = (self.vertices.births >= self.center_birth) & (self.vertices.ids != self.center_id)
        return [self.vertices[i] for i in np.nonzero(mask)[0]]

    @property
    def degree(self) -> int:
        return len(self.vertices) - 1


def sample_palm(params: ModelParams, u: float | None, rng: np.random.Generator) -> PalmSample:
    """Sample the Palm neighborhood of a typical vertex placed at the origin.

    Older neighbors: a homogeneous Poisson process {w_i} on [0, u^(1-gamma)]
    with intensity beta * u^(gamma-1) / (1-gamma), transformed through
    v_i = w_i^(1/(1-gamma)); the position is uniform on
    +- (beta/2) v_i^-gamma u^(gamma-1).  Younger neighbors analogously on
    [u^gamma, 1] with intensity beta * u^-gamma / gamma, v_i = w_i^(1/gamma),
    position uniform on +- (beta/2) u^-gamma v_i^(gamma-1).
    """
    from . import graph_builder

    if params.profile_a != 0.5:
        raise ValidationError("palm sampling is defined for the deterministic kernel (profile_a = 1/2)")
    beta, gamma = params.beta, params.gamma
    if u is None:
        u = 1.0 - rng.random()
    if not 0.0 < u <= 1.0:
        raise ValidationError(f"birth time must lie in (0, 1], got {u}")

    n_old = rng.poisson(beta / (1.0 - gamma) * u ** (gamma - 1.0) * u ** (1.0 - gamma))
    w_old = rng.random(n_old) * u ** (1.0 - gamma)
    births_old = w_old ** (1.0 / (1.0 - gamma))
    radii_old = 0.5 * beta * births_old ** -gamma * u ** (gamma - 1.0)
    pos_old = (2.0 * rng.random(n_old) - 1.0) * radii_old

    upow = u ** -gamma
    n_young = rng.poisson(beta / gamma * (upow - 1.0)) if u < 1.0 else 0
    w_young = u ** gamma + rng.random(n_young) * (1.0 - u ** gamma)
    births_young = w_young ** (1.0 / gamma)
    radii_young = 0.5 * beta * upow * births_young ** (gamma - 1.0)
    pos_young = (2.0 * rng.random(n_young) - 1.0) * radii_young

    births = np.concatenate([births_old, np.array([u]), births_young])
    positions = np.concatenate([pos_old, np.array([0.0]), pos_young])
    order = np.argsort(births, kind="stable")
    vertices = Vertices(
        ids=np.arange(len(births), dtype=np.int64),
        positions=positions[order],
        births=births[order],
    )
    center_id = int(np.nonzero(order == n_old)[0][0])

    local = ModelParams(beta=beta, gamma=gamma, window_length=0.0)
    edges = graph_builder.build_edges(vertices, local, rng=None)
    return PalmSample(center_birth=float(u), vertices=vertices, center_id=center_id, edges=edges)
