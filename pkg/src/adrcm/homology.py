"""Betti numbers of clique complexes via boundary ranks over GF(2).

beta_q = #q-simplices - rank d_q - rank d_(q+1); beta_0 is computed by
union-find over the 1-skeleton, which must agree with the rank formula.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .cliques import SimplicialComplex, find_rows
from .errors import ValidationError


@dataclass(eq=False)
class BoundaryMatrix:
    """Sparse boundary operator d_q: columns hold (q-1)-face row indices."""

    dimension: int
    n_rows: int
    faces_flat: np.ndarray
    column_offsets: np.ndarray

    @property
    def n_columns(self) -> int:
        return len(self.column_offsets) - 1

    def column(self, j: int) -> np.ndarray:
        return self.faces_flat[self.column_offsets[j]:self.column_offsets[j + 1]]

    @classmethod
    def from_complex(cls, cplx: SimplicialComplex, q: int) -> "BoundaryMatrix":
        if q < 1 or q > cplx.max_dim:
            raise ValidationError(f"boundary dimension {q} outside 1..{cplx.max_dim}")
        simplices = cplx.simplices[q]
        rows = cplx.simplices[q - 1]
        n = len(simplices)
        faces = np.empty((n, q + 1), np.int64)
        for drop in range(q + 1):
            cols = [c for c in range(q + 1) if c != drop]
            idx = find_rows(rows, simplices[:, cols])
            if np.any(idx < 0):
                raise ValidationError("complex is not closed under faces")
            faces[:, drop] = idx
        return cls(
            dimension=q,
            n_rows=len(rows),
            faces_flat=np.sort(faces, axis=1).ravel(),
            column_offsets=np.arange(0, (q + 1) * n + 1, q + 1, dtype=np.int64),
        )

    def rank(self) -> int:
        if self.n_columns == 0 or self.n_rows == 0:
            return 0
        return int(_kernels.gf2_rank(self.faces_flat, self.column_offsets, self.n_rows))


@dataclass(frozen=True)
class BettiVector:
    """Betti numbers beta_0..beta_q; truncated marks a beta_q computed
    without the (q+1)-simplices that could still fill cycles."""

    betti: tuple[int, ...]
    truncated: bool = False

    def __getitem__(self, q: int) -> int:
        return self.betti[q]

    def __len__(self) -> int:
        return len(self.betti)


def connected_components(cplx: SimplicialComplex) -> int:
    """beta_0 by union-find over the 1-skeleton."""
    n_comp, _ = _component_stats(cplx)
    return n_comp


def component_sizes(cplx: SimplicialComplex) -> tuple[int, int]:
    """(component count, size of the largest component)."""
    return _component_stats(cplx)


def _component_stats(cplx: SimplicialComplex) -> tuple[int, int]:
    verts = cplx.simplices[0].ravel()
    if len(verts) == 0:
        raise ValidationError("connected components need a nonempty vertex set")
    # compress ids so isolated indices are not counted as vertices
    order = np.argsort(verts)
    rank_of = np.empty(int(verts.max()) + 1, np.int64)
    rank_of[verts[order]] = np.arange(len(verts))
    edges = cplx.simplices.get(1)
    if edges is None or len(edges) == 0:
        left = np.empty(0, np.int64)
        right = np.empty(0, np.int64)
    else:
        left = rank_of[edges[:, 0]]
        right = rank_of[edges[:, 1]]
    n_comp, largest = _kernels.union_find_components(len(verts), left, right)
    return int(n_comp), int(largest)


def betti_numbers(
    cplx: SimplicialComplex, up_to_q: int, allow_truncated: bool = False
) -> BettiVector:
    """Betti numbers beta_0..beta_up_to_q of the clique complex.

    Requires max_dim >= up_to_q + 1 so that rank d_(q+1) is available;
    allow_truncated instead reports the top Betti number of the truncation
    (missing higher simplices can only lower the true value).
    """
    if up_to_q < 0:
        raise ValidationError("up_to_q must be nonnegative")
    truncated = cplx.max_dim < up_to_q + 1
    if truncated and not allow_truncated:
        raise ValidationError(
            f"betti_{up_to_q} needs simplices of dimension {up_to_q + 1}; "
            f"complex has max_dim={cplx.max_dim}"
        )
    betti = [connected_components(cplx)]
    rank_prev = len(cplx.simplices[0]) - betti[0]  # rank d_1 via components
    for q in range(1, up_to_q + 1):
        n_q = cplx.simplex_count(q)
        if q + 1 <= cplx.max_dim:
            rank_next = BoundaryMatrix.from_complex(cplx, q + 1).rank()
        else:
            rank_next = 0
        betti.append(n_q - rank_prev - rank_next)
        rank_prev = rank_next
    return BettiVector(betti=tuple(int(b) for b in betti), truncated=truncated)
