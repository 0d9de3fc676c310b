from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from math import comb

from adrcm.cliques import (
    clique_complex,
    edge_degrees,
    generalized_degrees,
    palm_generalized_degrees,
    per_simplex_degrees,
    triangle_degrees,
    vertex_degrees,
)
from adrcm.errors import ValidationError
from adrcm.graph_builder import EdgeSet, build_edges
from adrcm.harness import derive_rng
from adrcm.point_process import Vertices, sample_finite, sample_palm

from conftest import make_params


def edge_set_from_pairs(pairs, n):
    pairs = sorted(pairs)
    return EdgeSet(
        younger_ids=np.array([b for _, b in pairs], np.int64),
        older_ids=np.array([a for a, _ in pairs], np.int64),
        n_vertices=n,
    )


def vertices_stub(n):
    return Vertices.from_rows([(i, 0.0, 1.0) for i in range(n)])


def complete_graph(n):
    return edge_set_from_pairs(combinations(range(n), 2), n)


def brute_force_cliques(pairs, n, max_dim):
    adj = {i: set() for i in range(n)}
    for a, b in pairs:
        adj[a].add(b)
        adj[b].add(a)
    out = {0: {(i,) for i in range(n)}}
    for dim in range(1, max_dim + 1):
        out[dim] = {
            c
            for c in combinations(range(n), dim + 1)
            if all(b in adj[a] for a, b in combinations(c, 2))
        }
    return out


def as_sets(cplx):
    return {dim: {tuple(r) for r in rows} for dim, rows in cplx.simplices.items()}


class TestCliqueComplex:
    def test_triangle_graph(self):
        es = edge_set_from_pairs([(0, 1), (0, 2), (1, 2)], 3)
        cplx = clique_complex(es, vertices_stub(3), max_dim=2)
        assert cplx.counts() == {0: 3, 1: 3, 2: 1}

    def test_path_has_no_triangle(self):
        es = edge_set_from_pairs([(0, 1), (1, 2)], 3)
        cplx = clique_complex(es, vertices_stub(3), max_dim=2)
        assert cplx.counts() == {0: 3, 1: 2, 2: 0}

    def test_complete_graph_counts(self):
        cplx = clique_complex(complete_graph(5), vertices_stub(5), max_dim=3)
        assert cplx.counts() == {0: 5, 1: 10, 2: 10, 3: 5}

    def test_max_dim_validation(self):
        with pytest.raises(ValidationError):
            clique_complex(complete_graph(3), vertices_stub(3), max_dim=0)

    @given(seed=st.integers(0, 2**31 - 1), n=st.integers(2, 25), p=st.floats(0.1, 0.7))
    @settings(max_examples=30, deadline=None)
    def test_matches_brute_force_subset_testing(self, seed, n, p):
        rng = np.random.default_rng(seed)
        pairs = [c for c in combinations(range(n), 2) if rng.random() < p]
        cplx = clique_complex(edge_set_from_pairs(pairs, n), vertices_stub(n), max_dim=3)
        assert as_sets(cplx) == brute_force_cliques(pairs, n, 3)

    def test_face_closure(self):
        params = make_params(gamma=0.6, n=400.0)
        verts = sample_finite(params, derive_rng(61, 0))
        cplx = clique_complex(build_edges(verts, params), verts, max_dim=3)
        for dim in range(1, 4):
            lower = {tuple(r) for r in cplx.simplices[dim - 1]}
            for row in cplx.simplices[dim]:
                for face in combinations(row, dim):
                    assert tuple(face) in lower

    def test_rows_sorted_and_unique(self):
        params = make_params(gamma=0.6, n=400.0)
        verts = sample_finite(params, derive_rng(62, 0))
        cplx = clique_complex(build_edges(verts, params), verts, max_dim=3)
        for rows in cplx.simplices.values():
            assert np.all(np.diff(rows, axis=1) > 0) if rows.shape[1] > 1 else True
            assert len({tuple(r) for r in rows}) == len(rows)


class TestGeneralizedDegrees:
    def test_k4_vertex_degrees(self):
        cplx = clique_complex(complete_graph(4), vertices_stub(4), max_dim=3)
        assert generalized_degrees(cplx, 0, 1).counts == {3: 4}

    def test_k4_edge_degrees(self):
        cplx = clique_complex(complete_graph(4), vertices_stub(4), max_dim=3)
        assert generalized_degrees(cplx, 1, 2).counts == {2: 6}

    def test_filled_triangle_has_no_tetrahedra(self):
        cplx = clique_complex(complete_graph(3), vertices_stub(3), max_dim=3)
        assert generalized_degrees(cplx, 2, 3).counts == {0: 1}

    def test_dimension_validation(self):
        cplx = clique_complex(complete_graph(3), vertices_stub(3), max_dim=2)
        with pytest.raises(ValidationError):
            generalized_degrees(cplx, 2, 3)
        with pytest.raises(ValidationError):
            generalized_degrees(cplx, 2, 1)

    @given(seed=st.integers(0, 2**31 - 1), n=st.integers(3, 18), p=st.floats(0.2, 0.8))
    @settings(max_examples=25, deadline=None)
    def test_incidence_count_consistency(self, seed, n, p):
        # total (m, m') incidences = C(m'+1, m+1) * number of m'-simplices
        rng = np.random.default_rng(seed)
        pairs = [c for c in combinations(range(n), 2) if rng.random() < p]
        cplx = clique_complex(edge_set_from_pairs(pairs, n), vertices_stub(n), max_dim=3)
        for m in range(0, 3):
            for mp in range(m, 4):
                total = per_simplex_degrees(cplx, m, mp).sum()
                assert total == comb(mp + 1, m + 1) * cplx.simplex_count(mp)

    def test_fast_paths_match_generic(self):
        params = make_params(gamma=0.7, n=600.0)
        verts = sample_finite(params, derive_rng(63, 0))
        es = build_edges(verts, params)
        cplx = clique_complex(es, verts, max_dim=3)
        assert np.array_equal(np.sort(vertex_degrees(es)), np.sort(per_simplex_degrees(cplx, 0, 1)))
        assert np.array_equal(np.sort(edge_degrees(es)), np.sort(per_simplex_degrees(cplx, 1, 2)))
        assert np.array_equal(
            np.sort(triangle_degrees(es)), np.sort(per_simplex_degrees(cplx, 2, 3))
        )


class TestPalmDegrees:
    def make_palm(self, **kw):
        return sample_palm(make_params(**kw), None, derive_rng(64, kw.get("seed", 0)))

    def test_isolated_center(self):
        # force a draw with no neighbors: tiny beta makes them vanishingly rare
        palm = sample_palm(make_params(beta=1e-8), 1.0, derive_rng(65, 0))
        assert palm.degree == 0
        dist = palm_generalized_degrees(palm, make_params(beta=1e-8), 0, 1)
        assert dist.counts == {0: 1}

    def test_two_adjacent_neighbors_make_one_center_triangle(self):
        import adrcm.point_process as pp
        from adrcm.graph_builder import build_edges as be

        verts = Vertices.from_rows([(0, 0.0, 0.2), (1, 0.05, 0.5), (2, -0.05, 0.9)])
        params = make_params(gamma=0.5, n=1.0)
        palm = pp.PalmSample(
            center_birth=0.2, vertices=verts, center_id=0, edges=be(verts, params)
        )
        assert palm_generalized_degrees(palm, params, 0, 2).counts == {1: 1}

    def test_typical_degree_mean(self):
        # mean (0,1)-degree over draws approaches 2 beta / (1 - gamma) = 4
        total = sum(
            sample_palm(make_params(), None, derive_rng(66, k)).degree for k in range(100_000)
        )
        assert abs(total / 100_000 - 4.0) < 0.08

    def test_restriction_to_center(self):
        palm = self.make_palm(gamma=0.6)
        dist = palm_generalized_degrees(palm, make_params(gamma=0.6), 1, 2)
        assert dist.total() == palm.degree  # one observation per center edge
