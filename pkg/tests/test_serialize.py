import numpy as np
import pytest

from adrcm import serialize
from adrcm.cliques import clique_complex
from adrcm.graph_builder import build_edges, classify_protected
from adrcm.harness import derive_rng
from adrcm.point_process import sample_finite

from conftest import make_params


@pytest.fixture
def network():
    params = make_params(gamma=0.6, n=300.0)
    vertices = sample_finite(params, derive_rng(101, 0))
    edge_set = classify_protected(build_edges(vertices, params), vertices)
    return params, vertices, edge_set


def test_vertices_csv_roundtrip(tmp_path, network):
    _, vertices, _ = network
    path = tmp_path / "vertices.csv"
    serialize.write_vertices_csv(path, vertices)
    back = serialize.read_vertices_csv(path)
    assert np.array_equal(back.ids, vertices.ids)
    assert np.array_equal(back.positions, vertices.positions)
    assert np.array_equal(back.births, vertices.births)


def test_vertices_npz_roundtrip(tmp_path, network):
    _, vertices, _ = network
    path = tmp_path / "vertices.npz"
    serialize.write_vertices_npz(path, vertices)
    back = serialize.read_vertices_npz(path)
    assert np.array_equal(back.births, vertices.births)


def test_edges_csv_roundtrip(tmp_path, network):
    _, _, edge_set = network
    path = tmp_path / "edges.csv"
    serialize.write_edges_csv(path, edge_set)
    back = serialize.read_edges_csv(path, n_vertices=edge_set.n_vertices)
    assert np.array_equal(back.younger_ids, edge_set.younger_ids)
    assert np.array_equal(back.older_ids, edge_set.older_ids)
    assert np.array_equal(back.protected, edge_set.protected)


def test_edges_npz_roundtrip(tmp_path, network):
    _, _, edge_set = network
    path = tmp_path / "edges.npz"
    serialize.write_edges_npz(path, edge_set)
    back = serialize.read_edges_npz(path)
    assert np.array_equal(back.younger_ids, edge_set.younger_ids)
    assert back.n_vertices == edge_set.n_vertices
    assert np.array_equal(back.protected, edge_set.protected)


def test_simplices_csv_roundtrip(tmp_path, network):
    _, vertices, edge_set = network
    cplx = clique_complex(edge_set, vertices, max_dim=3)
    path = tmp_path / "simplices.csv"
    serialize.write_simplices_csv(path, cplx)
    back = serialize.read_simplices_csv(path)
    assert back.max_dim == cplx.max_dim
    for dim in range(cplx.max_dim + 1):
        assert np.array_equal(back.simplices[dim], cplx.simplices[dim])


def test_value_counts_roundtrip(tmp_path):
    counts = {1: 10, 3: 2, 50: 1}
    path = tmp_path / "value_counts.csv"
    serialize.write_value_counts_csv(path, counts)
    assert serialize.read_value_counts_csv(path) == counts


def test_histogram_qq_pdf_layouts(tmp_path):
    edges = np.array([0.0, 1.0, 2.0])
    dens = np.array([0.25, 0.75])
    serialize.write_linear_histogram_csv(tmp_path / "h.csv", {"edge_count": (edges, dens)})
    cols = serialize.read_columns(tmp_path / "h.csv")
    assert np.array_equal(cols["edge_count_bin_left_limit"], edges)
    assert np.array_equal(cols["edge_count_value"], np.append(dens, 0.0))

    qq = np.array([[0.0, 0.1], [1.0, 1.1]])
    serialize.write_qq_csv(tmp_path / "q.csv", {"normal": qq})
    cols = serialize.read_columns(tmp_path / "q.csv")
    assert np.array_equal(cols["normal_theoretical"], qq[:, 0])
    assert np.array_equal(cols["normal_empirical"], qq[:, 1])

    serialize.write_pdf_csv(tmp_path / "p.csv", {"stable": (edges, np.array([1.0, 2.0, 3.0]))})
    cols = serialize.read_columns(tmp_path / "p.csv")
    assert np.array_equal(cols["stable_value"], edges)
    assert np.array_equal(cols["stable_pdf"], np.array([1.0, 2.0, 3.0]))


def test_float_precision_exact(tmp_path):
    # repr-based cells reproduce doubles bit for bit
    values = np.array([1 / 3, np.pi, 1e-17, 123456.789012345])
    serialize.write_pdf_csv(tmp_path / "p.csv", {"x": (values, values)})
    cols = serialize.read_columns(tmp_path / "p.csv")
    assert np.array_equal(cols["x_value"], values)
