"""CSV and binary round-trips for vertices, edges, simplices and plot data.

CSV layouts follow the plotting artifacts consumed downstream:
value_counts.csv (value,count), linear_histograms.csv with
{label}_bin_left_limit/{label}_value columns, qq_plot.csv with
{label}_theoretical/{label}_empirical, theoretical_pdf.csv with
{label}_value/{label}_pdf.  The compact binary form is a .npz archive.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .cliques import SimplicialComplex
from .errors import ValidationError
from .graph_builder import EdgeSet
from .point_process import Vertices


def write_vertices_csv(path, vertices: Vertices) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["id", "position", "birth"])
        for i in range(len(vertices)):
            w.writerow([int(vertices.ids[i]), repr(float(vertices.positions[i])), repr(float(vertices.births[i]))])


def read_vertices_csv(path) -> Vertices:
    with Path(path).open(newline="", encoding="utf-8") as fh:
        r = csv.reader(fh)
        header = next(r, None)
        if header != ["id", "position", "birth"]:
            raise ValidationError(f"unexpected vertices header {header}")
        rows = [(int(a), float(b), float(c)) for a, b, c in r]
    return Vertices.from_rows(rows)


def write_vertices_npz(path, vertices: Vertices) -> None:
    np.savez_compressed(
        Path(path), ids=vertices.ids, positions=vertices.positions, births=vertices.births
    )


def read_vertices_npz(path) -> Vertices:
    with np.load(Path(path)) as data:
        return Vertices(ids=data["ids"], positions=data["positions"], births=data["births"])


def write_edges_csv(path, edge_set: EdgeSet) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["younger_id", "older_id", "protected"])
        flags = edge_set.protected
        for i in range(len(edge_set)):
            flag = "" if flags is None else int(flags[i])
            w.writerow([int(edge_set.younger_ids[i]), int(edge_set.older_ids[i]), flag])


def read_edges_csv(path, n_vertices: int | None = None) -> EdgeSet:
    younger, older, flags = [], [], []
    with Path(path).open(newline="", encoding="utf-8") as fh:
        r = csv.reader(fh)
        header = next(r, None)
        if header != ["younger_id", "older_id", "protected"]:
            raise ValidationError(f"unexpected edges header {header}")
        for a, b, c in r:
            younger.append(int(a))
            older.append(int(b))
            flags.append(None if c == "" else bool(int(c)))
    protected = None
    if flags and flags[0] is not None:
        protected = np.array(flags, dtype=bool)
    younger = np.array(younger, dtype=np.int64)
    older = np.array(older, dtype=np.int64)
    if n_vertices is None:
        n_vertices = int(max(younger.max(initial=-1), older.max(initial=-1))) + 1
    return EdgeSet(younger_ids=younger, older_ids=older, n_vertices=n_vertices, protected=protected)


def write_edges_npz(path, edge_set: EdgeSet) -> None:
    payload = dict(
        younger_ids=edge_set.younger_ids,
        older_ids=edge_set.older_ids,
        n_vertices=np.int64(edge_set.n_vertices),
    )
    if edge_set.protected is not None:
        payload["protected"] = edge_set.protected
    np.savez_compressed(Path(path), **payload)


def read_edges_npz(path) -> EdgeSet:
    with np.load(Path(path)) as data:
        return EdgeSet(
            younger_ids=data["younger_ids"],
            older_ids=data["older_ids"],
            n_vertices=int(data["n_vertices"]),
            protected=data["protected"] if "protected" in data else None,
        )


def write_simplices_csv(path, cplx: SimplicialComplex) -> None:
    """One row per simplex: dimension plus space-separated vertex ids."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["dimension", "vertices"])
        for dim in sorted(cplx.simplices):
            for row in cplx.simplices[dim]:
                w.writerow([dim, " ".join(str(int(v)) for v in row)])


def read_simplices_csv(path) -> SimplicialComplex:
    by_dim: dict[int, list[list[int]]] = {}
    with Path(path).open(newline="", encoding="utf-8") as fh:
        r = csv.reader(fh)
        header = next(r, None)
        if header != ["dimension", "vertices"]:
            raise ValidationError(f"unexpected simplices header {header}")
        for dim_s, verts_s in r:
            by_dim.setdefault(int(dim_s), []).append([int(v) for v in verts_s.split()])
    if not by_dim:
        raise ValidationError("simplices file is empty")
    max_dim = max(by_dim)
    simplices = {}
    n_vertices = 0
    for dim in range(max_dim + 1):
        rows = by_dim.get(dim, [])
        arr = np.array(rows, dtype=np.int64) if rows else np.empty((0, dim + 1), np.int64)
        simplices[dim] = arr
        if arr.size:
            n_vertices = max(n_vertices, int(arr.max()) + 1)
    return SimplicialComplex(simplices=simplices, max_dim=max_dim, n_vertices=n_vertices)


def write_value_counts_csv(path, counts: dict[int, int]) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["value", "count"])
        for value in sorted(counts):
            w.writerow([value, counts[value]])


def read_value_counts_csv(path) -> dict[int, int]:
    counts = {}
    with Path(path).open(newline="", encoding="utf-8") as fh:
        r = csv.reader(fh)
        next(r, None)
        for value, count in r:
            counts[int(value)] = int(count)
    return counts


def _write_columns(path, columns: dict[str, np.ndarray]) -> None:
    names = list(columns)
    length = max((len(v) for v in columns.values()), default=0)
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(names)
        for i in range(length):
            w.writerow([repr(float(columns[n][i])) if i < len(columns[n]) else "" for n in names])


def read_columns(path) -> dict[str, np.ndarray]:
    with Path(path).open(newline="", encoding="utf-8") as fh:
        r = csv.reader(fh)
        names = next(r)
        cols = {n: [] for n in names}
        for row in r:
            for n, cell in zip(names, row):
                if cell != "":
                    cols[n].append(float(cell))
    return {n: np.array(v, dtype=np.float64) for n, v in cols.items()}


def write_linear_histogram_csv(path, bins_by_label: dict[str, tuple[np.ndarray, np.ndarray]]) -> None:
    """bins_by_label maps label -> (bin_edges, densities); edges carry one
    extra trailing value so downstream interval plots close the last bin."""
    columns = {}
    for label, (edges, dens) in bins_by_label.items():
        columns[f"{label}_bin_left_limit"] = np.asarray(edges, dtype=np.float64)
        columns[f"{label}_value"] = np.append(np.asarray(dens, dtype=np.float64), 0.0)
    _write_columns(path, columns)


def write_qq_csv(path, qq_by_label: dict[str, np.ndarray]) -> None:
    columns = {}
    for label, qq in qq_by_label.items():
        columns[f"{label}_theoretical"] = qq[:, 0]
        columns[f"{label}_empirical"] = qq[:, 1]
    _write_columns(path, columns)


def write_pdf_csv(path, curves_by_label: dict[str, tuple[np.ndarray, np.ndarray]]) -> None:
    columns = {}
    for label, (xs, pdf) in curves_by_label.items():
        columns[f"{label}_value"] = np.asarray(xs, dtype=np.float64)
        columns[f"{label}_pdf"] = np.asarray(pdf, dtype=np.float64)
    _write_columns(path, columns)


def write_json(path, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def read_json(path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))
