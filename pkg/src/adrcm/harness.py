"""Monte-Carlo replication harness with splittable, schedule-free seeding.

Replication k of a run with master seed s draws from a generator seeded by
SeedSequence((s, k)), so any subset of replications can be reproduced in
isolation and results are identical for any worker-pool size.
"""

from __future__ import annotations

import concurrent.futures
import dataclasses
import multiprocessing
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import cliques, graph_builder, stats
from .errors import FitError
from .homology import betti_numbers
from .point_process import ModelParams, sample_finite, sample_palm

STATISTICS = ("edge_count", "triangle_count", "betti_1", "degrees")
DEGREE_PAIRS = ((0, 1), (1, 2), (2, 3))
DEFAULT_X_MIN_SIMULATION = 30
DEFAULT_X_MIN_DATASET = 10


def derive_rng(seed: int, index: int) -> np.random.Generator:
    """Independent, reproducible stream for replication `index`."""
    return np.random.default_rng(np.random.SeedSequence((seed, index)))


@dataclass
class ReplicationRecord:
    replication: int
    vertices: int
    edges: int
    triangles: int | None = None
    betti_0: int | None = None
    betti_1: int | None = None
    exponent_0_1: float | None = None
    exponent_1_2: float | None = None
    exponent_2_3: float | None = None

    FIELDS = (
        "replication",
        "vertices",
        "edges",
        "triangles",
        "betti_0",
        "betti_1",
        "exponent_0_1",
        "exponent_1_2",
        "exponent_2_3",
    )


@dataclass
class ReplicationSummary:
    seed: int
    params: ModelParams
    records: list[ReplicationRecord] = field(default_factory=list)

    def column(self, name: str) -> np.ndarray:
        values = [getattr(r, name) for r in self.records]
        if any(v is None for v in values):
            raise FitError(f"column {name} is incomplete")
        return np.array(values, dtype=np.float64)

    def statistic_column(self, statistic: str) -> np.ndarray:
        return self.column(
            {"edge_count": "edges", "triangle_count": "triangles", "betti_1": "betti_1"}[statistic]
        )


def build_network(params: ModelParams, rng: np.random.Generator):
    """Sample vertices and edges, applying thinning when eta > 0."""
    vertices = sample_finite(params, rng)
    edge_set = graph_builder.build_edges(vertices, params, rng)
    if params.eta > 0:
        edge_set = graph_builder.classify_protected(edge_set, vertices)
        edge_set = graph_builder.thin(
            edge_set, vertices, params.eta, rng, gamma=params.gamma
        )
    return vertices, edge_set


def _fit_exponent(values: np.ndarray, x_min: int) -> float:
    try:
        return stats.fit_power_law(values, x_min).a_hat
    except FitError:
        return float("nan")


def run_replication(
    params: ModelParams,
    seed: int,
    index: int,
    statistic: str,
    x_min: int = DEFAULT_X_MIN_SIMULATION,
) -> ReplicationRecord:
    rng = derive_rng(seed, index)
    vertices, edge_set = build_network(params, rng)
    record = ReplicationRecord(replication=index, vertices=len(vertices), edges=len(edge_set))
    if statistic == "edge_count":
        return record
    if statistic == "triangle_count":
        record.triangles = int(np.sum(cliques.edge_degrees(edge_set))) // 3 if len(edge_set) else 0
        return record
    if statistic == "betti_1":
        cplx = cliques.clique_complex(edge_set, vertices, max_dim=2)
        record.triangles = cplx.simplex_count(2)
        bv = betti_numbers(cplx, up_to_q=1)
        record.betti_0, record.betti_1 = bv[0], bv[1]
        return record
    if statistic == "degrees":
        record.exponent_0_1 = _fit_exponent(cliques.vertex_degrees(edge_set), x_min)
        edge_deg = cliques.edge_degrees(edge_set)
        record.triangles = int(np.sum(edge_deg)) // 3 if len(edge_deg) else 0
        record.exponent_1_2 = _fit_exponent(edge_deg, x_min)
        record.exponent_2_3 = _fit_exponent(cliques.triangle_degrees(edge_set), x_min)
        return record
    raise ValueError(f"unknown statistic {statistic!r}")


def _worker(args):
    params_dict, seed, index, statistic, x_min = args
    params = ModelParams(**params_dict)
    return run_replication(params, seed, index, statistic, x_min)


def run_montecarlo(
    params: ModelParams,
    replications: int,
    seed: int,
    statistic: str,
    x_min: int = DEFAULT_X_MIN_SIMULATION,
    threads: int = 1,
) -> ReplicationSummary:
    """Run independent replications, optionally on a process pool.

    Aggregation is merged by replication index, so the summary is identical
    for every parallelism degree.
    """
    summary = ReplicationSummary(seed=seed, params=params)
    if threads <= 1 or replications <= 1:
        for k in range(replications):
            summary.records.append(run_replication(params, seed, k, statistic, x_min))
        return summary
    # warm the JIT cache in the parent so forked workers reuse it
    run_replication(
        dataclasses.replace(params, window_length=min(params.window_length, 64.0)),
        seed,
        2**31,
        statistic,
        x_min,
    )
    params_dict = dataclasses.asdict(params)
    jobs = [(params_dict, seed, k, statistic, x_min) for k in range(replications)]
    ctx = multiprocessing.get_context("fork")
    with concurrent.futures.ProcessPoolExecutor(max_workers=threads, mp_context=ctx) as pool:
        records = list(pool.map(_worker, jobs, chunksize=max(1, replications // (4 * threads))))
    summary.records = sorted(records, key=lambda r: r.replication)
    return summary


@dataclass
class PalmDegreeRun:
    """Pooled generalized-degree observations over many Palm draws."""

    distributions: dict[tuple[int, int], cliques.DegreeDistribution]
    mean_vertex_degree: float
    draws: int


def run_palm(
    params: ModelParams,
    draws: int,
    seed: int,
    pairs: tuple[tuple[int, int], ...] = DEGREE_PAIRS,
) -> PalmDegreeRun:
    """Sample typical vertices and pool center-incident degree observations.

    Fast path on the materialized neighborhood graph: with every sampled
    vertex adjacent to the center, the (1,2) degree of a center edge is the
    neighbor's local degree minus one, and the (2,3) degree of a center
    triangle is the neighbor-neighbor edge's local triangle count minus one.
    """
    tallies = {pair: Counter() for pair in pairs}
    degree_total = 0
    for k in range(draws):
        rng = derive_rng(seed, k)
        palm = sample_palm(params, None, rng)
        edge_set = palm.edges
        center = palm.center_id
        degree_total += palm.degree
        if (0, 1) in tallies:
            tallies[(0, 1)][palm.degree] += 1
        need_12 = (1, 2) in tallies
        need_23 = (2, 3) in tallies
        if not (need_12 or need_23):
            continue
        if need_12:
            degrees = edge_set.degrees()
            for v in range(len(palm.vertices)):
                if v != center:
                    tallies[(1, 2)][int(degrees[v]) - 1] += 1
        if need_23:
            per_edge = cliques.edge_degrees(edge_set)
            off_center = (edge_set.younger_ids != center) & (edge_set.older_ids != center)
            for c in per_edge[off_center]:
                tallies[(2, 3)][int(c) - 1] += 1
    distributions = {
        pair: cliques.DegreeDistribution(pair[0], pair[1], dict(t)) for pair, t in tallies.items()
    }
    return PalmDegreeRun(
        distributions=distributions,
        mean_vertex_degree=degree_total / draws if draws else float("nan"),
        draws=draws,
    )


def fit_replication_nulls(values: np.ndarray, gamma: float, skew: float):
    """Normal and stable null fits of a replication statistic.

    Returns (NormalParams | None, StableParams | None, errors dict); fit
    failures are recorded, not raised, so a run can continue.
    """
    errors = {}
    normal = stable = None
    try:
        normal = stats.fit_normal(values)
    except FitError as exc:
        errors["normal"] = str(exc)
    try:
        alpha = stats.alpha_for_gamma(gamma)
        stable = stats.fit_stable_location_scale(values, alpha, skew)
    except FitError as exc:
        errors["stable"] = str(exc)
    return normal, stable, errors


def freedman_diaconis_histogram(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Density histogram with Freedman-Diaconis binning; returns (edges, density)."""
    values = np.asarray(values, dtype=np.float64)
    dens, edges = np.histogram(values, bins="fd", density=True)
    return edges, dens
