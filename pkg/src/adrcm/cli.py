"""Command-line surface: generate, montecarlo, palm, test, ingest.

Every run is fully determined by (seed, config); per-replication streams are
derived from (seed, replication index) so outputs do not depend on --threads.
Exit codes: 0 success, 2 validation error, 3 fit failure.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import cliques, harness, ingest, serialize, stats
from .errors import FitError, ValidationError
from .homology import betti_numbers
from .point_process import ModelParams

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_FIT = 3


@dataclass
class RunConfig:
    subcommand: str
    params: ModelParams | None
    replications: int
    seed: int
    threads: int
    out: Path
    statistic: str
    x_min: int | None
    max_dim: int
    format: str

    def __post_init__(self):
        if self.replications < 1:
            raise ValidationError("replications must be >= 1")
        if self.threads < 1:
            raise ValidationError("threads must be >= 1")


def _params_from_args(args) -> ModelParams:
    return ModelParams(
        beta=args.beta,
        gamma=args.gamma,
        window_length=args.size,
        profile_a=args.profile_a,
        eta=args.eta,
        torus=getattr(args, "torus", False),
    )


def _config_from_args(args, subcommand: str) -> RunConfig:
    return RunConfig(
        subcommand=subcommand,
        params=_params_from_args(args) if hasattr(args, "gamma") else None,
        replications=getattr(args, "replications", 1),
        seed=args.seed,
        threads=getattr(args, "threads", 1),
        out=Path(args.out),
        statistic=getattr(args, "statistic", "edge_count"),
        x_min=getattr(args, "x_min", None),
        max_dim=getattr(args, "max_dim", 3),
        format=getattr(args, "format", "csv"),
    )


def _write_run_config(config: RunConfig) -> None:
    payload = {
        "subcommand": config.subcommand,
        "replications": config.replications,
        "seed": config.seed,
        "statistic": config.statistic,
        "x_min": config.x_min,
        "max_dim": config.max_dim,
    }
    if config.params is not None:
        payload["params"] = dataclasses.asdict(config.params)
    serialize.write_json(config.out / "run_config.json", payload)


def cmd_generate(config: RunConfig) -> int:
    """One network per replication: vertices.csv, edges.csv, simplices.csv."""
    config.out.mkdir(parents=True, exist_ok=True)
    _write_run_config(config)
    for k in range(config.replications):
        rng = harness.derive_rng(config.seed, k)
        vertices, edge_set = harness.build_network(config.params, rng)
        rep_dir = config.out / f"replication-{k}"
        rep_dir.mkdir(parents=True, exist_ok=True)
        cplx = cliques.clique_complex(edge_set, vertices, max_dim=config.max_dim)
        if config.format == "csv":
            serialize.write_vertices_csv(rep_dir / "vertices.csv", vertices)
            serialize.write_edges_csv(rep_dir / "edges.csv", edge_set)
        else:
            serialize.write_vertices_npz(rep_dir / "vertices.npz", vertices)
            serialize.write_edges_npz(rep_dir / "edges.npz", edge_set)
        serialize.write_simplices_csv(rep_dir / "simplices.csv", cplx)
    return EXIT_OK


def _write_replications_csv(path: Path, summary: harness.ReplicationSummary) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(harness.ReplicationRecord.FIELDS)
        for r in summary.records:
            w.writerow(
                ["" if getattr(r, f) is None else getattr(r, f) for f in harness.ReplicationRecord.FIELDS]
            )


def _null_fit_payload(normal, stable, errors) -> dict:
    payload = {"errors": errors}
    if normal is not None:
        payload["normal"] = {"mean": normal.mean, "std": normal.std}
    if stable is not None:
        payload["stable"] = dataclasses.asdict(stable)
    return payload


def cmd_montecarlo(config: RunConfig) -> int:
    """Replication harness plus fitted nulls and plotting CSVs."""
    config.out.mkdir(parents=True, exist_ok=True)
    _write_run_config(config)
    x_min = config.x_min if config.x_min is not None else harness.DEFAULT_X_MIN_SIMULATION
    summary = harness.run_montecarlo(
        config.params,
        config.replications,
        config.seed,
        config.statistic,
        x_min=x_min,
        threads=config.threads,
    )
    _write_replications_csv(config.out / "replications.csv", summary)
    if config.statistic == "degrees":
        exponents = {
            f"exponent_{m}_{mp}": _column_stats(summary, f"exponent_{m}_{mp}")
            for m, mp in harness.DEGREE_PAIRS
        }
        serialize.write_json(config.out / "fits.json", {"x_min": x_min, "exponents": exponents})
        return EXIT_OK
    values = summary.statistic_column(config.statistic)
    skew = -1.0 if config.statistic == "betti_1" else 1.0
    normal, stable, errors = harness.fit_replication_nulls(values, config.params.gamma, skew)
    serialize.write_json(
        config.out / "fits.json",
        {"statistic": config.statistic, **_null_fit_payload(normal, stable, errors)},
    )
    label = config.statistic
    if len(values) >= 2:
        edges, dens = harness.freedman_diaconis_histogram(values)
        serialize.write_linear_histogram_csv(
            config.out / "linear_histograms.csv", {label: (edges, dens)}
        )
    qq = {}
    pdfs = {}
    grid = np.linspace(values.min(), values.max(), 256) if len(values) else np.empty(0)
    if normal is not None and len(values) >= 10:
        qq["normal"] = stats.qq_data(values, normal)
        pdfs["normal"] = (
            grid,
            np.exp(-0.5 * ((grid - normal.mean) / normal.std) ** 2)
            / (normal.std * np.sqrt(2 * np.pi)),
        )
    if stable is not None and len(values) >= 10:
        qq["stable"] = stats.qq_data(values, stable)
        pdfs["stable"] = (grid, stats.stable_pdf(grid, stable))
    if qq:
        serialize.write_qq_csv(config.out / "qq_plot.csv", qq)
    if pdfs:
        serialize.write_pdf_csv(config.out / "theoretical_pdf.csv", pdfs)
    return EXIT_OK


def _column_stats(summary: harness.ReplicationSummary, name: str) -> dict:
    values = summary.column(name)
    finite = values[np.isfinite(values)]
    return {
        "median": float(np.median(finite)) if len(finite) else None,
        "mean": float(np.mean(finite)) if len(finite) else None,
        "fitted": int(len(finite)),
        "failed": int(len(values) - len(finite)),
    }


def cmd_palm(config: RunConfig) -> int:
    """Typical-vertex degree distributions pooled over Palm draws."""
    config.out.mkdir(parents=True, exist_ok=True)
    _write_run_config(config)
    x_min = config.x_min if config.x_min is not None else harness.DEFAULT_X_MIN_SIMULATION
    run = harness.run_palm(config.params, config.replications, config.seed)
    fits = {"x_min": x_min, "draws": run.draws, "mean_vertex_degree": run.mean_vertex_degree}
    for (m, mp), dist in run.distributions.items():
        serialize.write_value_counts_csv(config.out / f"value_counts_{m}_{mp}.csv", dist.counts)
        try:
            fit = stats.fit_power_law(dist, x_min)
            fits[f"exponent_{m}_{mp}"] = {"a_hat": fit.a_hat, "n_tail": fit.n_tail}
        except FitError as exc:
            fits[f"exponent_{m}_{mp}"] = {"error": str(exc)}
    serialize.write_json(config.out / "fits.json", fits)
    return EXIT_OK


def cmd_test(config: RunConfig, montecarlo_dir: Path, summary_path: Path) -> int:
    """Hypothesis test of a dataset statistic against a simulated null."""
    config.out.mkdir(parents=True, exist_ok=True)
    run_cfg = serialize.read_json(montecarlo_dir / "run_config.json")
    gamma = run_cfg["params"]["gamma"]
    statistic = config.statistic
    dataset = ingest.DatasetSummary.from_json_dict(serialize.read_json(summary_path))
    observed = _observed_statistic(dataset, statistic)
    values = _read_statistic_column(montecarlo_dir / "replications.csv", statistic)
    skew = -1.0 if statistic == "betti_1" else 1.0
    normal, stable, errors = harness.fit_replication_nulls(values, gamma, skew)
    if stable is None:
        raise FitError(f"null fit failed: {errors}")
    lower, upper = stats.tail_p_values(observed, stable)
    two_sided = stats.p_value(observed, stable)
    report = {
        "statistic": statistic,
        "observed": observed,
        "replications": int(len(values)),
        "null": _null_fit_payload(normal, stable, errors),
        "p_two_sided": two_sided,
        "p_lower": lower,
        "p_upper": upper,
        "reject_at_5pct": bool(two_sided < 0.05),
    }
    serialize.write_json(config.out / "test_report.json", report)
    print(f"{statistic}: observed={observed:g} p={two_sided:.4f} "
          f"{'rejected' if report['reject_at_5pct'] else 'not rejected'} at the 5% level")
    return EXIT_OK


def _observed_statistic(dataset: ingest.DatasetSummary, statistic: str) -> float:
    if statistic == "edge_count":
        return float(dataset.simplex_counts.get(1, 0))
    if statistic == "triangle_count":
        return float(dataset.simplex_counts.get(2, 0))
    if statistic == "betti_1":
        betti = dataset.metadata.get("betti_1")
        if betti is None:
            raise ValidationError("summary lacks betti_1; run ingest with --betti")
        return float(betti)
    raise ValidationError(f"unsupported test statistic {statistic!r}")


def _read_statistic_column(path: Path, statistic: str) -> np.ndarray:
    column = {"edge_count": "edges", "triangle_count": "triangles", "betti_1": "betti_1"}[statistic]
    values = []
    with Path(path).open(newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            cell = row.get(column, "")
            if cell == "":
                raise ValidationError(f"montecarlo run lacks the {statistic} column")
            values.append(float(cell))
    return np.array(values, dtype=np.float64)


def cmd_ingest(config: RunConfig, corpus_path: Path, skeleton_dim: int,
               interaction_cap: int, compute_betti: bool) -> int:
    """Corpus to summary, degree distributions and calibrated model params."""
    config.out.mkdir(parents=True, exist_ok=True)
    corpus = ingest.load_corpus(corpus_path)
    cplx = ingest.build_dataset_complex(
        corpus, max_interaction_dim=interaction_cap, skeleton_dim=skeleton_dim
    )
    summary = ingest.dataset_summary(cplx, corpus, max_interaction_dim=interaction_cap)
    if compute_betti:
        bv = betti_numbers(cplx, up_to_q=1)
        summary.metadata["betti_0"] = bv[0]
        summary.metadata["betti_1"] = bv[1]
    serialize.write_json(config.out / "summary.json", summary.to_json_dict())
    x_min = config.x_min if config.x_min is not None else harness.DEFAULT_X_MIN_DATASET
    fits: dict = {"x_min": x_min}
    degree_fit = None
    for m, mp in ((0, 1), (1, 2)):
        dist = cliques.generalized_degrees(cplx, m, mp)
        serialize.write_value_counts_csv(config.out / f"value_counts_{m}_{mp}.csv", dist.counts)
        try:
            fit = stats.fit_power_law(dist, x_min)
            fits[f"exponent_{m}_{mp}"] = {"a_hat": fit.a_hat, "n_tail": fit.n_tail}
            if (m, mp) == (0, 1):
                degree_fit = fit
        except FitError as exc:
            fits[f"exponent_{m}_{mp}"] = {"error": str(exc)}
    params_payload: dict = {"fittable": False}
    exit_code = EXIT_OK
    try:
        if degree_fit is None:
            raise FitError("vertex-degree power law not fittable (no tail)")
        params = ingest.fit_model_params(summary, degree_fit)
        params_payload = {"fittable": True, **dataclasses.asdict(params)}
    except FitError as exc:
        params_payload["reason"] = str(exc)
        exit_code = EXIT_FIT
    serialize.write_json(config.out / "fits.json", fits)
    serialize.write_json(config.out / "params.json", params_payload)
    return exit_code


def _add_model_arguments(p: argparse.ArgumentParser) -> None:
    p.add_argument("--beta", type=float, default=1.0, help="edge-density parameter (> 0)")
    p.add_argument("--gamma", type=float, required=True, help="age exponent in (0, 1)")
    p.add_argument("--profile-a", dest="profile_a", type=float, default=0.5,
                   help="kernel half-width; 1/2 is the deterministic kernel")
    p.add_argument("--eta", type=float, default=0.0, help="thinning exponent (0 disables)")
    p.add_argument("--size", type=float, default=1e4, help="window length n")
    p.add_argument("--torus", action="store_true", help="periodic boundary")


def _add_common_arguments(p: argparse.ArgumentParser, statistic: bool = False) -> None:
    p.add_argument("--replications", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--x-min", dest="x_min", type=int, default=None,
                   help="power-law fit threshold (default 30 simulated / 10 datasets)")
    p.add_argument("--max-dim", dest="max_dim", type=int, default=3)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    if statistic:
        p.add_argument("--statistic", choices=harness.STATISTICS, default="edge_count")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adrcm",
        description="Age-dependent random connection models and their clique complexes",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("generate", help="write per-replication network files")
    _add_model_arguments(p)
    _add_common_arguments(p)

    p = sub.add_parser("montecarlo", help="replication harness with fitted nulls")
    _add_model_arguments(p)
    _add_common_arguments(p, statistic=True)

    p = sub.add_parser("palm", help="typical-vertex degree distributions")
    _add_model_arguments(p)
    _add_common_arguments(p)

    p = sub.add_parser("test", help="hypothesis test against a montecarlo null")
    p.add_argument("--montecarlo", required=True, help="completed montecarlo output directory")
    p.add_argument("--summary", required=True, help="dataset summary JSON from ingest")
    p.add_argument("--statistic", choices=("edge_count", "triangle_count", "betti_1"),
                   default="triangle_count")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("ingest", help="corpus to summary, degrees and fitted params")
    p.add_argument("corpus", help="corpus file (CSV lines or JSON array of arrays)")
    p.add_argument("--skeleton-dim", type=int, default=2, choices=(2, 3))
    p.add_argument("--interaction-cap", type=int, default=ingest.DEFAULT_INTERACTION_DIM_CAP)
    p.add_argument("--betti", action="store_true", help="also compute Betti numbers")
    p.add_argument("--x-min", dest="x_min", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.subcommand == "generate":
            return cmd_generate(_config_from_args(args, "generate"))
        if args.subcommand == "montecarlo":
            return cmd_montecarlo(_config_from_args(args, "montecarlo"))
        if args.subcommand == "palm":
            return cmd_palm(_config_from_args(args, "palm"))
        if args.subcommand == "test":
            config = _config_from_args(args, "test")
            return cmd_test(config, Path(args.montecarlo), Path(args.summary))
        if args.subcommand == "ingest":
            config = _config_from_args(args, "ingest")
            return cmd_ingest(config, Path(args.corpus), args.skeleton_dim,
                              args.interaction_cap, args.betti)
        raise ValidationError(f"unknown subcommand {args.subcommand!r}")
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except FitError as exc:
        print(f"fit error: {exc}", file=sys.stderr)
        return EXIT_FIT
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
