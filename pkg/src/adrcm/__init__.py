"""Age-dependent random connection models and their clique complexes."""

from .cliques import (
    DegreeDistribution,
    SimplicialComplex,
    clique_complex,
    generalized_degrees,
    palm_generalized_degrees,
)
from .errors import FitError, ParseError, ValidationError
from .graph_builder import Edge, EdgeSet, build_edges, classify_protected, thin
from .homology import BettiVector, BoundaryMatrix, betti_numbers, connected_components
from .ingest import (
    DatasetSummary,
    DocumentCorpus,
    build_dataset_complex,
    dataset_summary,
    fit_model_params,
    load_corpus,
)
from .point_process import (
    ModelParams,
    PalmSample,
    Vertex,
    Vertices,
    expected_edge_count,
    expected_in_degree,
    sample_finite,
    sample_palm,
)
from .stats import (
    NormalParams,
    PowerLawFit,
    StableParams,
    alpha_for_gamma,
    fit_normal,
    fit_power_law,
    fit_stable_location_scale,
    p_value,
    qq_data,
    stable_cdf,
    stable_pdf,
    tail_p_values,
    theoretical_exponent,
)

__all__ = [
    "BettiVector",
    "BoundaryMatrix",
    "DatasetSummary",
    "DegreeDistribution",
    "DocumentCorpus",
    "Edge",
    "EdgeSet",
    "FitError",
    "ModelParams",
    "NormalParams",
    "PalmSample",
    "ParseError",
    "PowerLawFit",
    "SimplicialComplex",
    "StableParams",
    "ValidationError",
    "Vertex",
    "Vertices",
    "alpha_for_gamma",
    "betti_numbers",
    "build_dataset_complex",
    "build_edges",
    "classify_protected",
    "clique_complex",
    "connected_components",
    "dataset_summary",
    "expected_edge_count",
    "expected_in_degree",
    "fit_model_params",
    "fit_normal",
    "fit_power_law",
    "fit_stable_location_scale",
    "generalized_degrees",
    "load_corpus",
    "p_value",
    "palm_generalized_degrees",
    "qq_data",
    "sample_finite",
    "sample_palm",
    "stable_cdf",
    "stable_pdf",
    "tail_p_values",
    "theoretical_exponent",
    "thin",
]

__version__ = "0.1.0"
