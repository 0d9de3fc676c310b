"""Collaboration corpora: documents with author lists become clique complexes.

A document with k+1 authors is a k-simplex together with all of its faces up
to the skeleton dimension.  Documents with more than max_interaction_dim + 1
authors are dropped whole; the resulting drop at dimension 20 is part of the
dataset convention, not an artifact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

import numpy as np

from .cliques import SimplicialComplex, _canonical_rows
from .errors import FitError, ParseError, ValidationError
from .homology import component_sizes
from .point_process import ModelParams
from .stats import PowerLawFit

DEFAULT_INTERACTION_DIM_CAP = 20


@dataclass(eq=False)
class DocumentCorpus:
    """Documents as author-id lists; ids are dense in order of appearance."""

    documents: list[list[int]]
    author_index: dict[str, int]

    @property
    def n_authors(self) -> int:
        return len(self.author_index)

    @property
    def n_documents(self) -> int:
        return len(self.documents)

    def authors_per_document(self) -> np.ndarray:
        return np.array([len(d) for d in self.documents], dtype=np.int64)


def _corpus_from_name_lists(docs: list[list[str]], path=None) -> DocumentCorpus:
    author_index: dict[str, int] = {}
    documents = []
    for lineno, names in enumerate(docs, start=1):
        ids = []
        seen = set()
        for name in names:
            if name not in author_index:
                author_index[name] = len(author_index)
            aid = author_index[name]
            if aid not in seen:  # repeated name within one document collapses
                seen.add(aid)
                ids.append(aid)
        if not ids:
            raise ParseError("document without authors", path=path, line=lineno)
        documents.append(ids)
    if not documents:
        raise ParseError("corpus contains no documents", path=path)
    return DocumentCorpus(documents=documents, author_index=author_index)


def load_corpus(path, format: str | None = None, delimiter: str = ",") -> DocumentCorpus:
    """Read a corpus: one delimiter-separated author list per line, or a JSON
    array of author-name arrays.  Authors are merged on exact full-name match."""
    path = Path(path)
    if not path.exists():
        raise ParseError("corpus file does not exist", path=path)
    if format is None:
        format = "json" if path.suffix.lower() == ".json" else "csv"
    if format == "json":
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON corpus: {exc}", path=path) from exc
        if not isinstance(raw, list) or not all(isinstance(d, list) for d in raw):
            raise ParseError("JSON corpus must be an array of author-name arrays", path=path)
        docs = [[str(a).strip() for a in d] for d in raw]
        return _corpus_from_name_lists(docs, path=path)
    if format == "csv":
        docs = []
        with path.open(encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.rstrip("\n")
                names = [n.strip() for n in line.split(delimiter)]
                if not any(names):
                    raise ParseError("empty document line", path=path, line=lineno)
                docs.append([n for n in names if n])
        return _corpus_from_name_lists(docs, path=path)
    raise ValidationError(f"unknown corpus format {format!r}")


def retained_documents(corpus: DocumentCorpus, max_interaction_dim: int) -> list[list[int]]:
    cap = max_interaction_dim + 1
    return [doc for doc in corpus.documents if len(doc) <= cap]


def build_dataset_complex(
    corpus: DocumentCorpus,
    max_interaction_dim: int = DEFAULT_INTERACTION_DIM_CAP,
    skeleton_dim: int = 2,
) -> SimplicialComplex:
    """Simplicial complex of the corpus up to skeleton_dim.

    Every retained document contributes all faces of its author simplex up to
    the skeleton dimension, deduplicated across documents.
    """
    if skeleton_dim < 1:
        raise ValidationError(f"skeleton_dim must be >= 1, got {skeleton_dim}")
    docs = retained_documents(corpus, max_interaction_dim)
    faces: dict[int, set[tuple[int, ...]]] = {d: set() for d in range(skeleton_dim + 1)}
    for doc in docs:
        authors = sorted(set(doc))
        for dim in range(0, min(len(authors) - 1, skeleton_dim) + 1):
            faces[dim].update(combinations(authors, dim + 1))
    simplices = {}
    for dim in range(skeleton_dim + 1):
        if faces[dim]:
            simplices[dim] = _canonical_rows(np.array(sorted(faces[dim]), dtype=np.int64))
        else:
            simplices[dim] = np.empty((0, dim + 1), np.int64)
    return SimplicialComplex(
        simplices=simplices, max_dim=skeleton_dim, n_vertices=corpus.n_authors
    )


@dataclass
class DatasetSummary:
    authors: int
    documents: int
    components: int
    largest_component_size: int
    simplex_counts: dict[int, int]
    mean_vertex_degree: float
    interaction_dim_counts: dict[int, int]
    metadata: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "authors": self.authors,
            "documents": self.documents,
            "components": self.components,
            "largest_component_size": self.largest_component_size,
            "simplex_counts": {str(k): v for k, v in self.simplex_counts.items()},
            "mean_vertex_degree": self.mean_vertex_degree,
            "interaction_dim_counts": {str(k): v for k, v in self.interaction_dim_counts.items()},
            "metadata": self.metadata,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "DatasetSummary":
        return cls(
            authors=d["authors"],
            documents=d["documents"],
            components=d["components"],
            largest_component_size=d["largest_component_size"],
            simplex_counts={int(k): v for k, v in d["simplex_counts"].items()},
            mean_vertex_degree=d["mean_vertex_degree"],
            interaction_dim_counts={int(k): v for k, v in d["interaction_dim_counts"].items()},
            metadata=d.get("metadata", {}),
        )


def dataset_summary(
    cplx: SimplicialComplex,
    corpus: DocumentCorpus,
    max_interaction_dim: int = DEFAULT_INTERACTION_DIM_CAP,
) -> DatasetSummary:
    """Headline statistics of a corpus complex.

    Interaction dimensions (authors per document minus one) are histogrammed
    over retained documents only, matching the complex contents.
    """
    n_comp, largest = component_sizes(cplx)
    n_vertices = cplx.simplex_count(0)
    n_edges = cplx.simplex_count(1)
    docs = retained_documents(corpus, max_interaction_dim)
    dims = np.array([len(d) - 1 for d in docs], dtype=np.int64)
    uniq, freq = np.unique(dims, return_counts=True)
    return DatasetSummary(
        authors=corpus.n_authors,
        documents=corpus.n_documents,
        components=n_comp,
        largest_component_size=largest,
        simplex_counts=cplx.counts(),
        mean_vertex_degree=2.0 * n_edges / n_vertices if n_vertices else float("nan"),
        interaction_dim_counts=dict(zip(uniq.tolist(), freq.tolist())),
        metadata={
            "max_interaction_dim": max_interaction_dim,
            "skeleton_dim": cplx.max_dim,
            "documents_over_cap": corpus.n_documents - len(docs),
            "over_cap_policy": "dropped whole",
        },
    )


def fit_model_params(summary: DatasetSummary, exponent_fit: PowerLawFit) -> ModelParams:
    """Calibrate (gamma, beta) from the vertex-degree power law.

    gamma_hat inverts the vertex-degree pdf exponent (tail exponent -1/gamma,
    so gamma_hat = 1/(a_hat - 1)); beta_hat = mean vertex degree * (1 -
    gamma_hat), taking the mean degree as the asymptotic edge density.
    """
    a_hat = exponent_fit.a_hat
    if a_hat <= 2.0:
        raise FitError(
            f"vertex exponent a_hat={a_hat:.3f} <= 2 implies gamma >= 1; not fittable"
        )
    gamma_hat = 1.0 / (a_hat - 1.0)
    beta_hat = summary.mean_vertex_degree * (1.0 - gamma_hat)
    n_vertices = summary.simplex_counts.get(0, summary.authors)
    return ModelParams(beta=beta_hat, gamma=gamma_hat, window_length=float(n_vertices))
