"""Bayesian network CPT learning under monotonicity constraints."""

from ._core import (
    DataError,
    DiscreteDataset,
    DomainError,
    InferenceError,
    ParseError,
    QualitativeModel,
    TrainedClassifier,
    __version__,
    chain_length,
    check_feasibility,
    constraints,
    corpus_ids,
    equal_frequency_cutpoints,
    fit_network,
    learning_curve,
    load_corpus,
    load_model,
    mcnemar,
    parse_model,
    train,
)

__all__ = [
    "DataError",
    "DiscreteDataset",
    "DomainError",
    "InferenceError",
    "ParseError",
    "QualitativeModel",
    "TrainedClassifier",
    "__version__",
    "chain_length",
    "check_feasibility",
    "constraints",
    "corpus_ids",
    "equal_frequency_cutpoints",
    "fit_network",
    "learning_curve",
    "load_corpus",
    "load_model",
    "mcnemar",
    "parse_model",
    "train",
]
