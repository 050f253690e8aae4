"""Instance matching pipeline: clean, profile, index, match, cluster,
rank keys, disambiguate; plus benchmark generation and evaluation."""

from cantor.linking.benchmark import (
    Benchmark,
    PerturbationRates,
    generate_benchmark,
    make_seed_graph,
    read_benchmark,
    write_benchmark,
)
from cantor.linking.cluster import Cluster, cluster
from cantor.linking.evaluate import EvalReport, evaluate
from cantor.linking.keys import KeyRanking, disambiguate, property_values, rank_keys
from cantor.linking.pipeline import Link, LinkConfig, LinkSet, baseline_exact_label, link
from cantor.linking.profiles import Document, ResourceProfile, build_document, clean, profile
from cantor.linking.tfidf import CandidatePair, TfIdfIndex, cross_similarity, match_candidates, similarity

__all__ = [
    "Benchmark",
    "CandidatePair",
    "Cluster",
    "Document",
    "EvalReport",
    "KeyRanking",
    "Link",
    "LinkConfig",
    "LinkSet",
    "PerturbationRates",
    "ResourceProfile",
    "TfIdfIndex",
    "baseline_exact_label",
    "build_document",
    "clean",
    "cluster",
    "cross_similarity",
    "disambiguate",
    "evaluate",
    "generate_benchmark",
    "link",
    "make_seed_graph",
    "match_candidates",
    "profile",
    "property_values",
    "rank_keys",
    "read_benchmark",
    "similarity",
    "write_benchmark",
]
