"""Exact dichromatic numbers, vertex-critical digraphs and Gallai-Edmonds
decompositions, with a mechanical check that small k-vertex-critical digraphs
on at most 2k - 2 vertices have disconnected complements."""

from .dichromatic import (
    Colouring,
    chi,
    chi_witness,
    extreme_colouring,
    is_valid_colouring,
    matching_to_colouring,
    restrict,
    singleton_count,
)
from .criticality import is_critical, is_vertex_critical
from .digraph import (
    Digraph,
    complement,
    disjoint_union,
    induced_subdigraph,
    is_acyclic,
    weak_components,
)
from .families import bidirected_complete, bidirected_join, directed_cycle, gen_instance
from .matching import (
    GEDecomposition,
    UGraph,
    ge_decompose,
    max_matching,
    max_matching_missing,
    verify_ge_structure,
)
from .pipeline import ProofTrace, build_auxiliary_graph, exchange_extremality_check, run_proof_pipeline
from .textio import parse_digraph, parse_graph, serialize_digraph, serialize_graph
from .verifier import enumerate_digraphs, verify_theorem_up_to

__version__ = "0.1.0"

__all__ = [
    "Colouring", "chi", "chi_witness", "extreme_colouring", "is_valid_colouring",
    "matching_to_colouring", "restrict", "singleton_count",
    "is_critical", "is_vertex_critical",
    "Digraph", "complement", "disjoint_union", "induced_subdigraph", "is_acyclic", "weak_components",
    "bidirected_complete", "bidirected_join", "directed_cycle", "gen_instance",
    "GEDecomposition", "UGraph", "ge_decompose", "max_matching", "max_matching_missing",
    "verify_ge_structure",
    "ProofTrace", "build_auxiliary_graph", "exchange_extremality_check", "run_proof_pipeline",
    "parse_digraph", "parse_graph", "serialize_digraph", "serialize_graph",
    "enumerate_digraphs", "verify_theorem_up_to",
]
