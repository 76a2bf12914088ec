"""Exact homology of clique complexes of digraphs, and the invariants built on it.

The layers, bottom up: exact integer linear algebra (Smith and Hermite forms,
integer solving), digraphs with their automorphisms and constructions, clique
complexes and chain maps, homology with explicit generators and induced maps,
rigid-embedding block diagrams with their K0 and homology matrices, uniqueness
rank tests, stationary limits, and the intertwiner-ladder isomorphism test.
"""

from .cliques import (ChainComplexData, ChainMap, SimplicialComplex,
                      augmented_chain_data, boundary_matrix, chain_data,
                      chain_map, clique_complex, identity_chain_map,
                      induced_subcomplex, quotient_chain_data)
from .digraphs import (Digraph, VertexPermutation, automorphisms, cube_digraph,
                       cycle_automorphism_family, cycle_digraph, cycle_reflection,
                       cycle_rotation, find_isomorphism, is_automorphism,
                       named_cycle_automorphism, parse_graph_shorthand, product,
                       rotations, suspension)
from .embeddings import (RigidEmbeddingSpec, compose, direct_sum, embedding_spec,
                         flip_matrix, h_map, k0_map, laurent_matrix, multiplicity,
                         recover_cycle_multiplicities, scaled_invariants,
                         single_block, spec_from_json_dict, spec_to_json_dict,
                         tensor)
from .homology import (AbelianGroup, GroupMorphism, HomologyData, betti,
                       betti_by_rank, free_group, group_morphism, homology,
                       homology_of_data, induced_map, reduced_homology,
                       relative_homology)
from .intertwiner import (FamilyClassification, IntertwinerCertificate,
                          IsomorphismDecision, StationarySystem, classify_family,
                          decide_isomorphic, find_step, realizable,
                          verify_certificate)
from .limits import (LimitGroup, SupernaturalNumber, isomorphic, limit_homology,
                     stationary_limit, tensor_with_K0)
from .linalg import (IntMatrix, NoIntegerSolution, NoRationalSolution, RatMatrix,
                     SmithDecomposition, charpoly, det, hermite_row_basis, hstack,
                     kernel_basis, nonneg_integer_solutions, rank, smith_normal_form,
                     solve_integer, unimodular_inverse, vstack)
from .uniqueness import (UniquenessReport, coefficient_matrix, decide_uniqueness,
                         homology_range, k0_only_rank)

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup", "ChainComplexData", "ChainMap", "Digraph",
    "FamilyClassification", "GroupMorphism", "HomologyData", "IntMatrix",
    "IntertwinerCertificate", "IsomorphismDecision", "LimitGroup",
    "NoIntegerSolution", "NoRationalSolution", "RatMatrix",
    "RigidEmbeddingSpec", "SimplicialComplex", "SmithDecomposition",
    "StationarySystem", "SupernaturalNumber", "UniquenessReport",
    "VertexPermutation", "augmented_chain_data", "automorphisms", "betti",
    "betti_by_rank", "boundary_matrix", "chain_data", "chain_map", "charpoly",
    "classify_family", "clique_complex", "coefficient_matrix", "compose",
    "cube_digraph", "cycle_automorphism_family", "cycle_digraph",
    "cycle_reflection", "cycle_rotation", "decide_isomorphic",
    "decide_uniqueness", "det", "direct_sum", "embedding_spec",
    "find_isomorphism", "find_step", "flip_matrix", "free_group",
    "group_morphism", "h_map", "hermite_row_basis", "homology",
    "homology_of_data", "homology_range", "hstack", "identity_chain_map",
    "induced_map", "induced_subcomplex", "is_automorphism", "isomorphic",
    "k0_map", "k0_only_rank", "kernel_basis", "laurent_matrix",
    "limit_homology", "multiplicity", "named_cycle_automorphism",
    "nonneg_integer_solutions", "parse_graph_shorthand", "product",
    "quotient_chain_data", "rank", "realizable", "recover_cycle_multiplicities",
    "reduced_homology", "relative_homology", "rotations", "scaled_invariants",
    "single_block", "smith_normal_form", "solve_integer", "spec_from_json_dict",
    "spec_to_json_dict", "stationary_limit", "suspension", "tensor",
    "tensor_with_K0", "unimodular_inverse", "verify_certificate", "vstack",
]
