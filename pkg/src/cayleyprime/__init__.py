"""Primality and wreath decompositions of Cayley graphs over finite groups and rings."""

from .cayley import (
    HomogeneityReport,
    WreathDecomposition,
    cayley_digraph,
    cayley_graph,
    double_coset_criterion,
    find_nontrivial_homogeneous,
    homogeneous_closure_subgroup,
    is_bihomogeneous,
    is_homogeneous,
    maximal_homogeneous_containing,
    minimal_module,
    subgroup_criterion,
    wreath_decompose,
)
from .errors import CapExceededError, CayleyError, HypothesisError, ValidationError
from .graph import (
    Digraph,
    Graph,
    complement,
    complete_graph,
    connected_components,
    cycle_graph,
    empty_graph,
    find_isomorphism,
    graph_from_edges,
    induced_subgraph,
    is_anti_connected,
    is_connected,
    joined_union,
    tensor_product,
    verify_isomorphism,
    wreath_product,
)
from .group import (
    FiniteGroup,
    build_cyclic,
    build_dihedral,
    build_product,
    enumerate_subgroups,
    group_from_json,
    validate_generator_set,
)
from .oracle import (
    OracleReport,
    brute_force_bihomogeneous_sets,
    brute_force_homogeneous_sets,
    oracle_is_prime,
    sweep_generator_sets,
)
from .ring import (
    ZERO,
    FiniteCommRing,
    MultiplicativeFunction,
    RingHom,
    build_gf,
    build_ring_product,
    build_zmod,
    enumerate_ideals,
    is_even,
    is_primitive,
    jacobson_radical,
    kernel,
    pair_primitive,
    power_residue_character,
    principal_function,
    quotient,
    semisimplify,
    units,
)
from .ring_cayley import (
    RingPrimalityCertificate,
    complete_tensor_connectivity,
    find_homogeneous_ideal,
    ideal_is_homogeneous,
    paley_graph,
    paley_prime_test,
    ring_cayley,
    ring_prime_test,
    unitary_graph,
    unitary_prime_classification,
    wreath_form,
)
from .spectral import Spectrum, adjacency_spectrum, wreath_spectrum, zero_multiplicity_check

__version__ = "0.1.0"
