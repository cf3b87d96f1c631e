"""Perfect matchings in dense k-uniform hypergraphs, with lattice certificates.

``find_pm`` returns either a perfect matching or a certificate: a small
vertex set S, an ordered partition P and a full lattice L such that every
edge whose index vector leaves L meets S, and no choice of edges through S
can fix the divisibility obstruction.  ``verify_certificate`` rechecks a
certificate from scratch.
"""

from .abelian import AbelianGroup, cyclic, groups_of_order, subgroups
from .construct import (
    InstanceSpec,
    gen_complete,
    gen_general_nopm,
    gen_mod3,
    gen_nested,
    gen_parity,
    gen_random_dense,
    gen_space_barrier,
    generate,
)
from .decide import (
    Certificate,
    Decision,
    FullPair,
    decide_pm,
    default_brute_threshold,
    default_C,
    find_certificate,
    is_C_far,
    is_soluble,
    verify_certificate,
)
from .errors import (
    DegenerateInput,
    GenerationFailure,
    HypermatchError,
    InvalidArgument,
    ParseError,
    RegimeViolation,
    ResourceLimit,
)
from .hypergraph import Hypergraph, brute_force_pm, check_setup, deficiency_table, is_perfect_matching
from .io import parse_instance, read_instance, serialize_instance, write_instance
from .lattice import (
    EdgeLattice,
    coset_group,
    edge_lattice,
    enumerate_full_lattices,
    index_vector,
    is_full,
    lattice_of_group,
)
from .partitions import OrderedPartition, list_partitions
from .search import extract_matching, find_pm

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
