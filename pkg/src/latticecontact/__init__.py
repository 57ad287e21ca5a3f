"""Exact contact numbers of finite lattice sphere packings.

Computes the maximal number of touching pairs among n congruent spheres
centered on a lattice, together with proven upper bounds, the octahedral
lower-bound construction, and bond-count reports for monatomic crystals.
"""

from .bounds import (
    AMORPHOUS_COEFF,
    LATTICE_COEFF,
    bond_bound,
    octahedral_construction,
    octahedral_lower_bound,
    octahedral_sizes,
    upper_bound_general,
    upper_bound_lattice,
)
from .chem import (
    BondReport,
    CompoundSpec,
    bond_report,
    compound_to_packing,
    export_xyz,
    import_xyz,
)
from .contacts import (
    AdjacencyStructure,
    ContactGraph,
    Packing,
    adjacency_structure,
    build_contact_graph,
    contact_count,
    kissing_vectors,
)
from .errors import (
    BoundViolation,
    BoxTooLarge,
    DegenerateBasis,
    DomainError,
    InstanceTooLarge,
    LatticeContactError,
    NotApplicable,
    OverlapDetected,
    OverlappingLattice,
    ParseError,
    UnknownPreset,
)
from .lattice import (
    CONTACT_TOL,
    Coeffs,
    Lattice,
    candidate_box,
    embed,
    make_lattice,
    min_vector_length,
    preset_lattice,
    squared_distance,
)
from .solver import (
    SearchConfig,
    SearchResult,
    maximal_contact_number,
    solve_bnb,
    solve_exhaustive,
    verify_against_bounds,
)

__version__ = "0.1.0"

__all__ = [
    "AMORPHOUS_COEFF",
    "AdjacencyStructure",
    "BondReport",
    "BoundViolation",
    "BoxTooLarge",
    "CONTACT_TOL",
    "Coeffs",
    "CompoundSpec",
    "ContactGraph",
    "DegenerateBasis",
    "DomainError",
    "InstanceTooLarge",
    "LATTICE_COEFF",
    "Lattice",
    "LatticeContactError",
    "NotApplicable",
    "OverlapDetected",
    "OverlappingLattice",
    "Packing",
    "ParseError",
    "SearchConfig",
    "SearchResult",
    "UnknownPreset",
    "adjacency_structure",
    "bond_bound",
    "bond_report",
    "build_contact_graph",
    "candidate_box",
    "compound_to_packing",
    "contact_count",
    "embed",
    "export_xyz",
    "import_xyz",
    "kissing_vectors",
    "make_lattice",
    "maximal_contact_number",
    "min_vector_length",
    "octahedral_construction",
    "octahedral_lower_bound",
    "octahedral_sizes",
    "preset_lattice",
    "solve_bnb",
    "solve_exhaustive",
    "squared_distance",
    "upper_bound_general",
    "upper_bound_lattice",
    "verify_against_bounds",
]
