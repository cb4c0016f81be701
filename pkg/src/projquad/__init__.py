"""Quadrangulations of projective spaces: construction, audit, and analysis.

The package builds antipodally symmetric coloured spheres whose quotients
are quadrangulations of real projective spaces, identifies the associated
graphs, verifies every structural property it relies on, and computes
exact chromatic numbers and mod-2 homology.
"""

from .audits import (
    ball_check,
    boundary_operator_audit,
    cycle_parity_vs_homology,
    fineness_check,
    parity_audit,
    quadrangulation_check,
    sample_closed_walks,
    sphere_check,
    verify_ball_quadrangulation,
    verify_sphere_quadrangulation,
    verify_z2_map_to_box,
)
from .bundles import (
    Bundle,
    load_bundle,
    sphere_quad_from_bundle,
    verify_bundle,
    write_bundle,
)
from .coloring import ChiResult, chromatic_number
from .complexes import (
    Cell,
    Complex,
    ComplexBuilder,
    SimplicialBuilder,
    complex_from_json,
    complex_to_json,
    dump_canonical,
)
from .constructions import (
    BallQuad,
    SphereQuad,
    complete_graph_pipeline,
    cylinder_complete,
    double_to_sphere,
    mycielski_lift,
    mycielski_tower,
    odd_cycle_sphere,
    schrijver_pipeline,
    suspension,
)
from .errors import (
    BadDimension,
    BadParameters,
    BudgetExceeded,
    InputNotQuadrangulation,
    ParseError,
    ProjquadError,
    UnsupportedParameters,
    VerificationFailed,
)
from .gf2 import BitMatrix, Gf2Solver, kernel_basis, rank_gf2
from .graphs import (
    Graph,
    box_membership,
    common_neighbours,
    complete_graph,
    cycle_graph,
    graph_from_json,
    graph_to_json,
    is_bipartite,
    kneser_graph,
    label_key,
    mycielski_graph,
    mycielskian,
    odd_girth,
    schrijver_graph,
    to_dimacs,
)
from .homology import (
    ChainZ2,
    HomologyCalculator,
    all_betti_z2,
    betti_z2,
    boundary_matrix,
    boundary_of,
    boundary_squares_to_zero,
    edge_chain,
    homologous,
    is_boundary,
)
from .homomorphisms import (
    Homomorphism,
    compose_homomorphisms,
    cycle_to_stable_sets,
    homomorphism_from_json,
    homomorphism_to_json,
    iterated_schrijver_homomorphism,
    lift_homomorphism,
    schrijver_homomorphism,
    verify_homomorphism,
)
from .symmetry import (
    BLACK,
    WHITE,
    BoundaryStructure,
    Involution,
    TwoColouring,
    associated_graph,
    bichromatic_edge_cells,
    boundary_cells,
    double,
    identify_antipodes,
    quotient,
    validate_involution,
)
from .validation import AuditEntry, AuditReport, ValidationReport, Violation

__version__ = "0.1.0"

__all__ = [
    "AuditEntry",
    "AuditReport",
    "BLACK",
    "BadDimension",
    "BadParameters",
    "BallQuad",
    "BitMatrix",
    "BoundaryStructure",
    "BudgetExceeded",
    "Bundle",
    "Cell",
    "ChainZ2",
    "ChiResult",
    "Complex",
    "ComplexBuilder",
    "Gf2Solver",
    "Graph",
    "HomologyCalculator",
    "Homomorphism",
    "InputNotQuadrangulation",
    "Involution",
    "ParseError",
    "ProjquadError",
    "SimplicialBuilder",
    "SphereQuad",
    "TwoColouring",
    "UnsupportedParameters",
    "ValidationReport",
    "VerificationFailed",
    "Violation",
    "WHITE",
    "all_betti_z2",
    "associated_graph",
    "ball_check",
    "betti_z2",
    "bichromatic_edge_cells",
    "boundary_cells",
    "boundary_matrix",
    "boundary_of",
    "boundary_operator_audit",
    "boundary_squares_to_zero",
    "box_membership",
    "chromatic_number",
    "common_neighbours",
    "complete_graph",
    "complete_graph_pipeline",
    "complex_from_json",
    "complex_to_json",
    "compose_homomorphisms",
    "cycle_graph",
    "cycle_parity_vs_homology",
    "cycle_to_stable_sets",
    "cylinder_complete",
    "double",
    "double_to_sphere",
    "dump_canonical",
    "edge_chain",
    "fineness_check",
    "graph_from_json",
    "graph_to_json",
    "homologous",
    "homomorphism_from_json",
    "homomorphism_to_json",
    "identify_antipodes",
    "is_bipartite",
    "is_boundary",
    "iterated_schrijver_homomorphism",
    "kernel_basis",
    "kneser_graph",
    "label_key",
    "lift_homomorphism",
    "load_bundle",
    "mycielski_graph",
    "mycielski_lift",
    "mycielski_tower",
    "mycielskian",
    "odd_cycle_sphere",
    "odd_girth",
    "parity_audit",
    "quadrangulation_check",
    "quotient",
    "rank_gf2",
    "sample_closed_walks",
    "schrijver_graph",
    "schrijver_homomorphism",
    "schrijver_pipeline",
    "sphere_check",
    "sphere_quad_from_bundle",
    "suspension",
    "to_dimacs",
    "validate_involution",
    "verify_ball_quadrangulation",
    "verify_bundle",
    "verify_homomorphism",
    "verify_sphere_quadrangulation",
    "verify_z2_map_to_box",
    "write_bundle",
]
