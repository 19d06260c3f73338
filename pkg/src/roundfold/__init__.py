"""Round fold maps on graph 3-manifolds, as finite combinatorial data."""
from .construct import (
    Event, MorsePage, construct_directed, descriptor_from_morse, identify_trivial_monodromy,
    parse_morse, serialize_morse, validate_morse,
)
from .decompose import (
    TreeLabeling, insert_plumbing_buffers, label_tree, labeling_violations, pants_decompose,
    reduce_to_pants,
)
from .descriptor import (
    AnnulusBlock, Attachment, DiskBlock, InterfaceTorus, PantsBlock, RoundFoldDescriptor,
    Violation, compute_directions, extract_decomposition_graph, is_directed, parse_descriptor,
    serialize_descriptor, verify_descriptor,
)
from .errors import (
    FormatError, InconsistencyError, PreconditionError, RoundFoldError, ValidationError,
)
from .graph import (
    DecompositionGraph, Gluing, Kind, Piece, TorusBundleInput, parse_graph, serialize_graph,
    validate_graph,
)
from .invariants import (
    AbelianGroup, DirectedDecision, OpenBookSummary, Verdict, admits_directed, first_homology,
    graph_betti, openbook_summary,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "admits_directed",
    "AnnulusBlock",
    "Attachment",
    "compute_directions",
    "construct_directed",
    "DecompositionGraph",
    "descriptor_from_morse",
    "DirectedDecision",
    "DiskBlock",
    "Event",
    "extract_decomposition_graph",
    "first_homology",
    "FormatError",
    "Gluing",
    "graph_betti",
    "identify_trivial_monodromy",
    "InconsistencyError",
    "insert_plumbing_buffers",
    "InterfaceTorus",
    "is_directed",
    "Kind",
    "label_tree",
    "labeling_violations",
    "MorsePage",
    "openbook_summary",
    "OpenBookSummary",
    "pants_decompose",
    "PantsBlock",
    "parse_descriptor",
    "parse_graph",
    "parse_morse",
    "Piece",
    "PreconditionError",
    "reduce_to_pants",
    "RoundFoldDescriptor",
    "RoundFoldError",
    "serialize_descriptor",
    "serialize_graph",
    "serialize_morse",
    "TorusBundleInput",
    "TreeLabeling",
    "validate_graph",
    "validate_morse",
    "ValidationError",
    "Verdict",
    "verify_descriptor",
    "Violation",
]
