"""Exact Dynkin-graph transformation calculus for triangle singularities.

The package computes, for each of the nine E/Z/Q triangle singularity
classes, the set of A/D/E Dynkin graphs obtainable from the class's basic
graph by exactly two elementary or tie transformations, together with
replayable witnesses, plus the exact root-lattice machinery used to
cross-check the graph engine.
"""

from .graphs import (
    A,
    BC1,
    ComponentType,
    D,
    DynkinGraph,
    E,
    EMPTY,
    ExtendedGraph,
    G1,
    G2,
    LabeledGraph,
    NotADynkinGraph,
    ParseError,
    Vertex,
    canonical_name,
    classify,
    extend,
    gram,
    parse_name,
    realize,
)
from .transforms import (
    ElementaryChoice,
    InvalidChoice,
    TieChoice,
    TransformStep,
    apply,
    apply_labeled,
    elementary_all,
    tie_all,
)
from .catalog import (
    BoundReport,
    BoundViolation,
    Catalog,
    CatalogMember,
    ENGINE_VERSION,
    QueryNotADE,
    SINGULARITY_CLASSES,
    SingularityClass,
    build_catalog,
    catalog_from_json,
    catalog_to_json,
    membership,
    milnor_bound_check,
    singularity_class,
)
from .lattice import (
    Lattice,
    NonIntegralLattice,
    RootSet,
    coroot_system,
    determinant,
    root_count,
    root_lattice,
    short_vectors,
)

__version__ = "0.1.0"

__all__ = [
    "A",
    "BC1",
    "BoundReport",
    "BoundViolation",
    "Catalog",
    "CatalogMember",
    "ComponentType",
    "D",
    "DynkinGraph",
    "E",
    "EMPTY",
    "ENGINE_VERSION",
    "ElementaryChoice",
    "ExtendedGraph",
    "G1",
    "G2",
    "InvalidChoice",
    "LabeledGraph",
    "Lattice",
    "NonIntegralLattice",
    "NotADynkinGraph",
    "ParseError",
    "QueryNotADE",
    "RootSet",
    "SINGULARITY_CLASSES",
    "SingularityClass",
    "TieChoice",
    "TransformStep",
    "Vertex",
    "apply",
    "apply_labeled",
    "build_catalog",
    "canonical_name",
    "catalog_from_json",
    "catalog_to_json",
    "classify",
    "coroot_system",
    "determinant",
    "elementary_all",
    "extend",
    "gram",
    "membership",
    "milnor_bound_check",
    "parse_name",
    "realize",
    "root_count",
    "root_lattice",
    "short_vectors",
    "singularity_class",
    "tie_all",
]
