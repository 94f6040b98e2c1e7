"""Subdivision combinatorics of weighted KLRW algebras in affine type A."""

from .abacus import AbacusConfig, from_abacus, k_lambda, lambda_plus_abacus, lambda_plus_formula, max_truncation_N0, to_abacus
from .diagram import (
    Loading,
    StraightDiagram,
    Tableau,
    Unsteady,
    degree,
    enumerate_sstd,
    format_signature,
    idempotent_loading,
    is_semistandard,
    make_tableau,
    normalize_right,
    signature,
    straight_diagram,
    tableau_diagram,
)
from .partitions import Charge, Multipartition, Node, Partition, residue
from .quiver import Quiver, RelabelMap, subdivide_quiver
from .strips import LambdaPlus, Strip, lambda_plus, maximal_strips
from .subdivision import (
    CloseTuple,
    SubdivisionParams,
    VerificationReport,
    close_tuples,
    subdivide_diagram,
    subdivide_idempotent,
    transport_labels,
    verify_idempotent_correspondence,
)

__version__ = "0.1.0"

__all__ = [
    "AbacusConfig",
    "Charge",
    "CloseTuple",
    "LambdaPlus",
    "Loading",
    "Multipartition",
    "Node",
    "Partition",
    "Quiver",
    "RelabelMap",
    "StraightDiagram",
    "Strip",
    "SubdivisionParams",
    "Tableau",
    "Unsteady",
    "VerificationReport",
    "close_tuples",
    "degree",
    "enumerate_sstd",
    "format_signature",
    "from_abacus",
    "idempotent_loading",
    "is_semistandard",
    "k_lambda",
    "lambda_plus",
    "lambda_plus_abacus",
    "lambda_plus_formula",
    "make_tableau",
    "max_truncation_N0",
    "maximal_strips",
    "normalize_right",
    "residue",
    "signature",
    "straight_diagram",
    "subdivide_diagram",
    "subdivide_idempotent",
    "subdivide_quiver",
    "tableau_diagram",
    "to_abacus",
    "transport_labels",
    "verify_idempotent_correspondence",
]
