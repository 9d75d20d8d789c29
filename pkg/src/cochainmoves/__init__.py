"""Chain/cochain models of labeled surfaces with machine-checked moves."""

from .ainfinity import AInfinityData, SignConvention, relation_sides, stasheff_residual
from .chains import Chain, CellComplex, CoefficientGroup, Z, boundary
from .cochains import Cochain, coboundary, evaluate
from .document import ComplexDocument, ParseError, parse_document, serialize_document
from .homology import homology, smith_normal_form
from .moves import (MoveCertificate, check_cylinder, check_move_13, check_move_22, check_pentagon,
                    poincare_dual)
from .surfaces import LabeledSurface, LabeledTriangle, T, Top, labeled_boundary

__all__ = [
    "AInfinityData", "SignConvention", "relation_sides", "stasheff_residual",
    "Chain", "CellComplex", "CoefficientGroup", "Z", "boundary",
    "Cochain", "coboundary", "evaluate",
    "ComplexDocument", "ParseError", "parse_document", "serialize_document",
    "homology", "smith_normal_form",
    "MoveCertificate", "check_cylinder", "check_move_13", "check_move_22", "check_pentagon",
    "poincare_dual",
    "LabeledSurface", "LabeledTriangle", "T", "Top", "labeled_boundary",
]
