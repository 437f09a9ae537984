"""Self-similar graph actions, their inverse semigroups, universal groups
and the partial actions and groupoids they induce on path space."""
from __future__ import annotations

__version__ = "0.1.0"

from .graph import BoundaryPoint, Graph, GraphError, Path, parse_point, render_point
from .groups import make_backend
from .action import ActionError, SelfSimilarAction, axioms_report, is_exhausting, is_pseudo_free
from .verdict import Status, Verdict
from .isg import ZERO, InverseSemigroup, Triple, is_cancellative, is_estar_unitary
from .ugroup import (BaumslagSolitar, check_idempotent_pure, check_prehomomorphism,
                     emit_presentation, sigma_for)
from .paction import (ClopenSet, Conflict, NotInImage, PartialMap, UniversalAction,
                      induced_action, odometer_action, universal_action)
from .germs import TransformationGroupoid, germ_iso_check, phi_iso_check
from .fixtures import FIXTURES
from . import kernels

__all__ = [
    "BoundaryPoint", "Graph", "GraphError", "Path", "parse_point", "render_point",
    "make_backend", "ActionError", "SelfSimilarAction", "axioms_report", "is_exhausting",
    "is_pseudo_free", "Status", "Verdict", "ZERO", "InverseSemigroup", "Triple",
    "is_cancellative", "is_estar_unitary", "BaumslagSolitar", "check_idempotent_pure",
    "check_prehomomorphism", "emit_presentation", "sigma_for", "ClopenSet", "Conflict",
    "NotInImage", "PartialMap", "UniversalAction", "induced_action", "odometer_action",
    "universal_action", "TransformationGroupoid", "germ_iso_check", "phi_iso_check",
    "FIXTURES", "kernels",
]
