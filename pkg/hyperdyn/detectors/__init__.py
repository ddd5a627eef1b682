from hyperdyn.detectors.global_props import GlobalKind, detect_accessible, detect_global, detect_indecomposable
from hyperdyn.detectors.hitting import HittingTimeSet, hitting_times
from hyperdyn.detectors.points import PointKind, classify_point, omega_limit
from hyperdyn.detectors.sensitivity import SensitivityKind, detect_sensitivity
from hyperdyn.detectors.transitivity import TransitivityKind, detect_transitivity
from hyperdyn.detectors.verdict import Outcome, Verdict

__all__ = [
    "GlobalKind",
    "HittingTimeSet",
    "Outcome",
    "PointKind",
    "SensitivityKind",
    "TransitivityKind",
    "Verdict",
    "classify_point",
    "detect_accessible",
    "detect_global",
    "detect_indecomposable",
    "detect_sensitivity",
    "detect_transitivity",
    "hitting_times",
    "omega_limit",
]
