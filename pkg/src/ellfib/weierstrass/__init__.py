"""Weierstrass models over k[t], Tate's algorithm, Frobenius pullback and twistor fields."""

from .model import (
    INDICES,
    NAMES,
    JInvariant,
    Place,
    WeierstrassModel,
    b_invariants,
    c4_of,
    discriminant_of,
    parse_wsurf,
)
from .pullback import (
    ELLIPTIC,
    ELLIPTIC_DOUBLE_POINT,
    Candidate,
    PlaceProfile,
    PullbackProfile,
    candidate_types,
    exceptional_candidates,
    law_violations,
    local_equation,
    local_tau,
    profile_from_reports,
    pullback_fiber_laws,
    pullback_place,
    pullback_report,
    singularity_profile,
)
from .surface import SurfaceReport, classify_surface, discriminant_places, split_field_model
from .tate import LANG_TABLE, REDUCED_TYPES, FiberReport, lang_type, tate, tate_local
from .twistor import CLASSICAL, SUPERSINGULAR, TwistorReport, twistor_field

__all__ = [
    "CLASSICAL",
    "Candidate",
    "ELLIPTIC",
    "ELLIPTIC_DOUBLE_POINT",
    "FiberReport",
    "INDICES",
    "JInvariant",
    "LANG_TABLE",
    "NAMES",
    "Place",
    "PlaceProfile",
    "PullbackProfile",
    "REDUCED_TYPES",
    "SUPERSINGULAR",
    "SurfaceReport",
    "TwistorReport",
    "WeierstrassModel",
    "b_invariants",
    "c4_of",
    "candidate_types",
    "classify_surface",
    "discriminant_of",
    "discriminant_places",
    "exceptional_candidates",
    "lang_type",
    "law_violations",
    "local_equation",
    "local_tau",
    "parse_wsurf",
    "profile_from_reports",
    "pullback_fiber_laws",
    "pullback_place",
    "pullback_report",
    "singularity_profile",
    "split_field_model",
    "tate",
    "tate_local",
    "twistor_field",
]
