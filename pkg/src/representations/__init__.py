"""
Orthogonal and d/r-representations: search, certificates and verification.
"""
from src.representations.certificates import (
    DrVerification,
    OrthoRepresentation,
    ProjectorRepresentation,
    RepresentationCheck,
    dump_certificate,
    load_certificate,
    normalize_first_entries,
    verify_conversion_identity,
    verify_dr_representation,
    verify_orthogonal_representation,
)
from src.representations.interval import XiInterval, xi_interval
from src.representations.search import SearchConfig, search_normalized_rep, search_ortho_rep

__all__ = [
    "DrVerification",
    "OrthoRepresentation",
    "ProjectorRepresentation",
    "RepresentationCheck",
    "SearchConfig",
    "XiInterval",
    "dump_certificate",
    "load_certificate",
    "normalize_first_entries",
    "search_normalized_rep",
    "search_ortho_rep",
    "verify_conversion_identity",
    "verify_dr_representation",
    "verify_orthogonal_representation",
    "xi_interval",
]
