"""Explicit strong blocking sets and minimal codes from expander graphs and linear codes."""

__version__ = "0.1.0"

from .field import FieldSpec, GF, GFq, field_of_order, make_field
from .codes import GeneratorMatrix, ProjectiveSystem, rs_generator, to_projective_system
from .graphs import Graph, lps_graph, spectrum
from .integrity import integrity_exact, z_exact
from .sbs import IntegrityEvidence, LineSet, SBSCertificate, construct_main
from .reduction import derive_sbs, repeat_derivation

__all__ = [
    "FieldSpec", "GF", "GFq", "field_of_order", "make_field",
    "GeneratorMatrix", "ProjectiveSystem", "rs_generator", "to_projective_system",
    "Graph", "lps_graph", "spectrum",
    "integrity_exact", "z_exact",
    "IntegrityEvidence", "LineSet", "SBSCertificate", "construct_main",
    "derive_sbs", "repeat_derivation",
]
