"""Reduced odd Khovanov complexes from planar diagram codes.

Public surface: PD parsing and diagram transforms, the resolution cube, the
pointed exterior-algebra cobordism maps, edge sign assignments, bigraded
complex assembly and homology, the filtration spectral sequence engine,
mapping-cone utilities, and independent Kauffman-bracket oracles.
"""

from ._kernels import BACKEND as kernel_backend
from .complexes import (
    BigradedComplex,
    GradedGenerator,
    HomologySummary,
    assemble,
    euler_characteristic,
    homology,
    shift,
    split_by_crossing,
)
from .cube import ResolutionCube, Resolution, edge_sign, oriented_vertex, resolve
from .edge_assignment import SignAssignment, face_constraint, solve
from .exterior import (
    ExteriorElement,
    cap_map,
    cup_map,
    merge_map,
    relabel,
    split_map,
    wedge,
)
from .jones import determinant, euler_reference, jones_polynomial, kauffman_bracket
from .laurent import LaurentPoly
from .pdcodes import Diagram, crossing_signs, mirror, parse_pd
from .spectral import (
    FilteredComplex,
    PagesResult,
    SSPage,
    einfinity_oracle,
    filtered_from_bigraded,
    pages,
)

__version__ = "0.1.0"

__all__ = [
    "BigradedComplex",
    "Diagram",
    "ExteriorElement",
    "FilteredComplex",
    "GradedGenerator",
    "HomologySummary",
    "LaurentPoly",
    "PagesResult",
    "Resolution",
    "ResolutionCube",
    "SSPage",
    "SignAssignment",
    "assemble",
    "cap_map",
    "crossing_signs",
    "cup_map",
    "determinant",
    "edge_sign",
    "einfinity_oracle",
    "euler_characteristic",
    "euler_reference",
    "face_constraint",
    "filtered_from_bigraded",
    "homology",
    "jones_polynomial",
    "kauffman_bracket",
    "kernel_backend",
    "merge_map",
    "mirror",
    "oriented_vertex",
    "pages",
    "parse_pd",
    "relabel",
    "resolve",
    "shift",
    "solve",
    "split_by_crossing",
    "split_map",
    "wedge",
]
