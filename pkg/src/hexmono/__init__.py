"""Aperiodic hexagonal monotile engine.

A single decorated hexagon tiles the plane only aperiodically when growth
must keep its curve decorations continuous (R1) and its interior trees
joined into one dendrite (R2).  This package builds the spiral patches and
their limit tilings, searches for and refutes would-be counterexamples, and
serves an interactive sandbox over HTTP.
"""

from .hexlattice import Cell, hex_distance, neighbor, rotate_coord, spiral_anchor
from .prototile import (
    DEFAULT_TEMPLATE,
    CalibrationResult,
    Crossing,
    NoTemplateError,
    PrototileTemplate,
    calibrate,
    r1_match,
    r1_signature,
    r2_connects,
    r2_contact,
)
from .engine import (
    IllegalPlacement,
    LegalityReport,
    LoadReport,
    Patch,
    Verdict,
    can_place,
    dumps_patch,
    is_directly_constructible,
    legal_orientations,
    load_patch,
    loads_patch,
    place,
    save_patch,
    transform_patch,
    union,
)

__version__ = "0.1.0"
