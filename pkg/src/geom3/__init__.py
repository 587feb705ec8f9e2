"""geom3: exact computation with discrete isometry groups of the eight
3-dimensional geometries."""

from .algebra import QuadRat, galois_conjugate, quad_arith
from .descriptors import IsoDescriptor, Verdict
from .intmat import IntMat2, SnfResult, diagonalize_sl2, int_mat_pow, \
    smith_normal_form

__version__ = "0.1.0"

__all__ = [
    "QuadRat", "galois_conjugate", "quad_arith",
    "IntMat2", "SnfResult", "smith_normal_form", "int_mat_pow",
    "diagonalize_sl2",
    "IsoDescriptor", "Verdict",
    "__version__",
]
