"""Exact verification of castling classes of prehomogeneous vector spaces of type IFPS."""

__version__ = "0.1.0"

from .castle import Solution, descend, enumerate_solutions, residual, sc_transform  # noqa: E402
from .dsl import parse, parse_solution, parse_triplet, render  # noqa: E402
from .pv import castling_check, find_generic, is_generic, is_pv_type_ifps  # noqa: E402
from .reps import Triplet, tensor_triplet  # noqa: E402

__all__ = [
    "Solution", "Triplet", "castling_check", "descend", "enumerate_solutions", "find_generic",
    "is_generic", "is_pv_type_ifps", "parse", "parse_solution", "parse_triplet", "render",
    "residual", "sc_transform", "tensor_triplet",
]
