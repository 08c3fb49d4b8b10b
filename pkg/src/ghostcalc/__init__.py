"""Symbolic engine for graded-commutative ghost rings and odd derivations."""
from .graded_core import Convention, Generator, GradedBasis
from .ghost_ring import GhostCochain, GhostPolynomial, GhostRing
from .structures import (BracketFamily, CheckReport, RepresentationFamily, brackets_from_lie,
                         check_cl_infinity, check_ga_infinity, check_representation)
from .derivations import OddDerivation, is_nilpotent, square_residual

__version__ = "0.1.0"
