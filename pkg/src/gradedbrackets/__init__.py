"""Exact symbolic graded Lie brackets over the rationals.

Polynomial (and exponential) coefficients on a coordinate chart, Grassmann
algebras of multisections and forms, the Gerstenhaber, Nijenhuis-Richardson,
Schouten-Nijenhuis and Schouten-Jacobi brackets, Cartan calculus, tangent
and Jacobi lifts, Koszul brackets and checks for Jacobi bialgebroids.
"""

from .algebroid import AlgebroidSpec, algebroid_validate, exterior_d, lie_derivative, sn_bracket
from .bialgebroid import DualPair, bialgebroid_check, d_star, triangular_construct
from .docs import StructureDoc, load_doc, parse_doc, print_doc
from .errors import (DegreeError, GradedBracketError, ParseError, SpaceMismatch, StructureError)
from .generators import SuiteConfig, random_element
from .grassmann import GrassmannElement, Space, contract, pairing, wedge
from .jacobi import (FirstOrderOp, JacobiAlgebroid, d_phi, extension_algebroid, jacobi_structure_check,
                     lie_phi, nr_structural_bracket, sj_bracket)
from .koszul import generating_operator, jacobi_form_bracket, koszul_algebroid, koszul_bracket
from .lifts import TotalSpace, complete_lift, jacobi_lift, poisson_lift, vertical_lift
from .multilinear import MultilinearOp, gerstenhaber_bracket, nr_bracket
from .scalar import Chart, Scalar, format_scalar, parse_scalar
from .suites import SUITE_MANIFEST, SUITES, run_suite

__version__ = "0.1.0"
