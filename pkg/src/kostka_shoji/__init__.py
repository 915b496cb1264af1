"""Multivariable Kostka polynomials of graded vector bundles over flag varieties."""

from .bundles import BundleSpec, bundle_classical, bundle_fi, bundle_from_diagram, bundle_from_flagtype
from .errors import BudgetExceeded, InvariantViolation, KostkaError, PointednessViolation, ValidationError
from .euler import euler_decompose, kostka_kostant
from .oracles import kostka_charge
from .polyring import SparsePolynomial
from .quiver import FlagType, Quiver, QuiverRep
from .weights import Weight

__version__ = "0.1.0"
