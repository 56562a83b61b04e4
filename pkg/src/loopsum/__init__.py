"""Exact sum rules of the dilute O(1) loop model and the symmetric polynomials behind them."""
from .cyclofield import Cyclo, OMEGA, omega_pow
from .laurent import LaurentPoly, DivisibilityError, exact_divide, compare

__version__ = "0.1.0"
