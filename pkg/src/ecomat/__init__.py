"""Production matrices for succession rules, computed with exact arithmetic."""

from ecomat.polynomial import Polynomial, RationalGF
from ecomat.series import PowerSeries

__version__ = "0.1.0"

__all__ = ["Polynomial", "PowerSeries", "RationalGF", "__version__"]
