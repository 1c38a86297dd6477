"""Exact spectra, designs and representations for quantum chromatic numbers
of type-union Cayley graphs over Z_p^n."""

__version__ = "0.1.0"

from .core import CyclotomicInteger, TypeVector, krawtchouk, multinomial, type_of
from .designs import Design, design_upper_bound, separation_profile, verify_bibd
from .errors import BudgetError, DomainError, InvariantError, ParameterError, QChromaticError
from .spectrum import CayleySpec, SpectrumReport, full_spectrum, spectral_lower_bound

__all__ = [
    "__version__",
    "BudgetError",
    "CayleySpec",
    "CyclotomicInteger",
    "Design",
    "DomainError",
    "InvariantError",
    "ParameterError",
    "QChromaticError",
    "SpectrumReport",
    "TypeVector",
    "design_upper_bound",
    "full_spectrum",
    "krawtchouk",
    "multinomial",
    "separation_profile",
    "spectral_lower_bound",
    "type_of",
    "verify_bibd",
]
