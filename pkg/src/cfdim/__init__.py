"""Hausdorff dimension of continued-fraction sets with linearly spaced digit products.

Modules: ``cf`` (exact continued-fraction arithmetic), ``pressure`` (cylinder
sums and the pressure root s_B), ``cover`` (equalized cover profiles),
``dimension`` (growth exponents and dimension dispatch), ``empirics``
(Monte Carlo and exhaustive experiments), ``checks`` (invariant suites) and
``cli``.
"""

__version__ = "0.1.0"

from .cf import LinearIndex, convergents, cylinder, expand, fundamental_interval  # noqa: E402
from .dimension import GrowthSpec, PressureSolver, dim_E1, dim_Ef, dim_Em, exponents_from_psi, parse_psi  # noqa: E402
from .errors import (BracketError, BudgetExceeded, CfdimError, DomainError,  # noqa: E402
                     PrecisionExhausted, SolverError, TableauError, ValidationError)
from .pressure import s_B_estimate, s_B_finite  # noqa: E402

__all__ = [
    "LinearIndex", "convergents", "cylinder", "expand", "fundamental_interval",
    "GrowthSpec", "PressureSolver", "dim_E1", "dim_Ef", "dim_Em", "exponents_from_psi", "parse_psi",
    "BracketError", "BudgetExceeded", "CfdimError", "DomainError", "PrecisionExhausted",
    "SolverError", "TableauError", "ValidationError",
    "s_B_estimate", "s_B_finite",
]
