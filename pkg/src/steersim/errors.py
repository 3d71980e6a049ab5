"""Exception types shared across the package.

Everything derives from ValueError so careless callers still get a
conventional failure mode, but each kind of contract violation stays
distinguishable in tests and in CLI error handling.
"""


class DomainError(ValueError):
    """A numeric parameter lies outside its documented domain."""


class DimensionError(ValueError):
    """Matrix shapes are incompatible or outside the supported 2/4/8 sizes."""


class ContractError(ValueError):
    """An operation precondition was violated (wrong kind of operator, etc.)."""


class DensityMatrixError(ValueError):
    """Base class for density-matrix validation failures."""


class HermiticityError(DensityMatrixError):
    """The candidate matrix is not Hermitian within tolerance."""


class TraceError(DensityMatrixError):
    """The candidate matrix does not have unit trace within tolerance."""


class PositivityError(DensityMatrixError):
    """The candidate matrix has a negative eigenvalue beyond tolerance."""


class PostSelectionError(ValueError):
    """A selective (post-selected) operation succeeded with ~zero probability."""
