"""Exception types. Every domain error carries a short machine-readable code."""


class SkelpfError(Exception):
    code = "error"


class DomainError(SkelpfError, ValueError):
    """Invalid parameters or arguments outside an operation's domain."""

    code = "domain"


class NotArtinianError(SkelpfError, ValueError):
    """The quotient by a monomial ideal has infinitely many standard monomials."""

    code = "not_artinian"


class NotParkingFunctionError(SkelpfError, ValueError):
    code = "not_parking_function"


class NotSphericalError(SkelpfError, ValueError):
    code = "not_spherical"


class PhiUndefinedError(SkelpfError, ValueError):
    """The spherical DFS construction does not apply to this input."""

    code = "phi_undefined"
