"""Exception and warning types raised across the package."""


class InvalidArgumentError(ValueError):
    pass


class DegenerateGeometryError(ValueError):
    """Two things that must be apart (coil centres, orbit centre) coincide."""


class NumericError(ArithmeticError):
    """The circuit solve failed or the system is too ill-conditioned to trust."""


class ScenarioError(ValueError):
    """A scenario file or dictionary failed to parse or validate.

    ``field`` names the offending key path (``"node.tx.radius"``) when known.
    """

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class UnknownScenarioError(KeyError):
    def __init__(self, name, valid):
        self.name = name
        self.valid = tuple(valid)
        super().__init__(name)

    def __str__(self):
        return f"unknown scenario {self.name!r}; valid names: {', '.join(self.valid)}"


class NearFieldWarning(UserWarning):
    """Separation is small enough that the point-dipole model is unreliable."""


class OverlapWarning(UserWarning):
    """Two coils are close enough that their windings would physically intersect."""


class CouplingWarning(UserWarning):
    """A coupling coefficient above one was computed (model outside validity)."""
