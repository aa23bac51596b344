"""Exception hierarchy shared by all modules."""


class Planar4cError(Exception):
    """Base class for every error raised by the package."""


class NotATriangulation(Planar4cError):
    pass


class InconsistentOrientation(Planar4cError):
    pass


class UnknownVertex(Planar4cError, KeyError):
    pass


class NotSeparating(Planar4cError):
    pass


class PerimeterMismatch(Planar4cError):
    pass


class InvalidPolygon(Planar4cError):
    pass


class DegeneratePolygon(Planar4cError):
    pass


class IncompleteAssignment(Planar4cError):
    pass


class ImproperInput(Planar4cError):
    """A coloring or numbering handed to an operation is not proper/good."""


class Inconsistent(Planar4cError):
    """Propagation of an edge coloring hit a contradiction."""


class NotGood(Planar4cError):
    """An orientation assignment has a nonzero vertex sum.

    ``cycle`` holds the triangle indices of a dual cycle along which edge
    color propagation disagrees with itself.
    """

    def __init__(self, message, cycle=()):
        super().__init__(message)
        self.cycle = tuple(cycle)


class NoPreimage(Planar4cError):
    pass


class TipOnBase(Planar4cError):
    pass


class NotOnPerimeter(Planar4cError):
    pass


class TooLarge(Planar4cError):
    pass


class NotHamiltonian(Planar4cError):
    pass


class EdgeNotOnCircuit(Planar4cError):
    pass


class UnknownStatement(Planar4cError):
    pass


class PipelineCounterexample(Planar4cError):
    """No orientation zeroes the non-base vertices of a reconstructed polygon."""

    def __init__(self, message, instance=None):
        super().__init__(message)
        self.instance = instance


class NoHamiltonCircuit(Planar4cError):
    pass


class Uncolorable(Planar4cError):
    pass


class BadParams(Planar4cError):
    pass
