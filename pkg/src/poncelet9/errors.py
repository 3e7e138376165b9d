"""Exception hierarchy shared by every module."""


class GeometryError(Exception):
    """Base class for all errors raised by poncelet9."""


# algebra
class NotPrime(GeometryError, ValueError):
    pass


class ReducibleModulus(GeometryError, ValueError):
    pass


class UnsupportedSize(GeometryError, ValueError):
    pass


class ZeroInverse(GeometryError, ZeroDivisionError):
    pass


# incidence structures
class IndexOutOfRange(GeometryError, IndexError):
    pass


class DuplicateIncidence(GeometryError, ValueError):
    pass


class NotAPlane(GeometryError, ValueError):
    pass


class NotBijective(GeometryError, ValueError):
    pass


# coordinate geometry
class EqualArguments(GeometryError, ValueError):
    pass


class DegenerateConic(GeometryError, ValueError):
    pass


class PointNotOnConic(GeometryError, ValueError):
    pass


class EvenCharacteristic(GeometryError, ValueError):
    pass


class CollinearTriple(GeometryError, ValueError):
    pass


class NoUniqueSolution(GeometryError, ValueError):
    pass


class DegenerateHexagon(GeometryError, ValueError):
    pass


class DegenerateFrame(GeometryError, ValueError):
    pass


# near-field planes
class CorrespondenceFailure(GeometryError):
    pass


class ParameterizationMismatch(GeometryError):
    pass


# ovals and polygons
class WrongCardinality(GeometryError, ValueError):
    pass


class NotAnOval(GeometryError, ValueError):
    pass


class NonUniqueTangent(GeometryError, ValueError):
    pass


class NotAnArc(GeometryError, ValueError):
    pass


class InvalidStart(GeometryError, ValueError):
    pass


class CounterexampleFound(GeometryError):
    """A sampled configuration contradicted a closure theorem."""


class GoldenMismatch(GeometryError):
    """A recomputed object differs from the embedded reference data."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step
