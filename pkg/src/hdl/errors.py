"""Exception types raised by the library."""


class HDLError(ValueError):
    """Base class for precondition failures."""


class ZeroConstantTerm(HDLError):
    pass


class BadDiskPoint(HDLError):
    pass


class RadiusOutOfRange(HDLError):
    pass


class OutsideStrip(HDLError):
    pass


class OutsideInterval(HDLError):
    pass


class OutsideDisk(HDLError):
    pass


class RangeViolation(HDLError):
    """A sampled map value left the domain it is supposed to map into."""


class NotBoundaryFixed(HDLError):
    pass


class SpecViolation(HDLError):
    """Constructor data does not satisfy the admissibility conditions."""


class DegeneratePoint(HDLError):
    """The differential has rank < 2, so no tangent plane exists."""
