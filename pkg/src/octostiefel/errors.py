"""Exception hierarchy shared by all modules."""


class OctoStiefelError(ValueError):
    """Base class for domain errors raised by this package."""


class NotSymmetric(OctoStiefelError):
    pass


class LengthMismatch(OctoStiefelError):
    pass


class DimensionMismatch(OctoStiefelError):
    pass


class UnsupportedM(OctoStiefelError):
    pass


class BadFamily(OctoStiefelError):
    pass


class NotAFrame(OctoStiefelError):
    pass


class NotOrthogonal(OctoStiefelError):
    pass


class NotAMember(OctoStiefelError):
    pass


class NotInW(OctoStiefelError):
    pass


class Unclassified(OctoStiefelError):
    pass


class SamplingFailed(OctoStiefelError):
    pass


class BadBasePoint(OctoStiefelError):
    pass


class BadDimension(OctoStiefelError):
    pass


class NotRepresentable(OctoStiefelError):
    """An exact square root or normalization left the field Q(sqrt 2)."""


class IdentityFailed(OctoStiefelError, AssertionError):
    """A pointwise identity that must hold at a member was violated."""


class UnknownSuite(OctoStiefelError):
    pass


class ParseError(OctoStiefelError):
    pass
