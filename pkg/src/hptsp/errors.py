"""Exception types shared across the package."""


class HptspError(Exception):
    """Base class for all domain errors raised by this package."""


class InvalidInstanceError(HptspError, ValueError):
    """An instance violates a structural invariant (label set, cost matrix, m, ...)."""


class InstanceFormatError(HptspError, ValueError):
    """An instance or certificate file is malformed; the message names the field."""


class CapacityError(HptspError, ValueError):
    """A requested enumeration or search exceeds the configured size guard."""


class RankRangeError(HptspError, ValueError):
    """A permutation rank falls outside [0, v!)."""


class DigestLengthError(HptspError, ValueError):
    """Two digests of different lengths were compared."""


class UnknownHashError(HptspError, KeyError):
    """No hash backend is registered under the requested id."""


class HashRegistrationError(HptspError, ValueError):
    """A hash backend id was registered twice."""


class CapabilityError(HptspError, ValueError):
    """The selected hash backend does not support the requested operation."""


class FeatureError(HptspError, ValueError):
    """An experiment was asked for an unsupported partial-information feature."""
