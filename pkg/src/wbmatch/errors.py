"""Exception types shared across the package."""


class WbMatchError(Exception):
    """Base class for all wbmatch errors."""


class DegenerateWhitePointError(WbMatchError):
    """A white point has a non-positive or non-finite component."""


class DegenerateRegionError(WbMatchError):
    """An image region is empty or all-black, so no illuminant can be estimated."""


class InvalidPartitionError(WbMatchError):
    """The requested block grid cannot tile the image."""


class DimensionError(WbMatchError):
    """Template and query dimensions are incompatible."""


class EmptyTableError(WbMatchError):
    """An evaluation was requested over zero records."""


class InvalidSpecError(WbMatchError):
    """A scene specification is malformed or self-contradictory."""


class ImageFormatError(WbMatchError):
    """An image file could not be parsed or written in the requested format."""
