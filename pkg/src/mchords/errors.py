"""Exception types shared across the package.

All of them derive from ValueError so that callers who do not care about
the fine distinctions can catch a single class.
"""


class InvalidDiskError(ValueError):
    """A unit-disk description is not an origin-symmetric convex disk."""


class GeometryError(ValueError):
    """A geometric precondition failed (point off a boundary, empty
    intersection, degenerate input and so on)."""


class UnsupportedDiskError(ValueError):
    """The requested operation is not defined for this disk representation,
    e.g. bisector sampling with a polygonal norm."""
