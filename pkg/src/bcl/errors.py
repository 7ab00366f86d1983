"""Exception hierarchy shared by every module.

All library errors derive from :class:`BclError` so callers can catch one
type at API boundaries (the CLI maps them to exit code 2).
"""


class BclError(Exception):
    """Base class for all library errors."""


class EmptyInput(BclError):
    """An operation received an empty facet list or empty complex."""


class BadVertex(BclError):
    """A vertex id is negative, out of range, or the 64-vertex cap is hit."""


class NotPure(BclError):
    """The complex is not pure but the operation requires purity."""


class NotAFace(BclError):
    """The given vertex set is not a face of the complex."""


class NotAFacet(BclError):
    """The given face is not inclusion-maximal."""


class BadDimension(BclError):
    """The dimension parameter is outside the operation's domain."""


class BadParameters(BclError):
    """Numeric parameters violate the operation's preconditions."""


class ColorMismatch(BclError):
    """A vertex identification does not preserve colors, or no
    color-compatible identification exists."""


class FaceCollision(BclError):
    """A gluing identified two distinct faces that were both present."""


class SharedVertices(BclError):
    """Two faces that must be disjoint share a vertex."""


class NotLocallyValid(BclError):
    """A handle addition would collapse or merge faces, or break the
    ridge-degree-two property."""


class NotASubcomplex(BclError):
    """The second complex is not a subcomplex of the first."""


class NotASphere(BclError):
    """The complex is not a homology sphere but the operation needs one."""


class NotMonochromatic(BclError):
    """The deleted vertex set is not contained in one color class."""


class DimensionTooSmall(BclError):
    """The statement being checked is vacuous or undefined at this dimension."""


class NotBuchsbaum(BclError):
    """A Buchsbaum precondition failed."""


class InvalidCocycle(BclError):
    """Edge labels violate antisymmetry or the triangle condition."""


class DisconnectedCover(BclError):
    """A cyclic cover came out disconnected."""


class HypothesisViolated(BclError):
    """A lemma's hypotheses do not hold for the given input."""


class NoUniqueLargeClass(BclError):
    """No unique color class of the required size exists."""


class BudgetExceeded(BclError):
    """A search exceeded its node or time budget."""
