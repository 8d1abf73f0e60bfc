"""Exception hierarchy shared by all discgroup modules."""


class DiscGroupError(Exception):
    """Base class for every domain error raised by this package."""


class NonNegativePoint(DiscGroupError):
    """A disc-interior (negative) point was required."""


class NotHyperbolic(DiscGroupError):
    """The isometry has no axis: it is elliptic, parabolic or the identity."""


class NumericallyNotHyperbolic(NotHyperbolic):
    """An isometry expected to be hyperbolic failed the trace test."""


class NotHyperbolicGenerator(NotHyperbolic):
    """A generator required to be hyperbolic for a certificate is not."""


class DegeneratePoints(DiscGroupError):
    """Two points that must be distinct coincide within tolerance."""


class CoincidentGeodesics(DiscGroupError):
    """The two geodesics share both ideal endpoints."""


class AnchorOffAxis(DiscGroupError):
    """The supplied anchor does not lie on the axis of the isometry."""


class RelationViolated(DiscGroupError):
    """A defining relation of the group fails on the given generators."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class TooFewGenerators(DiscGroupError):
    """The generator count is below the smallest supported rank."""


class DegeneratePair(DiscGroupError):
    """Adjacent half-turn centers coincide, so their product is trivial."""


class NotDiscrete(DiscGroupError):
    """The operation is only defined for certified discrete representations."""


class BadOrdering(DiscGroupError):
    """Boundary coordinates violate the strict angular ordering."""


class OddN(DiscGroupError):
    """An even generator count is required for the index-two surface subgroup."""


class IndexOutOfRange(DiscGroupError):
    """A word or generator index lies outside its admissible range."""


class RetryBudgetExhausted(DiscGroupError):
    """A sampler gave up after its configured number of retries."""


class BudgetExceeded(DiscGroupError):
    """An enumeration exceeded its configured word budget."""


class SpreadTooLarge(DiscGroupError):
    """Cross-validated area values disagree beyond tolerance."""


class SimplicityCheckFailed(DiscGroupError):
    """Two non-adjacent polygon edges cross; the polygon is not simple."""


class Inconsistent(DiscGroupError):
    """Internal cross-checks disagree; the input is numerically unusable."""


class DocumentError(DiscGroupError):
    """A representation document is malformed."""
