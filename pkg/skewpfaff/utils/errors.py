"""
Exception hierarchy

Every failure raised on purpose by the toolkit derives from SkewPfaffError, so callers
can separate domain errors from programming errors.
"""

from typing import Any, Dict, Optional, Sequence


class SkewPfaffError(ValueError):
    """Base class for toolkit errors"""

    def to_dict(self) -> Dict[str, Any]:
        return {'error': str(self), 'error_type': type(self).__name__}


class InvalidParameter(SkewPfaffError):
    """An argument is outside the documented range"""


class NonHomogeneous(SkewPfaffError):
    """A polynomial mixes degrees where a homogeneous one is required"""


class DegreeMismatch(SkewPfaffError):
    """Two degree pieces live in different degrees or rings"""


class OddSize(SkewPfaffError):
    """Pfaffian requested for an odd-size matrix"""


class NotSkew(SkewPfaffError):
    """Matrix is not skew-symmetric"""


class NoPfaffianZero(SkewPfaffError):
    """Operation needs a matrix with vanishing Pfaffian"""


class PfaffianNonZero(NoPfaffianZero):
    """Tangent and fingerprint computations need Pf(M) = 0"""


class NonStabilizing(SkewPfaffError):
    """Iterated colon did not stabilize within the cap"""


class WrongSpanDimension(SkewPfaffError):
    """Entry span has the wrong dimension for a rank-0 point"""


class OrderTooLarge(SkewPfaffError):
    """Truncation order exceeds the jet order"""


class WrongType(SkewPfaffError):
    """Operation is defined only for some catalog types"""


class UnknownLabel(SkewPfaffError):
    """Catalog label outside a-f"""


class UnknownArrow(SkewPfaffError):
    """Degeneration arrow not in the stratification diagram"""


class Unclassified(SkewPfaffError):
    """No catalog fingerprint matches the input"""


class ZeroCubic(SkewPfaffError):
    """Cubic form is identically zero"""


class NotInPiece(SkewPfaffError):
    """Cubic is outside the degree-3 test piece"""


class InterchangeError(SkewPfaffError):
    """Malformed JSON document"""

    def __init__(self, message: str, location: Optional[Sequence[Any]] = None):
        super().__init__(message)
        self.location = list(location) if location else []

    def to_dict(self) -> Dict[str, Any]:
        body = super().to_dict()
        body['location'] = self.location
        return body
