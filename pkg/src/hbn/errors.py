"""Exception hierarchy.

Domain errors (bad input, violated preconditions) derive from ``HBNError`` and
map to CLI exit code 1.  The ``Internal*`` errors signal that two independent
routes to the same quantity disagreed; they indicate a bug and should never be
seen in practice.
"""


class HBNError(ValueError):
    pass


class SumMismatch(HBNError):
    pass


class LengthMismatch(HBNError):
    pass


class ParamMismatch(HBNError):
    pass


class DegenerateSequence(HBNError):
    pass


class RangeError(HBNError):
    pass


class RankTooLow(HBNError):
    pass


class WrongClass(HBNError):
    pass


class PreconditionFail(HBNError):
    pass


class NotInV(HBNError):
    pass


class InternalError(RuntimeError):
    pass


class InternalEquivalenceViolation(InternalError):
    pass


class InternalThresholdViolation(InternalError):
    pass
