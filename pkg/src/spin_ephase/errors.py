"""Exception hierarchy. Every domain error carries a stable ``code`` for the CLI."""


class SpinEphaseError(ValueError):
    code = "domain_error"

    def to_dict(self):
        return {"error": self.code, "message": str(self)}


class NonUnitDirection(SpinEphaseError):
    code = "non_unit_direction"


class SizeOutOfRange(SpinEphaseError):
    code = "size_out_of_range"


class IndexOutOfRange(SpinEphaseError):
    code = "index_out_of_range"


class LengthMismatch(SpinEphaseError):
    code = "length_mismatch"


class DuplicateAxis(SpinEphaseError):
    code = "duplicate_axis"


class DegenerateState(SpinEphaseError):
    code = "degenerate_state"


class ZeroConditioningEvent(SpinEphaseError):
    code = "zero_conditioning_event"


class InvalidSign(SpinEphaseError):
    code = "invalid_sign"
