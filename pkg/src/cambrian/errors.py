"""Exception types shared across the package.

InputError means the caller handed us something invalid; InternalError means
an invariant that should hold for all valid inputs was violated (a bug, or
broken tabulated data -- never something a caller can trigger legitimately).
"""


class InputError(ValueError):
    pass


class InternalError(RuntimeError):
    pass
