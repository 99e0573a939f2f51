class MathematicalFailure(ValueError):
    """Input is well formed but the requested construction does not exist."""


class PreconditionError(MathematicalFailure):
    pass


class DegenerateError(MathematicalFailure):
    pass


class IndeterminateError(MathematicalFailure):
    pass


class RankError(MathematicalFailure):
    pass
