"""Exception types shared across the package."""


class JacgenError(Exception):
    """Base class for every error raised by jacgen."""


class NonTateRegime(JacgenError):
    """A computation would need a nonzero cusp-form motive."""

    def __init__(self, weight, detail=""):
        self.weight = weight
        msg = f"NonTateRegime: weight-{weight} cusp forms are nonzero"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class NotDivisible(JacgenError):
    pass


class NonIntegralSchur(JacgenError):
    pass


class PositiveDegreeRequired(JacgenError):
    pass


class BadLeadingTerm(JacgenError):
    pass


class InvalidSequence(JacgenError):
    pass


class NotAnNCycle(JacgenError):
    pass


class NotSmoothable(JacgenError):
    pass


class DegeneratePolarisation(JacgenError):
    pass


class DegenerateWall(JacgenError):
    def __init__(self, subset, value):
        self.subset = subset
        self.value = value
        super().__init__(f"value {value} on subset {sorted(subset)} lies on a wall")


class NotSuperadditive(JacgenError):
    def __init__(self, pair=None):
        self.pair = pair
        msg = "function is not mildly superadditive"
        if pair is not None:
            msg += f" (first violation at {pair[0]}, {pair[1]})"
        super().__init__(msg)


class InternalCellEmpty(JacgenError):
    """The stability cell of a mildly superadditive function came out empty.

    This can only happen through a bug; the cell is nonempty by theory.
    """


class NTooSmall(JacgenError):
    pass


class BoundExceeded(JacgenError):
    pass
