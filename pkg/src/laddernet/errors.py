"""Exception hierarchy shared by all laddernet modules."""


class LadderNetError(ValueError):
    """Base class for every error raised by this package."""


class ZeroImpedance(LadderNetError):
    """An edge impedance vanishes at the requested lambda (admittance is infinite)."""


class NotInLambdaSet(LadderNetError):
    """Some edge of the network has zero impedance at the requested lambda."""

    def __init__(self, edge, lam):
        self.edge = edge
        self.lam = lam
        super().__init__(f"edge ({edge[0]},{edge[1]}) has zero impedance at lambda={lam}")


class NetworkFormatError(LadderNetError):
    """A network description violates the structural invariants or the JSON schema."""


class InvalidSize(LadderNetError):
    pass


class NoSolution(LadderNetError):
    """The Dirichlet system is singular and inconsistent."""


class MuZero(LadderNetError):
    pass


class UnitCircleDegeneracy(LadderNetError):
    """psi1**(2n) == 1, so the closed-form constants are undefined."""


class OnCut(LadderNetError):
    """gamma lies on the negative imaginary axis, where the xi branches jump."""


class OutOfRange(LadderNetError):
    pass


class TooFewTerms(LadderNetError):
    pass


class NonConvergentInput(LadderNetError):
    pass
