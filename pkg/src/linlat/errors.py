"""Exception hierarchy shared by every layer of the toolkit."""


class LatticeError(ValueError):
    pass


class ParseError(LatticeError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CycleDetected(LatticeError):
    pass


class NoUniqueBound(LatticeError):
    def __init__(self, pair, message=None):
        self.pair = pair
        super().__init__(message or f"no unique bound: {pair[0]!r} and {pair[1]!r} are both extremal")


class NotALattice(LatticeError):
    def __init__(self, pair, message=None):
        self.pair = pair
        super().__init__(message or f"{pair[0]!r} and {pair[1]!r} have no unique meet/join")


class NotModular(LatticeError):
    pass


class NotComparable(LatticeError):
    pass


class NotComplementPair(LatticeError):
    pass


class MorphismError(LatticeError):
    pass


class NoKernel(MorphismError):
    pass


class NotConstantOnKernelCosets(MorphismError):
    pass


class NotIntervalIso(MorphismError):
    pass


class NotMonotone(MorphismError):
    pass


class DomainMismatch(MorphismError):
    pass


class NotInvariant(MorphismError):
    pass


class OrderBound(LatticeError):
    pass


class InternalInvariantViolation(AssertionError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class ShortcutMismatch(InternalInvariantViolation):
    pass


class IllDefined(InternalInvariantViolation):
    pass


class EquivalenceViolation(AssertionError):
    """A theorem-backed equivalence failed while its hypotheses held."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class TheoremViolated(AssertionError):
    def __init__(self, claim, witness=None, context=None):
        self.claim = claim
        self.witness = witness
        self.context = context
        super().__init__(f"claim {claim} violated on {context}: {witness!r}")
