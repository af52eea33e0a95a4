"""Exceptions raised by qcover operations.

Every error keeps its witness as attributes so the CLI can report it.
"""


class QcoverError(Exception):
    """Base class for all qcover errors."""


class QcoverInputError(QcoverError):
    """The input violates a precondition (CLI exit code 2)."""


class QcoverLimitError(QcoverError):
    """A configured bound was hit (CLI exit code 2)."""


class MethodDisagreement(QcoverError):
    """Independent methods for the same theorem disagree (CLI exit code 3)."""

    def __init__(self, op: str, methods: dict):
        self.op = op
        self.methods = methods
        super().__init__(f"{op}: methods disagree: {methods}")


class ShapeError(QcoverInputError):
    pass


class NotBijectiveColumn(QcoverInputError):
    def __init__(self, column: int):
        self.column = column
        super().__init__(f"column {column} is not a permutation")


class SelfDistributivityFail(QcoverInputError):
    def __init__(self, x: int, y: int, z: int):
        self.witness = (x, y, z)
        super().__init__(f"(x<y)<z != (x<z)<(y<z) for (x, y, z) = {self.witness}")


class NotAGroup(QcoverInputError):
    def __init__(self, reason: str, witness: tuple):
        self.reason = reason
        self.witness = witness
        super().__init__(f"not a group table ({reason}): {witness}")


class NotAHomomorphism(QcoverInputError):
    def __init__(self, x: int, y: int):
        self.witness = (x, y)
        super().__init__(f"f(x<y) != f(x)<f(y) for (x, y) = {self.witness}")


class IncompatiblePartition(QcoverInputError):
    def __init__(self, witness: tuple):
        self.witness = witness
        super().__init__(f"partition is not compatible with the operations: {witness}")


class DegreeMismatch(QcoverInputError):
    def __init__(self, expected: int, got: int):
        super().__init__(f"permutation degree {got} does not match rack order {expected}")


class NotSurjective(QcoverInputError):
    def __init__(self, missing: int):
        self.missing = missing
        super().__init__(f"homomorphism misses codomain element {missing}")


class InvalidHorn(QcoverInputError):
    def __init__(self, step: int):
        self.step = step
        super().__init__(f"step {step} is not a pair in the kernel pair of f")


class BadPointing(QcoverInputError):
    pass


class EmptyRack(QcoverInputError):
    pass


class CharacteristicNonZero(QcoverInputError):
    pass


class UnknownLabel(QcoverInputError):
    def __init__(self, label: str):
        self.label = label
        super().__init__(f"unknown element label {label!r}")


class BadWordSyntax(QcoverInputError):
    pass


class ClosureCapExceeded(QcoverLimitError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"group closure exceeds cap of {cap} elements")


class OverflowGuard(QcoverLimitError):
    def __init__(self, bound: int):
        self.bound = bound
        super().__init__(f"matrix entry exceeds configured magnitude {bound}")
