"""Exception hierarchy shared by all modules."""


class CredalDynError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(CredalDynError):
    """Vector / map sizes disagree."""


class NotInvariant(CredalDynError):
    """The credal set is not invariant under the map, but the operation
    requires invariance."""


class NotMember(CredalDynError):
    """A probability vector is outside the credal set."""


class NotInvariantProbability(CredalDynError):
    """A probability vector is not fixed by the relevant power of the map."""


class NotVertexImage(CredalDynError):
    """Internal consistency failure: the pushforward of an extreme point of
    an invariant credal set was not itself an extreme point."""


class NotDivisible(CredalDynError):
    """A divisibility precondition (d | l) fails."""


class StateCapExceeded(CredalDynError):
    """State count exceeds the configured cap for an exhaustive operation."""


class AtomCapExceeded(CredalDynError):
    """Invariant-partition atom count exceeds the configured cap."""


class NoAchiever(CredalDynError):
    """Internal consistency failure: no extreme point achieves the upper
    expectation in the time-mean check."""


class InputError(CredalDynError):
    """Malformed input document."""


class MalformedJson(InputError):
    """Input is not valid JSON or misses required fields."""


class NotAProbability(InputError):
    """A generator row is not a probability vector."""

    def __init__(self, row: int, reason: str):
        super().__init__(f"generator row {row}: {reason}")
        self.row = row
        self.reason = reason


class BadMap(InputError):
    """A map entry is not a valid state index."""

    def __init__(self, index: int, value: object):
        super().__init__(f"map entry {index} = {value!r} is not a valid state index")
        self.index = index
        self.value = value
