"""Shared exception types."""


class RealizationMissing(Exception):
    """The realization oracle has no entry for the requested class."""


class NoCompletion(Exception):
    """A morphism-of-triangles completion system is inconsistent."""


class SearchExhausted(Exception):
    """A bounded diagram search found no solution."""


class NoProjectives(Exception):
    """A projective cover (or injective envelope) is not available."""


class StableEqualityFails(Exception):
    """A required stable-category equality does not hold."""


class HypothesisViolation(Exception):
    """An operation was called outside its stated hypotheses."""


class AxiomViolation(Exception):
    """An instance failed validation against the axiom checker."""


class ParseError(Exception):
    """An instance file is malformed."""
