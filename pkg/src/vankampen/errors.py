"""Exception types shared across the library."""

from __future__ import annotations


class VanKampenError(Exception):
    """Base class for all library-specific errors."""


class CompositionError(VanKampenError):
    """A word fails to compose; ``index`` is the first offending letter."""

    def __init__(self, index: int, message: str):
        super().__init__(message)
        self.index = index


class UnknownObjectError(VanKampenError):
    """An object identifier is not part of the presentation."""


class UnknownGeneratorError(VanKampenError):
    """A group word references a generator that was never declared."""


class ComponentError(VanKampenError):
    """An operation crossed connected-component boundaries."""


class RelationShapeError(VanKampenError):
    """A relation word is not a loop."""


class PresentationError(VanKampenError):
    """A presentation or matrix violates a structural invariant."""


class MorphismError(VanKampenError):
    """A groupoid morphism is ill-formed (endpoints or relation images)."""


class HypothesisError(VanKampenError):
    """A pushout input violates one of the required hypotheses.

    ``reason`` is one of ``"total_disconnection"``, ``"connectivity"``,
    ``"basepoint"``.
    """

    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


class ShapeError(VanKampenError):
    """A subcomplex does not have the required shape (closed, arc, cycle...)."""


class MembershipError(VanKampenError):
    """A query point lies inside the removed subcomplex."""


class GenerationError(VanKampenError):
    """Random instance generation exhausted its retry budget."""


class PipelineError(VanKampenError):
    """A named stage of the Jordan verification pipeline failed."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage


class CertificationError(VanKampenError):
    """Mechanical verification of a certificate failed."""


class SchemaError(VanKampenError):
    """A document does not match its schema; ``path`` locates the field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
