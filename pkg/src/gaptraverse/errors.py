"""Exception types shared across the package.

Graph construction problems are all subclasses of ``GraphValidationError``
so that file loaders can forward them unchanged.
"""

from __future__ import annotations


class GapTraverseError(Exception):
    """Base class for all errors raised by this package."""


class GraphValidationError(GapTraverseError):
    """A graph, or data meant to become one, violates a structural rule."""


class DuplicateNode(GraphValidationError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"duplicate node id: {node!r}")


class DuplicateEdge(GraphValidationError):
    def __init__(self, source, target):
        self.source = source
        self.target = target
        super().__init__(f"duplicate directed edge: ({source!r}, {target!r})")


class DanglingEdgeEndpoint(GraphValidationError):
    def __init__(self, source, target, missing):
        self.source = source
        self.target = target
        self.missing = missing
        super().__init__(
            f"edge ({source!r}, {target!r}) references unknown node {missing!r}"
        )


class UnknownNode(GraphValidationError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"unknown node id: {node!r}")


class EmptyGraph(GraphValidationError):
    def __init__(self, message: str = "operation requires at least one node"):
        super().__init__(message)


class MissingProperty(GapTraverseError):
    """A node or edge lacks a property that a rule needs to read."""

    def __init__(self, owner, key, detail: str = ""):
        self.owner = owner
        self.key = key
        msg = f"property {key!r} missing on {owner!r}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class MissingCoordinates(MissingProperty):
    def __init__(self, owner, detail: str = ""):
        super().__init__(owner, "coordinates", detail)


class ConfigError(GapTraverseError):
    """A search configuration is internally inconsistent."""


class InvalidTraversal(GapTraverseError):
    """A transition sequence is not a valid traversal of the given graph."""


class InvalidParams(GapTraverseError):
    """Generator knobs outside their legal range."""


class NotAnOdf(GapTraverseError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"start node {node!r} is not an optical distribution frame")


class NotAServer(GapTraverseError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"start node {node!r} is not a server")


class DimensionMismatch(GapTraverseError):
    """An accumulation state lacks a dimension the analysis needs."""


class TooFewBudgets(GapTraverseError):
    """Marginal-gain reporting needs at least two budget points."""


class EmptyPairSet(GapTraverseError):
    """A sweep needs at least one (source, target) pair."""


class ParseError(GapTraverseError):
    """A document file is not syntactically valid."""

    def __init__(self, path, message, line=None, column=None):
        self.path = path
        self.line = line
        self.column = column
        where = f"{path}"
        if line is not None:
            where += f":{line}"
            if column is not None:
                where += f":{column}"
        super().__init__(f"{where}: {message}")


class SchemaError(GapTraverseError):
    """A document parses but does not match the expected schema."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"field {field!r}: {message}")


class GraphTooLargeWarning(UserWarning):
    """Exhaustive enumeration was asked for a graph beyond desk scale."""
