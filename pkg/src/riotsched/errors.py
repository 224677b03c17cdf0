"""Exception hierarchy shared across the package.

Everything user-facing derives from SchedulerError so the CLI can map
"your input is wrong" errors to exit code 2 in one place.
"""


class SchedulerError(Exception):
    """Base class for all errors raised by this package."""


# --- workflow ingestion -------------------------------------------------

class EmptyWorkflow(SchedulerError):
    pass


class CycleDetected(SchedulerError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__(f"workflow contains a cycle: {' -> '.join(map(str, self.cycle))}")


class DanglingEdge(SchedulerError):
    def __init__(self, task_id):
        self.task_id = task_id
        super().__init__(f"edge refers to undeclared task {task_id!r}")


class MalformedInput(SchedulerError):
    def __init__(self, reason, position=None):
        self.reason = reason
        self.position = position
        msg = reason if position is None else f"{position}: {reason}"
        super().__init__(msg)


class UnsupportedFeature(SchedulerError):
    def __init__(self, construct):
        self.construct = construct
        super().__init__(f"unsupported DAX construct: {construct}")


class UnknownShape(SchedulerError):
    pass


class TooSmall(SchedulerError):
    pass


# --- catalog ------------------------------------------------------------

class DuplicateName(SchedulerError):
    pass


class NonPositiveField(SchedulerError):
    pass


class UnknownType(SchedulerError):
    pass


# --- simulation ---------------------------------------------------------

class IncompleteSchedule(SchedulerError):
    pass


class NonTopologicalOrder(SchedulerError):
    pass


# --- scheduler / surrogate ----------------------------------------------

class LengthMismatch(SchedulerError):
    pass


class DegenerateAnchors(SchedulerError):
    """All anchors are identical in rank space, so no far anchor exists.

    Carries the already-simulated anchors so the caller can fall back to
    anchor-only output without re-spending simulation budget.
    """

    def __init__(self, anchors):
        self.anchors = anchors
        super().__init__("all anchors identical; surrogate extrapolation impossible")


# --- metrics ------------------------------------------------------------

class EmptyInput(SchedulerError):
    pass


class DegenerateBounds(SchedulerError):
    pass


class OutOfRange(SchedulerError):
    pass


class NotEnoughPoints(SchedulerError):
    pass
