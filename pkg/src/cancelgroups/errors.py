"""Exception hierarchy shared by every module."""


class CancelGroupsError(Exception):
    pass


class ResourceError(CancelGroupsError):
    """A bounded search hit its ceiling before finding an answer."""


class InvariantViolation(CancelGroupsError):
    def __init__(self, clause, detail):
        super().__init__(f"invariant {clause} violated: {detail}")
        self.clause = clause
        self.detail = detail


class StageNotBuilt(CancelGroupsError):
    """The answer depends on a sequence stage that has not been built."""

    def __init__(self, stage, reason=""):
        # stage is an int, or a string formula when it is too large to write out
        msg = f"stage {stage} of the prime sequence is required but not built"
        if reason:
            msg += f" ({reason})"
        super().__init__(msg)
        self.stage = stage


class ParseError(CancelGroupsError):
    def __init__(self, message, line=None, path=None):
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}".strip())
        self.line = line
        self.path = path


class CacheError(CancelGroupsError):
    pass


class CoverageError(CancelGroupsError):
    """A query falls outside the rows a column rule describes."""
