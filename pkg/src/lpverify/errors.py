class LpvError(Exception):
    """Base class for all errors raised by lpverify."""


class ParseError(LpvError):
    def __init__(self, line, column, message):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message


class ResourceExceeded(LpvError):
    pass


class NotDefinite(LpvError):
    pass


class PairInconsistent(LpvError):
    def __init__(self, report):
        super().__init__(
            f"specification pair inconsistent: {report.violation_count} atom(s) in S_compl but not in S_corr"
        )
        self.report = report
