"""Exception hierarchy shared across the package."""


class HockeyPythagError(Exception):
    """Base class for every error raised by this package."""


class DomainError(HockeyPythagError, ValueError):
    pass


# estimation
class InsufficientData(HockeyPythagError, ValueError):
    pass


class InvalidGoals(HockeyPythagError, ValueError):
    pass


class NonConvergence(HockeyPythagError, RuntimeError):
    pass


# inference
class LengthMismatch(HockeyPythagError, ValueError):
    pass


class DegenerateTies(HockeyPythagError, ValueError):
    pass


class SmallSample(HockeyPythagError, ValueError):
    pass


class TooFewBins(HockeyPythagError, ValueError):
    pass


class ZeroExpected(HockeyPythagError, ValueError):
    pass


# simulation
class QuadratureFailure(HockeyPythagError, RuntimeError):
    pass


# ingest
class ParseError(HockeyPythagError, ValueError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class DuplicateGame(HockeyPythagError, ValueError):
    def __init__(self, team: str, date, line: int | None = None):
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"duplicate game for {team} on {date}{where}")
        self.team = team
        self.date = date
        self.line = line


class EmptySeason(HockeyPythagError, ValueError):
    pass
