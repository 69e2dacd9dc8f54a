"""Closed-form Pythagorean won-loss expectation and per-team report rows."""

import math
from dataclasses import dataclass

from .distribution import SHIFT
from .errors import DomainError


@dataclass(frozen=True)
class PythagReport:
    team_id: str
    season: str
    games_won: int
    games_lost: int
    actual_wl: float
    pythag_wl: float
    diff_games: float
    gamma_shape: float
    alpha_gs: float
    alpha_ga: float

    @property
    def games(self):
        return self.games_won + self.games_lost

    @property
    def expected_wins(self):
        return self.pythag_wl * self.games


def _logistic_of_log_ratio(log_a, log_b, g):
    # a^g / (a^g + b^g) = 1 / (1 + exp(g (log b - log a)))
    t = g * (log_b - log_a)
    if t >= 0:
        e = math.exp(-t)
        return e / (1.0 + e)
    return 1.0 / (1.0 + math.exp(t))


def pythag_from_params(alpha_gs, alpha_ga, g):
    """alpha_gs^g / (alpha_gs^g + alpha_ga^g), evaluated in log space."""
    if not (alpha_gs > 0 and alpha_ga > 0 and g > 0):
        raise DomainError("alpha_gs, alpha_ga and g must all be positive")
    return _logistic_of_log_ratio(math.log(alpha_gs), math.log(alpha_ga), g)


def pythag_from_means(mean_gs, mean_ga, g):
    """Same expectation written in terms of mean goals scored and allowed."""
    if mean_gs < 0 or mean_ga < 0:
        raise DomainError("mean goals must be nonnegative")
    if not g > 0:
        raise DomainError("g must be positive")
    return _logistic_of_log_ratio(math.log(mean_gs + SHIFT), math.log(mean_ga + SHIFT), g)


def diff_games(actual_wl, pythag_wl, games):
    """Wins above (positive) or below the Pythagorean expectation."""
    if not (0 <= actual_wl <= 1 and 0 <= pythag_wl <= 1):
        raise DomainError("rates must lie in [0, 1]")
    if games <= 0:
        raise DomainError("games must be positive")
    return (actual_wl - pythag_wl) * games


def build_report(fit, record) -> PythagReport:
    won, lost = record
    games = won + lost
    if games <= 0:
        raise DomainError("record must contain at least one game")
    actual = won / games
    pyth = pythag_from_params(fit.alpha_gs, fit.alpha_ga, fit.gamma_shape)
    return PythagReport(
        team_id=fit.team_id,
        season=fit.season,
        games_won=won,
        games_lost=lost,
        actual_wl=actual,
        pythag_wl=pyth,
        diff_games=diff_games(actual, pyth, games),
        gamma_shape=fit.gamma_shape,
        alpha_gs=fit.alpha_gs,
        alpha_ga=fit.alpha_ga,
    )
