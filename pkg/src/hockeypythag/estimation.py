"""Maximum-likelihood fitting of (gamma, alpha_GS, alpha_GA) for one team.

For a fixed shape g the scale MLE has the closed form
alpha(g) = (mean((x + 0.5)^g))^(1/g), so the three-parameter problem reduces
to maximizing a one-dimensional profile log-likelihood over g.  The search
scans a log-spaced grid over [gamma_min, gamma_max] and refines the best cell
by golden-section search.
"""

import math
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .distribution import SHIFT, check_goals
from .errors import DomainError, InsufficientData, InvalidGoals, NonConvergence

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

# incremented by every fit_team call; tests use it to prove that the
# published-parameter path never reaches the optimizer
fit_call_count = 0


@dataclass(frozen=True)
class FitOptions:
    gamma_min: float = 0.5
    gamma_max: float = 10.0
    tol: float = 1e-6
    max_iter: int = 200
    grid_points: int = 41
    strict: bool = False  # raise NonConvergence instead of flagging it

    def __post_init__(self):
        if not 0 < self.gamma_min < self.gamma_max:
            raise DomainError("need 0 < gamma_min < gamma_max")
        if self.tol <= 0 or self.max_iter < 1 or self.grid_points < 3:
            raise DomainError("tol, max_iter and grid_points must be positive (grid_points >= 3)")


@dataclass(frozen=True)
class TeamFit:
    team_id: str
    season: str
    gamma_shape: float
    alpha_gs: float
    alpha_ga: float
    log_lik: float
    converged: bool
    iterations: int
    flags: tuple = field(default=())


class GammaSummary(NamedTuple):
    mean: float
    std_dev: float


class _Series:
    """Precomputed log-observations for one goal series."""

    def __init__(self, goals):
        y = np.asarray(goals, dtype=float) + SHIFT
        self.n = y.size
        self.log_y = np.log(y)
        self.sum_log_y = math.fsum(self.log_y)

    def log_mean_pow(self, g):
        # log of mean(y^g) via a shifted exponential sum
        t = g * self.log_y
        m = float(t.max())
        return m + math.log(math.fsum(np.exp(t - m)) / self.n)

    def alpha_hat(self, g):
        return math.exp(self.log_mean_pow(g) / g)

    def profile(self, g):
        # log-likelihood with alpha at its conditional optimum; the
        # sum of (y/alpha)^g collapses to n there
        n = self.n
        return n * math.log(g) - n * self.log_mean_pow(g) + (g - 1.0) * self.sum_log_y - n


def _checked_goals(goals):
    arr = np.asarray(goals, dtype=float)
    if arr.ndim != 1:
        raise InvalidGoals("goals must be one-dimensional")
    if arr.size == 0:
        raise InsufficientData("goal sequence is empty")
    return check_goals(arr)


def _split_games(team_games):
    arr = np.asarray(team_games, dtype=float)
    if arr.size == 0:
        raise InsufficientData("no games")
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InvalidGoals("team_games must be a sequence of (gs, ga) pairs")
    return _checked_goals(arr[:, 0]), _checked_goals(arr[:, 1])


def alpha_hat_given_gamma(goals: Sequence[float], g: float) -> float:
    """Scale MLE for a fixed shape g: (mean((x + 0.5)^g))^(1/g)."""
    if not g > 0:
        raise DomainError(f"shape must be positive, got {g!r}")
    return _Series(_checked_goals(goals)).alpha_hat(g)


def profile_log_lik(team_games, g: float) -> float:
    if not g > 0:
        raise DomainError(f"shape must be positive, got {g!r}")
    gs, ga = _split_games(team_games)
    return _Series(gs).profile(g) + _Series(ga).profile(g)


def golden_section_max(f, lo, hi, tol, max_iter):
    """Maximize a unimodal f on [lo, hi].

    Returns (x, f(x), iterations, hit_cap).
    """
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    it = 0
    while b - a > tol:
        if it >= max_iter:
            break
        it += 1
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    x, fx = (c, fc) if fc >= fd else (d, fd)
    return x, fx, it, b - a > tol


def fit_team(team_games, options: FitOptions = FitOptions(), team_id="", season="") -> TeamFit:
    """Profile-likelihood MLE of the shared shape and both scales."""
    global fit_call_count
    fit_call_count += 1

    gs, ga = _split_games(team_games)
    if gs.size < 2:
        raise InsufficientData(f"need at least 2 games, got {gs.size}")
    s_gs, s_ga = _Series(gs), _Series(ga)

    def prof(g):
        return s_gs.profile(g) + s_ga.profile(g)

    lo, hi = options.gamma_min, options.gamma_max
    grid = np.geomspace(lo, hi, options.grid_points)
    values = [prof(float(g)) for g in grid]
    best = int(np.argmax(values))
    left = float(grid[max(best - 1, 0)])
    right = float(grid[min(best + 1, len(grid) - 1)])
    g_hat, ll, iters, hit_cap = golden_section_max(prof, left, right, options.tol, options.max_iter)

    at_boundary = best in (0, len(grid) - 1) and (
        g_hat - lo <= options.tol or hi - g_hat <= options.tol
        or prof(lo) >= ll or prof(hi) >= ll
    )
    flags = []
    if at_boundary:
        flags.append("boundary")
    if hit_cap:
        flags.append("iteration_cap")
    if g_hat < 1.0:
        flags.append("gamma_below_one")
    converged = not (at_boundary or hit_cap)
    if not converged and options.strict:
        raise NonConvergence(
            f"{team_id or 'team'} {season}: shape search did not converge ({', '.join(flags)})"
        )
    return TeamFit(
        team_id=team_id,
        season=season,
        gamma_shape=g_hat,
        alpha_gs=s_gs.alpha_hat(g_hat),
        alpha_ga=s_ga.alpha_hat(g_hat),
        log_lik=ll,
        converged=converged,
        iterations=iters + len(grid),
        flags=tuple(flags),
    )


def season_gamma_summary(fits) -> GammaSummary:
    """Mean and sample standard deviation of fitted shapes.

    Accepts TeamFit objects or bare shape values.  A single fit yields a
    standard deviation of 0 together with a RuntimeWarning.
    """
    gammas = [f.gamma_shape if hasattr(f, "gamma_shape") else float(f) for f in fits]
    if not gammas:
        raise InsufficientData("no fits to summarize")
    arr = np.asarray(gammas, dtype=float)
    if arr.size == 1:
        warnings.warn("standard deviation of a single fit is reported as 0", RuntimeWarning)
        return GammaSummary(float(arr[0]), 0.0)
    return GammaSummary(float(arr.mean()), float(arr.std(ddof=1)))
