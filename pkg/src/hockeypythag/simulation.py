"""Independent checks of the closed-form win probability.

Two routes: Monte-Carlo games drawn from the two translated Weibulls, and
numerical integration of P(X > Y) with the inner integral in closed form.
Random streams come from numpy's SeedSequence, spawned per chunk so results
depend only on the seed and the chunk size, never on scheduling.
"""

import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import integrate

from .distribution import TranslatedWeibull
from .errors import DomainError, QuadratureFailure

CHUNK = 1 << 18
QUAD_EPSABS = 1e-10
QUAD_MAX_EVALS = 1_000_000
_GK21_POINTS = 21


class TiePolicy(str, Enum):
    CONTINUOUS = "continuous"
    INTEGER_REPLAY = "integer_replay"


@dataclass(frozen=True)
class SimConfig:
    alpha_gs: float
    alpha_ga: float
    gamma_shape: float
    n_games: int = 100_000
    seed: int = 0
    tie_policy: TiePolicy = TiePolicy.CONTINUOUS

    def __post_init__(self):
        if not (self.alpha_gs > 0 and self.alpha_ga > 0 and self.gamma_shape > 0):
            raise DomainError("alpha_gs, alpha_ga and gamma_shape must be positive")
        if self.n_games < 1:
            raise DomainError("n_games must be at least 1")
        object.__setattr__(self, "tie_policy", TiePolicy(self.tie_policy))

    @property
    def dists(self):
        return (
            TranslatedWeibull(self.alpha_gs, self.gamma_shape),
            TranslatedWeibull(self.alpha_ga, self.gamma_shape),
        )


def _streams(seed, n):
    n_chunks = max(1, -(-n // CHUNK))
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    for i, ss in enumerate(children):
        yield np.random.Generator(np.random.PCG64(ss)), min(CHUNK, n - i * CHUNK)


def _score(draws):
    return np.maximum(np.rint(draws), 0.0)


def _game_wins(d_gs, d_ga, rng, size, tie_policy):
    """Boolean array: did the team win each of `size` games."""
    x = d_gs.sample(rng, size)
    y = d_ga.sample(rng, size)
    if tie_policy is TiePolicy.CONTINUOUS:
        return x > y
    x, y = _score(x), _score(y)
    tied = np.flatnonzero(x == y)
    # a game cannot end level: replay tied games until decided
    while tied.size:
        x[tied] = _score(d_gs.sample(rng, tied.size))
        y[tied] = _score(d_ga.sample(rng, tied.size))
        tied = tied[x[tied] == y[tied]]
    return x > y


def mc_win_fraction(cfg: SimConfig):
    """Monte-Carlo estimate of P(X > Y) and its binomial standard error."""
    d_gs, d_ga = cfg.dists
    wins = 0
    for rng, size in _streams(cfg.seed, cfg.n_games):
        wins += int(np.count_nonzero(_game_wins(d_gs, d_ga, rng, size, cfg.tie_policy)))
    p = wins / cfg.n_games
    return p, math.sqrt(p * (1.0 - p) / cfg.n_games)


def quadrature_win_prob(alpha_gs, alpha_ga, g):
    """P(X > Y) by adaptive Gauss-Kronrod quadrature of the outer integral."""
    if not (alpha_gs > 0 and alpha_ga > 0 and g > 0):
        raise DomainError("alpha_gs, alpha_ga and g must be positive")
    # beyond `upper` the outer density carries less than 1e-13 of mass
    upper = alpha_gs * math.log(1e13) ** (1.0 / g)

    def integrand(t):
        z = t / alpha_gs
        dens = (g / alpha_gs) * z ** (g - 1.0) * math.exp(-(z**g))
        return dens * -math.expm1(-((t / alpha_ga) ** g))

    limit = QUAD_MAX_EVALS // (2 * _GK21_POINTS)
    val, abserr, info = integrate.quad(
        integrand, 0.0, upper, epsabs=QUAD_EPSABS, epsrel=0.0, limit=limit, full_output=1
    )[:3]
    if abserr > QUAD_EPSABS or info["neval"] > QUAD_MAX_EVALS:
        raise QuadratureFailure(
            f"quadrature error estimate {abserr:.3g} after {info['neval']} evaluations"
        )
    return val


def season_outcome_distribution(cfg: SimConfig, games_per_season=82, n_seasons=10_000):
    """Histogram {wins: number of seasons} over simulated seasons."""
    if games_per_season < 1 or n_seasons < 1:
        raise DomainError("games_per_season and n_seasons must be positive")
    d_gs, d_ga = cfg.dists
    total = games_per_season * n_seasons
    won = np.concatenate(
        [_game_wins(d_gs, d_ga, rng, size, cfg.tie_policy) for rng, size in _streams(cfg.seed, total)]
    )
    per_season = won.reshape(n_seasons, games_per_season).sum(axis=1)
    return dict(sorted(Counter(int(w) for w in per_season).items()))


def histogram_mean(hist):
    seasons = sum(hist.values())
    return sum(w * c for w, c in hist.items()) / seasons
