"""Two-parameter Weibull translated left by half a goal.

Integer scores sit at the centres of the unit bins [k - 0.5, k + 0.5), so the
support of every density here is (-0.5, inf).
"""

import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import DomainError, InvalidGoals

SHIFT = 0.5


@dataclass(frozen=True)
class TranslatedWeibull:
    alpha: float
    gamma_shape: float

    def __post_init__(self):
        if not (self.alpha > 0 and self.gamma_shape > 0):
            raise DomainError(
                f"alpha and gamma_shape must be positive, got {self.alpha!r}, {self.gamma_shape!r}"
            )

    def pdf(self, x):
        """Density; zero at and below -0.5 for every shape."""
        x = np.asarray(x, dtype=float)
        y = x + SHIFT
        inside = y > 0
        z = np.where(inside, y, 1.0) / self.alpha
        g = self.gamma_shape
        dens = (g / self.alpha) * z ** (g - 1.0) * np.exp(-(z**g))
        out = np.where(inside, dens, 0.0)
        return float(out) if out.ndim == 0 else out

    def logpdf(self, x):
        x = np.asarray(x, dtype=float)
        y = x + SHIFT
        inside = y > 0
        z = np.where(inside, y, 1.0) / self.alpha
        g = self.gamma_shape
        logd = math.log(g / self.alpha) + (g - 1.0) * np.log(z) - z**g
        out = np.where(inside, logd, -np.inf)
        return float(out) if out.ndim == 0 else out

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        y = np.maximum(x + SHIFT, 0.0)
        out = -np.expm1(-((y / self.alpha) ** self.gamma_shape))
        return float(out) if out.ndim == 0 else out

    def sf(self, x):
        x = np.asarray(x, dtype=float)
        y = np.maximum(x + SHIFT, 0.0)
        out = np.exp(-((y / self.alpha) ** self.gamma_shape))
        return float(out) if out.ndim == 0 else out

    def ppf(self, u):
        """Inverse CDF on [0, 1)."""
        u = np.asarray(u, dtype=float)
        out = self.alpha * (-np.log1p(-u)) ** (1.0 / self.gamma_shape) - SHIFT
        return float(out) if out.ndim == 0 else out

    def mean(self):
        return self.alpha * specfun.gamma(1.0 + 1.0 / self.gamma_shape) - SHIFT

    def bin_probability(self, lo, hi):
        if not lo < hi:
            raise DomainError(f"bin requires lo < hi, got [{lo!r}, {hi!r}]")
        # difference of survival functions keeps precision in the right tail
        p = self.sf(lo) - self.sf(hi)
        return min(1.0, max(0.0, p))

    def sample(self, rng, size=None):
        """Inverse-CDF draws from a numpy Generator; every draw is > -0.5."""
        return self.ppf(open_uniform(rng, size))


def open_uniform(rng, size=None):
    """Uniform variates strictly inside (0, 1) with 53-bit resolution."""
    k = rng.integers(0, 2**53, size=size, dtype=np.int64)
    return (k + 0.5) / 2.0**53


def check_goals(arr):
    """Reject negative scores.

    Integer scores must be >= 0; non-integer values (continuous draws from the
    model itself) only need to lie inside the support (-0.5, inf).
    """
    arr = np.asarray(arr, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise InvalidGoals("goal values must be finite")
    if np.any(arr <= -SHIFT) or np.any((arr < 0) & (arr == np.round(arr))):
        raise InvalidGoals("goal values must be nonnegative")
    return arr


def _as_goal_arrays(games):
    arr = np.asarray(games, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InvalidGoals("games must be a sequence of (gs, ga) pairs")
    if arr.shape[0] == 0:
        raise InvalidGoals("games must be nonempty")
    check_goals(arr)
    return arr[:, 0], arr[:, 1]


def log_likelihood(d_gs, d_ga, games):
    """Joint log-likelihood of independent GS/GA draws with a shared shape.

    Returns -inf if any observation has zero density.
    """
    if d_gs.gamma_shape != d_ga.gamma_shape:
        raise DomainError("GS and GA distributions must share gamma_shape")
    gs, ga = _as_goal_arrays(games)
    terms = np.concatenate([d_gs.logpdf(gs), d_ga.logpdf(ga)])
    if np.any(np.isneginf(terms)):
        return -math.inf
    # fsum is correctly rounded, hence independent of game order
    return math.fsum(terms)
