"""Independence and goodness-of-fit tests for per-game goal series.

Rank correlation between goals scored and goals allowed uses Kendall's tau
(tau-b by default) with a normal approximation and Spearman's rho with a
Student-t approximation.  Goodness of fit is a chi-squared test on unit bins
centred at integer goal counts, with sparse tail bins merged.
"""

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import specfun
from .errors import (
    DegenerateTies,
    DomainError,
    LengthMismatch,
    SmallSample,
    TooFewBins,
    ZeroExpected,
)

BASE_EDGES = (-0.5, 0.5, 1.5, 2.5, 3.5, 4.5, 5.5, 6.5, 7.5, 8.5, 9.5, math.inf)
N_FITTED_PARAMS = 3
MIN_NORMAL_N = 10


class Sidedness(str, Enum):
    ONE_SIDED = "one_sided"
    TWO_SIDED = "two_sided"


class StatisticKind(str, Enum):
    KENDALL_TAU = "kendall_tau"
    SPEARMAN_RHO = "spearman_rho"


# what the published tables correspond to
PAPER_SIDEDNESS = {
    StatisticKind.KENDALL_TAU: Sidedness.ONE_SIDED,
    StatisticKind.SPEARMAN_RHO: Sidedness.TWO_SIDED,
}


@dataclass(frozen=True)
class RankTestResult:
    team_id: str
    season: str
    statistic_kind: StatisticKind
    statistic: float
    n: int
    p_value: float
    sidedness: Sidedness


@dataclass(frozen=True)
class GofTestResult:
    team_id: str
    season: str
    series: str  # "GS" or "GA"
    chi_sq: float
    dof: int
    p_value: float
    bin_edges: tuple
    observed: tuple = field(default=())
    expected: tuple = field(default=())


@dataclass(frozen=True)
class BonferroniPolicy:
    family_size: int = 30
    base_alphas: tuple = (0.05, 0.10)

    def thresholds(self):
        return tuple(bonferroni_threshold(self, a) for a in self.base_alphas)


@dataclass(frozen=True)
class IndependenceVerdict:
    threshold: float
    flagged: tuple
    reject_independence: bool

    @property
    def text(self):
        return "reject independence" if self.reject_independence else "fail to reject independence"


def _paired(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise LengthMismatch(f"series lengths differ: {x.shape} vs {y.shape}")
    if x.size < 2:
        raise SmallSample("need at least 2 paired observations")
    if np.all(x == x[0]) or np.all(y == y[0]):
        raise DegenerateTies("a series is constant; rank correlation undefined")
    return x, y


def _tie_pairs(v):
    _, counts = np.unique(v, return_counts=True)
    return int(np.sum(counts * (counts - 1) // 2))


def kendall_tau(x, y, variant="b"):
    """Kendall's tau between paired samples; variant 'b' corrects for ties."""
    x, y = _paired(x, y)
    n = x.size
    iu = np.triu_indices(n, k=1)
    sx = np.sign(x[:, None] - x[None, :])[iu]
    sy = np.sign(y[:, None] - y[None, :])[iu]
    s = int(np.sum(sx * sy))  # concordant minus discordant
    n0 = n * (n - 1) // 2
    if variant == "a":
        return s / n0
    if variant != "b":
        raise DomainError(f"unknown tau variant {variant!r}")
    return s / math.sqrt((n0 - _tie_pairs(x)) * (n0 - _tie_pairs(y)))


def _sided(one_tail, sidedness):
    sidedness = Sidedness(sidedness)
    if sidedness is Sidedness.ONE_SIDED:
        return one_tail
    return min(1.0, 2.0 * one_tail)


def kendall_p(tau, n, sidedness=Sidedness.ONE_SIDED):
    """Normal-approximation p-value for tau under independence."""
    if n < MIN_NORMAL_N:
        raise SmallSample(f"normal approximation needs n >= {MIN_NORMAL_N}, got {n}")
    z = tau / math.sqrt(2.0 * (2 * n + 5) / (9.0 * n * (n - 1)))
    return _sided(specfun.normal_sf(abs(z)), sidedness)


def midranks(v):
    """Ranks 1..n with tied values sharing their average rank."""
    v = np.asarray(v, dtype=float)
    order = np.argsort(v, kind="mergesort")
    ranks = np.empty(v.size, dtype=float)
    sv = v[order]
    i = 0
    while i < v.size:
        j = i
        while j + 1 < v.size and sv[j + 1] == sv[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def spearman_rho(x, y):
    """Pearson correlation of mid-ranks."""
    x, y = _paired(x, y)
    rx = midranks(x)
    ry = midranks(y)
    rx -= rx.mean()
    ry -= ry.mean()
    return float(np.dot(rx, ry) / math.sqrt(np.dot(rx, rx) * np.dot(ry, ry)))


def spearman_p(rho, n, sidedness=Sidedness.TWO_SIDED):
    """Student-t approximation with n - 2 degrees of freedom."""
    if n < MIN_NORMAL_N:
        raise SmallSample(f"t approximation needs n >= {MIN_NORMAL_N}, got {n}")
    if abs(rho) >= 1.0:
        return 0.0
    t = rho * math.sqrt((n - 2) / (1.0 - rho * rho))
    return _sided(specfun.student_t_sf(abs(t), n - 2), sidedness)


def rank_tests(team_id, season, gs, ga, tau_variant="b", sided="paper"):
    """Both rank tests for one team's GS/GA series, as (tau_result, rho_result)."""
    n = len(gs)

    def side(kind):
        return PAPER_SIDEDNESS[kind] if sided == "paper" else Sidedness(sided)

    tau = kendall_tau(gs, ga, tau_variant)
    rho = spearman_rho(gs, ga)
    kt, ks = StatisticKind.KENDALL_TAU, StatisticKind.SPEARMAN_RHO
    return (
        RankTestResult(team_id, season, kt, tau, n, kendall_p(tau, n, side(kt)), side(kt)),
        RankTestResult(team_id, season, ks, rho, n, spearman_p(rho, n, side(ks)), side(ks)),
    )


def bonferroni_threshold(policy: BonferroniPolicy, base_alpha: float) -> float:
    if policy.family_size < 1:
        raise DomainError("family_size must be at least 1")
    return base_alpha / policy.family_size


def independence_verdict(results, policy=BonferroniPolicy(), base_alpha=0.05) -> IndependenceVerdict:
    """Flag every test whose p-value falls below the corrected threshold."""
    threshold = bonferroni_threshold(policy, base_alpha)
    flagged = tuple(r for r in results if r.p_value < threshold)
    return IndependenceVerdict(threshold, flagged, bool(flagged))


def _expected_counts(n, d, edges):
    return [n * d.bin_probability(lo, hi) for lo, hi in zip(edges[:-1], edges[1:])]


def build_bins(goals, min_expected, d, base_edges=BASE_EDGES):
    """Unit bins around integer scores, merged until each expects >= min_expected.

    The right tail is merged first, then the left tail, then any interior bin
    that is still short joins its smaller neighbour.
    """
    n = len(goals)
    if n == 0:
        raise TooFewBins("no observations to bin")
    edges = list(base_edges)

    def exp_counts():
        return _expected_counts(n, d, edges)

    while len(edges) > 2 and exp_counts()[-1] < min_expected:
        del edges[-2]
    while len(edges) > 2 and exp_counts()[0] < min_expected:
        del edges[1]
    while len(edges) > 2:
        e = exp_counts()
        short = [k for k, v in enumerate(e) if v < min_expected]
        if not short:
            break
        k = short[0]
        # merge with the smaller neighbour; k is interior here
        if e[k - 1] <= e[k + 1]:
            del edges[k]
        else:
            del edges[k + 1]
    if len(edges) - 1 < 2:
        raise TooFewBins(f"merging to min_expected={min_expected} left fewer than 2 bins")
    return tuple(edges)


def pearson_chi2(observed, expected):
    """Sum of (O - E)^2 / E over bins."""
    if any(e <= 0 for e in expected):
        raise ZeroExpected("a bin has zero expected count")
    return math.fsum((o - e) ** 2 / e for o, e in zip(observed, expected))


def chi_squared_gof(goals, d, edges, dof_convention="paper", team_id="", season="", series="GS"):
    """Pearson chi-squared statistic of observed goal counts against d.

    dof is bins - 1 under the "paper" convention, bins - 4 under "adjusted"
    (three fitted parameters).
    """
    goals = np.asarray(goals, dtype=float)
    edges = tuple(float(e) for e in edges)
    if len(edges) < 3 or edges[0] != -0.5 or not math.isinf(edges[-1]) or any(
        b <= a for a, b in zip(edges[:-1], edges[1:])
    ):
        raise DomainError("edges must increase strictly from -0.5 to inf with at least 2 bins")
    n = goals.size
    n_bins = len(edges) - 1
    idx = np.searchsorted(np.asarray(edges), goals, side="right") - 1
    observed = np.bincount(idx, minlength=n_bins)[:n_bins]
    expected = _expected_counts(n, d, edges)
    chi = pearson_chi2(observed, expected)
    if dof_convention == "paper":
        dof = n_bins - 1
    elif dof_convention == "adjusted":
        dof = n_bins - 1 - N_FITTED_PARAMS
        if dof < 1:
            raise TooFewBins(f"{n_bins} bins leave no degrees of freedom after adjustment")
    else:
        raise DomainError(f"unknown dof convention {dof_convention!r}")
    return GofTestResult(
        team_id=team_id,
        season=season,
        series=series,
        chi_sq=chi,
        dof=dof,
        p_value=specfun.chi2_sf(chi, dof),
        bin_edges=edges,
        observed=tuple(int(o) for o in observed),
        expected=tuple(expected),
    )
