"""Published per-team tables for the 2008/09-2010/11 NHL seasons.

Values are kept as printed (strings for p-values so that entries such as
"<0.001" survive); numeric columns are parsed to float/int.
"""

import csv
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

SEASONS = ("2008-09", "2009-10", "2010-11")
GAMES = 82


@dataclass(frozen=True)
class PublishedResult:
    season: str
    conference: str
    table_order: int
    team: str  # full name as printed
    code: str
    won: int
    lost: int
    actual_wl: float
    pythag_wl: float
    diff: float
    gamma: float
    alpha_gs: float
    alpha_ga: float


@dataclass(frozen=True)
class PublishedRankTest:
    team: str
    code: str
    season: str
    tau: float
    tau_p: float
    rho: float
    rho_p: float


@dataclass(frozen=True)
class PublishedGof:
    season: str
    team: str
    code: str
    series: str
    chi_sq: float
    dof: int
    p_printed: str


def data_path(name):
    return resources.files("hockeypythag") / "data" / name


def _rows(name):
    with data_path(name).open(newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


@lru_cache(maxsize=None)
def team_codes():
    """Mapping full team name -> three-letter code."""
    return {r["name"]: r["code"] for r in _rows("teams.csv")}


@lru_cache(maxsize=None)
def team_names():
    return {code: name for name, code in team_codes().items()}


@lru_cache(maxsize=None)
def conferences():
    """(season, code) -> (conference, order within the published table)."""
    return {
        (r["season"], r["team"]): (r["conference"], int(r["table_order"]))
        for r in _rows("conferences.csv")
    }


@lru_cache(maxsize=None)
def results():
    codes = team_codes()
    return tuple(
        PublishedResult(
            season=r["season"],
            conference=r["conference"],
            table_order=int(r["table_order"]),
            team=r["team"],
            code=codes[r["team"]],
            won=int(r["won"]),
            lost=int(r["lost"]),
            actual_wl=float(r["actual_wl"]),
            pythag_wl=float(r["pythag_wl"]),
            diff=float(r["diff"]),
            gamma=float(r["gamma"]),
            alpha_gs=float(r["alpha_gs"]),
            alpha_ga=float(r["alpha_ga"]),
        )
        for r in _rows("paper_results.csv")
    )


@lru_cache(maxsize=None)
def rank_tests():
    codes = team_codes()
    return tuple(
        PublishedRankTest(
            team=r["team"], code=codes[r["team"]], season=r["season"],
            tau=float(r["tau"]), tau_p=float(r["tau_p"]),
            rho=float(r["rho"]), rho_p=float(r["rho_p"]),
        )
        for r in _rows("paper_rank_tests.csv")
    )


@lru_cache(maxsize=None)
def gof_tests():
    codes = team_codes()
    out = []
    for r in _rows("paper_gof.csv"):
        for series in ("GS", "GA"):
            k = series.lower()
            out.append(
                PublishedGof(
                    season=r["season"], team=r["team"], code=codes[r["team"]], series=series,
                    chi_sq=float(r[f"chi_sq_{k}"]), dof=int(r[f"dof_{k}"]), p_printed=r[f"p_{k}"],
                )
            )
    return tuple(out)


def fixture_log_path():
    """Synthetic two-sided 2010-11 game log shipped with the package."""
    return data_path("fixture_games_2010-11.csv")
