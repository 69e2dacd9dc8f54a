"""Game-log CSV ingestion and per-team season aggregation.

Expected header::

    date,season,team,opponent,goals_for,goals_against,outcome

with one row per team per game.  ``outcome`` is one of win, loss, ot_loss,
so_loss.  Overtime and shootout losses count as losses downstream.
"""

import csv
import datetime as dt
import io
import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, TextIO

from .errors import DuplicateGame, EmptySeason, ParseError

HEADER = ("date", "season", "team", "opponent", "goals_for", "goals_against", "outcome")
GAMES_PER_SEASON = 82


class Outcome(str, Enum):
    WIN = "win"
    LOSS = "loss"
    OT_LOSS = "ot_loss"
    SO_LOSS = "so_loss"


@dataclass(frozen=True)
class GameRecord:
    date: dt.date
    season: str
    team: str
    opponent: str
    goals_for: int
    goals_against: int
    outcome: Outcome
    line: int = 0

    @property
    def won(self):
        return self.outcome is Outcome.WIN

    def row(self):
        return (
            self.date.isoformat(), self.season, self.team, self.opponent,
            str(self.goals_for), str(self.goals_against), self.outcome.value,
        )


@dataclass(frozen=True)
class TeamSeason:
    team: str
    season: str
    games: tuple  # ((gs, ga), ...) in date order
    wins: int
    losses: int

    @property
    def goals_scored(self):
        return [g[0] for g in self.games]

    @property
    def goals_allowed(self):
        return [g[1] for g in self.games]

    def to_json(self):
        return json.dumps(
            {
                "team": self.team,
                "season": self.season,
                "wins": self.wins,
                "losses": self.losses,
                "games": [list(g) for g in self.games],
            },
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, text):
        obj = json.loads(text)
        return cls(
            team=obj["team"],
            season=obj["season"],
            games=tuple((int(a), int(b)) for a, b in obj["games"]),
            wins=int(obj["wins"]),
            losses=int(obj["losses"]),
        )


def _goal(value, name, line):
    try:
        goals = int(value)
    except ValueError:
        raise ParseError(line, f"{name} is not an integer: {value!r}") from None
    if goals < 0:
        raise ParseError(line, f"{name} is negative: {goals}")
    return goals


def _parse_row(fields, line):
    if len(fields) != len(HEADER):
        raise ParseError(line, f"expected {len(HEADER)} fields, got {len(fields)}")
    date_s, season, team, opponent, gf, ga, outcome = (f.strip() for f in fields)
    try:
        date = dt.date.fromisoformat(date_s)
    except ValueError:
        raise ParseError(line, f"bad date {date_s!r}") from None
    if not season or not team or not opponent:
        raise ParseError(line, "season, team and opponent must be nonempty")
    if team == opponent:
        raise ParseError(line, f"team plays itself: {team}")
    try:
        outcome = Outcome(outcome)
    except ValueError:
        raise ParseError(line, f"unknown outcome {outcome!r}") from None
    return GameRecord(
        date, season, team, opponent, _goal(gf, "goals_for", line),
        _goal(ga, "goals_against", line), outcome, line,
    )


def parse_game_log(stream: TextIO | str) -> list[GameRecord]:
    """Parse and validate a game log; raises ParseError or DuplicateGame."""
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError(1, "missing header") from None
    if tuple(h.strip() for h in header) != HEADER:
        raise ParseError(1, f"header must be {','.join(HEADER)}")
    records = []
    seen = {}
    for fields in reader:
        line = reader.line_num
        if not fields or all(not f.strip() for f in fields):
            continue
        rec = _parse_row(fields, line)
        key = (rec.team, rec.date)
        if key in seen:
            raise DuplicateGame(rec.team, rec.date, line)
        seen[key] = line
        records.append(rec)
    return records


def write_game_log(records: Iterable[GameRecord], stream: TextIO):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(HEADER)
    for rec in records:
        writer.writerow(rec.row())


def aggregate_seasons(records: Iterable[GameRecord]) -> dict:
    """Group records into TeamSeason objects keyed by (team, season)."""
    groups = {}
    for rec in records:
        groups.setdefault((rec.team, rec.season), []).append(rec)
    out = {}
    for key in sorted(groups):
        recs = sorted(groups[key], key=lambda r: r.date)
        wins = sum(r.won for r in recs)
        out[key] = TeamSeason(
            team=key[0],
            season=key[1],
            games=tuple((r.goals_for, r.goals_against) for r in recs),
            wins=wins,
            losses=len(recs) - wins,
        )
    return out


def actual_wl(ts: TeamSeason) -> float:
    total = ts.wins + ts.losses
    if total == 0:
        raise EmptySeason(f"{ts.team} {ts.season} has no games")
    return ts.wins / total
