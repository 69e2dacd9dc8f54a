"""Generate the synthetic two-sided 2010-11 fixture log.

Every team plays 82 games on a repeated circle-method round robin.  A team's
score in a game is a rounded translated-Weibull draw whose scale is the
geometric mean of its published alpha_GS and the opponent's alpha_GA.  Level
games go to overtime/shootout: a fair coin picks the winner, who is credited
one extra goal.

    python scripts/make_fixture_log.py [--seed 2011] [--out PATH]
"""

import argparse
import datetime as dt
import math
from pathlib import Path

import numpy as np

from hockeypythag import published
from hockeypythag.distribution import TranslatedWeibull
from hockeypythag.ingest import GameRecord, Outcome, write_game_log

SEASON = "2010-11"
OPENING_DAY = dt.date(2010, 10, 7)


def round_robin(teams):
    """Circle-method rounds; each round pairs every team exactly once."""
    teams = list(teams)
    n = len(teams)
    rounds = []
    for r in range(n - 1):
        pairs = [(teams[i], teams[n - 1 - i]) for i in range(n // 2)]
        if r % 2:
            pairs = [(b, a) for a, b in pairs]
        rounds.append(pairs)
        teams = [teams[0], teams[-1]] + teams[1:-1]
    return rounds


def score(rng, alpha, g):
    return int(max(0.0, np.rint(TranslatedWeibull(alpha, g).sample(rng))))


def generate(seed):
    params = {r.code: r for r in published.results() if r.season == SEASON}
    rng = np.random.default_rng(seed)
    rounds = round_robin(sorted(params))
    records = []
    for k in range(published.GAMES):
        date = OPENING_DAY + dt.timedelta(days=2 * k)
        for home, away in rounds[k % len(rounds)]:
            h, a = params[home], params[away]
            g = 0.5 * (h.gamma + a.gamma)
            hg = score(rng, math.sqrt(h.alpha_gs * a.alpha_ga), g)
            ag = score(rng, math.sqrt(a.alpha_gs * h.alpha_ga), g)
            loser_outcome = Outcome.LOSS
            if hg == ag:
                if rng.random() < 0.5:
                    hg += 1
                else:
                    ag += 1
                loser_outcome = Outcome.OT_LOSS if rng.random() < 0.55 else Outcome.SO_LOSS
            home_won = hg > ag
            records.append(GameRecord(date, SEASON, home, away, hg, ag,
                                      Outcome.WIN if home_won else loser_outcome))
            records.append(GameRecord(date, SEASON, away, home, ag, hg,
                                      loser_outcome if home_won else Outcome.WIN))
    return records


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=2011)
    ap.add_argument("--out", type=Path, default=Path(str(published.fixture_log_path())))
    args = ap.parse_args()
    records = generate(args.seed)
    with args.out.open("w", newline="", encoding="utf-8") as f:
        write_game_log(records, f)
    print(f"wrote {len(records)} rows to {args.out}")


if __name__ == "__main__":
    main()
