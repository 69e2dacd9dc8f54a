"""Command-line front end.

    hockeypythag fit          --input LOG.csv --out DIR [--paper-params]
    hockeypythag independence --input LOG.csv --out DIR [--paper-params]
    hockeypythag gof          --input LOG.csv --out DIR [--paper-params]
    hockeypythag report       --input LOG.csv --out DIR
    hockeypythag plot         --input LOG.csv --out DIR --team BOS
    hockeypythag simulate     --alpha-gs 4.31 --alpha-ga 3.28 --gamma 2.11

A flat ``key = value`` config file (keys are the long option names) can be
given with ``--config``; flags on the command line take precedence.
"""

import argparse
import configparser
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import estimation, ingest, inference, published, report, simulation
from .distribution import TranslatedWeibull
from .errors import DegenerateTies, HockeyPythagError
from .estimation import FitOptions, TeamFit
from .pythagorean import build_report, pythag_from_params
from .specfun import chi2_sf

PROG = "hockeypythag"
UNKNOWN_CONFERENCE = "Unknown"


class UsageError(HockeyPythagError):
    pass


@dataclass
class RunConfig:
    inputs: list = field(default_factory=list)
    out: Path | None = None
    seasons: list = field(default_factory=list)
    teams: list = field(default_factory=list)
    formats: tuple = ("csv", "json")
    paper_params: bool = False
    fit_options: FitOptions = FitOptions()
    tau_variant: str = "b"
    sided: str = "paper"
    min_expected: float = 1.0
    dof_convention: str = "paper"
    small_p_style: str = "lt"
    family_size: int = 30

    @classmethod
    def from_args(cls, args):
        formats = tuple(args.format) if args.format else ("csv", "json")
        return cls(
            inputs=[Path(p) for p in (args.input or [])],
            out=Path(args.out) if args.out else None,
            seasons=list(args.season or []),
            teams=list(args.team or []),
            formats=formats,
            paper_params=args.paper_params,
            fit_options=FitOptions(
                gamma_min=args.gamma_min, gamma_max=args.gamma_max, tol=args.tol, max_iter=args.max_iter
            ),
            tau_variant=args.tau_variant,
            sided=args.sided,
            min_expected=args.min_expected,
            dof_convention=args.dof_convention,
            small_p_style=args.small_p_style,
            family_size=args.family_size,
        )

    def out_dir(self):
        if self.out is None:
            raise UsageError("--out is required for this command")
        self.out.mkdir(parents=True, exist_ok=True)
        return self.out


# ---------------------------------------------------------------- selection

def _team_matches(code, wanted):
    if not wanted:
        return True
    name = published.team_names().get(code, code)
    return any(w in (code, name) for w in wanted)


def _season_matches(season, wanted):
    return not wanted or season in wanted


def _sort_key(season, code):
    conf, order = published.conferences().get((season, code), (UNKNOWN_CONFERENCE, 10**6))
    return (season, conf, order, code)


def load_team_seasons(cfg):
    """Selected TeamSeason objects from the input logs, in table order."""
    if not cfg.inputs:
        raise UsageError("--input is required unless --paper-params is given")
    records = []
    for path in cfg.inputs:
        with open(path, newline="", encoding="utf-8") as f:
            records.extend(ingest.parse_game_log(f))
    seasons = ingest.aggregate_seasons(records)
    chosen = [
        ts for (code, season), ts in seasons.items()
        if _season_matches(season, cfg.seasons) and _team_matches(code, cfg.teams)
    ]
    if not chosen:
        raise UsageError("no teams selected")
    return sorted(chosen, key=lambda ts: _sort_key(ts.season, ts.team))


def load_published(cfg):
    chosen = [
        r for r in published.results()
        if _season_matches(r.season, cfg.seasons) and _team_matches(r.code, cfg.teams)
    ]
    if not chosen:
        raise UsageError("no teams selected")
    return sorted(chosen, key=lambda r: _sort_key(r.season, r.code))


def _conference(season, code):
    return published.conferences().get((season, code), (UNKNOWN_CONFERENCE, 0))[0]


def _display_name(code):
    return published.team_names().get(code, code)


def _policy(cfg):
    return inference.BonferroniPolicy(family_size=cfg.family_size)


# ---------------------------------------------------------------- commands

def fitted_teams(cfg):
    """[(TeamSeason or None, TeamFit, (won, lost))] for the selection."""
    if cfg.paper_params:
        return [
            (None, TeamFit(r.code, r.season, r.gamma, r.alpha_gs, r.alpha_ga, float("nan"), True, 0),
             (r.won, r.lost))
            for r in load_published(cfg)
        ]
    out = []
    for ts in load_team_seasons(cfg):
        fit = estimation.fit_team(ts.games, cfg.fit_options, team_id=ts.team, season=ts.season)
        out.append((ts, fit, (ts.wins, ts.losses)))
    return out


def cmd_fit(cfg, fitted=None):
    fitted = fitted if fitted is not None else fitted_teams(cfg)
    out = cfg.out_dir()
    tables = {}
    for _, fit, record in fitted:
        rep = build_report(fit, record)
        row = report.fit_row(_display_name(fit.team_id), rep)
        row_json = dict(row, code=fit.team_id, converged=fit.converged, flags=list(fit.flags))
        key = (fit.season, _conference(fit.season, fit.team_id))
        tables.setdefault(key, []).append((row, row_json))
    doc = {"command": "fit", "paper_params": cfg.paper_params, "tables": [], "gamma_summary": []}
    for (season, conf), rows in tables.items():
        if "csv" in cfg.formats:
            report.write_csv(out / f"fit_{season}_{conf}.csv", report.FIT_COLUMNS, [r for r, _ in rows])
        doc["tables"].append({"season": season, "conference": conf, "rows": [j for _, j in rows]})
    by_season = {}
    for _, fit, _ in fitted:
        by_season.setdefault(fit.season, []).append(fit.gamma_shape)
    for season, gammas in by_season.items():
        if len(gammas) > 1:
            summ = estimation.season_gamma_summary(gammas)
            doc["gamma_summary"].append({
                "season": season, "teams": len(gammas),
                "mean": report.fmt(summ.mean, 3), "std_dev": report.fmt(summ.std_dev, 3),
            })
    if "json" in cfg.formats:
        report.write_json(out / "fit.json", doc)
    return doc


def _rank_rows(cfg):
    rows, results = [], []
    if cfg.paper_params:
        chosen = {(r.season, r.code) for r in load_published(cfg)}
        for pt in sorted(published.rank_tests(), key=lambda t: _sort_key(t.season, t.code)):
            if (pt.season, pt.code) not in chosen:
                continue
            n = published.GAMES
            kt, ks = inference.StatisticKind.KENDALL_TAU, inference.StatisticKind.SPEARMAN_RHO
            side_t = inference.PAPER_SIDEDNESS[kt] if cfg.sided == "paper" else inference.Sidedness(cfg.sided)
            side_r = inference.PAPER_SIDEDNESS[ks] if cfg.sided == "paper" else inference.Sidedness(cfg.sided)
            tau = inference.RankTestResult(pt.code, pt.season, kt, pt.tau, n,
                                           inference.kendall_p(pt.tau, n, side_t), side_t)
            rho = inference.RankTestResult(pt.code, pt.season, ks, pt.rho, n,
                                           inference.spearman_p(pt.rho, n, side_r), side_r)
            rows.append((pt.season, pt.code, tau, rho, ""))
            results.extend([tau, rho])
        return rows, results
    for ts in load_team_seasons(cfg):
        try:
            tau, rho = inference.rank_tests(
                ts.team, ts.season, ts.goals_scored, ts.goals_allowed, cfg.tau_variant, cfg.sided
            )
        except DegenerateTies as exc:
            rows.append((ts.season, ts.team, None, None, f"warning: {exc}"))
            continue
        rows.append((ts.season, ts.team, tau, rho, ""))
        results.extend([tau, rho])
    return rows, results


def cmd_independence(cfg):
    out = cfg.out_dir()
    rows, results = _rank_rows(cfg)
    policy = _policy(cfg)
    verdicts = [inference.independence_verdict(results, policy, a) for a in policy.base_alphas]
    table = []
    for season, code, tau, rho, note in rows:
        table.append({
            "Season": season,
            "Team": _display_name(code),
            "Kendall tau": report.fmt(tau.statistic, 3) if tau else "",
            "tau p-value": report.fmt_p(tau.p_value, cfg.small_p_style) if tau else "",
            "Spearman rho": report.fmt(rho.statistic, 3) if rho else "",
            "rho p-value": report.fmt_p(rho.p_value, cfg.small_p_style) if rho else "",
            "Note": note,
        })
    verdict_line = (
        f"{verdicts[0].text}: {len(verdicts[0].flagged)} of {len(results)} tests below "
        f"{verdicts[0].threshold:.5f}"
    )
    if "csv" in cfg.formats:
        report.write_csv(out / "independence.csv", report.RANK_COLUMNS, table)
    doc = {
        "command": "independence",
        "paper_params": cfg.paper_params,
        "tau_variant": cfg.tau_variant,
        "sided": cfg.sided,
        "rows": table,
        "thresholds": [
            {"base_alpha": a, "threshold": round(v.threshold, 6), "flagged": len(v.flagged), "verdict": v.text}
            for a, v in zip(policy.base_alphas, verdicts)
        ],
        "verdict": verdict_line,
    }
    if "json" in cfg.formats:
        report.write_json(out / "independence.json", doc)
    print(verdict_line)
    return doc


def _gof_results(cfg, fitted=None):
    """[(season, code, gs_result, ga_result)]"""
    rows = []
    if cfg.paper_params:
        chosen = {(r.season, r.code) for r in load_published(cfg)}
        pub = {}
        for g in published.gof_tests():
            pub.setdefault((g.season, g.code), {})[g.series] = g
        for key in sorted(chosen, key=lambda k: _sort_key(*k)):
            pair = []
            for series in ("GS", "GA"):
                g = pub[key][series]
                pair.append(inference.GofTestResult(
                    g.code, g.season, series, g.chi_sq, g.dof,
                    chi2_sf(g.chi_sq, g.dof), (),
                ))
            rows.append((key[0], key[1], *pair))
        return rows
    fitted = fitted if fitted is not None else fitted_teams(cfg)
    for ts, fit, _ in fitted:
        pair = []
        for series, goals, alpha in (
            ("GS", ts.goals_scored, fit.alpha_gs), ("GA", ts.goals_allowed, fit.alpha_ga),
        ):
            d = TranslatedWeibull(alpha, fit.gamma_shape)
            edges = inference.build_bins(goals, cfg.min_expected, d)
            pair.append(inference.chi_squared_gof(
                goals, d, edges, cfg.dof_convention, ts.team, ts.season, series
            ))
        rows.append((ts.season, ts.team, *pair))
    return rows


def cmd_gof(cfg, fitted=None):
    out = cfg.out_dir()
    rows = _gof_results(cfg, fitted)
    thresholds = _policy(cfg).thresholds()
    loosest = max(thresholds)
    table, flagged = [], 0
    for season, code, gs, ga in rows:
        flag = ";".join(r.series for r in (gs, ga) if r.p_value < loosest)
        flagged += bool(flag)
        table.append({
            "Season": season,
            "Team": _display_name(code),
            "chi2_GS": report.fmt(gs.chi_sq, 3), "dof_GS": gs.dof,
            "p_GS": report.fmt_p(gs.p_value, cfg.small_p_style),
            "chi2_GA": report.fmt(ga.chi_sq, 3), "dof_GA": ga.dof,
            "p_GA": report.fmt_p(ga.p_value, cfg.small_p_style),
            "Flag": f"below {loosest:.5f}: {flag}" if flag else "",
        })
    if "csv" in cfg.formats:
        report.write_csv(out / "gof.csv", report.GOF_COLUMNS, table)
    doc = {
        "command": "gof",
        "paper_params": cfg.paper_params,
        "dof_convention": cfg.dof_convention,
        "min_expected": cfg.min_expected,
        "thresholds": [round(t, 6) for t in thresholds],
        "rows": table,
        "bins": [
            {"season": s, "team": c, "GS": list(gs.bin_edges), "GA": list(ga.bin_edges)}
            for s, c, gs, ga in rows if gs.bin_edges
        ],
        "flagged_rows": flagged,
    }
    if "json" in cfg.formats:
        report.write_json(out / "gof.json", _json_safe(doc))
    return doc


def _json_safe(obj):
    if isinstance(obj, float) and obj == float("inf"):
        return "inf"
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_json_safe(v) for v in obj]
    return obj


def cmd_report(cfg):
    fitted = fitted_teams(cfg)
    fit_doc = cmd_fit(cfg, fitted)
    gof_doc = cmd_gof(cfg, None if cfg.paper_params else fitted)
    ind_doc = cmd_independence(cfg)
    lines = [f"teams: {sum(len(t['rows']) for t in fit_doc['tables'])}"]
    for s in fit_doc["gamma_summary"]:
        lines.append(f"{s['season']}: mean gamma {s['mean']} (sd {s['std_dev']}) over {s['teams']} teams")
    lines.append(f"independence: {ind_doc['verdict']}")
    lines.append(f"goodness of fit: {gof_doc['flagged_rows']} team rows flagged")
    text = "\n".join(lines) + "\n"
    (cfg.out_dir() / "report.txt").write_text(text, encoding="utf-8")
    print(text, end="")
    return text


def cmd_plot(cfg):
    if cfg.paper_params:
        raise UsageError("plot needs per-game data; --paper-params has none")
    out = cfg.out_dir()
    written = []
    for ts, fit, _ in fitted_teams(cfg):
        if not ts.games:
            raise ingest.EmptySeason(f"{ts.team} {ts.season} has no games")
        stem = f"plot_{ts.season}_{ts.team}"
        title = f"{_display_name(ts.team)}: goals scored and allowed, {ts.season}"
        report.plot_team(out / f"{stem}.svg", title, fit, ts.goals_scored, ts.goals_allowed)
        x, dens_gs, dens_ga = report.density_curve(fit)
        report.write_csv(
            out / f"{stem}_density.csv", ("x", "density_GS", "density_GA"),
            [{"x": f"{a:.2f}", "density_GS": f"{b:.8f}", "density_GA": f"{c:.8f}"}
             for a, b, c in zip(x, dens_gs, dens_ga)],
        )
        top = int(max(max(ts.goals_scored), max(ts.goals_allowed)))
        hs = report.goal_histogram(ts.goals_scored, top)
        ha = report.goal_histogram(ts.goals_allowed, top)
        report.write_csv(
            out / f"{stem}_counts.csv", ("goals", "count_GS", "count_GA"),
            [{"goals": k, "count_GS": int(hs[k]), "count_GA": int(ha[k])} for k in range(top + 1)],
        )
        written.append(stem)
    return written


def cmd_simulate(args):
    cfg = simulation.SimConfig(
        alpha_gs=args.alpha_gs, alpha_ga=args.alpha_ga, gamma_shape=args.gamma,
        n_games=args.games * args.seasons, seed=args.seed, tie_policy=args.tie_policy,
    )
    closed = pythag_from_params(cfg.alpha_gs, cfg.alpha_ga, cfg.gamma_shape)
    frac, se = simulation.mc_win_fraction(cfg)
    hist = simulation.season_outcome_distribution(cfg, args.games, args.seasons)
    doc = {
        "alpha_gs": cfg.alpha_gs,
        "alpha_ga": cfg.alpha_ga,
        "gamma": cfg.gamma_shape,
        "seed": cfg.seed,
        "tie_policy": cfg.tie_policy.value,
        "games_per_season": args.games,
        "seasons": args.seasons,
        "pythag_wl": closed,
        "quadrature": simulation.quadrature_win_prob(cfg.alpha_gs, cfg.alpha_ga, cfg.gamma_shape),
        "mc_win_fraction": frac,
        "mc_std_err": se,
        "mc_minus_closed_form": frac - closed,
        "mean_wins": simulation.histogram_mean(hist),
        "expected_wins": closed * args.games,
        "win_histogram": {str(k): v for k, v in hist.items()},
    }
    text = json.dumps(doc, indent=2)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "simulate.json").write_text(text + "\n", encoding="utf-8")
    print(text)
    return doc


# ---------------------------------------------------------------- parsing

def _common_parser():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("common")
    g.add_argument("--config", help="flat key = value file; command-line flags win")
    g.add_argument("--input", action="append", help="game-log CSV (repeatable)")
    g.add_argument("--out", help="output directory")
    g.add_argument("--season", action="append", help="season filter, e.g. 2010-11 (repeatable)")
    g.add_argument("--team", action="append", help="team code or full name (repeatable)")
    g.add_argument("--format", action="append", choices=("json", "csv", "svg"),
                   help="artifact formats (default: csv and json)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--paper-params", action="store_true",
                   help="use the published parameter/statistic tables instead of fitting")
    f = p.add_argument_group("fitting")
    f.add_argument("--gamma-min", type=float, default=0.5)
    f.add_argument("--gamma-max", type=float, default=10.0)
    f.add_argument("--tol", type=float, default=1e-6)
    f.add_argument("--max-iter", type=int, default=200)
    t = p.add_argument_group("tests")
    t.add_argument("--tau-variant", choices=("a", "b"), default="b")
    t.add_argument("--sided", choices=("one", "two", "paper"), default="paper")
    t.add_argument("--min-expected", type=float, default=1.0)
    t.add_argument("--dof-convention", choices=("paper", "adjusted"), default="paper")
    t.add_argument("--small-p-style", choices=("lt", "zero"), default="lt")
    t.add_argument("--family-size", type=int, default=30)
    return p


def build_parser():
    common = _common_parser()
    parser = argparse.ArgumentParser(prog=PROG, description="Pythagorean expectation for hockey")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("fit", "fit parameters and write the won-loss tables"),
        ("report", "fit, independence and goodness-of-fit in one run"),
        ("independence", "Kendall tau / Spearman rho tables with Bonferroni verdict"),
        ("gof", "chi-squared goodness-of-fit tables"),
        ("plot", "observed goal counts against fitted densities"),
    ):
        sub.add_parser(name, parents=[common], help=helptext)
    sim = sub.add_parser("simulate", help="Monte-Carlo and quadrature check of the closed form")
    sim.add_argument("--config")
    sim.add_argument("--alpha-gs", type=float, required=True)
    sim.add_argument("--alpha-ga", type=float, required=True)
    sim.add_argument("--gamma", type=float, required=True)
    sim.add_argument("--games", type=int, default=82)
    sim.add_argument("--seasons", type=int, default=10_000)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--tie-policy", choices=[p.value for p in simulation.TiePolicy], default="continuous")
    sim.add_argument("--out")
    return parser


def read_config(path):
    """Flat key = value file -> {dest: raw string}."""
    text = Path(path).read_text(encoding="utf-8")
    cp = configparser.ConfigParser(interpolation=None)
    cp.read_string("[top]\n" + text)
    return {k.replace("-", "_"): v for k, v in cp["top"].items()}


def _apply_config(parser, argv):
    args = parser.parse_args(argv)
    if not getattr(args, "config", None):
        return args
    values = read_config(args.config)
    sub = parser._subparsers._group_actions[0].choices[args.command]
    defaults = {}
    for action in sub._actions:
        if action.dest in values:
            raw = values[action.dest]
            if isinstance(action, argparse._StoreTrueAction):
                defaults[action.dest] = raw.strip().lower() in ("1", "true", "yes", "on")
            elif isinstance(action, argparse._AppendAction):
                defaults[action.dest] = [v.strip() for v in raw.split(",") if v.strip()]
            else:
                conv = action.type or str
                defaults[action.dest] = conv(raw.strip())
            # config satisfies options that are otherwise mandatory
            action.required = False
    unknown = set(values) - {a.dest for a in sub._actions}
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


COMMANDS = {
    "fit": cmd_fit,
    "report": cmd_report,
    "independence": cmd_independence,
    "gof": cmd_gof,
    "plot": cmd_plot,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
        if args.command == "simulate":
            cmd_simulate(args)
        else:
            COMMANDS[args.command](RunConfig.from_args(args))
    except (HockeyPythagError, OSError) as exc:
        msg = " ".join(str(exc).split())
        print(f"{PROG}: error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
