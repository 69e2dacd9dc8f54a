"""Table assembly, rounding and file output for the command-line tool.

All rounding happens here; upstream modules hand over full-precision values.
"""

import csv
import json
import math

import numpy as np

from .distribution import TranslatedWeibull

FIT_COLUMNS = (
    "Team", "Games Won", "Games Lost", "Actual WL", "Pythag_WL", "Diff", "gamma", "alpha_GS", "alpha_GA",
)
RANK_COLUMNS = ("Season", "Team", "Kendall tau", "tau p-value", "Spearman rho", "rho p-value", "Note")
GOF_COLUMNS = (
    "Season", "Team", "chi2_GS", "dof_GS", "p_GS", "chi2_GA", "dof_GA", "p_GA", "Flag",
)
SMALL_P = 5e-4


def fmt_p(p, small_style="lt"):
    """Three-decimal p-value; tiny values print as "<0.001" or "0.000"."""
    if p is None:
        return ""
    if p < SMALL_P:
        return "<0.001" if small_style == "lt" else "0.000"
    return f"{p:.3f}"


def fmt(x, digits):
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    v = round(x, digits)
    return f"{v + 0.0:.{digits}f}"  # + 0.0 folds -0.0


def fit_row(name, report):
    return {
        "Team": name,
        "Games Won": report.games_won,
        "Games Lost": report.games_lost,
        "Actual WL": fmt(report.actual_wl, 3),
        "Pythag_WL": fmt(report.pythag_wl, 3),
        "Diff": fmt(report.diff_games, 2),
        "gamma": fmt(report.gamma_shape, 3),
        "alpha_GS": fmt(report.alpha_gs, 3),
        "alpha_GA": fmt(report.alpha_ga, 3),
    }


def write_csv(path, columns, rows):
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.DictWriter(f, fieldnames=list(columns), lineterminator="\n", extrasaction="ignore")
        w.writeheader()
        w.writerows(rows)


def write_json(path, obj):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(obj, f, indent=2)
        f.write("\n")


def density_curve(fit, upper=15.0, step=0.01):
    """Grid over [-0.5, upper] with fitted GS and GA densities."""
    x = np.round(np.arange(-0.5, upper + step / 2, step), 10)
    gs = TranslatedWeibull(fit.alpha_gs, fit.gamma_shape).pdf(x)
    ga = TranslatedWeibull(fit.alpha_ga, fit.gamma_shape).pdf(x)
    return x, gs, ga


def goal_histogram(goals, top):
    return np.bincount(np.asarray(goals, dtype=int), minlength=top + 1)[: top + 1]


def plot_team(path_svg, title, fit, goals_scored, goals_allowed, upper=15.0):
    """Two-panel SVG: observed goal frequencies against the fitted densities."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    x, dens_gs, dens_ga = density_curve(fit, upper)
    top = int(upper)
    with matplotlib.rc_context({"svg.hashsalt": "hockeypythag", "svg.fonttype": "none"}):
        fig, axes = plt.subplots(1, 2, figsize=(10, 4), sharey=True)
        for ax, goals, dens, label in (
            (axes[0], goals_scored, dens_gs, "Goals scored"),
            (axes[1], goals_allowed, dens_ga, "Goals allowed"),
        ):
            counts = goal_histogram(goals, top)
            n = len(goals)
            ax.bar(np.arange(top + 1), counts / n, width=1.0, color="#9ecae1", edgecolor="#3182bd",
                   label="observed")
            ax.plot(x, dens, color="#de2d26", label="fitted Weibull")
            ax.set_title(label)
            ax.set_xlabel("goals")
            ax.set_xlim(-0.5, upper)
        axes[0].set_ylabel("fraction of games")
        axes[0].legend(frameon=False)
        fig.suptitle(title)
        fig.tight_layout()
        fig.savefig(path_svg, format="svg", metadata={"Date": None})
        plt.close(fig)
