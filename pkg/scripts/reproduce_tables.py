"""Recompute the published won-loss, rank-test and GOF tables from their own columns.

Prints per-season residual summaries; useful for seeing how much of the
printed tables survives 2-3 decimal rounding.

    python scripts/reproduce_tables.py
"""

from collections import defaultdict

from hockeypythag import published, specfun
from hockeypythag.estimation import season_gamma_summary
from hockeypythag.inference import kendall_p, spearman_p
from hockeypythag.pythagorean import pythag_from_params


def main():
    by_season = defaultdict(list)
    for r in published.results():
        by_season[r.season].append(r)
    for season, rows in by_season.items():
        pyth = [abs(pythag_from_params(r.alpha_gs, r.alpha_ga, r.gamma) - r.pythag_wl) for r in rows]
        diff = [abs((r.won / published.GAMES - r.pythag_wl) * published.GAMES - r.diff) for r in rows]
        mean, sd = season_gamma_summary([r.gamma for r in rows])
        print(f"{season}: max|Pythag resid|={max(pyth):.4f}  max|Diff resid (won/82)|={max(diff):.3f}"
              f"  gamma {mean:.3f} ({sd:.3f})")

    tau = [abs(kendall_p(t.tau, published.GAMES, "one_sided") - t.tau_p) for t in published.rank_tests()]
    rho = [abs(spearman_p(t.rho, published.GAMES, "two_sided") - t.rho_p) for t in published.rank_tests()]
    print(f"rank tests: max|Kendall p resid|={max(tau):.4f}  max|Spearman p resid|={max(rho):.4f}")

    resid = []
    for g in published.gof_tests():
        if g.p_printed not in ("<0.001", "0.000"):
            resid.append(abs(specfun.chi2_sf(g.chi_sq, g.dof) - float(g.p_printed)))
    print(f"gof: max|p resid|={max(resid):.4f} over {len(resid)} printed p-values")


if __name__ == "__main__":
    main()
