import csv
import json

import numpy as np
import pytest
from jsonschema import validate

from hockeypythag import cli, estimation, published


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def read_csv(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def test_fit_paper_params(tmp_path, capsys):
    before = estimation.fit_call_count
    code, _, _ = run(["fit", "--paper-params", "--out", str(tmp_path)], capsys)
    assert code == 0
    assert estimation.fit_call_count == before  # optimizer never invoked
    printed = {(r.season, r.team): r.pythag_wl for r in published.results()}
    seen = 0
    for season in published.SEASONS:
        for conf in ("Eastern", "Western"):
            rows = read_csv(tmp_path / f"fit_{season}_{conf}.csv")
            assert list(rows[0]) == list(cli.report.FIT_COLUMNS)
            for row in rows:
                assert abs(float(row["Pythag_WL"]) - printed[(season, row["Team"])]) <= 0.002 + 1e-12
                seen += 1
    assert seen == 90
    schema = json.loads(published.data_path("fit_table.schema.json").read_text())
    doc = json.loads((tmp_path / "fit.json").read_text())
    validate(doc, schema)
    assert [t["season"] for t in doc["tables"]] == [s for s in published.SEASONS for _ in range(2)]


def test_fit_from_log_validates(tmp_path, capsys, fixture_log):
    code, _, _ = run(["fit", "--input", fixture_log, "--out", str(tmp_path), "--format", "json"], capsys)
    assert code == 0
    assert not list(tmp_path.glob("*.csv"))
    doc = json.loads((tmp_path / "fit.json").read_text())
    validate(doc, json.loads(published.data_path("fit_table.schema.json").read_text()))
    assert sum(len(t["rows"]) for t in doc["tables"]) == 30


def test_no_teams_selected(tmp_path, capsys):
    code, _, err = run(["fit", "--paper-params", "--season", "1999-00", "--out", str(tmp_path)], capsys)
    assert code != 0
    assert err.count("\n") == 1 and "no teams selected" in err
    assert err.startswith("hockeypythag: error: UsageError:")


@pytest.mark.parametrize("argv", [
    ["fit", "--out", "X"],                                  # no input
    ["fit", "--input", "/nonexistent.csv", "--out", "X"],
    ["plot", "--paper-params", "--out", "X"],
    ["gof", "--paper-params"],                              # no --out
])
def test_error_paths(argv, tmp_path, capsys):
    argv = [str(tmp_path / "o") if a == "X" else a for a in argv]
    code, _, err = run(argv, capsys)
    assert code == 1
    assert len(err.strip().splitlines()) == 1 and err.startswith("hockeypythag: error:")


def test_bad_log_reports_line(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("date,season,team,opponent,goals_for,goals_against,outcome\n2011-01-01,2010-11,BOS,NYR,-1,2,win\n")
    code, _, err = run(["fit", "--input", str(bad), "--out", str(tmp_path)], capsys)
    assert code == 1 and "ParseError" in err and "line 2" in err


def test_independence_fixture(tmp_path, capsys, fixture_log):
    code, out, _ = run(["independence", "--input", fixture_log, "--out", str(tmp_path)], capsys)
    assert code == 0
    assert out.startswith("fail to reject independence")
    doc = json.loads((tmp_path / "independence.json").read_text())
    assert len(doc["rows"]) == 30


def test_independence_single_team(tmp_path, capsys, fixture_log):
    code, _, _ = run(["independence", "--input", fixture_log, "--team", "BOS", "--out", str(tmp_path)], capsys)
    assert code == 0
    assert len(read_csv(tmp_path / "independence.csv")) == 1


def test_independence_paper_mode(tmp_path, capsys):
    code, out, _ = run(["independence", "--paper-params", "--out", str(tmp_path)], capsys)
    assert code == 0 and out.startswith("fail to reject independence: 0 of 180")


def test_constant_goals_team_warns(tmp_path, capsys):
    log = tmp_path / "const.csv"
    lines = ["date,season,team,opponent,goals_for,goals_against,outcome"]
    for k in range(82):
        lines.append(f"2011-01-{1 + k % 28:02d},2010-11,ZZZ{k // 28},NYR,3,{k % 5},win")
    log.write_text("\n".join(lines) + "\n")
    code, _, _ = run(["independence", "--input", str(log), "--out", str(tmp_path)], capsys)
    assert code == 0
    rows = read_csv(tmp_path / "independence.csv")
    assert all(r["Note"].startswith("warning:") for r in rows)


def test_gof_paper_mode(tmp_path, capsys):
    code, _, _ = run(["gof", "--paper-params", "--out", str(tmp_path), "--small-p-style", "zero"], capsys)
    assert code == 0
    rows = {(r["Season"], r["Team"]): r for r in read_csv(tmp_path / "gof.csv")}
    phi = rows[("2010-11", "Philadelphia Flyers")]
    assert (phi["chi2_GA"], phi["dof_GA"], phi["p_GA"]) == ("57.942", "8", "0.000")
    assert rows[("2008-09", "Toronto Maple Leafs")]["Flag"]
    assert sum(bool(r["Flag"]) for r in rows.values()) == 2
    assert rows[("2008-09", "Boston Bruins")]["p_GS"] == "0.900"


def test_gof_small_p_default_style(tmp_path, capsys):
    run(["gof", "--paper-params", "--out", str(tmp_path), "--season", "2008-09"], capsys)
    rows = {r["Team"]: r for r in read_csv(tmp_path / "gof.csv")}
    assert rows["Toronto Maple Leafs"]["p_GA"] == "<0.001"


def test_gof_from_log(tmp_path, capsys, fixture_log):
    code, _, _ = run(["gof", "--input", fixture_log, "--out", str(tmp_path), "--dof-convention", "adjusted"], capsys)
    assert code == 0
    doc = json.loads((tmp_path / "gof.json").read_text())
    for row, bins in zip(doc["rows"], doc["bins"]):
        assert row["dof_GS"] == len(bins["GS"]) - 1 - 1 - 3
        assert bins["GS"][0] == -0.5 and bins["GS"][-1] == "inf"


def test_plot_boston(tmp_path, capsys, fixture_log):
    code, _, _ = run(["plot", "--input", fixture_log, "--team", "BOS", "--out", str(tmp_path)], capsys)
    assert code == 0
    svg = tmp_path / "plot_2010-11_BOS.svg"
    assert svg.exists() and svg.read_text().lstrip().startswith("<?xml")
    counts = read_csv(tmp_path / "plot_2010-11_BOS_counts.csv")
    assert sum(int(r["count_GS"]) for r in counts) == 82
    assert sum(int(r["count_GA"]) for r in counts) == 82
    dens = read_csv(tmp_path / "plot_2010-11_BOS_density.csv")
    x = np.array([float(r["x"]) for r in dens])
    for col in ("density_GS", "density_GA"):
        assert abs(np.trapezoid([float(r[col]) for r in dens], x) - 1) <= 0.01


def test_plot_unknown_team(tmp_path, capsys, fixture_log):
    code, _, err = run(["plot", "--input", fixture_log, "--team", "QUE", "--out", str(tmp_path)], capsys)
    assert code == 1 and err.startswith("hockeypythag: error:")


def test_plot_svg_deterministic(tmp_path, capsys, fixture_log):
    for sub in ("a", "b"):
        run(["plot", "--input", fixture_log, "--team", "EDM", "--out", str(tmp_path / sub)], capsys)
    assert (tmp_path / "a/plot_2010-11_EDM.svg").read_bytes() == (tmp_path / "b/plot_2010-11_EDM.svg").read_bytes()


def test_report(tmp_path, capsys, fixture_log):
    code, out, _ = run(["report", "--input", fixture_log, "--out", str(tmp_path)], capsys)
    assert code == 0
    assert "independence: fail to reject independence" in out
    for name in ("fit.json", "gof.json", "independence.json", "report.txt"):
        assert (tmp_path / name).exists()


def test_simulate(tmp_path, capsys):
    code, out, _ = run(["simulate", "--alpha-gs", "4.31", "--alpha-ga", "3.28", "--gamma", "2.11",
                        "--seasons", "2000", "--seed", "7", "--out", str(tmp_path)], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc == json.loads((tmp_path / "simulate.json").read_text())
    assert abs(doc["quadrature"] - doc["pythag_wl"]) < 1e-6
    assert abs(doc["mc_win_fraction"] - doc["pythag_wl"]) <= 4 * doc["mc_std_err"]
    assert sum(doc["win_histogram"].values()) == 2000


def test_config_file_and_override(tmp_path, capsys):
    conf = tmp_path / "run.cfg"
    conf.write_text("paper-params = true\nseason = 2010-11\nsmall_p_style = zero\nout = " + str(tmp_path / "c") + "\n")
    code, _, _ = run(["gof", "--config", str(conf)], capsys)
    assert code == 0
    rows = read_csv(tmp_path / "c/gof.csv")
    assert len(rows) == 30
    assert {r["Season"] for r in rows} == {"2010-11"}
    code, _, _ = run(["gof", "--config", str(conf), "--small-p-style", "lt"], capsys)
    phi = [r for r in read_csv(tmp_path / "c/gof.csv") if r["Team"] == "Philadelphia Flyers"][0]
    assert phi["p_GA"] == "<0.001"


def test_config_unknown_key(tmp_path, capsys):
    conf = tmp_path / "run.cfg"
    conf.write_text("colour = blue\n")
    code, _, err = run(["fit", "--config", str(conf)], capsys)
    assert code == 1 and "unknown config keys" in err
