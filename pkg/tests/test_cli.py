import csv
import json

import pytest

from ffdist.cli import ExperimentConfig, ConfigError, main
from ffdist.reports import CSV_COLUMNS


def run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr().out


def test_spectrum_all_radii(capsys):
    code, out = run(["spectrum", "--q", "7", "--radius", "all"], capsys)
    rows = list(csv.DictReader(out.splitlines()))
    assert code == 0 and len(rows) == 6
    assert all(r["pass"] == "true" for r in rows)


def test_spectrum_prime_power_both_routes(capsys, tmp_path):
    code = main(["spectrum", "--q", "9", "--method", "both", "--output", str(tmp_path),
                 "--format", "json"])
    assert code == 0
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["schema"] == 1 and all(r["routes_agree"] for r in summary["spectra"])
    files = sorted(tmp_path.glob("spectrum_q9_*.csv"))
    assert len(files) == 8
    assert files[0].read_text().splitlines()[0] == "eigenvalue,multiplicity"


def test_spectrum_other_form(capsys):
    code, out = run(["spectrum", "--q", "11", "--form", "2", "1", "3", "--radius", "1,5"], capsys)
    assert code == 0 and len(out.splitlines()) == 3


@pytest.mark.parametrize("argv,msg", [
    (["spectrum", "--q", "4"], "q must be an odd prime power"),
    (["verify", "--q", "5", "--trials", "0"], "trials must be >= 1"),
    (["triangles", "--q", "5", "--rho", "1.5"], "rho"),
    (["spectrum", "--q", "5", "--form", "1", "2", "1"], "degenerate"),
    (["spectrum", "--q", "5", "--radius", "0"], "radii"),
    (["triangles", "--q", "5", "--bogus"], "unrecognized"),
])
def test_usage_errors(argv, msg, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
    assert msg in capsys.readouterr().err


def test_verify_deterministic(capsys):
    code1, out1 = run(["verify", "--q", "5", "--trials", "100", "--seed", "42"], capsys)
    code2, out2 = run(["verify", "--q", "5", "--trials", "100", "--seed", "42"], capsys)
    assert code1 == code2 == 0 and out1 == out2
    rows = list(csv.reader(out1.splitlines()))
    assert tuple(rows[0]) == CSV_COLUMNS and len(rows) == 401
    assert {r[0] for r in rows[1:]} == {"neighbor_variance", "mixing", "hinge", "paths2"}
    _, other = run(["verify", "--q", "5", "--trials", "100", "--seed", "43"], capsys)
    assert other != out1


def test_verify_json_and_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    assert main(["verify", "--q", "7", "--trials", "5", "--format", "json", "-o", str(path),
                 "--lam", "measured"]) == 0
    data = json.loads(path.read_text())
    assert data["schema"] == 1 and len(data["reports"]) == 20
    assert all(r["pass"] == "true" for r in data["reports"])


def test_triangles_baseline(tmp_path, capsys):
    census = tmp_path / "census.csv"
    code, out = run(["triangles", "--q", "5", "--rho", "1", "--trials", "1",
                     "--census", str(census)], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["schema"] == 1
    assert rep["baseline"]["t3_classes"] == rep["class_counts"][0]
    assert rep["median_ratio"] == rep["baseline"]["ratio"]
    assert census.read_text().startswith("a,b,c,count\n")


def test_triangles_trials(capsys):
    argv = ["triangles", "--q", "7", "--rho", "0.5", "--trials", "30", "--seed", "7"]
    code, out = run(argv, capsys)
    rep = json.loads(out)
    assert code == 0 and rep["trials"] == 30 and len(rep["class_counts"]) == 30
    assert rep["seed"] == 7 and rep["size"] == 25
    assert run(argv, capsys)[1] == out


def test_triangles_partial_flag(capsys):
    code, out = run(["triangles", "--q", "5", "--budget", "1"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["partial"] is True
    code, _ = run(["triangles", "--q", "5", "--budget", "1", "--strict"], capsys)
    assert code == 1


def test_config_validation():
    with pytest.raises(ConfigError):
        ExperimentConfig(q=9, radius="1,x").validate()
    ExperimentConfig(q=9, radius="1,8").validate()
