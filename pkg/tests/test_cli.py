import json
import subprocess
import sys

import numpy as np
import pytest

import sqfull
from sqfull.cli import build_parser, fmt, main, parse_count


def run_cli(*argv):
    proc = subprocess.run(
        [sys.executable, "-m", "sqfull.cli", *argv], capture_output=True, text=True
    )
    return proc.returncode, proc.stdout, proc.stderr


def test_parse_count_forms():
    assert parse_count("123") == 123
    assert parse_count("46_674_434") == 46674434
    assert parse_count("1e9") == 10**9
    assert parse_count("5e9") == 5 * 10**9
    with pytest.raises(Exception):
        parse_count("1.5")
    with pytest.raises(Exception):
        parse_count("abc")


def test_fmt_twelve_significant_digits():
    assert fmt(0.1234567890123456) == "0.123456789012"
    assert fmt(1.0) == "1"
    assert "," not in fmt(1234567.89)


def test_count_matches_library(capsys):
    assert main(["count", "--x", "100"]) == 0
    assert capsys.readouterr().out.strip() == "14"
    assert main(["count", "--x", "1e6"]) == 0
    assert capsys.readouterr().out.strip() == str(sqfull.count_squarefull(10**6))


def test_exit_codes():
    code, _, err = run_cli("count", "--x", "0")
    assert code == 3 and "error" in err
    code, _, _ = run_cli("count", "--x", "1e13")
    assert code == 4
    code, _, _ = run_cli("count")
    assert code == 2
    code, _, _ = run_cli("no-such-command")
    assert code == 2
    code, _, _ = run_cli("count", "--x", "100", "--bogus-flag")
    assert code == 2


def test_count_pairs_and_delta(capsys):
    assert main(["count-pairs", "--x", "64"]) == 0
    assert capsys.readouterr().out.strip() == "12"
    assert main(["delta", "--x", "1000", "--kind", "pairs"]) == 0
    payload = json.loads(capsys.readouterr().out)
    rep = sqfull.delta_23(1000)
    assert payload["exact"] == rep.exact_count
    assert payload["error"] == pytest.approx(rep.error, rel=1e-11)


def test_window_csv(capsys):
    assert main(["window", "--x", "3", "--H", "6"]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert out[0] == "n,a,b"
    assert [row.split(",")[0] for row in out[1:]] == ["4", "8", "9"]


def test_constants_json_keys(capsys):
    assert main(["constants", "--P", "1000", "--Y", "50", "--res", "1000"]) == 0
    payload = json.loads(capsys.readouterr().out)
    for key in ("zeta_factor", "euler_product", "P", "weight_integral", "Y", "C"):
        assert key in payload
    assert payload["C"] > 0


def test_variance_short_csv(capsys):
    assert main(["variance-short", "--X", "10000", "--H", "100", "--strata", "64", "--threads", "1"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "X,H,strata,statistic,fit_exponent"
    X, H, strata, stat, fit = lines[1].split(",")
    assert (X, H, strata) == ("10000", "100", "64")
    rep = sqfull.short_interval_variance(10**4, 100, strata=64)
    assert float(stat) == pytest.approx(rep.statistic, rel=1e-11)


def test_variance_short_sweep_fit(capsys):
    argv = ["variance-short", "--pairs", "--strata", "64", "--sweep", "1e4,1e5,1e6", "--threads", "1"]
    assert main(argv) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 4
    fits = {row.split(",")[-1] for row in lines[1:]}
    assert len(fits) == 1  # one shared fitted exponent per sweep


def test_variance_ap_csv(capsys):
    assert main(["variance-ap", "--x", "100000", "--q", "1009", "--threads", "1"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "x,q,alpha,statistic,prediction,ratio"
    rep = sqfull.ap_variance(10**5, 1009)
    x, q, alpha, stat, pred, ratio = lines[1].split(",")
    assert int(q) == 1009 and int(alpha) == rep.alpha
    assert float(stat) == pytest.approx(rep.statistic, rel=1e-11)


def test_ap_histogram_csv(capsys):
    assert main(["ap-histogram", "--x", "4", "--q", "3"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines == ["residue,count", "0,0", "1,0", "2,1"]


def test_path_hurst_fit_roundtrip(tmp_path, capsys):
    out = tmp_path / "path.csv"
    assert main(["path", "--kind", "squarefull", "--x", "1e6", "--H", "1e4", "--grid", "512", "-o", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "t,value"
    assert len(lines) == 514
    manifest = json.loads((tmp_path / "path.csv.manifest.json").read_text())
    assert manifest["subcommand"] == "path"
    assert manifest["parameters"]["x"] == 10**6

    # identical parameters -> identical checksum
    out2 = tmp_path / "path2.csv"
    assert main(["path", "--kind", "squarefull", "--x", "1e6", "--H", "1e4", "--grid", "512", "-o", str(out2)]) == 0
    manifest2 = json.loads((tmp_path / "path2.csv.manifest.json").read_text())
    assert manifest["output_sha256"] == manifest2["output_sha256"]

    assert main(["hurst", "--input", str(out)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["method"] == "aggregated_variance"
    assert 0 < payload["value"] < 1

    # synthetic log-log fixture through the fit subcommand
    fit_csv = tmp_path / "points.csv"
    rows = ["scale,value"] + [f"{s},{s**2}" for s in (1, 2, 4, 8, 16)]
    fit_csv.write_text("\n".join(rows) + "\n")
    assert main(["fit", "--input", str(fit_csv)]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(2.0, abs=1e-10)


def test_hurst_rejects_malformed_csv(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1\n")
    assert main(["hurst", "--input", str(bad)]) == 3
    empty = tmp_path / "empty.csv"
    empty.write_text("t,value\n")
    assert main(["hurst", "--input", str(empty)]) == 3


def test_parser_covers_all_subcommands():
    parser = build_parser()
    subparsers = next(
        a for a in parser._actions if isinstance(a, type(parser._subparsers._group_actions[0]))
    )
    names = set(subparsers.choices)
    assert {
        "count",
        "count-pairs",
        "delta",
        "window",
        "constants",
        "variance-short",
        "variance-ap",
        "ap-histogram",
        "path",
        "hurst",
        "fit",
    } <= names
