import json

import pytest

from newformlab.cli import dispatch


def run(capsys, *argv):
    code = dispatch(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_coeffs_row_count_and_determinism(capsys):
    code, out1, _ = run(capsys, "coeffs", "--form", "delta", "--limit", "100")
    assert code == 0
    lines = out1.strip().splitlines()
    assert lines[0] == "n,a_f_n,a_n"
    assert len(lines) == 101
    assert lines[1].startswith("1,1,1")
    assert lines[2].split(",")[1] == "-24"
    code, out2, _ = run(capsys, "coeffs", "--form", "delta", "--limit", "100")
    assert out2 == out1


def test_coeffs_17_digit_floats(capsys):
    _, out, _ = run(capsys, "coeffs", "--form", "delta", "--limit", "3")
    a2 = out.strip().splitlines()[2].split(",")[2]
    assert a2 == f"{-24 / 2 ** 5.5:.17g}"
    assert float(a2) == -24 / 2 ** 5.5  # round-trips


def test_angle_json(capsys):
    code, out, _ = run(capsys, "angle", "--form", "delta", "--p", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["a_f_p"] == -24
    assert abs(payload["theta"] - 1.8391714154092522) < 1e-12
    assert payload["classification"] == "irrational-certified-heuristic"


def test_contfrac_rational(capsys):
    code, out, _ = run(capsys, "contfrac", "--value", "355/113")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "r,a_r,s_r,q_r"
    assert lines[1] == "0,3,3,1"
    assert lines[2] == "1,7,22,7"
    assert lines[3] == "2,16,355,113"


def test_contfrac_golden(capsys):
    code, out, _ = run(capsys, "contfrac", "--value", "golden", "--depth", "12")
    rows = out.strip().splitlines()[1:]
    assert code == 0
    assert all(row.split(",")[1] == "1" for row in rows)


def test_minkowski_csv(capsys):
    code, out, _ = run(capsys, "minkowski", "--theta", "golden", "--x", "0.5",
                       "--m-max", "2000")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "m,dist,scaled"
    assert len(lines) > 5
    for row in lines[1:]:
        m, dist, scaled = row.split(",")
        assert float(scaled) < 3.0
        assert abs(float(scaled) - int(m) * float(dist)) < 1e-12


def test_fk_sum_csv(capsys):
    code, out, _ = run(capsys, "fk-sum", "--value", "golden", "--rate", "1/n",
                       "--blocks", "15")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "r,block_sum,cumulative"
    assert len(lines) == 16
    cumulative = [float(l.split(",")[2]) for l in lines[1:]]
    assert all(b >= a for a, b in zip(cumulative, cumulative[1:]))


def test_afz_json(capsys):
    code, out, _ = run(capsys, "afz", "--form", "cm32", "--x", "0",
                       "--n-max", "500")
    assert code == 0
    payload = json.loads(out)
    assert payload["form"] == "cm32"
    assert any(w["dist"] == 0 for w in payload["witnesses"])


def test_thm2_json(capsys):
    code, out, _ = run(capsys, "thm2", "--form", "delta", "--p", "2",
                       "--x", "0.3", "--m-max", "3000")
    assert code == 0
    payload = json.loads(out)
    assert payload["hypothesis_ok"] is True
    assert payload["count"] == len(payload["witnesses"]) > 0
    assert all(w["scaled"] <= payload["bound"] for w in payload["witnesses"])
    assert "0.29999999999999999" in out  # 17-significant-digit emission


def test_bad_with_delta(capsys):
    code, out, _ = run(capsys, "bad", "--form", "delta", "--p", "2",
                       "--delta", "0.07", "--m-max", "2000")
    assert code == 0
    payload = json.loads(out)
    assert payload["inf"] > 0
    assert payload["gamma"] > 0
    assert len(payload["minima"]) == 3
    if payload["screened"]:
        assert payload["inf"] >= payload["proof_lower_bound"] - 1e-9


def test_bad_requires_x_or_delta(capsys):
    code, _, err = run(capsys, "bad", "--form", "delta", "--p", "2",
                       "--m-max", "100")
    assert code == 1
    assert "--x or --delta" in err


def test_equidist_summary_and_histogram(capsys, tmp_path):
    hist = tmp_path / "hist.csv"
    code, out, _ = run(capsys, "equidist", "--form", "delta",
                       "--x-limit", "2000", "--measure", "sato-tate",
                       "--alpha", "0", "--beta", "1",
                       "--hist-out", str(hist), "--bins", "20")
    assert code == 0
    payload = json.loads(out)
    assert "ks" in payload and 0 < payload["ks"] < 1
    assert payload["observed"] > 0
    lines = hist.read_text().strip().splitlines()
    assert lines[0] == "bin_left,bin_right,count,predicted"
    assert len(lines) == 21
    total = sum(int(l.split(",")[2]) for l in lines[1:])
    assert total == payload["samples"]


def test_game_trace(capsys):
    code, out, _ = run(capsys, "game", "--alpha", "0.25", "--beta", "0.5",
                       "--rounds", "10", "--p", "2", "--target-horizon", "50")
    assert code == 0
    payload = json.loads(out)
    assert payload["outcome"] == "completed"
    assert len(payload["trace"]) == 21  # B0 plus 10 (A, B) pairs
    assert payload["radius"] > 0


def test_game_deterministic(capsys):
    args = ("game", "--alpha", "0.3", "--beta", "0.4", "--rounds", "8",
            "--adversary", "random", "--seed", "11")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2


def test_unknown_subcommand_usage_error(capsys):
    code, _, err = run(capsys, "frobnicate")
    assert code == 1
    assert "invalid choice" in err


def test_bad_numeric_flag_named(capsys):
    code, _, err = run(capsys, "coeffs", "--form", "delta", "--limit", "abc")
    assert code == 1
    assert "--limit" in err


def test_computation_error_exit_2(capsys):
    # p = 11 is the bad prime of e11: angle computation must refuse
    code, _, err = run(capsys, "thm2", "--form", "e11", "--p", "11",
                       "--x", "0.2", "--m-max", "100")
    assert code == 2
    assert "computation failed" in err


def test_curve_flag_overrides_form(capsys):
    code, out, _ = run(capsys, "coeffs", "--curve", "0,0,0,-1,0,32",
                       "--limit", "10")
    assert code == 0
    # a_f(2) = 0 at the bad prime of the CM curve
    assert out.strip().splitlines()[2].split(",")[1] == "0"


def test_malformed_curve_flag(capsys):
    code, _, err = run(capsys, "coeffs", "--curve", "1,2,3", "--limit", "10")
    assert code == 1


def test_cache_round_trip_via_cli(capsys, tmp_path):
    args = ("coeffs", "--form", "e11", "--limit", "200",
            "--cache-dir", str(tmp_path))
    code, out1, _ = run(capsys, *args)
    assert code == 0
    assert (tmp_path / "e11_200.csv").exists()
    code, out2, _ = run(capsys, *args)
    assert out2 == out1


def test_out_file(capsys, tmp_path):
    target = tmp_path / "coeffs.csv"
    code, out, _ = run(capsys, "coeffs", "--form", "delta", "--limit", "5",
                       "--out", str(target))
    assert code == 0
    assert out == ""
    assert target.read_text().strip().splitlines()[0] == "n,a_f_n,a_n"
