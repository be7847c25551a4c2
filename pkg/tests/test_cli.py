import json
import os

import pytest

from hhmf import cli, koszul
from hhmf.hochschild import Contribution

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_json(capsys):
    code, out, _ = run(capsys, "analyze", "E12", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["weights"] == [21, 14, 6] and data["h"] == 42 and data["mu"] == 12


def test_hh_table_output(capsys):
    code, out, _ = run(capsys, "hh", "fermat3", "--t-max", "3", "--mode", "both")
    assert code == 0
    assert "HH^2 = k(-1)^27 + k(1) + k(4)" in out


def test_output_is_deterministic(capsys):
    a = run(capsys, "hh", "doublecover3", "--t-max", "4", "--format", "json")
    b = run(capsys, "hh", "doublecover3", "--t-max", "4", "--format", "json", "--jobs", "2")
    assert a == b


def test_unknown_case(capsys):
    code, _, err = run(capsys, "analyze", "no_such_case")
    assert code == 2 and "neither a file nor a built-in case" in err


def test_malformed_json_reports_position(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"variables": ["x", "y"],\n "terms": [}\n')
    code, _, err = run(capsys, "analyze", str(p))
    assert code == 2
    assert f"{p}:2:" in err


def test_float_coefficients_rejected(capsys, tmp_path):
    p = tmp_path / "w.json"
    p.write_text(json.dumps({"variables": ["x"], "terms": [{"coeff": 0.5, "exp": [3]}]}))
    code, _, err = run(capsys, "analyze", str(p))
    assert code == 2 and "rationals" in err


def test_cone_mode_needs_x0_free(capsys):
    code, _, err = run(capsys, "hh", "cusp3", "--mode", "cone")
    assert code == 2 and "cone mode" in err


def test_negative_t_max(capsys):
    assert run(capsys, "hh", "fermat2", "--t-max", "-1")[0] == 2


def test_paths_disagree_exit_code(capsys, monkeypatch):
    real = cli.hh_cone

    def broken(L, t_max, **kw):
        T = real(L, t_max, **kw)
        T.add(1, Contribution("bogus", True, 0, 0, 0, "even", {7: 1}))
        return T

    monkeypatch.setattr(cli, "hh_cone", broken)
    code, _, err = run(capsys, "hh", "fermat2", "--t-max", "2", "--mode", "both")
    assert code == 3 and "paths disagree" in err


def test_calibration_failure_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(koszul, "calibration_check", lambda: (False, {0: 1}))
    koszul._reset_calibration()
    try:
        code, _, err = run(capsys, "hh", "fermat2", "--strict")
        assert code == 3 and "calibration" in err
    finally:
        monkeypatch.undo()
        koszul.calibrate()


def test_polynomial_file_and_group_file(capsys, tmp_path):
    poly = tmp_path / "tac.json"
    poly.write_text(json.dumps({"variables": ["x", "y"],
                                "terms": [{"coeff": "1", "exp": [4, 0]}, {"coeff": "1", "exp": [0, 2]}]}))
    group = tmp_path / "g.json"
    group.write_text(json.dumps({"group": {"kind": "phi_gm"}}))
    code, out, _ = run(capsys, "unfolding", str(poly), "--format", "json")
    assert code == 0
    assert sorted(p["name"] for p in json.loads(out)["parameters"]) == ["u2", "u4"]
    code, out, _ = run(capsys, "unfolding", str(poly), "--group", str(group), "--format", "json")
    assert sorted(p["name"] for p in json.loads(out)["parameters"]) == ["u2", "u3", "u4"]


def test_bad_cone_term(capsys, tmp_path):
    poly = tmp_path / "p.json"
    poly.write_text(json.dumps({"variables": ["x", "y"],
                                "terms": [{"exp": [3, 0]}, {"exp": [0, 2]}],
                                "cone_terms": [{"coeff": "1", "exp": [1, 0, 0]}]}))
    code, _, err = run(capsys, "analyze", str(poly))
    assert code == 2 and "cone_terms[0]" in err


def test_unfolding_assign_rational(capsys):
    code, out, _ = run(capsys, "unfolding", "tacnode", "--assign", "u2=-1/2", "--assign", "u4=3")
    assert code == 0
    assert "unfolded: 3*x0^4 - 1/2*x0^2*y^2 + x^2 + y^4" in out
    code, _, err = run(capsys, "unfolding", "tacnode", "--assign", "u3=1")
    assert code == 2 and "u3" in err


def test_specseq_fermat(capsys):
    code, out, _ = run(capsys, "specseq", "fermat", "--n", "3", "--format", "json")
    assert code == 0
    data = json.loads(out)
    b = {x["degree"]: (x["lower"], x["upper"]) for x in data["bounds"]}
    assert b[2] == (28, 28) and b[5] == (6, 7)
    assert run(capsys, "specseq", "fermat")[0] == 2


def test_specseq_strata_file(capsys, tmp_path):
    p = tmp_path / "s.json"
    p.write_text(json.dumps({"I": [], "kappa": [], "c": [], "betti": {"": [1, 0, 4]}}))
    code, out, _ = run(capsys, "specseq", str(p), "--n-max", "3", "--format", "json")
    assert code == 0
    assert [x["upper"] for x in json.loads(out)["bounds"]] == [1, 0, 4, 0]


def test_report_certificate(capsys):
    code, out, _ = run(capsys, "report", "fermat", "3", "--format", "json")
    assert code == 0
    assert json.loads(out)["certificate"]["verdict"] == "NON-FORMAL"


def test_algebra_hh(capsys):
    code, out, _ = run(capsys, "algebra-hh", "cusp", "--p-max", "1", "--s-min", "-2", "--format", "json")
    assert code == 0
    assert json.loads(out)
    assert run(capsys, "algebra-hh", "tensor:x")[0] == 2


def test_golden_corpus():
    assert sorted(os.listdir(GOLDEN))
    assert cli.run_golden(GOLDEN) == []
