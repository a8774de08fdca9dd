import json
import subprocess
import sys

import mpmath
import pytest

from triplicity.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0 and "gauss1" in {row["id"] for row in json.loads(out)}
    code, out, _ = run(capsys, "list", "--format", "table")
    assert code == 0 and "jacobi_a5b3" in out


def test_verify_single_case(capsys, tmp_path):
    dest = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "--case", "rr_q0.5", "--out", str(dest))
    assert code == 0
    report = json.loads(out)
    assert report["passed"] and report["case_id"] == "rr_q0.5"
    assert json.loads(dest.read_text()) == report


def test_verify_table_and_multiple(capsys):
    code, out, _ = run(capsys, "verify", "--case", "cauchy", "--case", "gauss2",
                       "--format", "table")
    assert code == 0 and out.count("PASS") == 2


def test_verify_failure_exit_code(capsys):
    # an absurd tolerance makes the golden comparisons fail
    code, out, _ = run(capsys, "verify", "--case", "gauss1", "--tol", "1e-40", "--digits", "20")
    assert code == 1 and json.loads(out)["passed"] is False


def test_verify_needs_a_selection(capsys):
    code, _, err = run(capsys, "verify")
    assert code == 2 and "--all" in err


def test_unknown_case(capsys):
    code, _, err = run(capsys, "verify", "--case", "nope")
    assert code == 2 and "unknown case" in err


def test_eval_series(capsys):
    code, out, _ = run(capsys, "eval-series", "--kind", "gauss1_pform", "--param", "p=0.5",
                       "--N", "100")
    assert code == 0 and json.loads(out)["value"].startswith("1.0759457568")
    code, out, _ = run(capsys, "eval-series", "--kind", "cauchy_1phi0", "--param", "alpha=1/3",
                       "--param", "q=1/2", "--param", "x=1", "--N", "2", "--exact", "--terms", "2")
    data = json.loads(out)
    assert code == 0 and data["terms"] == ["1", "4/3"]
    code, out, _ = run(capsys, "eval-series", "--kind", "case1_quotient", "--param", "q=0.5")
    assert json.loads(out)["value"].startswith("0.7711044027")


def test_eval_series_unknown_kind(capsys):
    code, _, err = run(capsys, "eval-series", "--kind", "nothing")
    assert code == 2 and "unknown series kind" in err


def test_eval_cf_forms(capsys):
    code, out, _ = run(capsys, "eval-cf", "--named", "ramanujan", "--param", "a=0",
                       "--param", "lam=1", "--param", "b=0", "--param", "q=0.5")
    assert code == 0 and json.loads(out)["value"].startswith("0.7099166943")
    code, out, _ = run(capsys, "eval-cf", "--form", "standard", "--coeffs", "3,0",
                       "--denominators", "4,1", "--exact", "--depth", "1")
    assert json.loads(out)["value"] == "3/4"
    code, out, _ = run(capsys, "eval-cf", "--cf", '{"e": [2, 3, 5], "x": "1/7"}', "--exact",
                       "--depth", "2")
    assert json.loads(out)["value"] == "-4"  # 2/(1 - (3/7)/(1 - 5/7))


def test_eval_cf_adaptive_and_file(capsys, tmp_path):
    path = tmp_path / "cf.json"
    path.write_text(json.dumps({"d": [1] * 400}))
    code, out, _ = run(capsys, "eval-cf", "--cf", str(path), "--adaptive", "--tol", "1e-20",
                       "--depth", "400")
    data = json.loads(out)
    golden = (mpmath.sqrt(5) - 1) / 2
    assert code == 0 and abs(mpmath.mpf(data["value"]) - golden) < 1e-19


def test_series_to_cf_methods(capsys):
    code, out, _ = run(capsys, "series-to-cf", "--kind", "rr_quotient", "--param", "q=1/2",
                       "--exact", "--count", "4")
    assert code == 0 and json.loads(out)["e"] == ["1", "-1/2", "-1/4", "-1/8"]
    code, out, _ = run(capsys, "series-to-cf", "--coeffs", "1,-1,2,-6,24,-120", "--exact",
                       "--count", "5")
    assert json.loads(out)["e"] == ["1", "-1", "-1", "-2", "-2"]
    code, out, _ = run(capsys, "series-to-cf", "--coeffs", "1,1,1", "--method", "euler",
                       "--exact")
    assert json.loads(out)["b"] == ["1", "0", "0"]
    code, out, _ = run(capsys, "series-to-cf", "--method", "gauss-heine", "--param", "alpha=1/5",
                       "--param", "beta=1/5", "--param", "gamma=1/5", "--param", "q=1/2",
                       "--exact", "--count", "3")
    assert json.loads(out)["e"] == ["1", "0", "0"]


def test_cf_to_series(capsys):
    # Cauchy pivots at alpha = 1/3, q = 1/2 give back (alpha;q)_n/(q;q)_n
    code, out, _ = run(capsys, "cf-to-series", "--coeffs", "1,4/3,-2/9", "--exact")
    assert code == 0 and json.loads(out)["c"] == ["1", "4/3", "40/27"]
    code, out, _ = run(capsys, "cf-to-series", "--coeffs", "3/2,2/7", "--method", "euler",
                       "--exact")
    assert json.loads(out)["c"] == ["3/2", "1/3"]


def test_sum_divergent(capsys):
    code, out, _ = run(capsys, "sum-divergent", "--problem", "gauss1")
    data = json.loads(out)
    assert code == 0 and data["classification"] == "CesaroConvergent"
    assert data["value"].startswith("0.4275251302") and data["method"] == "p-substitution+average"
    code, out, _ = run(capsys, "sum-divergent", "--problem", "gauss2")
    assert json.loads(out)["value"] is None
    code, _, err = run(capsys, "sum-divergent", "--problem", "gauss1", "--N", "101")
    assert code == 2 and "even" in err


def test_qd(capsys, tmp_path):
    dense = tmp_path / "a.json"
    dense.write_text(json.dumps([[2, 1], [1, 2]]))
    code, out, _ = run(capsys, "qd", "--matrix", str(dense))
    vals = [mpmath.mpf(v) for v in json.loads(out)["eigenvalues"]]
    assert code == 0 and abs(vals[0] - 1) < 1e-25 and abs(vals[1] - 3) < 1e-25
    tri = tmp_path / "t.json"
    tri.write_text(json.dumps({"diag": [1, -1], "offdiag": [1]}))
    code, out, _ = run(capsys, "qd", "--matrix", str(tri), "--max-iters", "30")
    data = json.loads(out)
    assert code == 1 and data["converged"] is False and "not decaying" in data["diagnostic"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "triplicity", "list", "--format", "table"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "wallis" in proc.stdout
