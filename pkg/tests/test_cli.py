import json
import subprocess
import sys

import pytest

from wickgit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out, json.loads(out)


def test_walker_example(capsys):
    code, _, rep = run(capsys, "walker", "--metric", "examples/ds1.json")
    assert code == 0 and rep["status"] == "ok"
    assert rep["payload"]["tag"] == "W1" and rep["payload"]["closed"] is False
    assert rep["versions"]["schema"] == "wickgit-report/1" and rep["seed"] == 0


def test_orbit_nilpotent(capsys):
    code, _, rep = run(capsys, "orbit", "--rep", "adjoint", "--form", "o21", "--vector", "nilpotent.json")
    assert code == 0 and rep["payload"]["verdict"] == "non_closed"
    code, _, rep = run(capsys, "orbit", "--rep", "adjoint", "--form", "o21", "--vector", "semisimple.json")
    assert code == 0 and rep["payload"]["verdict"] == "closed"


def test_bw_metric_is_weight_zero(capsys):
    code, _, rep = run(capsys, "bw", "--form", "o22", "--tensor", "metric.json")
    assert code == 0 and rep["payload"]["support"] == [[0, 0]]


def test_reports_are_byte_identical(capsys):
    argv = ["orbit", "--form", "sl2", "--vector", '[[0.3, 2.0], [-0.1, -0.3]]', "--seed", "4"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b
    assert json.loads(a)["seed"] == 4


def test_malformed_json_has_location(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "walker",\n  "A": V}\n')
    code, _, rep = run(capsys, "walker", "--metric", str(bad))
    assert code == 2 and rep["status"] == "error"
    err = rep["payload"]["error"]
    assert err["code"] == "malformed_json"
    assert err["detail"]["line"] == 2 and err["detail"]["column"] == 8
    assert "line 2, column 8" in err["message"]


def test_error_paths_have_codes(capsys):
    code, _, rep = run(capsys, "suite", "no-such-suite")
    assert code == 2 and rep["payload"]["error"]["code"]
    code, _, rep = run(capsys, "lorentz-canon", "--vector", "[[0,1,1],[-1,0,0],[1,0,0]]")
    assert code == 2 and rep["payload"]["error"]["code"] == "not_minimal"
    code, _, rep = run(capsys, "orbit", "--form", "o21", "--vector", "missing.json")
    assert code == 2 and rep["payload"]["error"]["message"]


def test_undecided_exit_code(capsys):
    code, _, rep = run(capsys, "orbit", "--form", "sl2", "--vector", '[[1.0, 50.0], [0.01, -1.0]]',
                       "--max-iter", "1")
    assert code == 3 and rep["status"] == "undecided"


def test_other_verbs(capsys):
    code, _, rep = run(capsys, "lie-info", "--form", "o31")
    assert code == 0 and rep["payload"]["killing_signature"] == [3, 3] and rep["payload"]["real_rank"] == 1
    code, _, rep = run(capsys, "triple-check", "--forms", "o31", "o22")
    assert code == 0 and rep["payload"]["commutes"] and rep["payload"]["cartan_intersections"] == [1, 2]
    code, _, rep = run(capsys, "roots", "--form", "o22")
    assert code == 0 and rep["payload"]["rank"] == 2
    code, _, rep = run(capsys, "sg", "--support", "support_w1.json")
    assert code == 0 and rep["payload"]["strict"]
    code, _, rep = run(capsys, "curvature", "--metric", "su2x2.json")
    assert code == 0 and rep["payload"]["einstein_constant"] == "1/4"
    code, _, rep = run(capsys, "curvature", "--metric", "sl2x2.json")
    assert rep["payload"]["signature"] == [4, 2] and rep["payload"]["einstein_constant"] == "1/4"
    code, _, rep = run(capsys, "curvature", "--metric", "sphere.json", "--point", "1.0,0.5")
    assert code == 0 and abs(rep["payload"]["scalar"] - 2) < 1e-8
    code, _, rep = run(capsys, "hermitian-check", "--forms", "o31", "o22")
    assert code == 0 and rep["payload"]["ok"]
    code, _, rep = run(capsys, "lorentz-canon", "--vector", "lorentz.json")
    assert code == 0


def test_suite_verb(capsys):
    code, _, rep = run(capsys, "suite", "walker-table")
    assert code == 0 and rep["payload"]["passed"] == rep["payload"]["total"] == 4


def test_console_entry_point():
    p = subprocess.run([sys.executable, "-m", "wickgit.cli", "lie-info", "--form", "sl2"],
                       capture_output=True, text=True, check=False)
    assert p.returncode == 0 and json.loads(p.stdout)["payload"]["dim"] == 3


@pytest.mark.parametrize("verb", ["walker", "orbit", "bw", "curvature"])
def test_missing_required_flag_is_usage_error(verb, capsys):
    with pytest.raises(SystemExit) as exc:
        main([verb])
    assert exc.value.code == 2
