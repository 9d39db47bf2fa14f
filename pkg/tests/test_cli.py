import json
import subprocess
import sys

import pytest

from clustercones.cli import RunConfig, cmd_emit, cmd_verify, main, thread_count
from clustercones.tropic import IneqSystem


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_run_config_range():
    with pytest.raises(ValueError):
        RunConfig("verify", 7)
    assert RunConfig("verify", 3, seed_for_rng=-1).seed_for_rng == 2 ** 64 - 1


def test_thread_count(monkeypatch):
    monkeypatch.setenv("CLUSTERCONES_THREADS", "3")
    assert thread_count() == 3
    monkeypatch.setenv("CLUSTERCONES_THREADS", "junk")
    assert thread_count() >= 1


def test_verify_quiver_n2(capsys):
    code, out = run(capsys, "verify", "quiver", "--n", "2")
    rep = json.loads(out)
    assert code == 0 and rep["passed"] and rep["rng_seed"] == 0
    assert all(c["passed"] for c in rep["checks"])


def test_verify_dims_n3(capsys):
    code, out = run(capsys, "verify", "dims", "--n", "3")
    rep = json.loads(out)
    assert code == 0
    assert any("15" in c["claim"] or "table" in c["claim"] for c in rep["checks"])


def test_verify_reports_failure(monkeypatch):
    from clustercones import cli
    bad = {"quiver": lambda n, seed: [("always false", lambda: (False, "forced"))]}
    monkeypatch.setattr(cli, "SUITE_CHECKS", {**cli.SUITE_CHECKS, **bad})
    status, rep = cmd_verify(RunConfig("verify", 3, {"suite": "quiver"}), False)
    assert status == 1 and not rep["passed"] and rep["checks"][0]["detail"] == "forced"


def test_verify_catches_exceptions(monkeypatch):
    from clustercones import cli

    def boom():
        raise RuntimeError("kaput")
    monkeypatch.setattr(cli, "SUITE_CHECKS", {**cli.SUITE_CHECKS, "quiver": lambda n, seed: [("x", boom)]})
    status, rep = cmd_verify(RunConfig("verify", 3, {"suite": "quiver"}), False)
    assert status == 1 and "kaput" in rep["checks"][0]["detail"]


def test_emit_ineq_rows(capsys):
    code, out = run(capsys, "emit", "ineq", "--space", "GmodU", "--n", "4", "--with-nn")
    assert code == 0
    assert len(IneqSystem.from_json(json.loads(out)).rows) == 13


def test_emit_points_table(capsys):
    code, out = run(capsys, "emit", "points", "--n", "3", "--lambda", "3,1")
    data = json.loads(out)
    assert code == 0 and data["count"] == 15 and data["points"][0] == [0, -1, 3, 1, 0]


def test_emit_quiver_formats(capsys):
    _, out = run(capsys, "emit", "quiver", "--space", "U", "--n", "5")
    q = json.loads(out)
    assert len(q["vertices"]) == 10
    _, dot = run(capsys, "emit", "quiver", "--n", "3", "--format", "dot")
    assert dot.startswith("digraph")
    _, svg = run(capsys, "emit", "quiver", "--n", "3", "--format", "svg")
    assert "<svg" in svg
    _, out = run(capsys, "emit", "quiver", "--n", "3", "--word", "1,2,1")
    assert "chambers" in json.loads(out)


def test_emit_to_directory(tmp_path):
    assert main(["emit", "rays", "--n", "3", "--space", "U", "--out", str(tmp_path)]) == 0
    (f,) = tmp_path.iterdir()
    assert len(json.loads(f.read_text())["rays"]) == 3


def test_dim_and_errors(capsys):
    code, out = run(capsys, "dim", "--n", "4", "--lambda", "1,1,0")
    assert code == 0 and json.loads(out)["count"] == 6
    assert main(["dim", "--n", "3", "--lambda", "1,2"]) == 2
    assert main(["dim", "--n", "9", "--lambda", "1,0"]) == 2


def test_gvec_and_cone(capsys):
    code, out = run(capsys, "gvec", "minor", "--n", "4", "--cols", "2,4")
    assert code == 0 and json.loads(out)["psi_check"]
    code, out = run(capsys, "cone", "compare", "--n", "4", "--a", "gt", "--b", "xi-tilde")
    assert json.loads(out)["equal"]
    code, out = run(capsys, "cone", "compare", "--n", "4", "--a", "gt", "--b", "xi")
    assert not json.loads(out)["equal"]


def test_potential_files(tmp_path):
    w, ineq = tmp_path / "w.json", tmp_path / "i.json"
    assert main(["potential", "--n", "3", "--space", "U", "--emit", str(w), str(ineq)]) == 0
    assert len(json.loads(w.read_text())["summands"]) == 2
    assert len(IneqSystem.from_json(json.loads(ineq.read_text())).rows) == 3


def test_seed_run_emit_vars(tmp_path):
    f = tmp_path / "vars.json"
    assert main(["seed", "run", "--n", "3", "--emit-vars", str(f)]) == 0
    data = json.loads(f.read_text())
    assert data["verified"] and data["laurent"]


DETERMINISM_CASES = [
    ["emit", "quiver", "--space", "U", "--n", "4"],
    ["emit", "seed-trace", "--n", "3", "--seed", "7"],
    ["emit", "potential", "--n", "4", "--with-nn"],
    ["emit", "ineq", "--n", "4", "--space", "U"],
    ["emit", "rays", "--n", "4", "--with-nn"],
    ["emit", "points", "--n", "3", "--lambda", "2,1"],
    ["verify", "quiver", "--n", "4"],
    ["gvec", "minor", "--n", "4", "--cols", "1,3"],
]


@pytest.mark.parametrize("argv", DETERMINISM_CASES, ids=lambda a: "-".join(a[:2]))
def test_byte_identical_across_processes(argv):
    outs = [subprocess.run([sys.executable, "-m", "clustercones", *argv], capture_output=True, check=True).stdout
            for _ in range(2)]
    assert outs[0] == outs[1] and outs[0]


def test_cmd_emit_in_process_stable():
    cfg = RunConfig("emit", 4, {"object": "ineq", "space": "GmodU", "with_nn": True})
    assert cmd_emit(cfg) == cmd_emit(cfg)
