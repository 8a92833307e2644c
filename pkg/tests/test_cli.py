"""End-to-end tests of the command-line front end.

Golden envelopes live in ``tests/golden``. Regenerate them with
``TRACECERT_REGEN_GOLDEN=1 pytest tests/test_cli.py`` after an intentional
schema change.
"""

import json
import math
import os
import shutil
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from tracecert import hermitian_eig, thin_svd
from tracecert.cli import main
from tracecert.matrix_core import StiefelFrame
from tracecert.matrixio import read_matrix

GOLDEN = Path(__file__).parent / "golden"
REGEN = os.environ.get("TRACECERT_REGEN_GOLDEN") == "1"

# digests of generated instances depend on last-bit floating behaviour
_LOOSE_STRINGS = {"argmax_digest", "instance_digest"}

CASES = {
    "angles": ["angles", "e1.txt", "rot05.txt"],
    "angles_same": ["angles", "e1.txt", "e1.txt"],
    "eig_cert": ["eig-cert", "h31.txt", "p_pi6.txt"],
    "eig_cert_complex": ["eig-cert", "h3c.txt", "frame32.txt", "--gap-tol", "1e-9"],
    "polar_cert": ["polar-cert", "b20.txt", "p_pi3.txt"],
    "fuzz_config": ["fuzz", "--config", "campaign.cfg"],
    "fuzz_sweep": ["fuzz", "--preset", "rotation-sweep", "--trials", "50", "--seed", "9"],
    "gen_svals": ["gen", "svals", "--n", "6", "--k", "3", "--sigma", "2,1,0.5", "--seed", "7", "-o", "svals.txt"],
}


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    for f in (GOLDEN / "inputs").iterdir():
        shutil.copy(f, tmp_path / f.name)
    monkeypatch.chdir(tmp_path)
    return tmp_path


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def _normalize(doc):
    doc = json.loads(doc)
    if doc.get("command") == "fuzz":
        doc["result"].pop("elapsed_seconds", None)
    return doc


def _assert_close(got, want, path="$"):
    assert type(got) is type(want) or {type(got), type(want)} <= {int, float}, path
    if isinstance(want, dict):
        assert list(got) == list(want), path
        for k in want:
            if k in _LOOSE_STRINGS:
                continue
            _assert_close(got[k], want[k], f"{path}.{k}")
    elif isinstance(want, list):
        assert len(got) == len(want), path
        for i, (g, w) in enumerate(zip(got, want)):
            _assert_close(g, w, f"{path}[{i}]")
    elif isinstance(want, float):
        assert math.isclose(got, want, rel_tol=1e-12, abs_tol=1e-14), f"{path}: {got} != {want}"
    else:
        assert got == want, path


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, workdir, capsys):
    code, out, _ = run(capsys, *CASES[name])
    assert code == 0
    target = GOLDEN / f"{name}.json"
    if REGEN:
        target.write_text(json.dumps(_normalize(out), indent=2) + "\n")
    _assert_close(_normalize(out), json.loads(target.read_text()))


@pytest.mark.parametrize("name", sorted(CASES))
def test_byte_identical_reruns(name, workdir, capsys):
    _, first, _ = run(capsys, *CASES[name])
    _, second, _ = run(capsys, *CASES[name])
    if CASES[name][0] == "fuzz":
        first = "\n".join(l for l in first.splitlines() if '"elapsed_seconds"' not in l)
        second = "\n".join(l for l in second.splitlines() if '"elapsed_seconds"' not in l)
    assert first == second


def test_fuzz_determinism_example(workdir, capsys):
    argv = ["fuzz", "--seed", "42", "--trials", "1000", "--which", "polar", "--dims", "20x5"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv, "--workers", "2")
    assert _normalize(a) == _normalize(b)
    assert json.loads(a)["verified"]


class TestExamples:
    def test_angles_half(self, workdir, capsys):
        _, out, _ = run(capsys, "angles", "e1.txt", "rot05.txt")
        assert json.loads(out)["result"]["thetas"] == pytest.approx([0.5], abs=1e-15)

    def test_eig_closed_form(self, workdir, capsys):
        code, out, _ = run(capsys, "eig-cert", "h31.txt", "p_pi6.txt")
        r = json.loads(out)["result"]
        assert code == 0 and r["epsilon"] == pytest.approx(0.5, abs=1e-15)

    def test_eig_exact_frame(self, workdir, capsys):
        code, out, _ = run(capsys, "eig-cert", "h31.txt", "e1.txt")
        r = json.loads(out)["result"]
        assert code == 0 and r["eta"] == 0 and r["epsilon"] == 0 and r["residual_f"] == 0

    def test_polar_closed_form(self, workdir, capsys):
        code, out, _ = run(capsys, "polar-cert", "b20.txt", "p_pi3.txt")
        assert code == 0 and json.loads(out)["result"]["epsilon"] == pytest.approx(1.0, abs=1e-15)

    def test_polar_exact(self, workdir, capsys):
        code, out, _ = run(capsys, "polar-cert", "b20.txt", "e1.txt")
        r = json.loads(out)["result"]
        assert code == 0 and r["eta"] <= 1e-15 and r["frob_dist"] <= 1e-15

    def test_rotation_sweep_tight(self, workdir, capsys):
        code, out, _ = run(capsys, "fuzz", "--preset", "rotation-sweep", "--trials", "100")
        t = json.loads(out)["result"]["tightness"]["eig.upper"]
        assert code == 0 and abs(t["max_ratio"] - 1.0) <= 1e-12

    def test_gen_hermitian(self, workdir, capsys):
        code, _, _ = run(capsys, "gen", "hermitian", "--spectrum", "3,1", "--seed", "7", "-o", "h.txt")
        assert code == 0
        np.testing.assert_allclose(hermitian_eig(read_matrix("h.txt")).eigenvalues, [3, 1], atol=1e-14)

    def test_gen_stiefel(self, workdir, capsys):
        code, out, _ = run(capsys, "gen", "stiefel", "--n", "5", "--k", "2", "--seed", "7", "-o", "p.txt")
        assert code == 0 and json.loads(out)["result"]["digest"].startswith("sha256:")
        assert StiefelFrame.from_array(read_matrix("p.txt")).orthonormality_defect <= 1e-13

    def test_gen_svals(self, workdir, capsys):
        run(capsys, *CASES["gen_svals"])
        np.testing.assert_allclose(thin_svd(read_matrix("svals.txt")).sigma, [2, 1, 0.5], rtol=1e-12)

    def test_gen_to_stdout(self, workdir, capsys):
        code, out, _ = run(capsys, "gen", "stiefel", "--n", "2", "--k", "1", "--seed", "1")
        assert code == 0 and out.splitlines()[1] == "2 1 complex"

    def test_json_flag_and_tolerance_echo(self, workdir, capsys):
        code, out, _ = run(capsys, "eig-cert", "h31.txt", "p_pi6.txt", "--json", "o.json",
                           "--frame-tol", "1e-7", "--gap-tol", "1e-9", "--rank-tol", "1e-11",
                           "--slack-tol", "1e-8", "--tol", "inv_tol=1e-6")
        assert code == 0 and Path("o.json").read_text() == out
        tol = json.loads(out)["tolerances"]
        assert (tol["frame_tol"], tol["gap_tol"], tol["rank_tol"], tol["slack_tol"], tol["inv_tol"]) == (
            1e-7, 1e-9, 1e-11, 1e-8, 1e-6)

    def test_inputs_have_digests(self, workdir, capsys):
        _, out, _ = run(capsys, "polar-cert", "b20.txt", "p_pi3.txt")
        inputs = json.loads(out)["inputs"]
        assert [i["path"] for i in inputs] == ["b20.txt", "p_pi3.txt"]
        assert all(len(i["digest"]) == len("sha256:") + 64 for i in inputs)


class TestExitCodes:
    @pytest.mark.parametrize(
        "argv",
        [
            ["angles", "e1.txt", "frame32.txt"],
            ["angles", "e1.txt", "missing.txt"],
            ["angles", "e1.txt", "notframe.txt"],
            ["eig-cert", "eye2.txt", "e1.txt"],
            ["eig-cert", "b_rank1.txt", "e1.txt"],
            ["polar-cert", "b_rank1.txt", "frame32.txt"],
            ["polar-cert", "b20.txt", "frame32.txt"],
            ["fuzz", "--trials", "0"],
            ["fuzz", "--dims", "3x4"],
            ["fuzz", "--workers", "0"],
            ["fuzz", "--config", "missing.cfg"],
            ["angles", "e1.txt", "e1.txt", "--tol", "bogus_tol=1"],
            ["angles", "e1.txt", "e1.txt", "--tol", "frame_tol"],
            ["gen", "hermitian"],
            ["gen", "svals", "--n", "2", "--sigma", "1,2"],
        ],
    )
    def test_usage_errors(self, argv, workdir, capsys):
        code, out, err = run(capsys, *argv)
        assert code == 2 and out == "" and err.startswith(f"tracecert {argv[0]}: error:")

    def test_argparse_errors(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["fuzz", "--angle-style", "sideways"])
        assert exc.value.code == 2
        with pytest.raises(SystemExit) as exc:
            main(["gen", "svals", "--seed", "-1"])
        assert exc.value.code == 2

    @pytest.mark.parametrize(
        "argv",
        [
            ["eig-cert", "h31.txt", "p_pi6.txt"],
            ["polar-cert", "b20.txt", "p_pi3.txt"],
            ["fuzz", "--trials", "5", "--which", "eig"],
        ],
    )
    def test_corrupted_certificate_exits_one(self, argv, workdir, capsys):
        # a negative slack tolerance demands strict margins no tight bound can meet
        code, out, err = run(capsys, *argv, "--slack-tol", "-0.01")
        assert code == 1 and json.loads(out)["verified"] is False and "failed" in err


def test_subprocess_entry_point(workdir):
    proc = subprocess.run([sys.executable, "-m", "tracecert", "polar-cert", "b20.txt", "p_pi3.txt"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stderr == ""
    assert json.loads(proc.stdout)["verified"] is True
