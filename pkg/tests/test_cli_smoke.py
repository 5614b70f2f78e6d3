import json
import subprocess
import sys
from pathlib import Path
from typing import List

import pytest

from orbisymp.cli import main
from orbisymp.rep.io import load_rep

REPO_ROOT = Path(__file__).resolve().parent.parent
DATA = REPO_ROOT / "tests" / "data"


def _run(args: List[str]) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, "-m", "orbisymp.cli", *args],
        capture_output=True,
        text=True,
        cwd=REPO_ROOT,
    )


def _ok(args: List[str]) -> dict:
    result = _run(args)
    assert result.returncode == 0, (
        f"orbisymp {' '.join(args)} failed:\nstdout:\n{result.stdout}\nstderr:\n{result.stderr}"
    )
    return json.loads(result.stdout)


@pytest.mark.integration
def test_cli_fuchsian_dims_and_flow(tmp_path: Path) -> None:
    rep_path = tmp_path / "genus2.json"
    written = _ok(["fuchsian", str(DATA / "genus2.yaml"), "--out", str(rep_path)])
    assert written["residual"] < 1e-10

    dims = _ok(["dims", str(DATA / "genus2.yaml"), "--rep", str(rep_path)])
    assert dims["formula"] == 16
    assert dims["numeric"] == 16

    still = tmp_path / "still.json"
    _ok(["flow", str(rep_path), str(DATA / "genus2_separating.yaml"), "-t", "0", "--out", str(still)])
    assert load_rep(still).max_difference(load_rep(rep_path)) == 0.0

    moved = tmp_path / "moved.json"
    splitting, spec = DATA / "genus2_separating.yaml", DATA / "flow_twist.yaml"
    summary = _ok(["flow", str(rep_path), str(splitting), "--spec", str(spec), "--out", str(moved)])
    assert summary["flow"] == {"curve": 0, "flavor": "L", "t": 0.3}
    assert summary["residual"] < 1e-9
    assert summary["moment_after"]["L0"] == pytest.approx(summary["moment_before"]["L0"], abs=1e-10)


@pytest.mark.integration
def test_cli_basis_and_pairing(tmp_path: Path) -> None:
    rep_path = tmp_path / "s2_2233.json"
    _ok(["fuchsian", str(DATA / "s2_2233.yaml"), "--out", str(rep_path)])
    basis = _ok(["basis", str(rep_path), "--out-dir", str(tmp_path / "basis")])
    assert basis["dimension"] == 4
    assert len(basis["files"]) == 4

    report_path = tmp_path / "pairing.json"
    values = _ok(["pairing", str(rep_path), basis["files"][0], basis["files"][1], "--out", str(report_path)])
    assert values["discrepancy"] < 1e-10
    report = json.loads(report_path.read_text(encoding="utf-8"))
    assert sorted(report["corrections"]) == ["T1", "T2", "T3", "T4"]


@pytest.mark.integration
def test_cli_split_defaults_to_pants_decomposition() -> None:
    summary = _ok(["split", str(DATA / "s2_2233.yaml")])
    assert [curve["kind"] for curve in summary["curves"]] == ["full"]
    assert summary["pieces"][0]["inclusion"]["z1"] == "s1 s2"


@pytest.mark.integration
def test_cli_verify_writes_report(tmp_path: Path) -> None:
    report_path = tmp_path / "report.json"
    result = _run(
        ["verify", "--suite", "fox", "--samples", "20", "--seed", "3", "--no-timing", "--report", str(report_path)]
    )
    assert result.returncode == 0, result.stderr
    assert "2 passed, 0 failed" in result.stdout
    report = json.loads(report_path.read_text(encoding="utf-8"))
    assert report["seed"] == 3
    assert all(check["runtime_ms"] == 0.0 for check in report["checks"])


@pytest.mark.integration
def test_cli_input_errors_exit_with_two(tmp_path: Path) -> None:
    assert _run(["dims", str(tmp_path / "missing.yaml")]).returncode == 2
    assert _run(["verify", "--suite", "speed"]).returncode == 2


def test_main_reports_domain_errors(tmp_path: Path) -> None:
    torus = tmp_path / "torus.yaml"
    torus.write_text("genus: 1\n", encoding="utf-8")
    with pytest.raises(SystemExit) as excinfo:
        main(["dims", str(torus)])
    assert excinfo.value.code == 1


def test_main_prints_dimension(capsys: pytest.CaptureFixture[str]) -> None:
    main(["dims", str(DATA / "pants.yaml")])
    payload = json.loads(capsys.readouterr().out)
    assert payload == {"chi": "-1", "formula": None, "signature": "g0b3"}
