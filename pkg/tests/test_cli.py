import json

import pytest

from crofton_cli.app import main
from crofton_cli.services import setio


@pytest.fixture
def disk_set(tmp_path):
    out = tmp_path / "disk50.json"
    assert main(["gen", "disk-circles", "--L", "50", "--out", str(out), "-q"]) == 0
    return out


def test_gen_writes_set_and_manifest(disk_set):
    rset = setio.read_set(disk_set)
    assert rset.total_length == pytest.approx(50.0)
    manifest = setio.read_manifest(setio.manifest_path(disk_set))
    assert manifest.command == "gen"
    assert manifest.argv[:4] == ["gen", "disk-circles", "--L", "50"]
    assert "--seed" in manifest.argv
    assert manifest.outputs == [str(disk_set)]


def test_gen_to_stdout(capsys):
    assert main(["gen", "steinhaus", "--n", "2", "--eps", "0.4", "--domain", "square:2", "-q"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["domain"]["kind"] == "polygon"
    assert len(doc["primitives"]) == 10


def test_eval_scan(disk_set, tmp_path):
    out = tmp_path / "report.json"
    assert main(["eval", str(disk_set), "--theta-count", "32", "--out", str(out), "-q"]) == 0
    doc = json.loads(out.read_text(encoding="utf-8"))
    assert doc["method"] == "breakpoint_scan"
    assert doc["theta_samples"] == 32
    assert doc["lower_bound"] == pytest.approx(doc["sup_value"], abs=1e-9)
    assert doc["domain"] == {"kind": "disk", "center": [0.0, 0.0], "radius": 1.0}


def test_eval_mc_rerun_is_identical(disk_set, tmp_path):
    out = tmp_path / "mc.json"
    assert main(["eval", str(disk_set), "--method", "mc", "--samples", "500", "--out", str(out), "-q"]) == 0
    first = out.read_text(encoding="utf-8")
    assert json.loads(first)["certified_gap"] is None
    out.unlink()
    assert main(["rerun", str(setio.manifest_path(out)), "-q"]) == 0
    assert out.read_text(encoding="utf-8") == first


def test_render(disk_set, tmp_path):
    report = tmp_path / "report.json"
    svg = tmp_path / "disk.svg"
    assert main(["eval", str(disk_set), "--theta-count", "16", "--out", str(report), "-q"]) == 0
    assert main(["render", str(disk_set), "--witness", str(report), "--size", "200", "--out", str(svg), "-q"]) == 0
    text = svg.read_text(encoding="utf-8")
    assert "<svg" in text and 'width="200"' in text
    manifest = setio.read_manifest(setio.manifest_path(svg))
    assert manifest.inputs == [str(disk_set), str(report)]


def test_scan_writes_csv(tmp_path):
    csv_path = tmp_path / "scan.csv"
    assert main(["scan", "--L", "8,27", "--theta-count", "16", "--csv", str(csv_path), "-q"]) == 0
    assert len(csv_path.read_text(encoding="utf-8").splitlines()) == 3


def test_optimize_writes_three_artifacts(tmp_path):
    out = tmp_path / "opt.json"
    argv = ["optimize", "--segments", "5", "--L", "2", "--iterations", "5", "--samples", "200",
            "--final-theta-count", "16", "--out", str(out), "-q"]
    assert main(argv) == 0
    assert setio.read_set(out).total_length == pytest.approx(2.0)
    assert len(setio.read_history(tmp_path / "opt.history.jsonl")) == 6
    assert setio.read_report(tmp_path / "opt.report.json").theta_samples == 16
    for name in ("opt.json", "opt.report.json", "opt.history.jsonl"):
        assert setio.manifest_path(tmp_path / name).exists()


def test_eval_empty_set_is_zero(tmp_path, capsys):
    empty = tmp_path / "empty.json"
    empty.write_text('{"primitives": []}', encoding="utf-8")
    assert main(["eval", str(empty), "--theta-count", "8", "-q"]) == 0
    assert json.loads(capsys.readouterr().out)["sup_value"] == 0.0


def test_verify_longimeter(capsys):
    assert main(["verify", "longimeter", "-q"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["suite"] == "longimeter" and doc["passed"]


def test_bad_domain_is_usage_error():
    assert main(["gen", "steinhaus", "--n", "2", "--eps", "0.1", "--domain", "hexagon", "-q"]) == 2


def test_argparse_errors_are_usage_errors():
    assert main(["gen", "spiral"]) == 2
    assert main(["gen", "steinhaus", "--n", "2", "-q"]) == 2


def test_missing_file_is_io_error(tmp_path):
    assert main(["eval", str(tmp_path / "nope.json"), "-q"]) == 4


def test_malformed_set_is_io_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"primitives": [{"type": "blob"}]}', encoding="utf-8")
    assert main(["eval", str(bad), "-q"]) == 4


def test_primitive_cap_is_resource_error():
    assert main(["config", "set", "evaluator.max_primitives", "10", "-q"]) == 0
    assert main(["gen", "steinhaus", "--n", "3", "--eps", "0.1", "-q"]) == 3


def test_config_show_and_set(crofton_home):
    assert main(["config", "set", "evaluator.theta_count", "128", "-q"]) == 0
    assert main(["config", "show", "-q"]) == 0
    assert (crofton_home / "crofton.yaml").exists()
    assert main(["config", "set", "-q"]) == 2
