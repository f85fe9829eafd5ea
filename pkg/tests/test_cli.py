import json
import subprocess
import sys
from pathlib import Path

import pytest

from ballean.cli import run

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def cfg(name):
    return str(CONFIGS / name)


def report(tmp_path, *argv):
    out = tmp_path / "report.json"
    code = run(list(argv) + ["--out", str(out)])
    return code, json.loads(out.read_text(encoding="utf-8"))


def test_asdim_cover_embeds_two_colour_certificate(tmp_path):
    code, rep = report(tmp_path, "asdim", "cover", "--config", cfg("z_metric.json"))
    assert code == 0 and rep["status"] == "pass"
    assert rep["results"]["colors"] == 2
    assert {p["color"] for p in rep["results"]["certificate"]["pieces"]} == {0, 1}


def test_certificate_round_trip_and_tampering(tmp_path):
    code, rep = report(tmp_path, "asdim", "cover", "--config", cfg("n_metric.json"))
    assert code == 0
    cert_path = tmp_path / "cert.json"
    cert_path.write_text(json.dumps(rep), encoding="utf-8")
    assert run(["asdim", "check", "--cert", str(cert_path), "--out", str(tmp_path / "a.json")]) == 0
    pieces = rep["results"]["certificate"]["pieces"]
    pieces[1]["color"] = 0
    cert_path.write_text(json.dumps(rep["results"]["certificate"]), encoding="utf-8")
    code, checked = report(tmp_path, "asdim", "check", "--cert", str(cert_path))
    assert code == 1 and checked["results"]["check"]["entangled"]


def test_example3_verify_lists_escape_witnesses(tmp_path):
    code, rep = report(tmp_path, "example3", "verify", "--max-n", "10")
    assert code == 0
    witnesses = rep["results"]["escape_witnesses"]
    assert [w["n"] for w in witnesses] == list(range(2, 12))
    assert all(w["ok"] for w in witnesses)
    assert [s["m"] for s in rep["results"]["no_interval_base"]] == list(range(2, 11))


def test_scrambled_order_fails_compat_check(tmp_path):
    code, rep = report(tmp_path, "compat", "check", "--config", cfg("scrambled.json"))
    assert code == 1 and rep["status"] == "fail"
    violation = rep["results"]["checks"][0]["violation"]
    assert len(violation) == 3
    order = [0, 3, 1, 4, 2, 5]
    x, y, xp = (order.index(int(v)) for v in violation)
    assert x < y < xp


def test_hyper_related_exit_code(tmp_path):
    assert report(tmp_path, "hyper", "related", "--config", cfg("z_metric.json"))[0] == 0
    bad = tmp_path / "far.json"
    bad.write_text(json.dumps({"space": {"kind": "int_window", "lo": 0, "hi": 9, "generators": 1},
                               "hyper": {"A": [0], "B": [5]}}))
    code, rep = report(tmp_path, "hyper", "related", "--config", str(bad))
    assert code == 1 and rep["results"]["related"] is False


def test_text_format(tmp_path):
    out = tmp_path / "r.txt"
    assert run(["space", "validate", "--config", cfg("z_metric.json"), "--format", "text", "--out", str(out)]) == 0
    text = out.read_text(encoding="utf-8")
    assert text.startswith("space validate: PASS") and text.rstrip().endswith("ballean 0.1.0")


@pytest.mark.parametrize(
    "content, where",
    [
        ("{not json", ":1:2"),
        ("[]", "$"),
        ('{"space": {"kind": "torus"}}', "space.kind"),
        ('{"space": {"kind": "int_window", "lo": 0, "generators": 2}}', "space.hi"),
        ('{"space": {"kind": "int_window", "lo": 5, "hi": 1, "generators": 2}}', "space.hi"),
        ('{"space": {"kind": "int_window", "lo": 0, "hi": 9, "generators": 1.5}}', "space.generators"),
        ('{"space": {"kind": "explicit", "points": [0, 1], "generators": [{"0": [7]}]}}', "space.generators[0].0"),
        ('{"space": {"kind": "int_window", "lo": 0, "hi": 9, "generators": 2}, "hyper": {"A": [0.5], "B": [1]}}', "hyper.A"),
    ],
)
def test_config_errors_are_located(tmp_path, capsys, content, where):
    path = tmp_path / "bad.json"
    path.write_text(content, encoding="utf-8")
    command = ["hyper", "related"] if "hyper" in content else ["space", "validate"]
    assert run(command + ["--config", str(path)]) == 2
    err = capsys.readouterr().err
    assert "config error at" in err and where in err


def test_usage_errors(capsys):
    assert run(["space", "explode"]) == 2
    assert run(["space", "validate"]) == 2
    assert run(["asdim", "check"]) == 2
    assert run(["compat", "check", "--config", "/nonexistent.json"]) == 2


def test_module_entry_point_is_deterministic(tmp_path):
    argv = [sys.executable, "-m", "ballean", "compat", "theorem1", "--config", cfg("scrambled.json")]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and json.loads(first)["status"] == "pass"
