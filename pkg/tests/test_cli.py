import io
import json
import subprocess
import sys

import pytest

from capgeo import gallery, jsonio
from capgeo.cli import run
from capgeo.geometry import Domain


def _run(argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    out = io.StringIO()
    code = run(argv, stdout=out)
    text = out.getvalue()
    assert text.endswith("\n") and text.count("\n") == 1
    return code, json.loads(text), text


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name in ("disk", "square", "pinocchio", "stadium", "dumbbell"):
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(gallery.build(name).to_json()))
        paths[name] = str(p)
    return paths


def test_analyze_disk(files):
    code, obj, _ = _run(["analyze", files["disk"]])
    assert code == 0
    assert obj["status"] == "exists" and obj["criterion_path"] == ["convex_iff"]


def test_cheeger_square(files):
    code, obj, text = _run(["cheeger", files["square"]])
    assert code == 0
    assert obj["h"] == pytest.approx(3.77245385, abs=1e-6)
    assert obj["r_star"] == pytest.approx(0.26507945, abs=1e-7)
    assert text.startswith('{"r_star": ')


def test_gallery_pipe_into_analyze(monkeypatch):
    code, obj, text = _run(["gallery", "pinocchio", "--T", "1"])
    assert code == 0 and obj["family"] == "pinocchio"
    code, obj, _ = _run(["analyze", "-"], stdin=text, monkeypatch=monkeypatch)
    assert code == 10 and obj["status"] == "nonexistence"


def test_gallery_output_round_trips(tmp_path):
    out = tmp_path / "tb.json"
    code, obj, _ = _run(["gallery", "two_balls", "--out", str(out)])
    assert code == 0 and obj["out"] == str(out)
    text = out.read_text()
    d = Domain.from_json(json.loads(text))
    again = d.to_json()
    again["family"], again["params"] = "two_balls", obj["params"]
    assert jsonio.dumps(again) + "\n" == text


def test_gallery_list():
    code, obj, _ = _run(["gallery", "list"])
    assert code == 0 and set(obj["families"]) == set(gallery.FAMILIES)


def test_reach_and_convex_and_erode(files, tmp_path):
    code, obj, _ = _run(["reach", files["stadium"], "--radius", "0.5"])
    assert code == 0 and list(obj)[:4] == ["rolling", "strict", "worst_antipodal_defect", "centers_checked"]
    code, obj, _ = _run(["convex", files["square"]])
    assert obj == {"convex": True, "kappa_bar": "inf", "quotient": 4, "giusti": False}
    svg = tmp_path / "e.svg"
    code, obj, _ = _run(["erode", files["dumbbell"], "--radius", "0.15", "--grid", "256", "--svg", str(svg)])
    assert obj["n_components"] == 2 and obj["raster"]["n_components"] == 2
    assert 'id="eroded"' in svg.read_text()


def test_svg_layers(files, tmp_path):
    svg = tmp_path / "a.svg"
    _run(["analyze", files["dumbbell"], "--svg", str(svg)])
    text = svg.read_text()
    for layer in ("boundary", "eroded", "cheeger", "witness", "rolling-disk"):
        assert f'id="{layer}"' in text
    assert "<circle" in text


def test_input_errors(tmp_path, monkeypatch):
    code, obj, _ = _run(["analyze", "-"], stdin="{not json", monkeypatch=monkeypatch)
    assert code == 1 and obj["error"]["type"] == "malformed_json"
    code, obj, _ = _run(["analyze", "-"], stdin='{"start": [0, 0]}', monkeypatch=monkeypatch)
    assert code == 1 and obj["error"]["type"] == "malformed_domain"
    bow = json.dumps(gallery.make_polygon([(0, 0), (1, 1), (1, 0), (0, 1)]).to_json())
    code, obj, _ = _run(["analyze", "-"], stdin=bow, monkeypatch=monkeypatch)
    assert code == 1 and obj["error"]["type"] == "invalid_domain"
    code, obj, _ = _run(["analyze", str(tmp_path / "missing.json")])
    assert code == 1 and obj["error"]["type"] == "io_error"
    code, obj, _ = _run(["gallery", "disk", "--radius", "2"])
    assert code == 1
    code, obj, _ = _run(["analyze", "x.json", "--gamma", "3"])
    assert code == 1


def test_gamma_flag(files):
    code, obj, _ = _run(["analyze", files["stadium"], "--gamma", "0.3"])
    assert code == 0 and obj["criterion_path"][-1] == "gamma_reduction"


def test_tol_flag(files):
    code, obj, _ = _run(["cheeger", files["disk"], "--tol", "1e-6,1e-7,1e-8"])
    assert code == 0 and obj["r_star"] == pytest.approx(0.5, abs=1e-6)
    code, obj, _ = _run(["cheeger", files["disk"], "--tol", "a,b"])
    assert code == 1


def test_float_format():
    assert jsonio.dumps({"a": 1 / 3, "b": float("inf"), "c": -0.0, "d": [True, None]}) == \
        '{"a": 0.333333333333, "b": "inf", "c": 0, "d": [true, null]}'


def test_module_entry_point(files):
    res = subprocess.run([sys.executable, "-m", "capgeo", "analyze", files["disk"]],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["status"] == "exists"
    assert res.stderr == ""
