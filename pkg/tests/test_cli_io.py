import json

import numpy as np
import pytest

from conftest import N, circle, figure8
from wgraustein.catalog import catalog
from wgraustein.cli import main
from wgraustein.curves import rotation_number, signed_area
from wgraustein.errors import ParseError, UnknownName, VersionError
from wgraustein.homotopy import constant_homotopy
from wgraustein.io import dumps_curve, dumps_homotopy, loads_curve, loads_homotopy
from wgraustein.legendrian import LegendrianCurve, cusp_word, lift
from wgraustein.render import frames_csv, frames_svg, front_svg


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# ---------------------------------------------------------------------------
# documents


def test_curve_round_trip():
    c = catalog("circle", N)
    back = loads_curve(dumps_curve(c))
    assert np.array_equal(back.samples, c.samples)
    assert back.name == "circle"


def test_legendrian_round_trip():
    g = lift(figure8())
    back = loads_curve(dumps_curve(g))
    assert isinstance(back, LegendrianCurve)
    assert np.array_equal(back.samples, g.samples)


def test_homotopy_round_trip(cfg):
    from wgraustein.moves import cancel_cusp_pair

    _, h = cancel_cusp_pair(figure8(), (0, 1), cfg)
    back = loads_homotopy(dumps_homotopy(h))
    assert back.segments == h.segments and back.trace == h.trace
    for t in (0.0, 0.37, 1.0):
        assert np.array_equal(back.evaluate_frame(t).samples, h.evaluate_frame(t).samples)


def test_truncated_document():
    text = dumps_curve(circle(64))
    with pytest.raises(ParseError) as e:
        loads_curve(text[: len(text) // 2])
    assert e.value.line is not None


def test_unknown_version():
    doc = json.loads(dumps_curve(circle(64)))
    doc["version"] = 99
    with pytest.raises(VersionError):
        loads_curve(json.dumps(doc))


def test_document_validation():
    doc = json.loads(dumps_curve(circle(64)))
    doc["samples"] = doc["samples"][:10]
    with pytest.raises(ParseError):
        loads_curve(json.dumps(doc))
    doc = json.loads(dumps_curve(circle(64)))
    doc["samples"][3][0] = "nan"
    with pytest.raises(ParseError):
        loads_curve(json.dumps(doc))


def test_fourier_document():
    doc = {"format": "wgraustein-curve", "version": 1, "fourier": {"x": {"a": ["1"]}, "y": {"b": ["0", "1"]}}}
    c = loads_curve(json.dumps(doc))
    assert c.n == N
    assert rotation_number(c) == 0


# ---------------------------------------------------------------------------
# catalog and rendering


def test_catalog_entries():
    c = catalog("circle")
    assert rotation_number(c) == 1 and abs(signed_area(c) - np.pi) < 1e-8
    f = catalog("catalog:figure8")
    assert rotation_number(f) == 0 and abs(signed_area(f)) < 1e-8
    assert cusp_word(catalog("std(2)")).letters == ("-",) * 4
    assert rotation_number(catalog("kcircle(-2)")) == -2
    assert rotation_number(catalog("fig2-family(0)")) == 2
    assert rotation_number(catalog("fig2-family(1)")) == 1


@pytest.mark.parametrize("name", ["square", "kcircle(0)", "std(x)"])
def test_catalog_unknown(name):
    with pytest.raises(UnknownName):
        catalog(name)


def test_front_svg_markers():
    svg = front_svg(lift(figure8()))
    assert svg.count('class="cusp"') == 4
    for label in ("R-", "L+", "R+", "L-"):
        assert f">{label}<" in svg


def test_csv_frames(cfg):
    h = constant_homotopy(figure8(64))
    text = frames_csv(h, 5)
    lines = text.strip().split("\n")
    assert lines[0] == "t,s,x,y"
    assert len(lines) - 1 == 5 * 64
    rows = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]]).reshape(5, 64, 4)
    assert np.all(rows[:, :, 2:] == rows[:1, :, 2:])


def test_svg_frames():
    assert frames_svg(constant_homotopy(circle(64)), 7).count('class="frame"') == 7


# ---------------------------------------------------------------------------
# command line


def test_cli_rot_area(capsys):
    assert run(capsys, "rot", "catalog:circle")[:2] == (0, "1\n")
    assert run(capsys, "rot", "catalog:kcircle(-2)")[1] == "-2\n"
    code, out, _ = run(capsys, "area", "catalog:circle")
    assert abs(float(out) - np.pi) < 1e-8


def test_cli_cusps(capsys):
    code, out, _ = run(capsys, "cusps", "catalog:figure8")
    assert code == 0
    assert "word: (-,+,+,-)" in out
    assert out.count(" = 0") == 3


def test_cli_reduce(capsys):
    code, out, _ = run(capsys, "reduce", "(-,+,+,-)")
    assert code == 0 and out.splitlines()[0] == "(+,-)"


def test_cli_catalog_lift_render(tmp_path, capsys):
    f8 = tmp_path / "f8.json"
    g = tmp_path / "g.json"
    svg = tmp_path / "front.svg"
    assert run(capsys, "catalog", "figure8", "-o", str(f8))[0] == 0
    assert run(capsys, "lift", str(f8), "-o", str(g))[0] == 0
    assert isinstance(loads_curve(g.read_text()), LegendrianCurve)
    assert run(capsys, "render", "front", str(g), "-o", str(svg))[0] == 0
    assert svg.read_text().count('class="cusp"') == 4


def test_cli_normalize_area(tmp_path, capsys):
    out, hom = tmp_path / "z.json", tmp_path / "h.json"
    assert run(capsys, "normalize-area", "catalog:circle", "-o", str(out), "--homotopy", str(hom))[0] == 0
    assert abs(signed_area(loads_curve(out.read_text()))) < 1e-9
    code, text, _ = run(capsys, "verify", str(hom), "catalog:circle", str(out))
    assert code == 0 and text.strip().endswith("PASS")


def test_cli_plan_mismatch(tmp_path, capsys):
    code, _, err = run(capsys, "plan", "catalog:circle", "catalog:figure8", "-o", str(tmp_path / "h.json"))
    assert code == 2
    assert "rotation numbers differ" in err


def test_cli_plan_verify_render(tmp_path, capsys):
    h = tmp_path / "h.json"
    leg = tmp_path / "leg"
    csv = tmp_path / "frames.csv"
    code, _, err = run(capsys, "--frames", "8", "plan", "catalog:figure8", "catalog:std(0)", "-o", str(h), "--legendrian", str(leg))
    assert code == 0, err
    assert len(list(leg.iterdir())) > 0
    code, out, _ = run(capsys, "verify", str(h), "catalog:figure8", "catalog:std(0)", "--zero-area")
    assert code == 0 and "PASS" in out
    # wrong endpoint: certification failure exit code
    code, out, _ = run(capsys, "verify", str(h), "catalog:figure8", "catalog:circle")
    assert code == 3 and "FAIL" in out
    assert run(capsys, "--frames", "5", "render", "frames", str(h), "-o", str(csv), "--format", "csv")[0] == 0
    assert len(csv.read_text().strip().split("\n")) == 1 + 5 * N


def test_cli_plan_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert run(capsys, "plan", "catalog:figure8", "catalog:std(0)", "-o", str(p))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_cli_io_errors(tmp_path, capsys):
    assert run(capsys, "rot", str(tmp_path / "missing.json"))[0] == 4
    bad = tmp_path / "bad.json"
    bad.write_text('{"format": "wgraustein-curve", "version": 1, "samples": [[')
    code, _, err = run(capsys, "rot", str(bad))
    assert code == 2 and "line" in err
    assert run(capsys, "rot", "catalog:nothing")[0] == 2
