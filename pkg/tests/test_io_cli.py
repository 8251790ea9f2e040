import csv
import json
import random
from fractions import Fraction

import pytest

import _gen
from whitney import io
from whitney import scalar as sc
from whitney.basis import AdS22Plus
from whitney.cli import main, parse_grid
from whitney.perturb import Dataset
from whitney.solve import exact_correct, fit

PAIR = {"family": "ads22", "points": [["1", "0", "0", "0"], ["5/3", "0", "4/3", "0"]],
        "values": ["0", "1"]}
SHARED = {"family": "ads22", "points": [["5/3", "0", "4/3", "0"], ["5/3", "0", "0", "4/3"]],
          "values": ["0", "1"]}
ZERO_X1 = {"family": "ads22",
           "points": [["0", "5/3", "4/3", "0"], ["0", "1", "0", "0"], ["0", "13/5", "0", "12/5"]],
           "values": ["0", "1", "2"]}
CLEAN = {"family": "ads22",
         "points": [["1", "0", "0", "0"], ["39/25", "52/25", "12/5", "0"],
                    ["5/3", "0", "0", "4/3"]],
         "values": ["1", "2i", "-1"]}


def _write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def _run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_fit_reports_exact_coefficients(tmp_path, capsys):
    code, out, _ = _run(["fit", _write(tmp_path, "d.json", PAIR)], capsys)
    assert code == 0
    obj = json.loads(out)
    assert obj["coeffs"] == ["125/18+0 i", "-125/18+0 i"]
    assert obj["status"] == "OK"
    assert obj["residual_exact_squared"] == "0"


@pytest.mark.parametrize("data,code", [(ZERO_X1, 2), (SHARED, 3),
                                       (dict(PAIR, values=["1", "1"]), 1)])
def test_fit_exit_codes(tmp_path, capsys, data, code):
    assert _run(["fit", _write(tmp_path, "d.json", data)], capsys)[0] == code


def test_fit_bad_json_names_line(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"family": "ads22",\n "points": [}')
    code, _, err = _run(["fit", str(p)], capsys)
    assert code == 1 and "bad.json:2" in err


def test_fit_then_eval_reproduces_values(tmp_path, capsys):
    data = _write(tmp_path, "d.json", CLEAN)
    ext = str(tmp_path / "e.json")
    assert _run(["fit", data, "--out", ext], capsys)[0] == 0
    pts = _write(tmp_path, "p.json", {"points": CLEAN["points"]})
    code, out, _ = _run(["eval", ext, "--points", pts], capsys)
    assert code == 0
    vals = [sc.parse_exact(r["value"]) for r in json.loads(out)["rows"]]
    assert vals == [sc.parse_exact(v) for v in CLEAN["values"]]


def test_exact_correct_through_cli(tmp_path, capsys):
    data = dict(CLEAN, points=CLEAN["points"] + [["39/25", "52/25", "0", "12/5"]],
                values=CLEAN["values"] + ["5"])
    ext = str(tmp_path / "e.json")
    path = _write(tmp_path, "d.json", data)
    assert _run(["fit", path, "--eps", "1/100", "--exact-correct", "--out", ext], capsys)[0] == 0
    pts = _write(tmp_path, "p.json", {"points": data["points"]})
    code, out, _ = _run(["eval", ext, "--points", pts], capsys)
    vals = [sc.parse_exact(r["value"]) for r in json.loads(out)["rows"]]
    assert vals == [sc.parse_exact(v) for v in data["values"]]


def test_grid_row_count(tmp_path, capsys):
    data = {"family": {"kind": "hyperboloid_minus", "p": 1, "q": 2}, "mode": "float",
            "points": [[0.75, 1.25, 0.0], [0.0, 0.6, 0.8], [1.0, 0.0, 1.4142135623730951]],
            "values": [[1.0, 0.0], [0.0, 1.0], [2.0, 0.0]]}
    ext = str(tmp_path / "e.json")
    assert _run(["fit", _write(tmp_path, "d.json", data), "--out", ext], capsys)[0] == 0
    out_csv = tmp_path / "grid.csv"
    code, _, _ = _run(["eval", ext, "--grid", "t=0:2:64;s=circle:64", "--out", str(out_csv)],
                      capsys)
    assert code == 0
    rows = list(csv.reader(out_csv.open()))
    assert len(rows) == 4096 + 1


def test_parse_grid():
    g = parse_grid("t=0:2:64;s=circle:32")
    assert len(g["t"]) == 64 and g["s"] == ("circle", 32)


def test_check_collision_line(tmp_path, capsys):
    code, _, err = _run(["check", _write(tmp_path, "d.json", SHARED)], capsys)
    assert code == 0
    assert "collision: points 1,2 project to (5/3,0)" in err


def test_check_clean_passes(tmp_path, capsys):
    code, out, err = _run(["check", _write(tmp_path, "d.json", CLEAN)], capsys)
    assert code == 0
    obj = json.loads(out)
    assert obj["general_position"]["status"] == "PASS" and obj["collisions"] == []
    assert "FAIL" not in err


def test_check_off_quadric(tmp_path, capsys):
    bad = dict(PAIR, points=[["1", "1", "1", "1"], ["1", "0", "0", "0"]])
    code, out, _ = _run(["check", _write(tmp_path, "d.json", bad)], capsys)
    assert code == 1 and json.loads(out)["validation"] == "FAIL"


def test_report(tmp_path, capsys):
    ext = str(tmp_path / "e.json")
    _run(["fit", _write(tmp_path, "d.json", PAIR), "--out", ext], capsys)
    code, out, _ = _run(["report", ext], capsys)
    rep = json.loads(out)["representation"]
    assert code == 0 and rep["summands"] == [2, 3] and rep["maximal"]


def test_maximize_single_point(tmp_path, capsys):
    single = {"family": "ads22", "points": [["1", "0", "0", "0"]], "values": ["3"]}
    code, out, _ = _run(["fit", _write(tmp_path, "d.json", single), "--maximize-summands"], capsys)
    assert code == 0 and json.loads(out)["representation"]["maximal"]


def test_maximize_exit_code(tmp_path, capsys, monkeypatch):
    import whitney.cli as cli
    from whitney.errors import MaximalityUnreachable

    def refuse(*args, **kwargs):
        raise MaximalityUnreachable("no δ found")
    monkeypatch.setattr(cli, "maximize_summands", refuse)
    assert _run(["fit", _write(tmp_path, "d.json", PAIR), "--maximize-summands"], capsys)[0] == 4


def test_csv_dataset(tmp_path):
    p = tmp_path / "d.csv"
    p.write_text("x1,x2,x3,x4,y_re,y_im\n1,0,0,0,0,0\n5/3,0,4/3,0,1,0\n")
    d, mode = io.load_dataset(p, {"family": "ads22"})
    assert mode == sc.EXACT and d.values == [sc.GaussianRational(0), sc.GaussianRational(1)]
    p.write_text("x1,x2,x3,x4,y_re,y_im\n1,0,0,0,0,0\n5/3,0,1,0,1,0\n")
    with pytest.raises(io.InputError, match=r"d\.csv:3"):
        io.load_dataset(p, {"family": "ads22"})


def test_extension_round_trip():
    rng = random.Random(3)
    fam = AdS22Plus()
    pts, ys = _gen.collision_dataset(rng)
    d = Dataset(pts, ys, fam)
    e = exact_correct(fit(d, fam, Fraction(1, 100), require_tolerance=False), d)
    back = io.extension_from_obj(json.loads(json.dumps(io.extension_to_obj(e))))
    assert back.coeffs == e.coeffs and back.ells == e.ells
    assert [back.evaluate(x) for x in pts] == ys
    x = _gen.generic_point(fam.signature, rng)
    assert abs(complex(back.evaluate(x)) - complex(e.evaluate(x))) < 1e-12


def test_dataset_round_trip():
    d, _ = io.dataset_from_obj(PAIR)
    d2, _ = io.dataset_from_obj(json.loads(json.dumps(io.dataset_to_obj(d))))
    assert d2.points == d.points and d2.values == d.values
