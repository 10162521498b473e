import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from hdl.cli import main
from hdl.fuzz import FuzzConfig, case_seed, emit_envelope_csv, random_planar_map, run_fuzz
from hdl.schwarz import boundary_bound
from hdl.series import PlanarHarmonicMap, VectorHarmonicMap, map_from_dict


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_case_seed_is_64_bit():
    assert case_seed(0, 0) == 0
    assert 0 <= case_seed(2**64 - 1, 3) < 2**64
    assert case_seed(5, 1) != case_seed(5, 2)


@pytest.mark.parametrize("target", ["planar", "disk", "interval", "vector3"])
def test_random_maps_are_deterministic(target):
    a = random_planar_map(123, 8, target)
    b = random_planar_map(123, 8, target)
    ca = [a.g, a.h] if isinstance(a, PlanarHarmonicMap) else list(a.F)
    cb = [b.g, b.h] if isinstance(b, PlanarHarmonicMap) else list(b.F)
    assert all(np.array_equal(x.coeffs, y.coeffs) for x, y in zip(ca, cb))


def test_interval_maps_stay_in_interval():
    r = np.linspace(0, 0.999, 64)
    t = 2 * np.pi * np.arange(64) / 64
    z = (r[:, None] * np.exp(1j * t)).ravel()
    for i in range(10):
        u = random_planar_map(case_seed(1, i), 16, "interval")
        assert isinstance(u, VectorHarmonicMap) and u.m == 1
        assert np.max(np.abs(u(z))) < 1


def test_disk_maps_stay_in_disk():
    z = 0.999 * np.exp(2j * np.pi * np.arange(512) / 512)
    for i in range(10):
        f = random_planar_map(case_seed(2, i), 16, "disk")
        assert np.max(np.abs(f(z))) < 1


def test_conformal_vector_maps_are_conformal_at_origin():
    from hdl.geometry import conformal_at

    for i in range(5):
        assert conformal_at(random_planar_map(case_seed(4, i), 8, "vector3", conformal=True), 0)


def test_fuzz_config_validation():
    with pytest.raises(ValueError):
        FuzzConfig(count=0)
    with pytest.raises(ValueError):
        FuzzConfig(degree=0)
    with pytest.raises(ValueError):
        FuzzConfig(radius=1.0)
    with pytest.raises(ValueError):
        FuzzConfig(target="sphere")


@pytest.mark.parametrize("target", ["planar", "disk", "interval", "vector3"])
def test_small_campaigns_pass(target):
    rep = run_fuzz(FuzzConfig(seed=42, count=5, degree=8, target=target, sweep=False))
    assert rep.cases_run == 5 and rep.cases_passed == 5, rep.failures
    assert rep.worst["slack"] >= -1e-9
    assert all(sum(h["counts"]) > 0 for h in rep.histograms.values())


def test_conformal_campaign_exercises_conformal_branch():
    rep = run_fuzz(FuzzConfig(seed=7, count=5, degree=8, target="vector3", conformal=True, sweep=False))
    assert rep.cases_passed == 5 and "vector_origin_conformal" in rep.histograms


def test_worst_is_global_minimum():
    rep = run_fuzz(FuzzConfig(seed=3, count=4, degree=6, sweep=False))
    lo = min(e for h in rep.histograms.values() for e in h["edges"][:1])
    assert rep.worst["slack"] == pytest.approx(lo, abs=0)


def test_envelope_csv(tmp_path):
    p = tmp_path / "env.csv"
    emit_envelope_csv(0.0, 101, p)
    rows = list(csv.reader(p.open()))
    assert rows[0] == ["r", "x_minus", "x_plus", "x_plus_deriv"]
    data = np.array(rows[1:], dtype=float)
    assert data.shape == (101, 4)
    assert data[0, 1] == data[0, 2] == 0
    assert np.max(np.abs(data[:, 2] - 4 / np.pi * np.arctan(data[:, 0]))) < 1e-12
    assert data[-1, 0] == 1 - 1e-4
    buf = io.StringIO()
    emit_envelope_csv(0.3, 11, buf)
    last = [float(x) for x in buf.getvalue().strip().splitlines()[-1].split(",")]
    first = [float(x) for x in buf.getvalue().splitlines()[1].split(",")]
    assert first[1] == pytest.approx(0.3, abs=1e-15) and first[2] == pytest.approx(0.3, abs=1e-15)
    assert abs(last[3] - boundary_bound(0.3)) < 1e-3


def test_cli_bounds(capsys):
    code, out, _ = _run(capsys, "bounds", "--a", "0", "--r", "0.5", "--json")
    d = json.loads(out)
    assert code == 0
    assert d["x_plus"] == pytest.approx(4 / math.pi * math.atan(0.5))
    assert d["gradient_origin"] == pytest.approx(4 / math.pi)
    code, out, _ = _run(capsys, "bounds", "--a", "0.5")
    assert code == 0 and "x_plus" in out


def test_cli_bad_a_is_usage_error(capsys):
    code, _, err = _run(capsys, "bounds", "--a", "1.5")
    assert code == 1 and "error" in err


def test_cli_missing_arguments_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bounds"])
    assert exc.value.code == 1


def test_cli_extremal_and_analyze(tmp_path, capsys):
    path = tmp_path / "fnu.json"
    code, _, _ = _run(capsys, "extremal", "fnu", "--terms", "512", "--out", str(path))
    assert code == 0
    f = map_from_dict(json.loads(path.read_text()))
    assert isinstance(f, PlanarHarmonicMap)
    code, out, _ = _run(capsys, "analyze", str(path), "--json", "--no-sweep")
    rep = json.loads(out)
    assert code == 0 and rep["pass"]
    assert {c["name"] for c in rep["checks"]} >= {"isoperimetric", "coefficient_length", "diameter_length"}
    for c in rep["checks"]:
        assert c["slack"] == c["rhs"] - c["lhs"] or abs(c["slack"] - (c["rhs"] - c["lhs"])) < 1e-15 * max(1, abs(c["rhs"]))


def test_cli_analyze_vector_map_has_tangent_checks(tmp_path, capsys):
    path = tmp_path / "circle.json"
    assert _run(capsys, "extremal", "circle", "--avec", "1,0,0", "--bvec", "0,1,0", "--out", str(path))[0] == 0
    code, out, _ = _run(capsys, "analyze", str(path), "--json", "--no-sweep")
    rep = json.loads(out)
    assert code == 0 and len(rep["tangent_checks"]) >= 9 * 3


def test_cli_analyze_failing_map_exits_2(tmp_path, capsys):
    path = tmp_path / "id.json"
    path.write_text(json.dumps({"kind": "planar", "g": {"coeffs": [[0, 0], [1, 0]]}, "h": {"coeffs": [[0, 0]]}}))
    # a negative tolerance turns the identity's equalities into failures
    code, out, _ = _run(capsys, "analyze", str(path), "--tolerance=-1e-3", "--no-sweep")
    assert code == 2 and "FAIL" in out


def test_cli_analyze_missing_file(capsys):
    code, _, err = _run(capsys, "analyze", "/nonexistent/map.json")
    assert code == 1 and "cannot read" in err


def test_cli_degenerate_map_is_flagged(tmp_path, capsys):
    path = tmp_path / "fold.json"
    path.write_text(json.dumps({"kind": "planar", "g": {"coeffs": [[0, 0], [1, 0]]}, "h": {"coeffs": [[0, 0], [1, 0]]}}))
    code, out, _ = _run(capsys, "analyze", str(path), "--json", "--no-sweep")
    rep = json.loads(out)
    assert "not_quasiconformal" in rep["flags"]
    assert all(c["name"] != "energy_area" for c in rep["checks"])


def test_cli_circle_requires_vectors(capsys):
    code, _, err = _run(capsys, "extremal", "circle")
    assert code == 1


def test_cli_hyperbolic(capsys):
    code, out, _ = _run(capsys, "hyperbolic", "--u1", "0", "--u2", "0.5", "--json")
    d = json.loads(out)
    assert code == 0 and d["distance"] == pytest.approx(math.log(1 + math.sqrt(2)))
    assert d["difference"] < 1e-10


def test_cli_envelope_csv(capsys):
    code, out, _ = _run(capsys, "envelope-csv", "--a", "0.2", "--steps", "5")
    assert code == 0 and len(out.strip().splitlines()) == 6


def test_cli_fuzz_json_is_deterministic(capsys):
    args = ("fuzz", "--seed", "9", "--count", "3", "--degree", "6", "--no-sweep", "--json")
    code1, a, _ = _run(capsys, *args)
    code2, b, _ = _run(capsys, *args)
    assert code1 == code2 == 0 and a == b
    assert json.loads(a)["cases_passed"] == 3


def test_console_script_byte_identical(tmp_path):
    outs = []
    for k in range(2):
        p = tmp_path / f"r{k}.json"
        proc = subprocess.run(
            [sys.executable, "-m", "hdl.cli", "fuzz", "--seed", "1", "--count", "2", "--degree", "4", "--no-sweep", "--json", "--out", str(p)],
            capture_output=True,
        )
        assert proc.returncode == 0, proc.stderr
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]
