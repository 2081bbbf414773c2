import math
import os
import subprocess

import pytest

import cmslab


def test_version():
    assert cmslab.__version__ == "0.1.0"


def test_expr_eval():
    assert cmslab.eval_expr("2*u + sin(v) - t", u=1.5, v=0.0, t=1.0) == pytest.approx(2.0)
    assert cmslab.eval_expr("r*cos(u)", u=0.0, params={"r": 3.0}) == pytest.approx(3.0)
    with pytest.raises(ValueError):
        cmslab.eval_expr("2*(u +")


def test_builtin_frame():
    s = cmslab.builtin("sphere", {"radius": "1+t"})
    f = cmslab.frame(s, 1.1, 0.7, t=0.5)
    n = f["N"]
    assert sum(c * c for c in n) == pytest.approx(1.0, abs=1e-12)
    for a in range(2):
        dot = sum(n[i] * f["S"][a][i] for i in range(3))
        assert dot == pytest.approx(0.0, abs=1e-12)
    assert f["metric"][0][1] == pytest.approx(f["metric"][1][0], abs=1e-14)
    # radius 1.5 sphere: mean curvature trace B^a_a = -2/1.5
    b_trace = sum(
        f["metric_inv"][a][b] * f["curvature"][a][b] for a in range(2) for b in range(2)
    )
    assert b_trace == pytest.approx(-2.0 / 1.5, rel=1e-10)


def test_doc_round_trip():
    s = cmslab.builtin("torus", {})
    text = cmslab.doc(s)
    s2 = cmslab.load_doc(text)
    assert cmslab.doc(s2) == text
    with pytest.raises(ValueError):
        cmslab.load_doc("{не json")


def test_cms_normal_speed():
    s = cmslab.builtin("sphere", {"radius": "1+t"})
    c = cmslab.cms(s, 0.9, 2.0, t=0.0)
    assert c["C"] == pytest.approx(1.0, abs=1e-12)  # radial growth at unit rate
    assert c["Vsurf"][0] == pytest.approx(0.0, abs=1e-12)
    assert c["Vsurf"][1] == pytest.approx(0.0, abs=1e-12)


def test_suite_small_grid():
    s = cmslab.builtin("torus", {})
    res = cmslab.run_suite(s, nu=16, nv=16, times=[0.0])
    assert res["pass"] is True
    assert len(res["rows"]) == 48  # one row per identity per time slice
    ids = {r["id"] for r in res["rows"]}
    assert "temporal-curvature-two-routes" in ids
    assert any("epsilon pairing" in n for n in res["notes"])
    res2 = cmslab.run_suite(s, nu=16, nv=16, times=[0.0], workers=3)
    assert res2 == res  # worker count never changes the result


def test_energy_expanding_sphere():
    s = cmslab.builtin("sphere", {"radius": "1+t"})
    rep = cmslab.energy(s, t=0.0, rho=1.0, nu=32, nv=32)
    assert rep["kinetic"] == pytest.approx(2 * math.pi, rel=1e-4)
    assert rep["rate_formula"] == pytest.approx(4 * math.pi, rel=1e-4)
    assert rep["rate_fd"] == pytest.approx(rep["rate_formula"], rel=1e-6)
    assert rep["work_energy_max"] == pytest.approx(1.0, abs=1e-10)


def test_export_field_shape():
    s = cmslab.builtin("cylinder", {})
    fe = cmslab.export_field(s, "temporal_curvature", t=0.0, nu=8, nv=8)
    assert len(fe["components"]) == 8
    assert len(fe["values"]) == 8 * 8 * 8
    assert len(fe["x"]) == 64
    with pytest.raises(ValueError):
        cmslab.export_field(s, "nope")


@pytest.fixture(scope="module")
def cli():
    path = os.environ.get("CMSLAB_CLI")
    if not path or not os.path.exists(path):
        pytest.skip("CMSLAB_CLI not set")
    return path


def test_cli_version(cli):
    out = subprocess.run([cli, "--version"], capture_output=True, text=True)
    assert out.returncode == 0
    assert out.stdout.strip() == "cmslab 0.1.0"


def test_cli_verify_pass(cli, tmp_path):
    report = tmp_path / "report.json"
    out = subprocess.run(
        [cli, "verify", "--surface", "builtin:sphere", "--grid", "12x12",
         "--times", "0", "--report", str(report)],
        capture_output=True, text=True)
    assert out.returncode == 0
    assert "overall: PASS" in out.stdout
    assert report.exists()


def test_cli_identity_failure_exit_code(cli):
    # squeezing the base tolerance under the noise floor must exit 1, not 0/2
    out = subprocess.run(
        [cli, "verify", "--surface", "builtin:sphere", "--grid", "8x8",
         "--times", "0", "--tol-first", "1e-18"],
        capture_output=True, text=True)
    assert out.returncode == 1
    assert "FAIL" in out.stdout


def test_cli_usage_error(cli):
    out = subprocess.run([cli, "verify", "--surface", "builtin:nope"],
                         capture_output=True, text=True)
    assert out.returncode == 2
    out2 = subprocess.run([cli, "fields", "--no-such-flag"], capture_output=True, text=True)
    assert out2.returncode == 2
