import subprocess
import sys

import numpy as np
import pytest

from lleproj.cli import ExperimentConfig, cmd_run, cmd_sweep_eps, main
from lleproj.dataset import load_csv
from lleproj.diagnostics import REPORT_COLUMNS, read_report_csv
from lleproj.spectral import load_embedding_csv
from lleproj.svg import ramp_color, scatter_svg

SMALL = ["--n", "300", "--k", "10"]


def _files(d):
    return {p.relative_to(d).as_posix(): p.read_bytes() for p in sorted(d.rglob("*")) if p.is_file()}


def test_generate(tmp_path):
    assert main(["generate", *SMALL, "--out", str(tmp_path)]) == 0
    cloud = load_csv(tmp_path / "swissroll.csv")
    assert cloud.n == 300 and cloud.dim == 3 and cloud.params is not None


def test_generate_deterministic(tmp_path):
    for sub in ("a", "b"):
        assert main(["generate", "--seed", "5", "--out", str(tmp_path / sub)]) == 0
    assert (tmp_path / "a/swissroll.csv").read_bytes() == (tmp_path / "b/swissroll.csv").read_bytes()


def test_generate_without_hole(tmp_path):
    assert main(["generate", "--n", "50", "--no-hole", "--out", str(tmp_path)]) == 0
    assert load_csv(tmp_path / "swissroll.csv").n == 50


def test_generate_embedded(tmp_path):
    assert main(["generate", "--n", "40", "--embed", "e2", "--out", str(tmp_path)]) == 0
    assert load_csv(tmp_path / "swissroll.csv").dim == 19


def test_run_outputs(tmp_path):
    assert main(["run", *SMALL, "--embed", "e1", "--mode", "exact", "--out", str(tmp_path)]) == 0
    Y, eig, meta = load_embedding_csv(tmp_path / "embedding.csv")
    assert Y.shape == (2, 300) and eig.shape == (3,)
    assert meta["mode"] == "exact" and meta["embedding"] == "e1"
    rows = read_report_csv(tmp_path / "report.csv")
    assert len(rows) == 1 and list(rows[0]) == REPORT_COLUMNS
    assert rows[0]["schema_version"] == "1"
    svg = (tmp_path / "scatter.svg").read_text()
    assert svg.startswith("<svg") and svg.count("<circle") == 300


def test_run_deterministic(tmp_path):
    for sub in ("a", "b"):
        assert main(["run", *SMALL, "--embed", "e3", "--out", str(tmp_path / sub)]) == 0
    assert _files(tmp_path / "a") == _files(tmp_path / "b")


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text("# experiment\nn = 200\nk=8\nmode=exact\nembed=e1\n")
    out = tmp_path / "out"
    assert main(["run", "--config", str(cfg), "--mode", "reg", "--eps-ratio", "1e-2",
                 "--out", str(out)]) == 0
    row = read_report_csv(out / "report.csv")[0]
    assert (row["n"], row["k"], row["mode"], row["embedding"]) == ("200", "8", "reg", "e1")
    assert float(row["eps_ratio"]) == 1e-2


@pytest.mark.parametrize("argv", [
    ["run", "--n", "20", "--k", "20"],
    ["run", "--n", "20", "--k", "25"],
    ["run", "--mode", "reg", "--eps-ratio", "0"],
    ["run", "--k", "abc"],
    ["sweep", "--n", "50", "--k", "5", "--eps-ratios", ""],
    ["run", "--config", "/nonexistent/file"],
])
def test_config_errors(tmp_path, capsys, argv):
    assert main([*argv, "--out", str(tmp_path)]) == 2
    assert "error" in capsys.readouterr().err


def test_bad_config_key(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour=blue\n")
    assert main(["run", "--config", str(cfg), "--out", str(tmp_path)]) == 2


def test_numerical_failure_exit_code(tmp_path):
    # all points collinear on the x axis: rank(X) = 1 < d = 2
    data = tmp_path / "line.csv"
    data.write_text("x1,x2\n" + "".join(f"{i}.5,0\n" for i in range(30)))
    assert main(["run", "--input", str(data), "--k", "4", "--mode", "reg",
                 "--out", str(tmp_path / "o")]) == 3


def test_input_csv(tmp_path):
    assert main(["generate", *SMALL, "--out", str(tmp_path)]) == 0
    assert main(["run", "--input", str(tmp_path / "swissroll.csv"), "--k", "10",
                 "--out", str(tmp_path / "r")]) == 0
    row = read_report_csv(tmp_path / "r/report.csv")[0]
    assert row["n"] == "300" and row["param_recovery"] != ""


def test_sweep(tmp_path):
    assert main(["sweep", *SMALL, "--eps-ratios", "1e-1,1e-6", "--out", str(tmp_path)]) == 0
    summary = (tmp_path / "sweep_summary.csv").read_text().splitlines()
    assert len(summary) == 3 and summary[0].startswith("eps_ratio,affine_fit_residual")
    for sub in ("eps_0.1", "eps_1e-06"):
        assert (tmp_path / sub / "report.csv").exists()
        assert (tmp_path / sub / "scatter.svg").exists()


def test_sweep_single_ratio_equals_run(tmp_path):
    cfg = ExperimentConfig(n_points=250, k=10, mode="reg", eps_ratio=1e-4, out=str(tmp_path / "run"))
    cmd_run(cfg)
    from dataclasses import replace
    cmd_sweep_eps(replace(cfg, out=str(tmp_path / "sweep")), [1e-4])
    assert _files(tmp_path / "run") == _files(tmp_path / "sweep" / "eps_0.0001")


def test_sweep_deterministic(tmp_path):
    for sub in ("a", "b"):
        assert main(["sweep", "--n", "150", "--k", "8", "--eps-ratios", "1e-2,1e-8",
                     "--out", str(tmp_path / sub)]) == 0
    assert _files(tmp_path / "a") == _files(tmp_path / "b")


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "lleproj", "generate", "--n", "10", "--k", "3",
                           "--out", str(tmp_path)], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert (tmp_path / "swissroll.csv").exists()


def test_ramp_endpoints():
    assert ramp_color(0.0) == "#440154"
    assert ramp_color(1.0) == "#fde725"
    assert ramp_color(-3) == ramp_color(0.0)


def test_scatter_svg_structure(rng):
    Y = rng.normal(size=(2, 12))
    svg = scatter_svg(Y, np.arange(12.0), title="a<b")
    assert svg.count("<circle") == 12 and svg.count("<line") == 2
    assert "a&lt;b" in svg
    assert scatter_svg(Y[:1]).count("<circle") == 12
