import math
import shutil
import subprocess

import numpy as np
import pytest

from zenoplots import PlotError, PlotSpec, SchemaError, marked_critical_column, render
from zenoplots.render import main


def write_fig2_csv(path, n_max=40):
    lines = ["N,n_free,n_zeno,n_crit"]
    for n in range(1, n_max + 1):
        free = 4e-4 * n * n
        zeno = 4e-4 * math.sin(25.0 * n) ** 2 / math.sin(25.0) ** 2
        crit = 4e-4 * n * n * 0.9
        lines.append(f"{n},{free:.11e},{zeno:.11e},{crit:.11e}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_fig3_csv(path, n_tau=6, n_tau_m=8, star_col=5):
    taus = np.linspace(5e-6, 250e-6, n_tau)
    tau_ms = np.linspace(25e-6, 1015e-6, n_tau_m)
    values = np.random.default_rng(1).uniform(0.0, 0.4, size=(n_tau, n_tau_m))
    values[n_tau // 2, star_col] = 1.0   # grid maximum on the "critical" column
    lines = ["tau_s,tau_m_s,n_cycles,n_mean,n_mean_normalized,source"]
    for i, t in enumerate(taus):
        for j, tm in enumerate(tau_ms):
            v = values[i, j]
            lines.append(f"{t:.11e},{tm:.11e},{round(1e-3 / t)},{v:.11e},{v:.11e},analytic")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return tau_ms[star_col]


class TestCurves:
    def test_renders_image(self, tmp_path):
        csv_path = tmp_path / "fig2.csv"
        write_fig2_csv(csv_path)
        out = tmp_path / "fig2.png"
        spec = PlotSpec(input_csv=str(csv_path), output_image=str(out), kind="curves")
        assert render(spec) is None
        assert out.exists() and out.stat().st_size > 0

    def test_schema_mismatch_names_expected_header(self, tmp_path):
        csv_path = tmp_path / "wrong.csv"
        csv_path.write_text("a,b,c\n1,2,3\n", encoding="utf-8")
        out = tmp_path / "wrong.png"
        spec = PlotSpec(input_csv=str(csv_path), output_image=str(out), kind="curves")
        with pytest.raises(SchemaError, match="N,n_free,n_zeno,n_crit"):
            render(spec)
        assert not out.exists()

    def test_empty_csv_no_file_written(self, tmp_path):
        csv_path = tmp_path / "empty.csv"
        csv_path.write_text("", encoding="utf-8")
        out = tmp_path / "empty.png"
        spec = PlotSpec(input_csv=str(csv_path), output_image=str(out), kind="curves")
        with pytest.raises(PlotError):
            render(spec)
        assert not out.exists()


class TestHeatmap:
    def test_marked_line_matches_grid_max_column(self, tmp_path):
        csv_path = tmp_path / "fig3.csv"
        star = write_fig3_csv(csv_path)
        out = tmp_path / "fig3.png"
        spec = PlotSpec(input_csv=str(csv_path), output_image=str(out), kind="heatmap")
        marked = render(spec)
        assert out.exists() and out.stat().st_size > 0
        assert marked == pytest.approx(star, rel=1e-12)

    def test_explicit_marker_wins(self, tmp_path):
        csv_path = tmp_path / "fig3.csv"
        write_fig3_csv(csv_path)
        out = tmp_path / "fig3.png"
        spec = PlotSpec(input_csv=str(csv_path), output_image=str(out),
                        kind="heatmap", tau_m_star=6.28e-4)
        assert render(spec) == pytest.approx(6.28e-4)

    def test_incomplete_grid_rejected(self, tmp_path):
        csv_path = tmp_path / "ragged.csv"
        lines = [
            "tau_s,tau_m_s,n_cycles,n_mean,n_mean_normalized,source",
            "1e-05,1e-04,100,0.1,1.0,analytic",
            "2e-05,2e-04,50,0.05,0.5,analytic",
        ]
        csv_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        spec = PlotSpec(input_csv=str(csv_path), output_image=str(tmp_path / "x.png"),
                        kind="heatmap")
        with pytest.raises(PlotError, match="grid"):
            render(spec)


class TestCli:
    def test_curves_invocation(self, tmp_path):
        csv_path = tmp_path / "fig2.csv"
        write_fig2_csv(csv_path)
        out = tmp_path / "out.png"
        code = main(["--input", str(csv_path), "--output", str(out), "--kind", "curves"])
        assert code == 0 and out.exists()

    def test_bad_schema_exit_code(self, tmp_path, capsys):
        csv_path = tmp_path / "bad.csv"
        csv_path.write_text("x\n1\n", encoding="utf-8")
        code = main(["--input", str(csv_path), "--output", str(tmp_path / "o.png"),
                     "--kind", "heatmap"])
        assert code == 1
        assert "header" in capsys.readouterr().err

    def test_repeated_render_identical(self, tmp_path):
        csv_path = tmp_path / "fig2.csv"
        write_fig2_csv(csv_path)
        a, b = tmp_path / "a.png", tmp_path / "b.png"
        for out in (a, b):
            assert main(["--input", str(csv_path), "--output", str(out),
                         "--kind", "curves"]) == 0
        assert a.read_bytes() == b.read_bytes()


@pytest.mark.skipif(shutil.which("zenocavity") is None,
                    reason="primary CLI not installed")
class TestAgainstPrimaryOutputs:
    """End-to-end: consume real CSV artifacts produced by the primary CLI."""

    def test_fig2_and_fig3_render(self, tmp_path):
        fig2 = tmp_path / "fig2.csv"
        fig3 = tmp_path / "fig3.csv"
        subprocess.run(["zenocavity", "fig2", "--n-max", "120", "--out", str(fig2)],
                       check=True, capture_output=True)
        subprocess.run(["zenocavity", "fig3", "--out", str(fig3)],
                       check=True, capture_output=True)
        out2, out3 = tmp_path / "fig2.png", tmp_path / "fig3.png"
        assert render(PlotSpec(input_csv=str(fig2), output_image=str(out2),
                               kind="curves", logy=True)) is None
        marked = render(PlotSpec(input_csv=str(fig3), output_image=str(out3),
                                 kind="heatmap"))
        assert out2.exists() and out3.exists()
        # the marked critical line sits on the grid-maximum ridge column
        rows = fig3.read_text(encoding="utf-8").splitlines()[1:]
        tau_m = np.array([float(r.split(",")[1]) for r in rows])
        norm = np.array([float(r.split(",")[4]) for r in rows])
        assert marked == tau_m[int(np.argmax(norm))]
