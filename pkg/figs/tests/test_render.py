import json

import numpy as np
import pytest

from smatrix_figs import FigureRecipe, SchemaError, render
from smatrix_figs.cli import main


def _map_columns(csv_path, n_x, xs_name="delta_k"):
    data = np.genfromtxt(csv_path, delimiter=",", names=True)
    xs = data[xs_name][:n_x]
    values = data["absT2"].reshape(-1, n_x)
    return xs, values


def test_fig3_zero_cross_matches_overlays(data_dir, tmp_path):
    out = tmp_path / "fig3i.png"
    recipe = FigureRecipe(
        figure_id="fig3",
        csv_path=str(data_dir / "map_v2.csv"),
        out_path=str(out),
        crit_path=str(data_dir / "crit_v2.json"),
        expected_kind="V_ATOM",
        expected_grid=(41, 41),
    )
    result = render(recipe)
    assert out.stat().st_size > 0
    assert result.diagonals

    xs, values = _map_columns(data_dir / "map_v2.csv", 41)
    zero_cols = xs[np.max(values, axis=0) < 1e-20]
    zero_rows = xs[np.max(values, axis=1) < 1e-20]
    # every overlay line sits on a fully-zero column/row and vice versa
    assert sorted(set(np.round(result.vlines, 9))) == pytest.approx(sorted(zero_cols), abs=1e-9)
    assert sorted(set(np.round(result.hlines, 9))) == pytest.approx(sorted(zero_rows), abs=1e-9)


def test_fig4_zero_lines_match_roots(data_dir, tmp_path):
    out = tmp_path / "fig4.png"
    recipe = FigureRecipe(
        figure_id="fig4",
        csv_path=str(data_dir / "critmap_v3.csv"),
        out_path=str(out),
        expected_kind="V_ATOM",
    )
    result = render(recipe)
    assert out.stat().st_size > 0

    data = np.genfromtxt(data_dir / "critmap_v3.csv", delimiter=",", names=True)
    n_p = 17
    k2_rel = data["k2_rel"][::n_p]
    values = data["absT2"].reshape(-1, n_p)
    zero_lines = k2_rel[np.max(values, axis=1) < 1e-18]
    drawn = [h for h in result.hlines if k2_rel[0] - 1e-9 <= h <= k2_rel[-1] + 1e-9]
    assert len(zero_lines) == 2
    assert sorted(drawn) == pytest.approx(sorted(zero_lines), abs=1e-9)
    # off the lines the coefficient is genuinely nonzero
    assert np.max(values) > 1e-4


def test_fig5_quench_curves(data_dir, tmp_path):
    out = tmp_path / "fig5.png"
    result = render(
        FigureRecipe(figure_id="fig5", csv_path=str(data_dir / "quench.csv"), out_path=str(out))
    )
    assert out.stat().st_size > 0

    data = np.genfromtxt(data_dir / "quench.csv", delimiter=",", names=True)
    assert np.max(data["absT2_v"]) < 1e-20
    zero_g1 = data["gamma1"][data["absT2_2ls"] < 1e-20]
    np.testing.assert_allclose(zero_g1, [1.0], atol=1e-12)
    assert result.markers == (1.0,)


def test_fig2_pole_tracks(data_dir, tmp_path):
    out = tmp_path / "fig2.png"
    render(FigureRecipe(figure_id="fig2", csv_path=str(data_dir / "poles.csv"), out_path=str(out)))
    assert out.stat().st_size > 0


def test_kind_mismatch_refused(data_dir, tmp_path):
    recipe = FigureRecipe(
        figure_id="fig3",
        csv_path=str(data_dir / "map_v2.csv"),
        out_path=str(tmp_path / "x.png"),
        expected_kind="TWO_2LS",
    )
    with pytest.raises(SchemaError, match="kind"):
        render(recipe)


def test_grid_mismatch_refused(data_dir, tmp_path):
    recipe = FigureRecipe(
        figure_id="fig3",
        csv_path=str(data_dir / "map_v2.csv"),
        out_path=str(tmp_path / "x.png"),
        expected_grid=(101, 101),
    )
    with pytest.raises(SchemaError, match="grid shape"):
        render(recipe)


def test_wrong_command_refused(data_dir, tmp_path):
    recipe = FigureRecipe(
        figure_id="fig4",
        csv_path=str(data_dir / "map_v2.csv"),
        out_path=str(tmp_path / "x.png"),
    )
    with pytest.raises(SchemaError, match="command"):
        render(recipe)


def test_unknown_figure_id_refused(data_dir, tmp_path):
    with pytest.raises(SchemaError, match="figure id"):
        FigureRecipe(figure_id="fig9", csv_path="x.csv", out_path="x.png")


def test_missing_sidecar_refused(tmp_path):
    csv = tmp_path / "orphan.csv"
    csv.write_text("delta_k,delta_p,T_re,T_im,absT2\n0.0,0.0,0.0,0.0,0.0\n")
    recipe = FigureRecipe(figure_id="fig3", csv_path=str(csv), out_path=str(tmp_path / "x.png"))
    with pytest.raises(SchemaError, match="sidecar"):
        render(recipe)


def test_cli_roundtrip(data_dir, tmp_path):
    out = tmp_path / "cli_fig3.png"
    code = main(
        [
            "fig3",
            "--in", str(data_dir / "map_v2.csv"),
            "--out", str(out),
            "--crit", str(data_dir / "crit_v2.json"),
            "--expect-kind", "V_ATOM",
            "--expect-grid", "41x41",
        ]
    )
    assert code == 0
    assert out.stat().st_size > 0


def test_cli_schema_error_exit_code(data_dir, tmp_path, capsys):
    code = main(
        [
            "fig3",
            "--in", str(data_dir / "map_v2.csv"),
            "--out", str(tmp_path / "x.png"),
            "--expect-kind", "TWO_2LS",
        ]
    )
    assert code == 2
    assert "schema error" in capsys.readouterr().err
