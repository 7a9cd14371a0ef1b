"""Rendering of photon-smatrix CLI datasets into raster figures.

Strictly read-only over its inputs: every number shown, including overlay
line positions, is taken from the CSV/JSON files, never recomputed.
"""

from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .recipes import FigureRecipe, SchemaError, check_meta, load_crit, load_meta


@dataclass(frozen=True)
class RenderResult:
    """Where the image went plus the zero-structure overlays that were drawn.

    vlines/hlines are data-coordinate positions of solid overlay lines;
    diagonals is True when dashed p = k guide lines were drawn.
    """

    out_path: str
    vlines: tuple[float, ...] = ()
    hlines: tuple[float, ...] = ()
    diagonals: bool = False
    markers: tuple[float, ...] = ()


def read_table(csv_path: str, required: set[str]) -> np.ndarray:
    try:
        data = np.genfromtxt(csv_path, delimiter=",", names=True)
    except OSError as exc:
        raise SchemaError(f"cannot read {csv_path}: {exc}") from None
    if data.dtype.names is None:
        raise SchemaError(f"{csv_path}: no CSV header found")
    missing = required - set(data.dtype.names)
    if missing:
        raise SchemaError(f"{csv_path}: missing column(s) {sorted(missing)}")
    return np.atleast_1d(data)


def _reshape_map(data: np.ndarray, xs_name: str, n_x: int, n_y: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    if data.shape[0] != n_x * n_y:
        raise SchemaError(
            f"row count {data.shape[0]} does not match metadata grid {n_x}x{n_y}"
        )
    xs = data[xs_name][:n_x]
    ys = data["delta_p"][::n_x]
    values = data["absT2"].reshape(n_y, n_x)
    return xs, ys, values


def _render_fig2(recipe: FigureRecipe) -> RenderResult:
    data = read_table(
        recipe.csv_path,
        {"delta_sweep_value", "re_pole_1", "re_pole_2", "im_pole_1", "im_pole_2"},
    )
    d = data["delta_sweep_value"]
    fig, (ax_re, ax_im) = plt.subplots(1, 2, figsize=(9, 4))
    for i, style in ((1, "-"), (2, "--")):
        ax_re.plot(d, data[f"re_pole_{i}"], style, label=f"pole {i}")
        ax_im.plot(d, data[f"im_pole_{i}"], style, label=f"pole {i}")
    ax_re.set_xlabel(r"$\Delta$")
    ax_re.set_ylabel(r"Re $\lambda$")
    ax_im.set_xlabel(r"$\Delta$")
    ax_im.set_ylabel(r"Im $\lambda$")
    ax_re.legend()
    fig.suptitle(recipe.title or "Scattering poles vs level splitting")
    fig.tight_layout()
    fig.savefig(recipe.out_path, dpi=150)
    plt.close(fig)
    return RenderResult(out_path=recipe.out_path)


def _render_fig3(recipe: FigureRecipe) -> RenderResult:
    meta = load_meta(recipe.csv_path)
    check_meta(recipe, meta, "two-photon-map")
    data = read_table(recipe.csv_path, {"delta_k", "delta_p", "absT2"})
    n_x = meta["dk_grid"]["num"]
    n_y = meta["dp_grid"]["num"]
    xs, ys, values = _reshape_map(data, "delta_k", n_x, n_y)

    vlines: list[float] = []
    if recipe.crit_path:
        crit = load_crit(recipe.crit_path)
        half = meta["delta_e"] / 2.0
        for root in crit["roots"]:
            vlines.extend((root - half, half - root))
    hlines = list(vlines)

    fig, ax = plt.subplots(figsize=(5.5, 4.5))
    mesh = ax.pcolormesh(xs, ys, values, shading="nearest", cmap="inferno")
    fig.colorbar(mesh, ax=ax, label=r"$|T|^2$")
    for x in vlines:
        ax.axvline(x, color="white", lw=1.2)
    for y in hlines:
        ax.axhline(y, color="white", lw=1.2)
    lim = float(np.max(np.abs(xs)))
    ax.plot([-lim, lim], [-lim, lim], "w--", lw=0.8)
    ax.plot([-lim, lim], [lim, -lim], "w--", lw=0.8)
    ax.set_xlim(xs[0], xs[-1])
    ax.set_ylim(ys[0], ys[-1])
    ax.set_xlabel(r"$\delta_k$")
    ax.set_ylabel(r"$\delta_p$")
    sc = meta["scatterer"]
    ax.set_title(
        recipe.title
        or rf"{sc['kind']}  $\Delta$={sc['deltas']}  $\delta E$={meta['delta_e']:g}"
    )
    fig.tight_layout()
    fig.savefig(recipe.out_path, dpi=150)
    plt.close(fig)
    return RenderResult(
        out_path=recipe.out_path,
        vlines=tuple(vlines),
        hlines=tuple(hlines),
        diagonals=True,
    )


def _render_fig4(recipe: FigureRecipe) -> RenderResult:
    meta = load_meta(recipe.csv_path)
    check_meta(recipe, meta, "crit-map")
    data = read_table(recipe.csv_path, {"k2_rel", "delta_p", "absT2"})
    n_p = meta["dp_grid"]["num"]
    n_k = meta["k2_grid"]["num"]
    if data.shape[0] != n_p * n_k:
        raise SchemaError(
            f"row count {data.shape[0]} does not match metadata grid {n_k}x{n_p}"
        )
    # rows: k2_rel outer, delta_p inner
    k2_rel = data["k2_rel"][::n_p]
    dp = data["delta_p"][:n_p]
    values = data["absT2"].reshape(n_k, n_p)

    k1 = meta["k1"]
    hlines = [root - k1 for root in meta["roots"]]

    fig, ax = plt.subplots(figsize=(5.5, 4.5))
    mesh = ax.pcolormesh(dp, k2_rel, values, shading="nearest", cmap="inferno")
    fig.colorbar(mesh, ax=ax, label=r"$|T|^2$")
    for y in hlines:
        ax.axhline(y, color="white", lw=1.2)
    ax.set_xlabel(r"$\delta_p$")
    ax.set_ylabel(r"$k_2 - k_1$")
    ax.set_title(recipe.title or rf"first photon fixed at transparency root $k_1$={k1:g}")
    fig.tight_layout()
    fig.savefig(recipe.out_path, dpi=150)
    plt.close(fig)
    return RenderResult(out_path=recipe.out_path, hlines=tuple(hlines))


def _render_fig5(recipe: FigureRecipe) -> RenderResult:
    data = read_table(recipe.csv_path, {"gamma1", "absT2_v", "absT2_2ls"})
    g1 = data["gamma1"]
    fig, ax = plt.subplots(figsize=(5.5, 4.0))
    ax.plot(g1, data["absT2_v"], "-", label="V-type atom")
    ax.plot(g1, data["absT2_2ls"], "--", label="two collocated 2LS")
    # mark where the pair of 2LS actually quenches, straight from the data
    g_min = float(g1[np.argmin(data["absT2_2ls"])])
    ax.axvline(g_min, color="gray", lw=0.8, ls=":")
    ax.set_xlabel(r"$\gamma_1 / \gamma_2$")
    ax.set_ylabel(r"$|T|^2$")
    ax.legend()
    ax.set_title(recipe.title or "Two-photon quenching at the transparency energy")
    fig.tight_layout()
    fig.savefig(recipe.out_path, dpi=150)
    plt.close(fig)
    return RenderResult(out_path=recipe.out_path, markers=(g_min,))


_RENDERERS = {
    "fig2": _render_fig2,
    "fig3": _render_fig3,
    "fig4": _render_fig4,
    "fig5": _render_fig5,
}


def render(recipe: FigureRecipe) -> RenderResult:
    """Render one recipe to a raster image; raises SchemaError on bad inputs."""
    return _RENDERERS[recipe.figure_id](recipe)
