"""Datasets for the figure tests, produced through the primary CLI only."""

import json
import subprocess
import sys

import pytest

V2 = {"kind": "V_ATOM", "deltas": [1.0, -1.0], "gammas": [1.0, 1.0]}
V3 = {"kind": "V_ATOM", "deltas": [-1.0, 0.0, 1.0], "gammas": [1.0, 1.0, 1.0]}


def run_cli(command, config, out_path, tmp_path, extra=()):
    cfg_path = tmp_path / f"{command}-{out_path.name}.json"
    cfg_path.write_text(json.dumps(config), encoding="utf-8")
    subprocess.run(
        [sys.executable, "-m", "photon_smatrix.cli", command,
         "--config", str(cfg_path), "--out", str(out_path), *extra],
        check=True,
    )
    return out_path


@pytest.fixture(scope="session")
def data_dir(tmp_path_factory):
    tmp = tmp_path_factory.mktemp("datasets")

    run_cli("crit", {"scatterer": V2}, tmp / "crit_v2.json", tmp)
    run_cli("crit", {"scatterer": V3}, tmp / "crit_v3.json", tmp)

    run_cli(
        "two-photon-map",
        {
            "scatterer": V2,
            "delta_e": 0.0,
            "dk_grid": {"min": -4.0, "max": 4.0, "num": 41},
            "dp_grid": {"min": -4.0, "max": 4.0, "num": 41},
        },
        tmp / "map_v2.csv",
        tmp,
    )

    roots = json.loads((tmp / "crit_v3.json").read_text())["roots"]
    run_cli(
        "crit-map",
        {
            "scatterer": V3,
            "root_index": 0,
            # endpoints land exactly on the two transparency separations
            "k2_grid": {"min": 0.0, "max": roots[1] - roots[0], "num": 21},
            "dp_grid": {"min": -2.0, "max": 2.0, "num": 17},
        },
        tmp / "critmap_v3.csv",
        tmp,
    )

    run_cli(
        "quench-scan",
        {"gamma2": 1.0, "delta": 1.0, "gamma1_grid": {"min": 0.25, "max": 4.0, "num": 16}},
        tmp / "quench.csv",
        tmp,
    )

    run_cli(
        "poles",
        {"gammas": [1.0, 1.0], "delta_grid": {"min": 0.0, "max": 3.0, "num": 31}},
        tmp / "poles.csv",
        tmp,
    )
    return tmp
