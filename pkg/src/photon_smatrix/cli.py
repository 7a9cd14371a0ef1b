"""Command-line front end emitting byte-stable CSV/JSON spectroscopy datasets.

Exit codes: 0 ok, 1 selftest failure, 2 config error, 3 numerical error.
"""

import argparse
import json
import math
import os
import sys

import numpy as np

from .core import (
    Chirality,
    Kind,
    Scatterer,
    ScattererError,
    TwoPhotonPoint,
    ValidationError,
    validate,
)
from .core import PoleAtLevelError
from .crit import crit_roots, quench_scan
from .selftest import run_selftest
from .single_photon import alpha, poles, r_nonchiral, t_nonchiral
from .two_photon import fluorescence_map, t2_nonchiral


class ConfigError(Exception):
    pass


def _fmt(x: float) -> str:
    return f"{x:.16e}"


def _check_keys(obj: dict, allowed: set, required: set, ctx: str) -> None:
    if not isinstance(obj, dict):
        raise ConfigError(f"{ctx}: expected a JSON object")
    unknown = set(obj) - allowed
    if unknown:
        raise ConfigError(f"{ctx}: unknown key(s) {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise ConfigError(f"{ctx}: missing required key(s) {sorted(missing)}")


def _parse_scatterer(obj) -> Scatterer:
    _check_keys(
        obj,
        allowed={"kind", "deltas", "gammas", "chirality"},
        required={"kind", "deltas", "gammas"},
        ctx="scatterer",
    )
    try:
        kind = Kind(obj["kind"])
    except ValueError:
        raise ConfigError(f"scatterer: unknown kind {obj['kind']!r}") from None
    try:
        chirality = Chirality(obj.get("chirality", "NONCHIRAL"))
    except ValueError:
        raise ConfigError(f"scatterer: unknown chirality {obj['chirality']!r}") from None
    sc = Scatterer(kind=kind, deltas=tuple(obj["deltas"]), gammas=tuple(obj["gammas"]), chirality=chirality)
    try:
        validate(sc)
    except ValidationError as exc:
        raise ConfigError(f"scatterer: {exc}") from None
    return sc


def _parse_grid(obj, ctx: str) -> np.ndarray:
    _check_keys(obj, allowed={"min", "max", "num"}, required={"min", "max", "num"}, ctx=ctx)
    num = obj["num"]
    if not isinstance(num, int) or num < 1:
        raise ConfigError(f"{ctx}: num must be a positive integer")
    return np.linspace(float(obj["min"]), float(obj["max"]), num)


def _load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None


def _write_table(out_path: str, fmt: str, header: list[str], rows: list[list[float]]) -> None:
    if fmt == "json":
        records = [dict(zip(header, row)) for row in rows]
        text = json.dumps(records, indent=2) + "\n"
    else:
        lines = [",".join(header)]
        lines.extend(",".join(_fmt(v) for v in row) for row in rows)
        text = "\n".join(lines) + "\n"
    with open(out_path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def _write_json(out_path: str, payload: dict) -> None:
    with open(out_path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(payload, f, indent=2)
        f.write("\n")


def _scatterer_meta(sc: Scatterer) -> dict:
    return {
        "kind": sc.kind.value,
        "deltas": list(sc.deltas),
        "gammas": list(sc.gammas),
        "chirality": sc.chirality.value,
    }


def cmd_single_scan(config: dict, out: str, fmt: str) -> None:
    _check_keys(config, {"scatterer", "gamma_ref", "k_grid"}, {"scatterer", "k_grid"}, "config")
    sc = _parse_scatterer(config["scatterer"])
    grid = _parse_grid(config["k_grid"], "k_grid")
    header = ["k", "t_re", "t_im", "abs_t2", "r_re", "r_im", "abs_r2", "alpha"]
    rows = []
    for k in grid:
        t = t_nonchiral(sc, float(k))
        r = r_nonchiral(sc, float(k))
        try:
            a = alpha(sc, float(k))
        except PoleAtLevelError:
            a = math.nan
        rows.append([k, t.real, t.imag, abs(t) ** 2, r.real, r.imag, abs(r) ** 2, a])
    _write_table(out, fmt, header, rows)


def _match_tracks(prev: list[complex], cur: list[complex]) -> list[complex]:
    """Nearest-neighbor continuation of pole tracks; ties resolved by real part."""
    remaining = sorted(cur, key=lambda z: (z.real, z.imag))
    ordered = []
    for ref in prev:
        best = min(remaining, key=lambda z: (abs(z - ref), z.real))
        remaining.remove(best)
        ordered.append(best)
    return ordered


def cmd_poles(config: dict, out: str, fmt: str) -> None:
    _check_keys(config, {"gamma_ref", "gammas", "delta_grid"}, {"delta_grid"}, "config")
    gammas = tuple(config.get("gammas", [1.0, 1.0]))
    if len(gammas) != 2:
        raise ConfigError("gammas must have exactly two entries for the pole sweep")
    grid = _parse_grid(config["delta_grid"], "delta_grid")
    n = len(gammas)
    header = ["delta_sweep_value"]
    header += [f"re_pole_{i + 1}" for i in range(n)]
    header += [f"im_pole_{i + 1}" for i in range(n)]
    rows = []
    prev = None
    for d in grid:
        sc = Scatterer(kind=Kind.V_ATOM, deltas=(float(d), float(-d)), gammas=gammas)
        cur = poles(sc)
        ordered = cur if prev is None else _match_tracks(prev, cur)
        prev = ordered
        rows.append([d] + [z.real for z in ordered] + [z.imag for z in ordered])
    _write_table(out, fmt, header, rows)


def cmd_two_photon_map(config: dict, out: str, fmt: str, threads: int) -> None:
    _check_keys(
        config,
        {"scatterer", "gamma_ref", "delta_e", "dk_grid", "dp_grid"},
        {"scatterer", "delta_e", "dk_grid", "dp_grid"},
        "config",
    )
    sc = _parse_scatterer(config["scatterer"])
    gamma_ref = float(config.get("gamma_ref", 1.0))
    dk = _parse_grid(config["dk_grid"], "dk_grid")
    dp = _parse_grid(config["dp_grid"], "dp_grid")
    fmap = fluorescence_map(sc, float(config["delta_e"]), dk, dp, gamma_ref=gamma_ref)
    if not np.all(np.isfinite(fmap.t_values)):
        raise ScattererError("non-finite values in fluorescence map")
    header = ["delta_k", "delta_p", "T_re", "T_im", "absT2"]
    rows = []
    for i, dpv in enumerate(dp):
        for j, dkv in enumerate(dk):
            t = fmap.t_values[i, j]
            rows.append([dkv, dpv, t.real, t.imag, fmap.abs2[i, j]])
    _write_table(out, fmt, header, rows)
    _write_json(
        out + ".meta.json",
        {
            "command": "two-photon-map",
            "scatterer": _scatterer_meta(sc),
            "delta_e": fmap.delta_e,
            "gamma_ref": gamma_ref,
            "units": "absT2 in 1/gamma_ref^2",
            "dk_grid": {"min": float(dk[0]), "max": float(dk[-1]), "num": int(dk.size)},
            "dp_grid": {"min": float(dp[0]), "max": float(dp[-1]), "num": int(dp.size)},
            "threads": threads,
        },
    )


def cmd_crit(config: dict, out: str, fmt: str) -> None:
    _check_keys(config, {"scatterer", "gamma_ref"}, {"scatterer"}, "config")
    sc = _parse_scatterer(config["scatterer"])
    cs = crit_roots(sc)
    _write_json(
        out,
        {
            "scatterer": _scatterer_meta(sc),
            "gamma_ref": float(config.get("gamma_ref", 1.0)),
            "roots": list(cs.roots),
            "residuals": list(cs.residuals),
        },
    )


def cmd_crit_map(config: dict, out: str, fmt: str, threads: int) -> None:
    _check_keys(
        config,
        {"scatterer", "gamma_ref", "root_index", "k2_grid", "dp_grid"},
        {"scatterer", "k2_grid", "dp_grid"},
        "config",
    )
    sc = _parse_scatterer(config["scatterer"])
    gamma_ref = float(config.get("gamma_ref", 1.0))
    root_index = config.get("root_index", 0)
    cs = crit_roots(sc)
    if not cs.roots:
        raise ConfigError("scatterer has no transparency roots (N=1)")
    if not isinstance(root_index, int) or not 0 <= root_index < len(cs.roots):
        raise ConfigError(f"root_index must be in [0, {len(cs.roots) - 1}]")
    k1 = cs.roots[root_index]
    k2_rel = _parse_grid(config["k2_grid"], "k2_grid")
    dp = _parse_grid(config["dp_grid"], "dp_grid")
    header = ["k2_rel", "delta_p", "T_re", "T_im", "absT2"]
    rows = []
    for rel in k2_rel:
        k2 = k1 + float(rel)
        half = (k1 + k2) / 2.0
        for dpv in dp:
            t = t2_nonchiral(sc, TwoPhotonPoint(k1=k1, k2=k2, p1=half + float(dpv)))
            rows.append([rel, dpv, t.real, t.imag, abs(t) ** 2])
    _write_table(out, fmt, header, rows)
    _write_json(
        out + ".meta.json",
        {
            "command": "crit-map",
            "scatterer": _scatterer_meta(sc),
            "gamma_ref": gamma_ref,
            "units": "absT2 in 1/gamma_ref^2",
            "roots": list(cs.roots),
            "root_index": root_index,
            "k1": k1,
            "k2_grid": {"min": float(k2_rel[0]), "max": float(k2_rel[-1]), "num": int(k2_rel.size)},
            "dp_grid": {"min": float(dp[0]), "max": float(dp[-1]), "num": int(dp.size)},
            "threads": threads,
        },
    )


def cmd_quench_scan(config: dict, out: str, fmt: str) -> None:
    _check_keys(
        config,
        {"gamma_ref", "gamma2", "delta", "gamma1_grid"},
        {"gamma2", "delta", "gamma1_grid"},
        "config",
    )
    grid = _parse_grid(config["gamma1_grid"], "gamma1_grid")
    if np.any(grid <= 0):
        raise ConfigError("gamma1_grid must be strictly positive")
    rows = quench_scan(grid, float(config["gamma2"]), float(config["delta"]))
    _write_table(out, fmt, ["gamma1", "absT2_v", "absT2_2ls"], [list(r) for r in rows])


def cmd_selftest(perturb: bool) -> int:
    results = run_selftest(perturb=perturb)
    ok = True
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        ok = ok and r.ok
        print(f"{status}  {r.name}: max deviation {r.max_deviation:.3e} (tol {r.tolerance:.0e})")
    print("selftest:", "OK" if ok else "FAILED")
    return 0 if ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="photon-smatrix",
        description="One- and two-photon scattering datasets for multilevel emitters in a 1D waveguide",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    needs_io = ["single-scan", "poles", "two-photon-map", "crit", "crit-map", "quench-scan"]
    for name in needs_io:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="JSON configuration file")
        p.add_argument("--out", required=True, help="output file path")
        p.add_argument("--threads", type=int, default=None, help="parallelism hint")
        p.add_argument("--format", choices=["csv", "json"], default="csv")
    p = sub.add_parser("selftest")
    p.add_argument("--perturb", action="store_true", help=argparse.SUPPRESS)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "selftest":
        return cmd_selftest(args.perturb)
    try:
        threads = args.threads
        if threads is None:
            threads = int(os.environ.get("PHOTON_SMATRIX_THREADS", "1"))
        if threads < 1:
            raise ConfigError("--threads must be >= 1")
        config = _load_config(args.config)
        if args.command == "single-scan":
            cmd_single_scan(config, args.out, args.format)
        elif args.command == "poles":
            cmd_poles(config, args.out, args.format)
        elif args.command == "two-photon-map":
            cmd_two_photon_map(config, args.out, args.format, threads)
        elif args.command == "crit":
            cmd_crit(config, args.out, args.format)
        elif args.command == "crit-map":
            cmd_crit_map(config, args.out, args.format, threads)
        elif args.command == "quench-scan":
            cmd_quench_scan(config, args.out, args.format)
        return 0
    except (ConfigError, ValidationError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ScattererError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
