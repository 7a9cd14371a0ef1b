"""Fixed-seed invariant battery behind the `selftest` CLI command."""

from dataclasses import dataclass

import numpy as np

from .core import Kind, Scatterer, TwoPhotonPoint
from .crit import crit_roots
from .oracle import oracle_single, oracle_two_photon
from .single_photon import (
    GUARD_BAND,
    amplitudes_s,
    r_nonchiral,
    t_chiral,
    t_chiral_from_alpha,
    t_nonchiral,
)
from .two_photon import t2_chiral, t2_general, t2_simplified, t2_v2_closed

SEED = 20240815


@dataclass(frozen=True)
class PropertyResult:
    name: str
    max_deviation: float
    tolerance: float

    @property
    def ok(self) -> bool:
        return self.max_deviation < self.tolerance


def _random_scatterer(rng, n_max=6, n_min=1, kind=Kind.V_ATOM, min_level_gap=0.0):
    while True:
        n = int(rng.integers(n_min, n_max + 1))
        if kind is Kind.TWO_2LS:
            n = 2
        deltas = np.sort(rng.normal(0.0, 2.0, n))
        gammas = rng.uniform(0.3, 2.0, n)
        if n > 1 and np.min(np.diff(deltas)) <= min_level_gap:
            continue
        return Scatterer(kind=kind, deltas=tuple(deltas), gammas=tuple(gammas))


def _random_non_dark(rng, n_max=3, kind=Kind.V_ATOM):
    """Redraw until the slowest decay is comfortably above the oracle threshold."""
    while True:
        sc = _random_scatterer(rng, n_max=n_max, kind=kind, min_level_gap=1e-3)
        lam = np.linalg.eigvals(
            np.diag(sc.deltas) - 1j * np.sqrt(np.outer(sc.gammas, sc.gammas))
        )
        if float(np.min(-lam.imag)) > 0.05:
            return sc


def _away_from_levels(rng, scatterer, size, band=1e-3):
    out = []
    while len(out) < size:
        e = float(rng.normal(0.0, 4.0))
        if min(abs(e - d) for d in scatterer.deltas) > band:
            out.append(e)
    return out


def run_selftest(perturb: bool = False) -> list[PropertyResult]:
    rng = np.random.default_rng(SEED)
    results = []

    dev = 0.0
    for _ in range(300):
        sc = _random_scatterer(rng)
        k = float(rng.normal(0.0, 4.0))
        dev = max(dev, abs(abs(t_chiral(sc, k)) - 1.0))
    results.append(PropertyResult("chiral phase law | |t_c| - 1 |", dev, 1e-12))

    dev = 0.0
    for _ in range(300):
        sc = _random_scatterer(rng)
        k = float(rng.normal(0.0, 4.0))
        t = t_nonchiral(sc, k)
        r = r_nonchiral(sc, k)
        dev = max(dev, abs(abs(t) ** 2 + abs(r) ** 2 - 1.0))
    results.append(PropertyResult("flux conservation | |t|^2 + |r|^2 - 1 |", dev, 1e-12))

    dev = 0.0
    for _ in range(300):
        sc = _random_scatterer(rng)
        for k in _away_from_levels(rng, sc, 2, band=10 * GUARD_BAND):
            dev = max(dev, abs(t_chiral(sc, k) - t_chiral_from_alpha(sc, k)))
    results.append(PropertyResult("t_c resolvent vs alpha form", dev, 1e-10))

    dev = 0.0
    for _ in range(300):
        sc = _random_scatterer(rng, n_max=2, n_min=2, min_level_gap=1e-3)
        k1, k2, p1 = _away_from_levels(rng, sc, 3)
        while min(abs(k1 + k2 - p1 - d) for d in sc.deltas) <= 1e-3:
            (p1,) = _away_from_levels(rng, sc, 1)
        pt = TwoPhotonPoint(k1=k1, k2=k2, p1=p1)
        a = t2_general(sc, pt)
        b = t2_simplified(sc, pt)
        c = t2_v2_closed(sc, pt)
        ref = max(abs(a), 1e-30)
        dev = max(dev, abs(a - b) / ref, abs(a - c) / ref)
    if perturb:
        dev += 1e-3  # testing hook: force a visible failure
    results.append(PropertyResult("three-path agreement (relative)", dev, 1e-9))

    dev = 0.0
    for deltas, gammas in [((1.0, -1.0), (1.0, 1.0)), ((-1.0, 0.0, 1.0), (1.0, 1.0, 1.0))]:
        sc = Scatterer(kind=Kind.V_ATOM, deltas=deltas, gammas=gammas)
        roots = crit_roots(sc).roots
        for p1 in np.linspace(-5.0, 5.0, 21):
            pt = TwoPhotonPoint(k1=roots[0], k2=roots[-1], p1=float(p1))
            dev = max(dev, abs(t2_chiral(sc, pt)))
    results.append(PropertyResult("two-photon transparency quench |T|", dev, 1e-10))

    dev = 0.0
    for _ in range(3):
        sc = _random_non_dark(rng)
        k = float(rng.normal(0.0, 2.0))
        dev = max(dev, float(np.max(np.abs(oracle_single(sc, k) - amplitudes_s(sc, k)))))
    results.append(PropertyResult("time-domain oracle: single-photon amplitudes", dev, 1e-6))

    dev = 0.0
    for kind in (Kind.V_ATOM, Kind.TWO_2LS):
        sc = _random_non_dark(rng, kind=kind)
        k1, k2, p1 = (float(rng.normal(0.0, 2.0)) for _ in range(3))
        pt = TwoPhotonPoint(k1=k1, k2=k2, p1=p1)
        dev = max(dev, abs(oracle_two_photon(sc, pt) - t2_chiral(sc, pt)))
    results.append(PropertyResult("time-domain oracle: two-photon coefficient", dev, 1e-5))

    return results
