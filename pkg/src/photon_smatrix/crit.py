"""Transparency (CRIT) conditions: root finding and verification.

Perfect single-photon transmission occurs where alpha_k = 0, equivalently
where the polynomial sum_n gamma_n prod_{m != n} (k - Delta_m) vanishes.
Repeated level energies are merged (rates summed) before building the
polynomial, so degenerate configurations produce no spurious roots.
"""

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from .core import (
    Kind,
    RootQualityError,
    Scatterer,
    TwoPhotonPoint,
    validate,
)
from .single_photon import alpha, r_nonchiral, t_nonchiral
from .two_photon import t2_chiral, t2_nonchiral

#: residual and realness tolerance for transparency roots
ROOT_TOL = 1e-9
#: tolerance for exact-zero physics assertions at double precision
ZERO_TOL = 1e-12


@dataclass(frozen=True)
class CritSet:
    """Real transparency energies, ascending, with |alpha(root)| residuals."""

    roots: tuple[float, ...]
    residuals: tuple[float, ...]


def _merged_levels(scatterer: Scatterer) -> tuple[np.ndarray, np.ndarray]:
    merged: dict[float, float] = {}
    for d, g in zip(scatterer.deltas, scatterer.gammas):
        merged[d] = merged.get(d, 0.0) + g
    d = np.array(sorted(merged), dtype=float)
    g = np.array([merged[x] for x in sorted(merged)], dtype=float)
    return d, g


def crit_polynomial(scatterer: Scatterer) -> np.ndarray:
    """Ascending coefficients of sum_j gamma_j prod_{l != j} (k - Delta_l).

    Built over the merged (distinct) levels; degree is one less than the
    number of distinct level energies. N=1 yields the empty polynomial.
    """
    validate(scatterer)
    d, g = _merged_levels(scatterer)
    if d.size < 2:
        return np.zeros(0)
    coeffs = np.zeros(d.size)
    for j in range(d.size):
        others = np.delete(d, j)
        coeffs = coeffs + g[j] * P.polyfromroots(others).real
    return coeffs


def crit_roots(scatterer: Scatterer) -> CritSet:
    """Transparency roots via companion-matrix eigenvalues plus one Newton polish on alpha."""
    validate(scatterer)
    coeffs = crit_polynomial(scatterer)
    if coeffs.size == 0:
        return CritSet(roots=(), residuals=())
    raw = P.polyroots(coeffs)
    scale = scatterer.gamma_scale
    d = np.asarray(scatterer.deltas)
    g = np.asarray(scatterer.gammas)
    roots = []
    for z in raw:
        if abs(z.imag) > ROOT_TOL * max(1.0, scale):
            raise RootQualityError(f"complex root {z} from transparency polynomial")
        k = float(z.real)
        # one Newton step on alpha removes expansion round-off
        num = float(np.sum(g / (k - d)))
        den = float(np.sum(-g / (k - d) ** 2))
        if den != 0.0:
            k = k - num / den
        roots.append(k)
    roots.sort()
    residuals = [abs(alpha(scatterer, k)) for k in roots]
    for k, r in zip(roots, residuals):
        if r > ROOT_TOL * max(1.0, scale):
            raise RootQualityError(f"residual |alpha({k})| = {r:.3e} exceeds {ROOT_TOL}")
    return CritSet(roots=tuple(roots), residuals=tuple(residuals))


@dataclass(frozen=True)
class CritReport:
    """Measured deviations from perfect transparency at a candidate root."""

    ok: bool
    t_deviation: float
    r_deviation: float


def verify_single_crit(scatterer: Scatterer, root: float) -> CritReport:
    """Check |t(root) - 1| and |r(root)| against the root tolerance."""
    validate(scatterer)
    t_dev = abs(t_nonchiral(scatterer, root) - 1.0)
    r_dev = abs(r_nonchiral(scatterer, root))
    return CritReport(ok=t_dev < ROOT_TOL and r_dev < ROOT_TOL, t_deviation=t_dev, r_deviation=r_dev)


@dataclass(frozen=True)
class TwoPhotonCritReport:
    """Largest |T| found with both incoming (then both outgoing) photons at roots."""

    ok: bool
    max_abs_t_incoming: float
    max_abs_t_outgoing: float


def verify_two_photon_crit(
    scatterer: Scatterer,
    root_i: float,
    root_j: float,
    p1_samples,
) -> TwoPhotonCritReport:
    """Quench check: T should vanish with both inputs (or both outputs) at roots.

    For a V-atom this holds for every sampled third energy; for TWO_2LS with
    unequal rates the report comes back not-ok, which is the expected physics.
    """
    validate(scatterer)
    samples = np.asarray(p1_samples, dtype=float)
    max_in = 0.0
    for p1 in samples:
        t = t2_chiral(scatterer, TwoPhotonPoint(k1=root_i, k2=root_j, p1=float(p1)))
        max_in = max(max_in, abs(t))
    # outgoing-side statement: p1, p2 at the roots, arbitrary on-shell k1
    max_out = 0.0
    for k1 in samples:
        k2 = root_i + root_j - float(k1)
        t = t2_chiral(scatterer, TwoPhotonPoint(k1=float(k1), k2=k2, p1=root_i))
        max_out = max(max_out, abs(t))
    return TwoPhotonCritReport(
        ok=max_in < ROOT_TOL and max_out < ROOT_TOL,
        max_abs_t_incoming=max_in,
        max_abs_t_outgoing=max_out,
    )


def quench_scan(gamma1_grid, gamma2: float, delta: float) -> list[tuple[float, float, float]]:
    """Rows (gamma1, |T_V|^2, |T_2LS|^2) at k = transparency root, all four energies equal.

    The level energies are (delta, -delta) and the root is recomputed per row.
    """
    rows = []
    for g1 in np.asarray(gamma1_grid, dtype=float):
        deltas = (float(delta), float(-delta))
        gammas = (float(g1), float(gamma2))
        sc_v = Scatterer(kind=Kind.V_ATOM, deltas=deltas, gammas=gammas)
        sc_2 = Scatterer(kind=Kind.TWO_2LS, deltas=deltas, gammas=gammas)
        k = crit_roots(sc_v).roots[0]
        pt = TwoPhotonPoint(k1=k, k2=k, p1=k)
        tv = t2_nonchiral(sc_v, pt)
        t2 = t2_nonchiral(sc_2, pt)
        rows.append((float(g1), abs(tv) ** 2, abs(t2) ** 2))
    return rows
