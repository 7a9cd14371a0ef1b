"""Nonlinear two-photon scattering coefficient T.

T is the smooth coefficient multiplying the single total-energy delta; the
delta itself and the elastic (double-delta) part are never represented
numerically. Three independent analytic routes are provided for the chiral
coefficient, plus the exact non-chiral conversion and fluorescence-map
generation over (delta_k, delta_p) grids.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import (
    Chirality,
    ChiralityMismatchError,
    GuardBandError,
    Kind,
    KindMismatchError,
    Scatterer,
    TwoPhotonPoint,
    validate,
)
from .single_photon import GUARD_BAND, a_matrix, amplitudes_s, t_chiral, t_nonchiral


def _point_energies(pt: TwoPhotonPoint) -> tuple[float, float, float, float]:
    return pt.k1, pt.k2, pt.p1, pt.p2


def t2_general(scatterer: Scatterer, pt: TwoPhotonPoint) -> complex:
    """Chiral T from the resolvent amplitudes; regular at the level energies.

    For a TWO_2LS scatterer this is only the V-like evaluation of the general
    expression; use t2_two2ls for the physically correct total.
    """
    validate(scatterer)
    g = np.asarray(scatterer.gammas, dtype=float)
    root2g = np.sqrt(2.0 * g)
    sk1 = amplitudes_s(scatterer, pt.k1)
    sk2 = amplitudes_s(scatterer, pt.k2)
    sp1 = amplitudes_s(scatterer, pt.p1)
    sp2 = amplitudes_s(scatterer, pt.p2)
    w = sk1 + sk2
    term1 = np.sum(root2g * sp2) * np.sum(np.conj(sp1) * w)
    term2 = np.sum(sp2 * w) * np.sum(root2g * np.conj(sp1))
    return complex(t_chiral(scatterer, pt.p1) / (2.0 * math.pi) * (term1 + term2))


def t2_simplified(scatterer: Scatterer, pt: TwoPhotonPoint) -> complex:
    """Chiral T in the manifestly exchange-symmetric alpha/beta form.

    Guard-banded: every energy must stay away from the level energies.
    """
    validate(scatterer)
    band = GUARD_BAND * scatterer.gamma_scale
    for e in _point_energies(pt):
        for i, d in enumerate(scatterer.deltas, start=1):
            if abs(e - d) <= band:
                raise GuardBandError(
                    f"energy {e} within guard band of Delta_{i}={d}"
                )
    out = _kernels.t2_simplified_batch(
        scatterer.deltas,
        scatterer.gammas,
        np.array([pt.k1]),
        np.array([pt.k2]),
        np.array([pt.p1]),
    )
    return complex(out[0])


def _s_closed_n2(scatterer: Scatterer, k: float) -> np.ndarray:
    """Closed-form N=2 amplitudes (equal to the resolvent ones)."""
    d1, d2 = scatterer.deltas
    g1, g2 = scatterer.gammas
    det = (k - d1 + 1j * g1) * (k - d2 + 1j * g2) + g1 * g2
    return np.array(
        [
            math.sqrt(2.0 * g1) * (k - d2) / det,
            math.sqrt(2.0 * g2) * (k - d1) / det,
        ]
    )


def _t2_c1_n2(scatterer: Scatterer, pt: TwoPhotonPoint) -> complex:
    g = np.asarray(scatterer.gammas, dtype=float)
    sk1 = _s_closed_n2(scatterer, pt.k1)
    sk2 = _s_closed_n2(scatterer, pt.k2)
    sp1 = _s_closed_n2(scatterer, pt.p1)
    sp2 = _s_closed_n2(scatterer, pt.p2)
    return complex(
        (math.sqrt(2.0) / math.pi)
        * np.sum(np.sqrt(g) * sp1 * sp2 * (sk1 + sk2))
    )


def t2_v2_closed(scatterer: Scatterer, pt: TwoPhotonPoint) -> complex:
    """Closed-form chiral T for the N=2 V-atom, as the sum of two contributions."""
    validate(scatterer)
    if scatterer.kind is not Kind.V_ATOM or scatterer.n_levels != 2:
        raise KindMismatchError("t2_v2_closed requires an N=2 V_ATOM scatterer")
    g = np.asarray(scatterer.gammas, dtype=float)
    sk1 = _s_closed_n2(scatterer, pt.k1)
    sk2 = _s_closed_n2(scatterer, pt.k2)
    sp1 = _s_closed_n2(scatterer, pt.p1)
    sp2 = _s_closed_n2(scatterer, pt.p2)
    w = sk1 + sk2
    c1 = (math.sqrt(2.0) / math.pi) * np.sum(np.sqrt(g) * sp1 * sp2 * w)
    c2 = (
        (1.0 / (math.sqrt(2.0) * math.pi))
        * (sp1[0] * sp2[1] + sp1[1] * sp2[0])
        * (math.sqrt(g[1]) * w[0] + math.sqrt(g[0]) * w[1])
    )
    return complex(c1 + c2)


def t2_two2ls(scatterer: Scatterer, pt: TwoPhotonPoint) -> complex:
    """Chiral T for two collocated two-level systems.

    Shares the first contribution with the V-atom; the second carries the
    collective two-photon pole at k1 + k2 = Delta_1 + Delta_2 - i(gamma_1 + gamma_2)
    and cancels the first exactly when gamma_1 = gamma_2 and the total energy
    sits on the collective resonance.
    """
    validate(scatterer)
    if scatterer.kind is not Kind.TWO_2LS:
        raise KindMismatchError("t2_two2ls requires a TWO_2LS scatterer")
    d = scatterer.deltas
    g = np.asarray(scatterer.gammas, dtype=float)
    sk1 = _s_closed_n2(scatterer, pt.k1)
    sk2 = _s_closed_n2(scatterer, pt.k2)
    sp1 = _s_closed_n2(scatterer, pt.p1)
    sp2 = _s_closed_n2(scatterer, pt.p2)
    w = sk1 + sk2
    c1 = (math.sqrt(2.0) / math.pi) * np.sum(np.sqrt(g) * sp1 * sp2 * w)
    pole = pt.total_energy - d[0] - d[1] + 1j * (g[0] + g[1])
    c2 = (
        (-1j * math.sqrt(2.0) / math.pi)
        * np.sum(sp1 * sp2)
        * (math.sqrt(g[1]) * w[0] + math.sqrt(g[0]) * w[1])
        * math.sqrt(g[0] * g[1])
        / pole
    )
    return complex(c1 + c2)


def t2_chiral(scatterer: Scatterer, pt: TwoPhotonPoint) -> complex:
    """Total chiral T, dispatched on the scatterer kind."""
    if scatterer.kind is Kind.TWO_2LS:
        return t2_two2ls(scatterer, pt)
    return t2_general(scatterer, pt)


def t2_nonchiral(scatterer: Scatterer, pt: TwoPhotonPoint) -> complex:
    """Non-chiral T = chiral T / 4, with non-chiral rates stored in the scatterer.

    Energies are detunings and may be negative; the outgoing channel
    (transmitted vs reflected) does not enter the coefficient, so all four
    channel combinations share this value.
    """
    validate(scatterer)
    if scatterer.chirality is not Chirality.NONCHIRAL:
        raise ChiralityMismatchError("t2_nonchiral requires a NONCHIRAL scatterer")
    return t2_chiral(scatterer, pt) / 4.0


@dataclass(frozen=True)
class TwoPhotonResult:
    """Smooth coefficient T plus the elastic coefficients of the two delta pairings."""

    T: complex
    elastic: tuple[complex, complex]


def two_photon_result(scatterer: Scatterer, pt: TwoPhotonPoint) -> TwoPhotonResult:
    validate(scatterer)
    if scatterer.chirality is Chirality.NONCHIRAL:
        t = t2_nonchiral(scatterer, pt)
        e1 = t_nonchiral(scatterer, pt.k1) * t_nonchiral(scatterer, pt.k2)
    else:
        t = t2_chiral(scatterer, pt)
        e1 = t_chiral(scatterer, pt.k1) * t_chiral(scatterer, pt.k2)
    # both pairings (p1=k1, p2=k2) and (p1=k2, p2=k1) carry the same product
    return TwoPhotonResult(T=t, elastic=(e1, e1))


# ---------------------------------------------------------------------------
# batched evaluation and fluorescence maps
# ---------------------------------------------------------------------------

def t2_general_batch(scatterer: Scatterer, k1s, k2s, p1s) -> np.ndarray:
    """Vectorized t2_general over arrays of on-shell points (chiral kernel)."""
    validate(scatterer)
    k1s = np.asarray(k1s, dtype=float)
    k2s = np.asarray(k2s, dtype=float)
    p1s = np.asarray(p1s, dtype=float)
    p2s = k1s + k2s - p1s
    a = a_matrix(scatterer)
    g = np.asarray(scatterer.gammas, dtype=float)
    root2g = np.sqrt(2.0 * g)
    energies = np.concatenate([k1s, k2s, p1s, p2s])
    s = _kernels.s_batch(a, scatterer.gammas, energies)
    n = len(k1s)
    sk1, sk2, sp1, sp2 = s[:n], s[n : 2 * n], s[2 * n : 3 * n], s[3 * n :]
    w = sk1 + sk2
    u_p1 = sp1 @ root2g
    u_p2 = sp2 @ root2g
    tc_p1 = 1.0 - 1j * u_p1
    term1 = u_p2 * np.sum(np.conj(sp1) * w, axis=1)
    term2 = np.sum(sp2 * w, axis=1) * np.conj(u_p1)
    return tc_p1 / (2.0 * math.pi) * (term1 + term2)


@dataclass(frozen=True)
class FluorescenceMap:
    """|T|^2 samples on a rectangular (delta_k, delta_p) grid at fixed total energy.

    t_values[i, j] corresponds to dp_grid[i], dk_grid[j]; on shell by
    construction with k1 = deltaE/2 + delta_k, k2 = deltaE/2 - delta_k,
    p1 = deltaE/2 + delta_p, p2 = deltaE/2 - delta_p.
    """

    delta_e: float
    dk_grid: np.ndarray
    dp_grid: np.ndarray
    t_values: np.ndarray
    abs2: np.ndarray
    gamma_ref: float


def fluorescence_map(
    scatterer: Scatterer,
    delta_e: float,
    dk_grid,
    dp_grid,
    gamma_ref: float = 1.0,
) -> FluorescenceMap:
    """Non-chiral T on the full grid, row-major over (delta_p, delta_k)."""
    validate(scatterer)
    if scatterer.chirality is not Chirality.NONCHIRAL:
        raise ChiralityMismatchError("fluorescence_map requires a NONCHIRAL scatterer")
    dk = np.asarray(dk_grid, dtype=float)
    dp = np.asarray(dp_grid, dtype=float)
    if dk.size == 0 or dp.size == 0:
        raise ValueError("grids must be non-empty")
    half = delta_e / 2.0
    k1 = half + dk
    k2 = half - dk
    p1 = half + dp
    p2 = half - dp

    a = a_matrix(scatterer)
    g = np.asarray(scatterer.gammas, dtype=float)
    root2g = np.sqrt(2.0 * g)
    energies = np.concatenate([k1, k2, p1, p2])
    s = _kernels.s_batch(a, scatterer.gammas, energies)
    nk, npp = dk.size, dp.size
    sk1, sk2 = s[:nk], s[nk : 2 * nk]
    sp1, sp2 = s[2 * nk : 2 * nk + npp], s[2 * nk + npp :]
    w = sk1 + sk2  # (nk, N)

    if scatterer.kind is Kind.TWO_2LS:
        rootg = np.sqrt(g)
        gbar = rootg[::-1]
        c1 = (math.sqrt(2.0) / math.pi) * ((sp1 * sp2 * rootg[None, :]) @ w.T)
        pole = delta_e - sum(scatterer.deltas) + 1j * (g[0] + g[1])
        fac = (-1j * math.sqrt(2.0) / math.pi) * math.sqrt(g[0] * g[1]) / pole
        c2 = fac * np.outer(np.sum(sp1 * sp2, axis=1), w @ gbar)
        t = c1 + c2
    else:
        u_p1 = sp1 @ root2g
        u_p2 = sp2 @ root2g
        tc_p1 = 1.0 - 1j * u_p1
        term1 = u_p2[:, None] * (np.conj(sp1) @ w.T)
        term2 = np.conj(u_p1)[:, None] * (sp2 @ w.T)
        t = tc_p1[:, None] / (2.0 * math.pi) * (term1 + term2)

    t = t / 4.0  # non-chiral conversion
    return FluorescenceMap(
        delta_e=float(delta_e),
        dk_grid=dk,
        dp_grid=dp,
        t_values=t,
        abs2=np.abs(t) ** 2,
        gamma_ref=float(gamma_ref),
    )
