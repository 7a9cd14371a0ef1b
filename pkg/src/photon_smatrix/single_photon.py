"""Single-photon scattering amplitudes, coefficients and poles.

The canonical evaluation path goes through the dense resolvent (k - A),
which is regular for every real k when all decay rates are positive.
The partial-fraction quantities alpha and beta have removable poles at the
level energies and are used for cross-checks and the simplified two-photon
expression only.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import (
    Chirality,
    ChiralityMismatchError,
    EigenFailureError,
    PoleAtLevelError,
    Scatterer,
    SingularResolventError,
    validate,
)

#: half-width of the exclusion zone around each level energy, in units of the
#: scatterer's reference rate, for alpha/beta based code paths
GUARD_BAND = 1e-6


def a_matrix(scatterer: Scatterer) -> np.ndarray:
    """Effective non-Hermitian matrix A_nm = Delta_n delta_nm - i sqrt(gamma_n gamma_m)."""
    validate(scatterer)
    g = np.asarray(scatterer.gammas, dtype=float)
    return np.diag(np.asarray(scatterer.deltas, dtype=float)).astype(complex) - 1j * np.sqrt(
        np.outer(g, g)
    )


def amplitudes_s(scatterer: Scatterer, k: float) -> np.ndarray:
    """Excited-level amplitudes s^n_k = sum_m sqrt(2 gamma_m) [(k - A)^{-1}]_nm."""
    validate(scatterer)
    a = a_matrix(scatterer)
    shifted = k * np.eye(scatterer.n_levels) - a
    b = np.sqrt(2.0 * np.asarray(scatterer.gammas, dtype=float))
    cond = np.linalg.cond(shifted)
    if not np.isfinite(cond) or cond > 1.0 / np.finfo(float).eps:
        raise SingularResolventError(
            f"(k - A) is numerically singular at k={k} (cond={cond:.3e})"
        )
    return np.linalg.solve(shifted, b.astype(complex))


def amplitudes_s_batch(scatterer: Scatterer, energies) -> np.ndarray:
    """Row i holds s^n at energies[i]; hot path shared by maps and sweeps."""
    validate(scatterer)
    return _kernels.s_batch(a_matrix(scatterer), scatterer.gammas, np.asarray(energies, dtype=float))


def _check_guard(scatterer: Scatterer, energies, strict: bool) -> None:
    band = 0.0 if strict else GUARD_BAND * scatterer.gamma_scale
    for e in energies:
        for i, d in enumerate(scatterer.deltas, start=1):
            if abs(e - d) <= band:
                raise PoleAtLevelError(
                    f"energy {e} coincides with level energy Delta_{i}={d}"
                )


def alpha(scatterer: Scatterer, k: float) -> float:
    """Partial-fraction sum alpha_k = sum_n gamma_n / (k - Delta_n)."""
    validate(scatterer)
    _check_guard(scatterer, (k,), strict=True)
    return float(
        np.sum(np.asarray(scatterer.gammas) / (k - np.asarray(scatterer.deltas)))
    )


def beta(scatterer: Scatterer, k: float, p: float) -> float:
    """beta_kp = sum_n gamma_n / ((k - Delta_n)(p - Delta_n))."""
    validate(scatterer)
    _check_guard(scatterer, (k, p), strict=True)
    d = np.asarray(scatterer.deltas)
    return float(np.sum(np.asarray(scatterer.gammas) / ((k - d) * (p - d))))


def t_chiral(scatterer: Scatterer, k: float) -> complex:
    """Chiral transmission t^c_k = 1 - i sum_n sqrt(2 gamma_n) s^n_k (unit modulus on the real axis)."""
    s = amplitudes_s(scatterer, k)
    g = np.asarray(scatterer.gammas, dtype=float)
    return complex(1.0 - 1j * np.sum(np.sqrt(2.0 * g) * s))


def t_chiral_from_alpha(scatterer: Scatterer, k: float) -> complex:
    """Cross-check path t^c_k = (1 - i alpha_k)/(1 + i alpha_k); invalid at the levels."""
    validate(scatterer)
    _check_guard(scatterer, (k,), strict=False)
    a = alpha(scatterer, k)
    return complex((1.0 - 1j * a) / (1.0 + 1j * a))


def _require_nonchiral(scatterer: Scatterer) -> None:
    if scatterer.chirality is not Chirality.NONCHIRAL:
        raise ChiralityMismatchError(
            "operation requires a NONCHIRAL scatterer (gammas are non-chiral rates)"
        )


def t_nonchiral(scatterer: Scatterer, k: float) -> complex:
    """Non-chiral transmission t_k = (t^c_k + 1)/2."""
    validate(scatterer)
    _require_nonchiral(scatterer)
    return (t_chiral(scatterer, k) + 1.0) / 2.0


def r_nonchiral(scatterer: Scatterer, k: float) -> complex:
    """Non-chiral reflection r_k = t_k - 1."""
    return t_nonchiral(scatterer, k) - 1.0


def poles(scatterer: Scatterer) -> list[complex]:
    """Eigenvalues of A: the complex poles of s^n_k, sorted by (Re, Im)."""
    validate(scatterer)
    try:
        vals = np.linalg.eigvals(a_matrix(scatterer))
    except np.linalg.LinAlgError as exc:  # pragma: no cover - diagnostic only
        raise EigenFailureError(str(exc)) from exc
    return sorted((complex(v) for v in vals), key=lambda z: (z.real, z.imag))


@dataclass(frozen=True)
class SingleAmplitudes:
    """Bundle of all single-photon quantities at one energy.

    alpha is NaN when k sits exactly on a level; t and r are None for a
    chiral scatterer.
    """

    s: tuple[complex, ...]
    alpha: float
    t_chiral: complex
    t: complex | None
    r: complex | None


def single_amplitudes(scatterer: Scatterer, k: float) -> SingleAmplitudes:
    validate(scatterer)
    s = amplitudes_s(scatterer, k)
    try:
        a = alpha(scatterer, k)
    except PoleAtLevelError:
        a = math.nan
    tc = t_chiral(scatterer, k)
    if scatterer.chirality is Chirality.NONCHIRAL:
        t = (tc + 1.0) / 2.0
        r = t - 1.0
    else:
        t = None
        r = None
    return SingleAmplitudes(s=tuple(complex(x) for x in s), alpha=a, t_chiral=tc, t=t, r=r)
