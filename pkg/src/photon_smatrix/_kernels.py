"""Hot numeric kernels with numba-accelerated and pure-numpy implementations.

The accelerated path is used when numba imports successfully, unless the
environment variable PHOTON_SMATRIX_NUMBA is set to "0" (pure-numpy fallback).
Both paths are exercised by the test suite and by benchmarks/bench_kernels.py.
"""

import os

import numpy as np

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba installed
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def decorator(func):
            return func

        return decorator


USE_NUMBA = _HAVE_NUMBA and os.environ.get("PHOTON_SMATRIX_NUMBA", "1") != "0"


# ---------------------------------------------------------------------------
# batched single-photon amplitudes
# ---------------------------------------------------------------------------

def _s_batch_py(a_matrix, drive, energies):
    n_e = energies.shape[0]
    n = drive.shape[0]
    eye = np.eye(n, dtype=np.complex128)
    shifted = energies[:, None, None] * eye[None, :, :] - a_matrix[None, :, :]
    rhs = np.broadcast_to(drive[None, :, None], (n_e, n, 1))
    s = np.linalg.solve(shifted, rhs)[:, :, 0]
    return np.ascontiguousarray(s)


@njit(cache=True)
def _s_batch_nb(a_matrix, drive, energies):  # pragma: no cover - jitted
    n_e = energies.shape[0]
    n = drive.shape[0]
    out = np.empty((n_e, n), dtype=np.complex128)
    for i in range(n_e):
        m = -a_matrix.copy()
        for j in range(n):
            m[j, j] += energies[i]
        out[i, :] = np.linalg.solve(m, drive)
    return out


def s_batch(a_matrix, gammas, energies):
    """Amplitude vectors s^n at each energy: rows of (e - A)^{-1} sqrt(2*gamma)."""
    a_matrix = np.ascontiguousarray(a_matrix, dtype=np.complex128)
    energies = np.ascontiguousarray(energies, dtype=np.float64)
    drive = np.sqrt(2.0 * np.asarray(gammas, dtype=np.float64)).astype(np.complex128)
    if USE_NUMBA:
        return _s_batch_nb(a_matrix, drive, energies)
    return _s_batch_py(a_matrix, drive, energies)


# ---------------------------------------------------------------------------
# batched alpha / beta partial-fraction sums
# ---------------------------------------------------------------------------

def _alpha_batch_py(deltas, gammas, energies):
    return np.sum(gammas[None, :] / (energies[:, None] - deltas[None, :]), axis=1)


@njit(cache=True)
def _alpha_batch_nb(deltas, gammas, energies):  # pragma: no cover - jitted
    n_e = energies.shape[0]
    out = np.empty(n_e, dtype=np.float64)
    for i in range(n_e):
        acc = 0.0
        for n in range(deltas.shape[0]):
            acc += gammas[n] / (energies[i] - deltas[n])
        out[i] = acc
    return out


def alpha_batch(deltas, gammas, energies):
    deltas = np.ascontiguousarray(deltas, dtype=np.float64)
    gammas = np.ascontiguousarray(gammas, dtype=np.float64)
    energies = np.ascontiguousarray(energies, dtype=np.float64)
    if USE_NUMBA:
        return _alpha_batch_nb(deltas, gammas, energies)
    return _alpha_batch_py(deltas, gammas, energies)


# ---------------------------------------------------------------------------
# batched simplified two-photon coefficient (alpha/beta form)
# ---------------------------------------------------------------------------

def _t2_simplified_batch_py(deltas, gammas, k1s, k2s, p1s):
    p2s = k1s + k2s - p1s

    def a(e):
        return np.sum(gammas[None, :] / (e[:, None] - deltas[None, :]), axis=1)

    def b(e, f):
        return np.sum(
            gammas[None, :] / ((e[:, None] - deltas[None, :]) * (f[:, None] - deltas[None, :])),
            axis=1,
        )

    ak1, ak2, ap1, ap2 = a(k1s), a(k2s), a(p1s), a(p2s)
    pre = (2.0 / np.pi) / ((1.0 + 1j * ap1) * (1.0 + 1j * ap2))
    term1 = (ap2 * b(p1s, k1s) + ap1 * b(p2s, k1s)) / (1.0 + 1j * ak1)
    term2 = (ap2 * b(p1s, k2s) + ap1 * b(p2s, k2s)) / (1.0 + 1j * ak2)
    return pre * (term1 + term2)


@njit(cache=True)
def _t2_simplified_batch_nb(deltas, gammas, k1s, k2s, p1s):  # pragma: no cover - jitted
    n_pts = k1s.shape[0]
    n = deltas.shape[0]
    out = np.empty(n_pts, dtype=np.complex128)
    for i in range(n_pts):
        k1 = k1s[i]
        k2 = k2s[i]
        p1 = p1s[i]
        p2 = k1 + k2 - p1
        ak1 = 0.0
        ak2 = 0.0
        ap1 = 0.0
        ap2 = 0.0
        bp1k1 = 0.0
        bp2k1 = 0.0
        bp1k2 = 0.0
        bp2k2 = 0.0
        for m in range(n):
            d = deltas[m]
            g = gammas[m]
            ik1 = 1.0 / (k1 - d)
            ik2 = 1.0 / (k2 - d)
            ip1 = 1.0 / (p1 - d)
            ip2 = 1.0 / (p2 - d)
            ak1 += g * ik1
            ak2 += g * ik2
            ap1 += g * ip1
            ap2 += g * ip2
            bp1k1 += g * ip1 * ik1
            bp2k1 += g * ip2 * ik1
            bp1k2 += g * ip1 * ik2
            bp2k2 += g * ip2 * ik2
        pre = (2.0 / np.pi) / ((1.0 + 1j * ap1) * (1.0 + 1j * ap2))
        t1 = (ap2 * bp1k1 + ap1 * bp2k1) / (1.0 + 1j * ak1)
        t2 = (ap2 * bp1k2 + ap1 * bp2k2) / (1.0 + 1j * ak2)
        out[i] = pre * (t1 + t2)
    return out


def t2_simplified_batch(deltas, gammas, k1s, k2s, p1s):
    deltas = np.ascontiguousarray(deltas, dtype=np.float64)
    gammas = np.ascontiguousarray(gammas, dtype=np.float64)
    k1s = np.ascontiguousarray(k1s, dtype=np.float64)
    k2s = np.ascontiguousarray(k2s, dtype=np.float64)
    p1s = np.ascontiguousarray(p1s, dtype=np.float64)
    if USE_NUMBA:
        return _t2_simplified_batch_nb(deltas, gammas, k1s, k2s, p1s)
    return _t2_simplified_batch_py(deltas, gammas, k1s, k2s, p1s)


# ---------------------------------------------------------------------------
# fixed-step RK4 for the driven linear system  i x' = A x + b exp(-i w t)
# ---------------------------------------------------------------------------

def _rk4_driven_py(a_matrix, drive, omega, dt, n_steps, record_step):
    x = np.zeros(drive.shape[0], dtype=np.complex128)
    x_mid = x
    mi = -1j

    def f(t, y):
        return mi * (a_matrix @ y + drive * np.exp(-1j * omega * t))

    t = 0.0
    for step in range(n_steps):
        k1 = f(t, x)
        k2 = f(t + 0.5 * dt, x + 0.5 * dt * k1)
        k3 = f(t + 0.5 * dt, x + 0.5 * dt * k2)
        k4 = f(t + dt, x + dt * k3)
        x = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t += dt
        if step + 1 == record_step:
            x_mid = x.copy()
    return x_mid, x


@njit(cache=True)
def _rk4_driven_nb(a_matrix, drive, omega, dt, n_steps, record_step):  # pragma: no cover
    n = drive.shape[0]
    x = np.zeros(n, dtype=np.complex128)
    x_mid = np.zeros(n, dtype=np.complex128)
    t = 0.0
    for step in range(n_steps):
        e1 = np.exp(-1j * omega * t)
        e2 = np.exp(-1j * omega * (t + 0.5 * dt))
        e3 = np.exp(-1j * omega * (t + dt))
        k1 = -1j * (a_matrix @ x + drive * e1)
        k2 = -1j * (a_matrix @ (x + 0.5 * dt * k1) + drive * e2)
        k3 = -1j * (a_matrix @ (x + 0.5 * dt * k2) + drive * e2)
        k4 = -1j * (a_matrix @ (x + dt * k3) + drive * e3)
        x = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t += dt
        if step + 1 == record_step:
            x_mid = x.copy()
    return x_mid, x


def rk4_driven(a_matrix, drive, omega, dt, n_steps, record_step):
    """Integrate i x' = A x + b exp(-i omega t) from x(0)=0.

    Returns the state after `record_step` steps and after `n_steps` steps
    (used for the steady-state convergence check).
    """
    a_matrix = np.ascontiguousarray(a_matrix, dtype=np.complex128)
    drive = np.ascontiguousarray(drive, dtype=np.complex128)
    if USE_NUMBA:
        return _rk4_driven_nb(a_matrix, drive, float(omega), float(dt), int(n_steps), int(record_step))
    return _rk4_driven_py(a_matrix, drive, float(omega), float(dt), int(n_steps), int(record_step))
