import numpy as np

from photon_smatrix import Kind, Scatterer


def random_scatterer(rng, n_max=6, n_min=1, kind=Kind.V_ATOM, min_level_gap=1e-6):
    """Random valid scatterer; levels separated by at least min_level_gap."""
    while True:
        n = 2 if kind is Kind.TWO_2LS else int(rng.integers(n_min, n_max + 1))
        deltas = np.sort(rng.normal(0.0, 2.0, n))
        gammas = rng.uniform(0.3, 2.0, n)
        if n > 1 and np.min(np.diff(deltas)) <= min_level_gap:
            continue
        return Scatterer(kind=kind, deltas=tuple(deltas), gammas=tuple(gammas))


def energies_off_levels(rng, scatterer, size, band=1e-3, scale=4.0):
    out = []
    while len(out) < size:
        e = float(rng.normal(0.0, scale))
        if min(abs(e - d) for d in scatterer.deltas) > band:
            out.append(e)
    return out
