import math

import numpy as np
import pytest

from photon_smatrix import (
    Chirality,
    Kind,
    Scatterer,
    TwoPhotonPoint,
    amplitudes_s,
    fluorescence_map,
    t2_general,
    t2_nonchiral,
    t2_simplified,
    t2_two2ls,
    t2_v2_closed,
)
from photon_smatrix.core import ChiralityMismatchError, GuardBandError, KindMismatchError
from photon_smatrix.two_photon import t2_chiral, t2_general_batch, two_photon_result

from helpers import energies_off_levels, random_scatterer


def _on_shell_point(rng, sc):
    k1, k2, p1 = energies_off_levels(rng, sc, 3)
    while min(abs(k1 + k2 - p1 - d) for d in sc.deltas) <= 1e-3:
        (p1,) = energies_off_levels(rng, sc, 1)
    return TwoPhotonPoint(k1=k1, k2=k2, p1=p1)


def test_three_paths_agree_for_n2(rng):
    for _ in range(200):
        sc = random_scatterer(rng, n_min=2, n_max=2, min_level_gap=1e-3)
        pt = _on_shell_point(rng, sc)
        a = t2_general(sc, pt)
        b = t2_simplified(sc, pt)
        c = t2_v2_closed(sc, pt)
        ref = max(abs(a), 1e-30)
        assert abs(a - b) / ref < 1e-9
        assert abs(a - c) / ref < 1e-9


def test_general_and_simplified_agree_for_larger_n(rng):
    for _ in range(100):
        sc = random_scatterer(rng, n_min=3, n_max=6, min_level_gap=1e-3)
        pt = _on_shell_point(rng, sc)
        a = t2_general(sc, pt)
        b = t2_simplified(sc, pt)
        assert abs(a - b) / max(abs(a), 1e-30) < 1e-9


def test_exchange_and_time_reversal_symmetries(rng):
    for kind in (Kind.V_ATOM, Kind.TWO_2LS):
        for _ in range(50):
            sc = random_scatterer(rng, n_min=2, n_max=4, kind=kind)
            pt = _on_shell_point(rng, sc)
            t = t2_chiral(sc, pt)
            swapped_k = TwoPhotonPoint(k1=pt.k2, k2=pt.k1, p1=pt.p1)
            swapped_p = TwoPhotonPoint(k1=pt.k1, k2=pt.k2, p1=pt.p2)
            reversed_pt = TwoPhotonPoint(k1=pt.p1, k2=pt.p2, p1=pt.k1)
            assert abs(t - t2_chiral(sc, swapped_k)) < 1e-10 * max(1.0, abs(t))
            assert abs(t - t2_chiral(sc, swapped_p)) < 1e-10 * max(1.0, abs(t))
            assert abs(t - t2_chiral(sc, reversed_pt)) < 1e-10 * max(1.0, abs(t))


def test_single_level_closed_form(rng):
    g = 1.3
    sc = Scatterer(kind=Kind.V_ATOM, deltas=(0.4,), gammas=(g,))
    for _ in range(50):
        pt = _on_shell_point(rng, sc)
        s = {e: amplitudes_s(sc, e)[0] for e in (pt.k1, pt.k2, pt.p1, pt.p2)}
        expected = (math.sqrt(2.0 * g) / math.pi) * s[pt.p2] * s[pt.p1] * (s[pt.k1] + s[pt.k2])
        assert abs(t2_general(sc, pt) - expected) < 1e-12
        assert abs(t2_simplified(sc, pt) - expected) < 1e-12


def test_single_level_resonant_value():
    sc = Scatterer(kind=Kind.V_ATOM, deltas=(0.0,), gammas=(1.0,))
    pt = TwoPhotonPoint(k1=0.0, k2=0.0, p1=0.0)
    assert t2_general(sc, pt) == pytest.approx(8j / math.pi, abs=1e-12)


def test_simplified_guard_band(rng):
    sc = Scatterer(kind=Kind.V_ATOM, deltas=(1.0, -1.0), gammas=(1.0, 1.0))
    with pytest.raises(GuardBandError):
        t2_simplified(sc, TwoPhotonPoint(k1=1.0 + 1e-9, k2=0.3, p1=0.7))
    # the resolvent path stays regular at the same point
    assert np.isfinite(t2_general(sc, TwoPhotonPoint(k1=1.0 + 1e-9, k2=0.3, p1=0.7)))


def test_kind_changes_two_photon_but_not_elastic(rng):
    for _ in range(20):
        sc_v = random_scatterer(rng, n_min=2, n_max=2)
        sc_2 = Scatterer(kind=Kind.TWO_2LS, deltas=sc_v.deltas, gammas=sc_v.gammas)
        pt = _on_shell_point(rng, sc_v)
        assert abs(t2_chiral(sc_v, pt) - t2_chiral(sc_2, pt)) > 1e-6


def test_kind_mismatch_errors():
    sc_v = Scatterer(kind=Kind.V_ATOM, deltas=(1.0, -1.0), gammas=(1.0, 1.0))
    sc_2 = Scatterer(kind=Kind.TWO_2LS, deltas=(1.0, -1.0), gammas=(1.0, 1.0))
    pt = TwoPhotonPoint(k1=0.3, k2=0.2, p1=0.1)
    with pytest.raises(KindMismatchError):
        t2_two2ls(sc_v, pt)
    with pytest.raises(KindMismatchError):
        t2_v2_closed(sc_2, pt)


def test_nonchiral_is_quarter_of_chiral(rng):
    for kind in (Kind.V_ATOM, Kind.TWO_2LS):
        sc = random_scatterer(rng, n_min=2, n_max=3, kind=kind)
        pt = _on_shell_point(rng, sc)
        assert t2_nonchiral(sc, pt) == t2_chiral(sc, pt) / 4.0


def test_nonchiral_requires_nonchiral(rng):
    sc = Scatterer(
        kind=Kind.V_ATOM, deltas=(0.0,), gammas=(1.0,), chirality=Chirality.CHIRAL
    )
    with pytest.raises(ChiralityMismatchError):
        t2_nonchiral(sc, TwoPhotonPoint(k1=0.3, k2=0.2, p1=0.1))


def test_two_2ls_collective_pole_lorentzian():
    # the part beyond the shared first contribution is a smooth function of
    # the amplitudes times a single pole at E = sum(deltas) - i*sum(gammas)
    from photon_smatrix.two_photon import _s_closed_n2, _t2_c1_n2

    sc = Scatterer(kind=Kind.TWO_2LS, deltas=(0.6, -0.2), gammas=(0.8, 1.1))
    center = sum(sc.deltas)
    width = sum(sc.gammas)
    g = np.asarray(sc.gammas)

    def residue(e_total):
        pt = TwoPhotonPoint(k1=e_total / 2 + 0.3, k2=e_total / 2 - 0.3, p1=e_total / 2 + 0.9)
        c2 = t2_two2ls(sc, pt) - _t2_c1_n2(sc, pt)
        sp1 = _s_closed_n2(sc, pt.p1)
        sp2 = _s_closed_n2(sc, pt.p2)
        w = _s_closed_n2(sc, pt.k1) + _s_closed_n2(sc, pt.k2)
        smooth = np.sum(sp1 * sp2) * (math.sqrt(g[1]) * w[0] + math.sqrt(g[0]) * w[1])
        return c2 * complex(e_total - center, width) / smooth

    values = [residue(e) for e in (center, center + width, center - 2.5)]
    for v in values[1:]:
        assert v == pytest.approx(values[0], rel=1e-9)


def test_two_2ls_equal_rates_resonant_quench(rng):
    # with equal rates and total energy on the collective resonance the
    # nonlinear coefficient vanishes identically, for every (k, p) split
    sc = Scatterer(kind=Kind.TWO_2LS, deltas=(1.0, -1.0), gammas=(1.0, 1.0))
    for _ in range(50):
        dk, dp = rng.normal(0.0, 2.0, 2)
        pt = TwoPhotonPoint(k1=float(dk), k2=float(-dk), p1=float(dp))
        assert abs(t2_two2ls(sc, pt)) < 1e-12


def test_two_photon_result_bundles_elastic_part(rng):
    sc = random_scatterer(rng, n_min=2, n_max=3)
    pt = _on_shell_point(rng, sc)
    res = two_photon_result(sc, pt)
    assert res.T == t2_nonchiral(sc, pt)
    assert res.elastic[0] == res.elastic[1]


def test_batch_matches_scalar(rng):
    sc = random_scatterer(rng, n_min=2, n_max=4)
    pts = [_on_shell_point(rng, sc) for _ in range(30)]
    batch = t2_general_batch(
        sc,
        [p.k1 for p in pts],
        [p.k2 for p in pts],
        [p.p1 for p in pts],
    )
    for i, pt in enumerate(pts):
        assert abs(batch[i] - t2_general(sc, pt)) < 1e-12


def test_fluorescence_map_matches_pointwise(rng):
    for kind in (Kind.V_ATOM, Kind.TWO_2LS):
        sc = random_scatterer(rng, n_min=2, n_max=2, kind=kind)
        dk = np.linspace(-2.0, 2.0, 7)
        dp = np.linspace(-1.5, 1.5, 5)
        delta_e = 0.8
        fmap = fluorescence_map(sc, delta_e, dk, dp)
        assert fmap.t_values.shape == (5, 7)
        for i in (0, 2, 4):
            for j in (0, 3, 6):
                pt = TwoPhotonPoint(
                    k1=delta_e / 2 + dk[j], k2=delta_e / 2 - dk[j], p1=delta_e / 2 + dp[i]
                )
                assert abs(fmap.t_values[i, j] - t2_nonchiral(sc, pt)) < 1e-12
        np.testing.assert_allclose(fmap.abs2, np.abs(fmap.t_values) ** 2)


def test_fluorescence_map_zero_structure_at_symmetric_levels():
    # symmetric V-atom at zero total detuning: the dk=0 row and dp=0 column vanish
    sc = Scatterer(kind=Kind.V_ATOM, deltas=(1.0, -1.0), gammas=(1.0, 1.0))
    grid = np.linspace(-4.0, 4.0, 41)
    fmap = fluorescence_map(sc, 0.0, grid, grid)
    i0 = np.argmin(np.abs(grid))
    assert np.max(fmap.abs2[i0, :]) < 1e-24
    assert np.max(fmap.abs2[:, i0]) < 1e-24
    assert np.max(fmap.abs2) > 1e-4


def test_fluorescence_map_rejects_empty_grid():
    sc = Scatterer(kind=Kind.V_ATOM, deltas=(0.0,), gammas=(1.0,))
    with pytest.raises(ValueError):
        fluorescence_map(sc, 0.0, [], [0.0])
