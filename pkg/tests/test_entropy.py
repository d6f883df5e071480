import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mandelent.angles import Arc, symmetric_leaf
from mandelent.entropy import (
    EntropyResult,
    bifurcation_measure,
    build_automaton,
    dimension_of,
    forbidden_arcs,
    kneading_data,
    kneading_root,
    lap_counts,
    lap_growth,
    param_dimension_estimate,
    spectral_radius,
    spectral_radius_matrix,
)
from mandelent.errors import PeriodicCriticalPoint, PreconditionError
from mandelent.realline import enumerate_windows, tune_basilica
from mandelent.veins import orbit_portrait, surgery

PHI = (1 + math.sqrt(5)) / 2
P12, P25 = orbit_portrait(1, 2), orbit_portrait(2, 5)


def test_airplane_automaton():
    A = build_automaton([Arc.ccw(F(6, 7), F(1, 7))])
    assert len(A.cells) == 7
    assert A.allowed.count(False) == 2
    assert A.alive == [1, 2, 4, 5]
    assert spectral_radius(A) == pytest.approx(PHI, abs=1e-10)
    dump = A.dump()
    assert dump["states"][0] == ["0/1", "1/7"]
    assert [1, 2, 1] in dump["transitions"]


def test_automaton_extremes():
    assert spectral_radius(build_automaton([])) == pytest.approx(2.0, abs=1e-12)
    assert spectral_radius(build_automaton([Arc.ccw(F(2, 3), F(1, 3))])) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("A,rho", [([[1, 1], [1, 1]], 2.0), ([[1]], 1.0), ([[0, 1], [1, 1]], PHI), ([[0, 1], [1, 0]], 1.0)])
def test_spectral_radius_small(A, rho):
    r, err = spectral_radius_matrix(np.array(A))
    assert abs(r - rho) <= 1e-10 and err <= 1e-10


@settings(max_examples=30)
@given(st.integers(0, 2**32 - 1), st.integers(13, 40))
def test_spectral_radius_power_path(seed, n):
    rng = np.random.default_rng(seed)
    A = (rng.random((n, n)) < 0.15).astype(np.int64)
    r, err = spectral_radius_matrix(A, 1e-10)
    oracle = max(abs(np.linalg.eigvals(A.astype(float))))
    assert abs(r - oracle) <= max(1e-6, 10 * err)


def test_kneading_data_examples():
    with pytest.raises(PeriodicCriticalPoint):
        kneading_data(P12, F(3, 7))
    k = kneading_data(P12, F(5, 12))
    assert k.itinerary_text() == "I2 I0 (alpha)"
    k = kneading_data(P25, F(19, 63), root=True)
    assert k.itinerary_text() == "(I2 I3 I4 I5 I0 I1)"
    assert 6 % k.period == 0


def test_kneading_root_examples():
    airplane = kneading_root(kneading_data(P12, F(3, 7), root=True))
    assert airplane.growth == pytest.approx(PHI, abs=1e-6)
    assert kneading_root(kneading_data(P12, F(1, 3), root=True)).growth == 1.0
    assert kneading_root(kneading_data(P12, F(1, 2))).growth == pytest.approx(2.0, abs=1e-9)


def test_lap_counts():
    K = kneading_data(P12, F(3, 7), root=True)
    laps = lap_counts(K, 60)
    assert all(laps[n + 2] == laps[n + 1] + laps[n] for n in range(58))
    assert lap_counts(kneading_data(P12, F(0)), 10) == [1] * 10
    assert lap_counts(kneading_data(P12, F(1, 2)), 6) == [3 * 2**k for k in range(6)]


def test_lap_ratio_converges_for_airplane():
    # the ratio of consecutive counts removes the constant prefactor
    laps = lap_counts(kneading_data(P12, F(3, 7), root=True), 60)
    assert laps[-1] / laps[-2] == pytest.approx(PHI, abs=1e-12)
    assert lap_growth(kneading_data(P12, F(3, 7), root=True), 60).growth == pytest.approx(PHI, abs=0.02)


def test_dimension_examples():
    assert dimension_of(F(3, 7)).dimension == pytest.approx(math.log2(PHI), abs=1e-9)
    assert dimension_of(F(1, 2), kind="S").dimension == 1.0
    assert dimension_of(F(26, 63)).dimension == pytest.approx(0.3471209568, abs=1e-6)
    assert dimension_of(F(0)).growth == 1.0
    assert dimension_of(F(1, 3), method="kneading").growth == 1.0
    with pytest.raises(PreconditionError):
        dimension_of(F(3, 7), method="magic")
    with pytest.raises(PreconditionError):
        forbidden_arcs(F(19, 63), P25, kind="S")


def test_dimension_records_substitution():
    res = dimension_of(F(7, 16))
    assert res.notes and "3/7" in res.notes[0]
    assert res.dimension == pytest.approx(math.log2(PHI), abs=1e-9)


def test_entropy_result_json():
    r = EntropyResult.from_growth(2.5, "automaton", 0.0)
    assert r.growth == 2.0 and r.dimension == 1.0
    assert set(r.to_json()) == {"growth", "entropy_nats", "dimension", "method", "error_bound"}


def test_monotone_along_real_vein():
    thetas = [F(k, 1023) for k in range(1, 512, 2)]
    dims = [dimension_of(t).dimension for t in thetas]
    assert all(b >= a - 1e-9 for a, b in zip(dims, dims[1:]))


def test_tuning_halves_dimension():
    # the basilica window root has dimension 0, so every positive root qualifies
    roots = [w.lo for w in enumerate_windows(6)]
    checked = 0
    for root in roots:
        d = dimension_of(root).dimension
        if d <= 0:
            continue
        assert dimension_of(tune_basilica(root)).dimension == pytest.approx(d / 2, abs=1e-6)
        checked += 1
    assert checked >= 10


@pytest.mark.parametrize("theta", [F(3, 7), F(13, 31), F(1, 2), F(7, 15), F(29, 63), F(13, 28), F(25, 56)])
def test_vein_engines_agree(theta):
    phi = surgery(P25, theta)
    a = dimension_of(phi, P25)
    k = dimension_of(phi, P25, method="kneading")
    assert abs(a.growth - k.growth) <= 1e-6


def test_vein_entropy_matches_real_preimage_order():
    a = dimension_of(surgery(P25, F(13, 31)), P25).growth
    b = dimension_of(surgery(P25, F(3, 7)), P25).growth
    assert a <= b + 1e-12


def test_bifurcation_measure():
    basilica, airplane = symmetric_leaf(F(1, 3)), symmetric_leaf(F(3, 7))
    assert bifurcation_measure(airplane, airplane, P12) == 0.0
    assert bifurcation_measure(basilica, airplane, P12) == pytest.approx(math.log(PHI), abs=1e-9)
    # a period doubling: the airplane root and the far end of its doubling window
    assert bifurcation_measure(airplane, symmetric_leaf(F(4, 9)), P12) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(PreconditionError):
        bifurcation_measure(airplane, basilica, P12)


def test_param_dimension_estimate():
    assert param_dimension_estimate(F(1, 2), 12) >= 0.95
    assert param_dimension_estimate(F(1, 3), 8) == 0.0
    seq = [param_dimension_estimate(F(3, 7), d) for d in range(2, 11)]
    assert all(b <= a for a, b in zip(seq, seq[1:]))
    with pytest.raises(PreconditionError):
        param_dimension_estimate(F(3, 7), 1)
    with pytest.raises(PreconditionError):
        param_dimension_estimate(F(3, 4), 5)
