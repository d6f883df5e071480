import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from mandelent.angles import expansion, is_periodic
from mandelent.errors import DegenerateBranch, PreconditionError
from mandelent.realline import (
    Kind,
    MembershipQuery,
    Window,
    dominant_angle,
    embed_F,
    enumerate_windows,
    feigenbaum_angle,
    feigenbaum_sequence,
    in_H,
    in_P,
    in_R,
    member,
    next_window,
    real_representative,
    tune,
    tune_basilica,
    window_containing,
)

WINDOWS_6 = enumerate_windows(6)


def window_set(ws):
    return {(w.lo, w.hi, w.period) for w in ws}


def test_member_examples():
    assert member(MembershipQuery(Kind.H, F(1, 7), F(3, 7)))
    assert member(MembershipQuery(Kind.R, F(3, 7)))
    assert member(MembershipQuery(Kind.S, F(1, 2), F(1, 2)))
    assert member(MembershipQuery(Kind.P, F(1, 3), F(3, 7)))
    assert not member(MembershipQuery(Kind.H, F(0), F(3, 7)))
    assert not in_R(F(1, 5))


def test_member_rejects_bad_char_angle():
    with pytest.raises(PreconditionError):
        MembershipQuery(Kind.H, F(1, 7), F(3, 4))


def test_next_window_examples():
    w = next_window(F(2, 5), F(3, 7))
    assert (w.lo, w.hi, w.period) == (F(2, 5), F(7, 17), 4)
    w2 = next_window(w.hi, F(3, 7))
    assert w2.period == 5 and expansion(w2.lo).per == "01101"
    w0 = next_window(F(0), F(1, 2))
    assert (w0.lo, w0.hi, w0.period) == (0, F(1, 3), 1)


def test_next_window_preconditions():
    with pytest.raises(PreconditionError):
        next_window(F(1, 2), F(1, 3))
    with pytest.raises(DegenerateBranch):
        next_window(F(13, 32) - F(1, 1000), F(13, 32) + F(1, 1000))


def test_enumerate_windows_examples():
    assert window_set(enumerate_windows(1)) == {(0, F(1, 3), 1)}
    two = enumerate_windows(2)
    assert any(w.lo == F(1, 3) and w.hi == F(2, 5) and w.pseudocenter == F(3, 8) for w in two)
    three = enumerate_windows(3)
    assert any(w.lo == F(3, 7) and w.pseudocenter == F(7, 16) for w in three)
    assert [w.lo for w in WINDOWS_6] == sorted(w.lo for w in WINDOWS_6)


def test_window_endpoints_real_and_idempotent():
    from mandelent.symbolic import pseudocenter

    for w in WINDOWS_6:
        assert in_R(w.lo) and in_R(w.hi)
        assert pseudocenter(w.lo, w.hi) == w.pseudocenter
        assert is_periodic(w.lo) and is_periodic(w.hi)


def test_window_tuning_pair():
    basilica = next(w for w in WINDOWS_6 if w.lo == F(1, 3))
    assert (basilica.sigma0, basilica.sigma1) == ("01", "10")
    assert basilica.tuning_window() == (F(1, 3), F(5, 12))
    airplane = next(w for w in WINDOWS_6 if w.lo == F(3, 7))
    assert (airplane.sigma0, airplane.sigma1) == ("011", "100")


def test_tuning_windows_nest_or_disjoint():
    tw = [w.tuning_window() for w in enumerate_windows(5) if w.period > 1]
    for a, b in tw:
        for c, d in tw:
            disjoint = b <= c or d <= a
            nested = (a <= c and d <= b) or (c <= a and b <= d)
            assert disjoint or nested


@pytest.mark.parametrize("theta,image", [(F(0), F(1, 3)), (F(1, 2), F(7, 12))])
def test_tune_basilica(theta, image):
    assert tune_basilica(theta) == image


def test_tune_doubles_period():
    t = tune_basilica(F(3, 7))
    assert t == F(26, 63)
    assert len(expansion(t).per) == 6
    with pytest.raises(PreconditionError):
        tune("0", "10", F(1, 3))


def test_feigenbaum():
    assert expansion(feigenbaum_angle(2)).prefix(2) == "01"
    seq = feigenbaum_sequence(7)
    agree = [len(_common_prefix(expansion(a).prefix(600), expansion(b).prefix(600))) for a, b in zip(seq[1:], seq[2:])]
    # theta_n - theta_F decays like 2^(-2^n): the agreement prefix doubles each step
    assert agree == [6 * 2**k for k in range(6)]


def _common_prefix(a, b):
    n = 0
    while n < min(len(a), len(b)) and a[n] == b[n]:
        n += 1
    return a[:n]


def test_feigenbaum_self_similar():
    f = feigenbaum_angle(40)
    # reflecting the tuned angle back into [0, 1/2] reproduces the prefix
    t = tune_basilica(f)
    t = 1 - t if t > F(1, 2) else t
    assert expansion(t).prefix(30) == expansion(f).prefix(30)


def test_embed_F_examples():
    assert embed_F(F(1, 3), (2, 1)) == F(5, 12)
    assert embed_F(F(2, 3), (2, 1)) == F(7, 12)
    assert in_R(F(5, 12))
    with pytest.raises(PreconditionError):
        embed_F(F(1, 3), (1, 2))


@given(st.fractions(0, 1, max_denominator=5000))
def test_embed_F_symmetry(theta):
    if 0 < theta < 1 and theta != F(1, 2):
        assert embed_F(1 - theta, (2, 1, 1, 1)) == 1 - embed_F(theta, (2, 1, 1, 1))


def test_dominant_angle():
    assert dominant_angle((2, 1)) == F(3, 7)
    assert dominant_angle((2, 1, 1, 1)) == F(13, 31)


def h_samples(theta_c, count, seed=0):
    """Periodic H points of small period plus preimages inside H, sampled deterministically."""
    pts = {F(k, d) for m in range(1, 13) for d in [2**m - 1] for k in range(1, d) if in_H(F(k, d), theta_c)}
    front = set(pts)
    while len(pts) < count and front:
        front = {y for x in front for y in (x / 2, x / 2 + F(1, 2)) if y not in pts and in_H(y, theta_c)}
        pts |= front
    return random.Random(seed).sample(sorted(pts), min(count, len(pts)))


def test_embedding_on_ordered_configuration():
    # theta_c' = 26/63 < 13/31 (the angle of S) < theta_c = 3/7
    S = (2, 1, 1, 1)
    sample = h_samples(F(26, 63), 500)
    assert len(sample) == 500
    bad = [t for t in sample if not (in_R(embed_F(t, S)) and in_P(embed_F(t, S), F(3, 7)))]
    assert bad == []


def test_easy_inclusion():
    roots = sorted({w.lo for w in WINDOWS_6} | {w.hi for w in WINDOWS_6})
    for theta in roots:
        for theta_c in roots:
            if theta != 0 and theta_c >= theta and in_P(theta, theta_c):
                assert in_H(theta, theta_c), (theta, theta_c)


def test_window_containing_and_representative():
    w = window_containing(F(7, 16))
    assert w.lo == F(3, 7)
    assert window_containing(F(3, 7)) is None
    assert real_representative(F(3, 7)) == (F(3, 7), False)
    assert real_representative(F(4, 7)) == (F(3, 7), True)
    assert real_representative(F(7, 16)) == (F(3, 7), True)
    assert real_representative(F(1, 5)) == (F(0), True)


def test_window_json():
    w = next_window(F(2, 5), F(3, 7))
    assert w.to_json() == {"lo": "2/5", "hi": "7/17", "period": 4, "pseudocenter": "13/32"}
    assert isinstance(w, Window)
