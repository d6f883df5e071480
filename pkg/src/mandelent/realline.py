"""The real slice: membership in S_c, H_c, R and P_c, hyperbolic windows, tuning.

Everything is phrased through the length ell(theta) of the symmetric leaf
(theta, 1 - theta), which the tent map moves exactly as doubling moves theta.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from enum import Enum

from .angles import HALF, as_angle, bits_value, ell, expansion, format_angle, orbit_points, tent
from .errors import DegenerateBranch, PreconditionError
from .symbolic import as_runstring, is_dominant, pseudocenter


class Kind(str, Enum):
    S = "S"
    H = "H"
    R = "R"
    P = "P"


@dataclass(frozen=True)
class MembershipQuery:
    kind: Kind
    angle: Fraction
    char_angle: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "angle", as_angle(self.angle))
        c = Fraction(self.char_angle)
        if self.kind != Kind.R and not 0 <= c <= HALF:
            raise PreconditionError(f"characteristic angle {c} is not in [0, 1/2]")
        object.__setattr__(self, "char_angle", c)


def _tent_orbit(x: Fraction) -> list[Fraction]:
    return orbit_points(x, tent)


def in_R(theta) -> bool:
    x = ell(theta)
    return all(y <= x for y in _tent_orbit(x))


def in_P(theta, theta_c) -> bool:
    theta, theta_c = as_angle(theta), Fraction(theta_c)
    return in_R(theta) and (theta <= theta_c or theta >= 1 - theta_c)


def in_S(theta, theta_c) -> bool:
    lc = 2 * Fraction(theta_c)
    pts = _tent_orbit(tent(ell(theta)))
    return all(y <= lc for y in pts)


def in_H(theta, theta_c) -> bool:
    theta, theta_c = as_angle(theta), Fraction(theta_c)
    if theta_c == 0:
        # the tree of z^2 is the single point 0; only the ray at angle 0 counts
        return theta == 0
    Lc = tent(2 * theta_c)
    return all(y >= Lc for y in _tent_orbit(ell(theta)))


def member(q: MembershipQuery) -> bool:
    if q.kind == Kind.R:
        return in_R(q.angle)
    return {Kind.S: in_S, Kind.H: in_H, Kind.P: in_P}[q.kind](q.angle, q.char_angle)


def _complement(word: str) -> str:
    return word.translate(str.maketrans("01", "10"))


@dataclass(frozen=True)
class Window:
    """Real hyperbolic window: the root angle of period n - 1 and its doubling."""

    lo: Fraction
    hi: Fraction
    period: int
    pseudocenter: Fraction

    @property
    def root(self) -> Fraction:
        return bits_value("", self.sigma0)

    @property
    def sigma0(self) -> str:
        return expansion(self.pseudocenter).pre[:-1]

    @property
    def sigma1(self) -> str:
        # the two real root rays are theta and 1 - theta
        return _complement(self.sigma0)

    def tuning_window(self) -> tuple[Fraction, Fraction]:
        return self.root, bits_value(self.sigma0, self.sigma1)

    def contains(self, theta) -> bool:
        return self.lo < Fraction(theta) < self.hi

    def tune(self, theta) -> Fraction:
        return tune(self.sigma0, self.sigma1, theta)

    def to_json(self) -> dict:
        return {
            "lo": format_angle(self.lo),
            "hi": format_angle(self.hi),
            "period": self.period,
            "pseudocenter": format_angle(self.pseudocenter),
        }


def next_window(lo, hi) -> Window:
    """Window of smallest period inside (lo, hi), built from the pseudocenter."""
    lo, hi = Fraction(lo), Fraction(hi)
    if not 0 <= lo < hi <= HALF:
        raise PreconditionError(f"need 0 <= lo < hi <= 1/2, got ({lo}, {hi})")
    pc = pseudocenter(lo, hi)
    word = expansion(pc).pre
    if len(word) < 2:
        raise DegenerateBranch(f"pseudocenter {pc} of ({lo}, {hi}) is too short")
    w = word[:-1]
    a, b = sorted((bits_value("", w), bits_value("", w + _complement(w))))
    if not (lo <= a and b <= hi):
        raise DegenerateBranch(f"({lo}, {hi}) lies inside a single window")
    return Window(a, b, len(w), pc)


def windows_by_level(depth: int) -> list[tuple[int, Window]]:
    """Windows with the bisection round in which each one was found."""
    if depth < 0:
        raise PreconditionError("depth must be non-negative")
    out: list[tuple[int, Window]] = []
    queue = deque([(Fraction(0), HALF, 1)])
    while queue:
        a, b, level = queue.popleft()
        if level > depth or a >= b:
            continue
        try:
            w = next_window(a, b)
        except DegenerateBranch:
            continue
        out.append((level, w))
        queue.append((a, w.lo, level + 1))
        queue.append((w.hi, b, level + 1))
    out.sort(key=lambda lw: lw[1].lo)
    return out


def enumerate_windows(depth: int) -> list[Window]:
    """All windows reached by depth rounds of bisection from (0, 1/2)."""
    return [w for _, w in windows_by_level(depth)]


def window_containing(theta, max_steps: int = 10_000) -> Window | None:
    """The window whose open interval contains theta in [0, 1/2], or None."""
    theta = Fraction(theta)
    a, b = Fraction(0), HALF
    for _ in range(max_steps):
        if not a < theta < b:
            return None
        try:
            w = next_window(a, b)
        except DegenerateBranch:
            return None
        if w.lo < theta < w.hi:
            return w
        if theta in (w.lo, w.hi):
            return None
        a, b = (a, w.lo) if theta < w.lo else (w.hi, b)
    raise PreconditionError(f"bisection did not isolate {theta}")


def real_representative(theta) -> tuple[Fraction, bool]:
    """Angle in R and [0, 1/2] with the same entropy as theta.

    Returns the angle and whether a substitution by a window root took place.
    """
    theta = as_angle(theta)
    t = min(theta, 1 - theta) if theta else theta
    if in_R(t):
        return t, t != theta
    w = window_containing(t)
    if w is None:
        raise PreconditionError(f"{theta} is neither real nor inside a window")
    return w.root, True


def tune(sigma0: str, sigma1: str, theta) -> Fraction:
    """Replace each binary digit d of theta by the word sigma_d."""
    if len(sigma0) != len(sigma1) or not sigma0:
        raise PreconditionError("tuning words must be nonempty and of equal length")
    e = expansion(theta)
    sub = {"0": sigma0, "1": sigma1}
    return bits_value("".join(sub[b] for b in e.pre), "".join(sub[b] for b in e.per)) % 1


BASILICA = ("01", "10")


def tune_basilica(theta) -> Fraction:
    return tune(*BASILICA, theta)


def _reflect(theta: Fraction) -> Fraction:
    return 1 - theta if theta > HALF else theta


def feigenbaum_sequence(n: int) -> list[Fraction]:
    """theta_0 = 1/2 and theta_k = tau(theta_{k-1}) folded into [0, 1/2]."""
    seq = [HALF]
    for _ in range(n):
        seq.append(_reflect(tune_basilica(seq[-1])))
    return seq


def feigenbaum_angle(tolerance_bits: int) -> Fraction:
    """First iterate that agrees with the next one on tolerance_bits digits."""
    if tolerance_bits < 1:
        raise PreconditionError("tolerance_bits must be positive")
    scale = 2 ** tolerance_bits
    cur = HALF
    while True:
        nxt = _reflect(tune_basilica(cur))
        if math.floor(cur * scale) == math.floor(nxt * scale):
            return cur
        cur = nxt


def _dyadic_of(S) -> tuple[Fraction, int]:
    s = as_runstring(S)
    if s.per or not is_dominant(s.pre):
        raise PreconditionError(f"{s} is not a dominant string")
    bits, b = ["0"], "1"
    for a in s.pre:
        bits.append(b * a)
        b = "0" if b == "1" else "1"
    return bits_value("".join(bits), ""), sum(s.pre)


def embed_F(theta, S) -> Fraction:
    """Piecewise linear copy of a Hubbard tree angle set in parameter space."""
    theta = Fraction(theta)
    if not 0 < theta < 1:
        raise PreconditionError("theta must lie in (0, 1)")
    s, N = _dyadic_of(S)
    scale = Fraction(1, 2 ** (N + 1))
    if theta < HALF:
        return s + (1 - theta) * scale
    # mirror image of the lower branch, so that F(1 - theta) = 1 - F(theta)
    return (1 - s) - theta * scale


def dominant_angle(S) -> Fraction:
    """Characteristic angle in [0, 1/2] whose ell has the periodic code S."""
    ell_value = as_runstring(S)
    x = type(ell_value)((), ell_value.pre).to_angle(first_bit="1")
    return x / 2
