"""Orbit portraits of rotation cycles and combinatorial surgery onto principal veins.

The surgery map sends the real vein into the p/q principal vein by recoding
binary expansions block by block; its inverse reads blocks back off via
return times to the two arcs adjacent to the critical value sector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .angles import (
    HALF,
    Arc,
    Leaf,
    as_angle,
    bits_value,
    double,
    format_angle,
    leaf_length,
    leaves_cross,
    orbit,
    orbit_points,
)
from .errors import NotInOmega, PreconditionError
from .realline import in_R, window_containing

THIRD, TWO_THIRDS = Fraction(1, 3), Fraction(2, 3)


def _code(points, in_zero) -> str:
    return "".join("0" if in_zero(x) else "1" for x in points)


@dataclass(frozen=True)
class OrbitPortrait:
    p: int
    q: int
    angles: tuple
    theta0: Fraction
    theta1: Fraction
    Theta0: Fraction
    Theta1: Fraction
    sigma0: str
    sigma1: str
    tau: Fraction
    deltas: tuple = field(repr=False)
    hat_deltas: tuple = field(repr=False)
    forbidden: tuple = field(repr=False)

    @property
    def rotation(self) -> Fraction:
        return Fraction(self.p, self.q)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "angles": [format_angle(a) for a in self.angles],
            "theta0": format_angle(self.theta0),
            "theta1": format_angle(self.theta1),
            "tau": format_angle(self.tau),
            "sigma0": self.sigma0,
            "sigma1": self.sigma1,
            "forbidden": [a.to_json() for a in self.forbidden],
        }


def orbit_portrait(p: int, q: int) -> OrbitPortrait:
    """The doubling-invariant q-cycle of rotation number p/q and its arcs."""
    if not (0 < p < q and gcd(p, q) == 1):
        raise PreconditionError(f"need 0 < p < q coprime, got {p}/{q}")
    r = Fraction(p, q)
    pts = [(k * r) % 1 for k in range(1, q + 1)]
    cut = 1 - r
    w0 = _code(pts, lambda x: 0 < x <= cut)
    w1 = _code(pts, lambda x: x < cut)
    theta0, theta1 = bits_value("", w0), bits_value("", w1)
    s0, s1 = w0[: q - 1], w1[: q - 1]
    Theta0, Theta1 = bits_value("", "1" + s0), bits_value("", "0" + s1)
    tau = bits_value(s1, "")
    deltas = [Arc.ccw(Theta0, Theta1)]
    a, b = theta0, theta1
    for _ in range(1, q):
        deltas.append(Arc.ccw(a, b))
        a, b = double(a), double(b)
    hats = [d.shift(HALF) for d in deltas]
    forbidden = tuple(hats[1 : q - 1])
    return OrbitPortrait(
        p, q, tuple(sorted(orbit_points(theta0))), theta0, theta1, Theta0, Theta1,
        s0, s1, tau, tuple(deltas), tuple(hats), forbidden,
    )


def surgery(P: OrbitPortrait, theta) -> Fraction:
    """Psi: recode the orbit of theta with the blocks 0, Sigma0, Sigma1, 1."""
    theta = as_angle(theta)
    # walk the orbit on numerators mod d: x = k / d
    k, d = theta.numerator, theta.denominator
    pieces: list[str] = []
    seen: dict[int, int] = {}
    while k not in seen:
        if 3 * k == d:
            return bits_value("".join(pieces), P.sigma0 + "1")
        if 3 * k == 2 * d:
            return bits_value("".join(pieces), P.sigma1 + "0")
        seen[k] = len(pieces)
        if 3 * k < d:
            pieces.append("0")
        elif 2 * k < d:
            pieces.append(P.sigma0)
        elif 3 * k < 2 * d:
            pieces.append(P.sigma1)
        else:
            pieces.append("1")
        k = 2 * k % d
    j = seen[k]
    return bits_value("".join(pieces[:j]), "".join(pieces[j:])) % 1


def _arc_test(arc: Arc, d: int):
    """Membership of k / d in an open arc, by integer cross-multiplication."""
    lo_n, lo_d, hi_n, hi_d = arc.lo.numerator, arc.lo.denominator, arc.hi.numerator, arc.hi.denominator
    if arc.contains_zero:
        return lambda k: k * hi_d > hi_n * d or k * lo_d < lo_n * d
    return lambda k: lo_n * d < k * lo_d and k * hi_d < hi_n * d


def surgery_inverse(P: OrbitPortrait, phi) -> Fraction:
    """Phi: read blocks off via return times to Delta_0 and Delta_1."""
    phi = as_angle(phi)
    k, d = phi.numerator, phi.denominator
    in_d0, in_d1 = _arc_test(P.deltas[0], d), _arc_test(P.deltas[1], d)
    below_tau = lambda k: k * P.tau.denominator < P.tau.numerator * d
    below_T1 = lambda k: k * P.Theta1.denominator < P.Theta1.numerator * d
    jump = 2 ** (P.q - 1)
    bits: list[str] = []
    seen: dict[int, int] = {}
    step = 0
    while k not in seen:
        seen[k] = len(bits)
        if in_d1(k):
            bits.append("0" if below_tau(k) else "1")
            k = k * jump % d
            step += P.q - 1
        elif in_d0(k):
            bits.append("0" if below_T1(k) else "1")
            k = 2 * k % d
            step += 1
        else:
            raise NotInOmega(f"iterate {step} of {format_angle(phi)} is {format_angle(Fraction(k, d))}", step)
    j = seen[k]
    return bits_value("".join(bits[:j]), "".join(bits[j:])) % 1


def J_arc(P: OrbitPortrait, leaf: Leaf) -> Arc:
    """Arc through 0 cut out by the (q-1)-st image of the characteristic leaf."""
    if leaf.degenerate and leaf.a == 0:
        # the point leaf at 0 is the main cardioid: only the angle 0 survives
        return Arc(0, 0, True)
    a, b = leaf.a, leaf.b
    for _ in range(P.q - 1):
        a, b = double(a), double(b)
    return Arc(a, b, a != b)


def vein_forbidden(P: OrbitPortrait, leaf: Leaf) -> list[Arc]:
    arcs = list(P.forbidden) + [J_arc(P, leaf)]
    return [a for a in arcs if not a.empty]


def vein_member_H(P: OrbitPortrait, theta, leaf: Leaf) -> bool:
    """Orbit of theta avoids I_{p/q} and J."""
    arcs = vein_forbidden(P, leaf)
    return not any(a.contains(y) for y in orbit_points(as_angle(theta)) for a in arcs)


def real_to_vein_leaf(P: OrbitPortrait, theta_r) -> Leaf:
    """Image under surgery of the real characteristic leaf of theta_r."""
    theta_r = as_angle(theta_r)
    return Leaf(surgery(P, theta_r), surgery(P, 1 - theta_r))


def vein_leaf(P: OrbitPortrait, theta_minus) -> tuple[Leaf, Fraction, bool]:
    """Characteristic leaf of a vein angle, its real preimage, and whether a root was substituted."""
    theta_r = surgery_inverse(P, theta_minus)
    t = min(theta_r, 1 - theta_r) if theta_r else theta_r
    substituted = False
    if not in_R(t):
        w = window_containing(t)
        if w is None:
            raise PreconditionError(f"{format_angle(theta_r)} is not a real parameter angle")
        t, substituted = w.root, True
    return real_to_vein_leaf(P, t), t, substituted


def is_minor_leaf(m: Leaf) -> bool:
    """Check the forward orbit of m against the minor leaf conditions."""
    if m.degenerate:
        return True
    pre, cyc = orbit(m, Leaf.image)
    images = pre + cyc
    n = leaf_length(m)
    if any(leaf_length(x) < n for x in images):
        return False
    for i, x in enumerate(images):
        for y in images[i + 1 :]:
            if leaves_cross(x, y):
                return False
    a, b = m.a / 2, m.b / 2
    majors = [Leaf(a, b + HALF), Leaf(b, a + HALF)]
    majors = [M for M in majors if leaf_length(M) >= Fraction(1, 3)]
    return not any(leaves_cross(x, M) for x in images for M in majors)
