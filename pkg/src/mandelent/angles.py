"""Circle angles as exact rationals, the doubling map, lengths and leaves.

An angle is a ``Fraction`` in [0, 1). Every rational angle is eventually
periodic under doubling, which is what makes all the predicates in this
package decidable with exact arithmetic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError, UnlinkedLeavesError

Angle = Fraction

HALF = Fraction(1, 2)


def as_angle(x) -> Fraction:
    """Coerce to a Fraction reduced mod 1."""
    return Fraction(x) % 1


def two_adic_valuation(n: int) -> int:
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    return v


def order_of_two(m: int) -> int:
    """Multiplicative order of 2 modulo odd m (1 for m = 1)."""
    if m == 1:
        return 1
    k, r = 1, 2 % m
    while r != 1:
        r = (2 * r) % m
        k += 1
    return k


def double(theta: Fraction) -> Fraction:
    return (2 * theta) % 1


def ell(theta: Fraction) -> Fraction:
    """Length of the leaf (theta, 1 - theta) on the side containing 0."""
    theta = as_angle(theta)
    return 2 * theta if theta < HALF else 2 - 2 * theta


def tent(x: Fraction) -> Fraction:
    return min(2 * x, 2 - 2 * x)


def orbit(x: Fraction, f=double) -> tuple[list[Fraction], list[Fraction]]:
    """Split the orbit of x under f into its transient part and its cycle."""
    seen: dict[Fraction, int] = {}
    pts: list[Fraction] = []
    while x not in seen:
        seen[x] = len(pts)
        pts.append(x)
        x = f(x)
    k = seen[x]
    return pts[:k], pts[k:]


def orbit_points(x: Fraction, f=double) -> list[Fraction]:
    pre, cyc = orbit(x, f)
    return pre + cyc


def is_periodic(theta: Fraction) -> bool:
    return as_angle(theta).denominator % 2 == 1


def bits_value(pre: str, per: str) -> Fraction:
    """Value of 0.pre(per) where per may be empty (finite expansion)."""
    head = Fraction(int(pre, 2) if pre else 0, 2 ** len(pre))
    if not per:
        return head
    tail = Fraction(int(per, 2), 2 ** len(per) - 1)
    return head + tail / 2 ** len(pre)


@dataclass(frozen=True)
class BinaryExpansion:
    """Eventually periodic binary word 0.pre(per) in minimal form."""

    pre: str
    per: str

    @classmethod
    def of(cls, theta: Fraction) -> "BinaryExpansion":
        theta = as_angle(theta)
        den = theta.denominator
        v = two_adic_valuation(den)
        p = order_of_two(den >> v)
        bits = []
        x = theta
        for _ in range(v + p):
            x = 2 * x
            b = int(x >= 1)
            bits.append("1" if b else "0")
            x -= b
        word = "".join(bits)
        return cls(word[:v], word[v:])

    def angle(self) -> Fraction:
        return bits_value(self.pre, self.per) % 1

    def digit(self, k: int) -> str:
        """k-th digit after the point, starting at k = 0."""
        if k < len(self.pre):
            return self.pre[k]
        return self.per[(k - len(self.pre)) % len(self.per)]

    def prefix(self, n: int) -> str:
        return "".join(self.digit(k) for k in range(n))

    def __str__(self) -> str:
        return f"0.{self.pre}({self.per})"


def expansion(theta: Fraction) -> BinaryExpansion:
    return BinaryExpansion.of(theta)


_FRAC = re.compile(r"^\s*(\d+)\s*/\s*(\d+)\s*$")
_INT = re.compile(r"^\s*(\d+)\s*$")
_BIN = re.compile(r"^\s*0?\.([01]*)(?:\(([01]+)\))?\s*$")


def parse_angle(text: str) -> Fraction:
    """Parse "p/q", "0.b1b2(p1p2)" or "0.b1b2" into an angle in [0, 1)."""
    m = _FRAC.match(text)
    if m:
        p, q = int(m.group(1)), int(m.group(2))
        if q == 0:
            raise ParseError(f"zero denominator in {text!r}")
        value = Fraction(p, q)
    elif _INT.match(text):
        value = Fraction(int(text))
    else:
        m = _BIN.match(text)
        if not m or not (m.group(1) or m.group(2)):
            raise ParseError(f"cannot parse angle {text!r}")
        value = bits_value(m.group(1), m.group(2) or "")
        if value == 1:
            value = Fraction(0)
    if not 0 <= value < 1:
        raise ParseError(f"angle {text!r} is outside [0, 1)")
    return value


def format_angle(theta: Fraction) -> str:
    theta = as_angle(theta)
    return f"{theta.numerator}/{theta.denominator}"


def format_binary(theta: Fraction) -> str:
    return str(expansion(theta))


@dataclass(frozen=True)
class Leaf:
    """Chord joining two angles; endpoints are kept sorted."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        a, b = as_angle(self.a), as_angle(self.b)
        if b < a:
            a, b = b, a
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def degenerate(self) -> bool:
        return self.a == self.b

    def image(self) -> "Leaf":
        return Leaf(double(self.a), double(self.b))

    def inner(self, x: Fraction) -> bool:
        """x lies strictly inside the arc (a, b) not containing 0."""
        return self.a < x < self.b

    def __str__(self) -> str:
        return f"({format_angle(self.a)}, {format_angle(self.b)})"


def symmetric_leaf(theta: Fraction) -> Leaf:
    return Leaf(theta, 1 - as_angle(theta))


def leaf_length(leaf: Leaf) -> Fraction:
    """Shorter arc distance between the endpoints, in [0, 1/2]."""
    d = leaf.b - leaf.a
    return min(d, 1 - d)


def _side(leaf: Leaf, x: Fraction):
    if x == leaf.a or x == leaf.b:
        return None
    return leaf.inner(x)


def leaves_cross(l1: Leaf, l2: Leaf) -> bool:
    s = {_side(l1, l2.a), _side(l1, l2.b)}
    return s == {True, False}


def leaf_separates(l1: Leaf, l2: Leaf, root: Fraction = Fraction(0)) -> bool:
    """True iff l1 separates l2 from root (l1 < l2 in the vein order)."""
    if leaves_cross(l1, l2):
        raise UnlinkedLeavesError(f"leaves {l1} and {l2} cross")
    if l1 == l2 or l1.degenerate:
        return False
    s2 = _side(l1, l2.a)
    if s2 is None:
        s2 = _side(l1, l2.b)
    sr = _side(l1, as_angle(root))
    if s2 is None or sr is None:
        return False
    return s2 != sr


@dataclass(frozen=True)
class Arc:
    """Open arc cut out by the chord {lo, hi}.

    ``contains_zero`` selects the side of the chord: False is (lo, hi), True is
    (hi, 1) together with [0, lo). With lo == hi the first is empty and the
    second is the circle punctured at lo.
    """

    lo: Fraction
    hi: Fraction
    contains_zero: bool = False

    def __post_init__(self):
        lo, hi = as_angle(self.lo), as_angle(self.hi)
        if hi < lo:
            lo, hi = hi, lo
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def ccw(cls, start: Fraction, end: Fraction) -> "Arc":
        """Open arc running counterclockwise from start to end."""
        start, end = as_angle(start), as_angle(end)
        if start < end:
            return cls(start, end, False)
        if start == end:
            return cls(start, end, True)
        # wraps through 0; when end == 0 the arc is (start, 1) and 0 stays outside
        return cls(end, start, True)

    def contains(self, x: Fraction) -> bool:
        x = as_angle(x)
        if self.contains_zero:
            return x > self.hi or x < self.lo
        return self.lo < x < self.hi

    def length(self) -> Fraction:
        d = self.hi - self.lo
        return 1 - d if self.contains_zero else d

    @property
    def empty(self) -> bool:
        return self.length() == 0 and not self.contains_zero

    def start(self) -> Fraction:
        return self.hi if self.contains_zero else self.lo

    def end(self) -> Fraction:
        return self.lo if self.contains_zero else self.hi

    def shift(self, delta: Fraction) -> "Arc":
        return Arc.ccw(self.start() + delta, self.end() + delta)

    def endpoints(self) -> tuple[Fraction, Fraction]:
        return self.lo, self.hi

    def to_json(self) -> dict:
        return {"lo": format_angle(self.lo), "hi": format_angle(self.hi), "contains_zero": self.contains_zero}

    def __str__(self) -> str:
        s, e = self.start(), self.end()
        return f"({format_angle(s)} -> {format_angle(e)})"


def in_union(x: Fraction, arcs) -> bool:
    return any(a.contains(x) for a in arcs)


def sorted_arcs(arcs) -> list[Arc]:
    """Drop empty arcs and sort by counterclockwise start point."""
    return sorted((a for a in arcs if not a.empty), key=lambda a: (a.start(), a.end()))

