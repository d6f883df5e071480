"""Run-length codes of binary expansions and the alternate lexicographic order.

A RunString is ``pre`` followed by ``per`` repeated forever. An empty period
means the string is finite; ``zeros_tail`` marks the code of a dyadic angle,
whose expansion ends in an infinite block of zeros.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .angles import as_angle, bits_value, expansion
from .errors import ParseError, PreconditionError

LT, EQ, GT = -1, 0, 1


def _primitive_root(word: Sequence) -> tuple:
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and tuple(word[:d]) * (n // d) == tuple(word):
            return tuple(word[:d])
    return tuple(word)


@dataclass(frozen=True)
class RunString:
    pre: tuple = ()
    per: tuple = ()
    zeros_tail: bool = False

    def __post_init__(self):
        pre, per = tuple(int(a) for a in self.pre), tuple(int(a) for a in self.per)
        if any(a < 1 for a in pre + per):
            raise PreconditionError("run lengths must be positive")
        per = _primitive_root(per) if per else ()
        object.__setattr__(self, "pre", pre)
        object.__setattr__(self, "per", per)

    @classmethod
    def finite(cls, entries: Iterable[int]) -> "RunString":
        return cls(tuple(entries), ())

    @classmethod
    def periodic(cls, per: Iterable[int], pre: Iterable[int] = ()) -> "RunString":
        return cls(tuple(pre), tuple(per))

    @property
    def is_finite(self) -> bool:
        return not self.per

    def __len__(self) -> int:
        if self.per:
            raise PreconditionError("infinite string has no length")
        return len(self.pre)

    def term(self, k: int) -> int:
        """k-th entry, counted from 0."""
        if k < len(self.pre):
            return self.pre[k]
        if not self.per:
            raise IndexError(k)
        return self.per[(k - len(self.pre)) % len(self.per)]

    def terms(self, n: int) -> tuple:
        return tuple(self.term(k) for k in range(n))

    def to_angle(self, first_bit: str = "0") -> Fraction:
        """Angle whose expansion has these runs, the first run made of first_bit."""
        bits, b = [], first_bit
        other = {"0": "1", "1": "0"}
        for a in self.pre:
            bits.append(b * a)
            b = other[b]
        head = "".join(bits)
        if not self.per:
            return bits_value(head, "")
        # an odd number of runs flips the starting bit, so go around twice
        reps = 1 if len(self.per) % 2 == 0 else 2
        cyc = []
        for a in self.per * reps:
            cyc.append(b * a)
            b = other[b]
        return bits_value(head, "".join(cyc)) % 1

    def __str__(self) -> str:
        body = ",".join(map(str, self.pre))
        if not self.per:
            return f"({body})" + ("0*" if self.zeros_tail else "")
        per = ",".join(map(str, self.per))
        return f"({body}|{per})*" if self.pre else f"({per})*"


_RS = re.compile(r"^\s*\(\s*([\d,\s]*?)\s*(?:\|\s*([\d,\s]+?))?\s*\)\s*(\*)?\s*$")


def _ints(text: str | None) -> tuple:
    if not text or not text.strip():
        return ()
    return tuple(int(t) for t in text.split(","))


def parse_runstring(text: str) -> RunString:
    """Parse "(2,1,2)", "(2,1)*" or "(3|2,1)*"."""
    m = _RS.match(text)
    if not m:
        raise ParseError(f"cannot parse run string {text!r}")
    try:
        a, b = _ints(m.group(1)), _ints(m.group(2))
    except ValueError as exc:
        raise ParseError(f"cannot parse run string {text!r}") from exc
    star = bool(m.group(3))
    if b and not star:
        raise ParseError(f"preperiod marker needs a trailing '*': {text!r}")
    try:
        if not star:
            return RunString(a, ())
        if b:
            return RunString(a, b)
        if not a:
            raise ParseError("empty periodic string")
        return RunString((), a)
    except PreconditionError as exc:
        raise ParseError(str(exc)) from exc


def as_runstring(s) -> RunString:
    if isinstance(s, RunString):
        return s
    if isinstance(s, str):
        return parse_runstring(s)
    return RunString(tuple(s), ())


def _runs(word: str) -> list[int]:
    out = []
    for i, b in enumerate(word):
        if i and b == word[i - 1]:
            out[-1] += 1
        else:
            out.append(1)
    return out


def runlength(theta) -> RunString:
    """Run-length code w_theta of the binary expansion of theta."""
    theta = as_angle(theta)
    if theta == 0:
        raise PreconditionError("the zero angle has no runs")
    e = expansion(theta)
    if e.per == "0":
        return RunString(tuple(_runs(e.pre)), (), zeros_tail=True)
    p, n0 = len(e.per), len(e.pre)
    j = max(n0, 1)
    while e.digit(j) == e.digit(j - 1):
        j += 1
    head = "".join(e.digit(k) for k in range(j))
    rot = "".join(e.digit(k) for k in range(j, j + p))
    pre, per = _runs(head), list(_primitive_root(_runs(rot)))
    while pre and pre[-1] == per[-1]:
        pre.pop()
        per = per[-1:] + per[:-1]
    return RunString(tuple(pre), tuple(per))


def _horizon(s: RunString, t: RunString) -> int | None:
    if s.per and t.per:
        return max(len(s.pre), len(t.pre)) + math.lcm(len(s.per), len(t.per))
    if not s.per and not t.per:
        return None
    raise PreconditionError("cannot compare a finite string with an infinite one")


def _first_difference(s: RunString, t: RunString, n: int) -> int | None:
    for k in range(n):
        if s.term(k) != t.term(k):
            return k
    return None


def _favours_first(k: int, a: int, b: int) -> bool:
    # k counted from 0, so position k + 1 is odd when k is even
    return a > b if k % 2 == 0 else a < b


def alt_lex_compare(S, T) -> int:
    """Alternate lexicographic comparison; returns LT, EQ or GT."""
    s, t = as_runstring(S), as_runstring(T)
    n = _horizon(s, t)
    if n is None:
        if len(s.pre) != len(t.pre):
            raise PreconditionError("finite strings of unequal length; use double_lt")
        n = len(s.pre)
    k = _first_difference(s, t, n)
    if k is None:
        return EQ
    return LT if _favours_first(k, s.term(k), t.term(k)) else GT


def double_lt(S, T) -> bool:
    """S << T: some common-length truncation has S_1^i < T_1^i."""
    s, t = as_runstring(S), as_runstring(T)
    if s.per or t.per or not s.pre or not t.pre:
        raise PreconditionError("double_lt needs finite nonempty strings")
    k = _first_difference(s, t, min(len(s.pre), len(t.pre)))
    return k is not None and _favours_first(k, s.term(k), t.term(k))


def _finite(S) -> tuple:
    s = as_runstring(S)
    if s.per or not s.pre:
        raise PreconditionError("expected a finite nonempty string")
    return s.pre


def is_extremal(S) -> bool:
    """XY < YX for every proper splitting S = XY."""
    w = _finite(S)
    return all(alt_lex_compare(w, w[i:] + w[:i]) == LT for i in range(1, len(w)))


def is_dominant(S) -> bool:
    """Even length and S << Y for every proper suffix Y."""
    w = _finite(S)
    return len(w) % 2 == 0 and all(double_lt(w, w[i:]) for i in range(1, len(w)))


def power_family(S, T, n: int, m: int) -> RunString:
    """The string S^n T^m, checked to be dominant."""
    cand = _finite(S) * n + _finite(T) * m
    if not is_dominant(cand):
        raise PreconditionError(f"{RunString(cand)} is not dominant")
    return RunString(cand)


def dominant_approximations(S, count: int, include_self: bool = False) -> list[RunString]:
    """Dominant strings S^n 1 1 whose angles approach that of the periodic S.

    With include_self a dominant S is put in front of the list.
    """
    w = _finite(S)
    if len(w) % 2 or not is_extremal(w):
        raise PreconditionError(f"{RunString(w)} is not an extremal string of even length")
    out = []
    if include_self and is_dominant(w) and count > 0:
        out.append(RunString(w))
    n = 0
    while len(out) < count:
        n += 1
        cand = w * n + (1, 1)
        if not is_dominant(cand):
            raise PreconditionError(f"{RunString(cand)} is not dominant")
        out.append(RunString(cand))
    return out


def pseudocenter(lo, hi) -> Fraction:
    """The dyadic with the shortest expansion in the open interval (lo, hi)."""
    lo, hi = Fraction(lo), Fraction(hi)
    if not 0 <= lo < hi <= 1:
        raise PreconditionError(f"empty interval ({lo}, {hi})")
    L = 1
    while True:
        scale = 2 ** L
        c = Fraction(math.ceil(lo * scale), scale)
        if c == lo:
            c += Fraction(1, scale)
        if c < hi:
            return c
        L += 1
