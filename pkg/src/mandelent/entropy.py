"""Entropy of Hubbard trees and dimension of the angle sets that land on them.

Three independent engines:

* a Markov automaton on the cells cut out by the forward orbits of the
  forbidden arc endpoints, whose spectral radius is the growth number;
* the kneading determinant Delta(t) built from the itinerary of the
  critical value, whose smallest positive zero is 1/s;
* exact integer lap counts from the lap recursion.

The dimension of the angle set is entropy / log 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import sympy
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .angles import HALF, Arc, Leaf, as_angle, double, format_angle, is_periodic, orbit, symmetric_leaf
from .errors import ConvergenceError, PeriodicCriticalPoint, PreconditionError
from .realline import real_representative, windows_by_level
from .veins import OrbitPortrait, orbit_portrait, vein_forbidden, vein_leaf

LOG2 = math.log(2)
ALPHA = "a"

DEFAULT_TOL = 1e-12
DEFAULT_SCAN = 1e-4
EXACT_DIM = 12
POWER_CAP = 100_000


@dataclass
class EntropyResult:
    growth: float
    entropy_nats: float
    dimension: float
    method: str
    error_bound: float
    notes: list = field(default_factory=list)

    @classmethod
    def from_growth(cls, s: float, method: str, error_bound: float, notes=()) -> "EntropyResult":
        s = min(max(s, 1.0), 2.0)
        h = math.log(s)
        return cls(s, h, h / LOG2, method, error_bound, list(notes))

    def to_json(self) -> dict:
        d = {
            "growth": self.growth,
            "entropy_nats": self.entropy_nats,
            "dimension": self.dimension,
            "method": self.method,
            "error_bound": self.error_bound,
        }
        if self.notes:
            d["notes"] = list(self.notes)
        return d


# ---------------------------------------------------------------- automaton


@dataclass
class MarkovAutomaton:
    cells: list          # (a, b) with 0 <= a < b <= 1
    allowed: list
    counts: dict         # (i, j) -> number of lifts of cell j inside D(cell i)
    alive: list          # indices that survive pruning

    def matrix(self) -> np.ndarray:
        idx = {s: k for k, s in enumerate(self.alive)}
        A = np.zeros((len(self.alive), len(self.alive)), dtype=np.int64)
        for (i, j), c in self.counts.items():
            if i in idx and j in idx:
                A[idx[i], idx[j]] = c
        return A

    def dump(self) -> dict:
        return {
            "states": [[format_angle(a), format_angle(b) if b < 1 else "1/1"] for a, b in self.cells],
            "allowed": list(self.allowed),
            "alive": list(self.alive),
            "transitions": sorted([i, j, c] for (i, j), c in self.counts.items()),
        }


def _forward_set(points) -> set:
    E = {Fraction(0)}
    todo = [as_angle(x) for x in points]
    while todo:
        x = todo.pop()
        while x not in E:
            E.add(x)
            x = double(x)
    return E


def build_automaton(arcs) -> MarkovAutomaton:
    """Subshift of angles whose whole orbit avoids the open arcs."""
    arcs = [a for a in arcs if not a.empty]
    E = sorted(_forward_set([e for a in arcs for e in a.endpoints()]))
    assert all(double(x) in E for x in E), "endpoint set is not forward invariant"
    bounds = E + [Fraction(1)]
    cells = list(zip(bounds[:-1], bounds[1:]))
    allowed = []
    for a, b in cells:
        mid = (a + b) / 2
        allowed.append(not any(arc.contains(mid) for arc in arcs))
    counts: dict = {}
    for i, (a, b) in enumerate(cells):
        if not allowed[i]:
            continue
        lo, hi = 2 * a, 2 * b
        for j, (c, d) in enumerate(cells):
            if not allowed[j]:
                continue
            n = sum(1 for k in (0, 1) if lo <= c + k and d + k <= hi)
            if n:
                counts[(i, j)] = n
    alive = {i for i, ok in enumerate(allowed) if ok}
    while True:
        keep = {i for i in alive if any((i, j) in counts for j in alive)}
        if keep == alive:
            break
        alive = keep
    return MarkovAutomaton(cells, allowed, counts, sorted(alive))


def _charpoly_radius(A: np.ndarray) -> float:
    # the Perron root is the largest real root; isolate it exactly on each factor
    poly = sympy.Matrix(A.tolist()).charpoly()
    best = sympy.Integer(0)
    for factor, _ in poly.factor_list()[1]:
        roots = factor.real_roots()
        if roots:
            best = max(best, roots[-1], key=lambda r: float(r.evalf(30)))
    return float(sympy.N(best, 30))


def _power_radius(A: np.ndarray, tol: float) -> tuple[float, float]:
    # A + I is primitive on an irreducible block, so the iteration converges
    # geometrically and v stays positive; min and max of Bv / v bracket the root
    B = A.astype(float) + np.eye(len(A))
    v = np.ones(len(A)) / len(A)
    for _ in range(POWER_CAP):
        w = B @ v
        ratios = w / v
        lo, hi = float(ratios.min()), float(ratios.max())
        if hi - lo <= tol * hi:
            return (lo + hi) / 2 - 1.0, (hi - lo) / 2
        v = w / w.sum()
    raise ConvergenceError(f"power iteration did not converge in {POWER_CAP} steps")


def spectral_radius_matrix(A: np.ndarray, tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """Perron root of a nonnegative integer matrix and an error estimate."""
    if A.size == 0:
        return 1.0, 0.0
    n, labels = connected_components(csr_matrix(A), directed=True, connection="strong")
    best, err = 0.0, 0.0
    for k in range(n):
        idx = np.flatnonzero(labels == k)
        block = A[np.ix_(idx, idx)]
        if not block.any():
            continue
        if len(idx) <= EXACT_DIM:
            r, e = _charpoly_radius(block), 1e-13
        else:
            r, e = _power_radius(block, tol)
        if r > best:
            best, err = r, e
    return max(best, 1.0), err


def spectral_radius(A: MarkovAutomaton, tol: float = DEFAULT_TOL) -> float:
    return spectral_radius_matrix(A.matrix(), tol)[0]


# ---------------------------------------------------------------- kneading


@dataclass(frozen=True)
class KneadingData:
    q: int
    symbols: tuple       # itinerary of the critical value: pre + cycle
    preperiod: int
    period: int
    flagged: bool = False

    def symbol(self, k: int):
        if k < self.preperiod:
            return self.symbols[k]
        return self.symbols[self.preperiod + (k - self.preperiod) % self.period]

    def eps(self, s) -> int:
        return -1 if s in (1, self.q) else 1

    def chi0hat(self, s) -> int:
        return 0 if s == 0 else 1

    def chi2(self, s) -> int:
        return 1 if s == ALPHA or (isinstance(s, int) and 2 <= s <= self.q - 1) else 0

    def R(self, s) -> int:
        if s == ALPHA:
            return -1
        return 1 if s == self.q else 0

    def eta(self, n: int) -> list[int]:
        out, e = [], 1
        for k in range(n):
            out.append(e)
            e *= self.eps(self.symbol(k))
        return out

    def sigma(self) -> int:
        return math.prod(self.eps(s) for s in self.symbols[self.preperiod :])

    def itinerary_text(self) -> str:
        name = lambda s: "alpha" if s == ALPHA else f"I{s}"
        pre = " ".join(name(s) for s in self.symbols[: self.preperiod])
        cyc = " ".join(name(s) for s in self.symbols[self.preperiod :])
        return f"{pre} ({cyc})".strip()


def classify(P: OrbitPortrait, x) -> tuple:
    """Symbol of x in the partition I_0..I_q plus alpha; second item flags a diameter hit."""
    x = as_angle(x)
    if x in P.angles:
        return ALPHA, False
    for i in range(1, P.q):
        if P.deltas[i].contains(x):
            return i + 1, False
    d1 = P.tau / 2
    d2 = d1 + HALF
    side = Arc.ccw(d1, d2)
    alpha_side = side.contains(P.angles[0])
    if x == d1:
        return (1 if alpha_side else 0), True
    if x == d2:
        return (0 if alpha_side else 1), True
    return (1 if side.contains(x) == alpha_side else 0), False


def kneading_data(P: OrbitPortrait, char_angle, root: bool = False) -> KneadingData:
    """Itinerary of the critical value angle theta^- in the tree partition.

    A periodic theta^- is a center; with root=True its cycle itinerary is used,
    which models the parabolic root of the component.
    """
    theta = as_angle(char_angle)
    if is_periodic(theta) and not root and theta != 0:
        raise PeriodicCriticalPoint(f"{format_angle(theta)} is periodic")
    pre, cyc = orbit(theta)
    syms, flagged = [], False
    for x in pre + cyc:
        s, f = classify(P, x)
        syms.append(s)
        flagged |= f
    m, p = len(pre), len(cyc)
    # the alpha symbol is absorbing
    if ALPHA in syms and syms.index(ALPHA) < m + p:
        k = syms.index(ALPHA)
        syms, m, p = syms[:k] + [ALPHA], k, 1
    else:
        # shrink the cycle to its primitive word and the preperiod to its minimum
        cycw = syms[m:]
        for d in range(1, p + 1):
            if p % d == 0 and cycw[:d] * (p // d) == cycw:
                cycw, p = cycw[:d], d
                break
        head = syms[:m]
        while head and head[-1] == cycw[-1]:
            head.pop()
            cycw = cycw[-1:] + cycw[:-1]
        syms, m = head + cycw, len(head)
    return KneadingData(P.q, tuple(syms), m, p, flagged)


def _series_parts(K: KneadingData, coef) -> tuple[np.ndarray, np.ndarray, int]:
    eta = K.eta(K.preperiod + K.period)
    a = [eta[k] * coef(K.symbol(k)) for k in range(K.preperiod)]
    b = [eta[K.preperiod + j] * coef(K.symbol(K.preperiod + j)) for j in range(K.period)]
    return np.array(a, dtype=float), np.array(b, dtype=float), K.sigma()


def _series(parts, t: np.ndarray, m: int, p: int) -> np.ndarray:
    a, b, sigma = parts
    head = np.polynomial.polynomial.polyval(t, a) if len(a) else np.zeros_like(t)
    tail = np.polynomial.polynomial.polyval(t, b) if len(b) else np.zeros_like(t)
    return head + t ** m * tail / (1 - sigma * t ** p)


def delta_function(K: KneadingData):
    """Vectorised Delta(t) = 1 + t - 2t(1+t)Theta_1(t) + 4t^2 Theta_2(t)."""
    p1 = _series_parts(K, K.chi0hat)
    p2 = _series_parts(K, K.chi2)
    m, p = K.preperiod, K.period

    def delta(t):
        t = np.asarray(t, dtype=float)
        th1 = _series(p1, t, m, p)
        th2 = _series(p2, t, m, p)
        return 1 + t - 2 * t * (1 + t) * th1 + 4 * t * t * th2

    return delta


def kneading_root(K: KneadingData, tol: float = DEFAULT_TOL, scan_step: float = DEFAULT_SCAN) -> EntropyResult:
    """Growth number from the smallest zero of Delta in (0, 1)."""
    delta = delta_function(K)
    grid = np.arange(scan_step, 1.0, scan_step)
    vals = delta(grid)
    notes = ["boundary itinerary: right limit used"] if K.flagged else []
    hits = np.flatnonzero(vals == 0)
    change = np.flatnonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)
    if hits.size and (not change.size or hits[0] <= change[0]):
        r = float(grid[hits[0]])
        return EntropyResult.from_growth(1 / r, "kneading", tol / (r * r), notes)
    if not change.size:
        return EntropyResult.from_growth(1.0, "kneading", 0.0, notes)
    k = change[0]
    if k == 0:
        notes.append("zero found next to the start of the scan grid")
    lo, hi = float(grid[k]), float(grid[k + 1])
    flo = float(delta(lo))
    while hi - lo > tol:
        mid = (lo + hi) / 2
        fm = float(delta(mid))
        if fm == 0:
            lo = hi = mid
            break
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    r = (lo + hi) / 2
    return EntropyResult.from_growth(1 / r, "kneading", tol / (r * r), notes)


# ---------------------------------------------------------------- laps


def lap_table(K: KneadingData, n: int) -> dict:
    """Exact lap numbers on [beta, c], [beta, alpha] and [alpha, c] for 1..n."""
    if n < 1:
        raise PreconditionError("n must be at least 1")
    size = len(K.symbols)
    nxt = [k + 1 if k + 1 < size else K.preperiod for k in range(size)]
    syms = K.symbols
    cur = [K.eps(s) + 2 * K.chi0hat(s) + (1 - K.eps(s)) // 2 + K.R(s) for s in syms]
    cur_alpha = 2
    Lc, La = [cur[0]], [cur_alpha]
    for _ in range(2, n + q_extra(K) + 1):
        c0 = cur[0]
        new = []
        for k, s in enumerate(syms):
            e = K.eps(s)
            new.append(e * cur[nxt[k]] + 2 * K.chi0hat(s) * c0 - 2 * K.chi2(s) * cur_alpha + (1 - e) // 2)
        cur, cur_alpha = new, 2 * c0 - cur_alpha
        Lc.append(cur[0])
        La.append(cur_alpha)
    # (1 + t) B(t) = (1 - t) A(t) with A = 1 + sum L_{n,c} t^n
    A = [1] + Lc
    B = [1]
    for k in range(1, len(A)):
        B.append(A[k] - A[k - 1] - B[k - 1])
    return {"beta_c": Lc[:n], "beta_alpha": La[:n], "alpha_c": B[1:]}


def q_extra(K: KneadingData) -> int:
    return K.q - 1


def lap_counts(K: KneadingData, n: int) -> list[int]:
    """Lap numbers of f^k on the whole tree for k = 1..n."""
    b = lap_table(K, n)["alpha_c"]
    # a tree collapsed to a point (critical value at alpha or at 0) still has one lap
    return [max(1, sum(b[k + i] for i in range(K.q))) for k in range(n)]


def lap_growth(K: KneadingData, n: int = 60) -> EntropyResult:
    laps = lap_counts(K, n)
    if laps[-1] <= 1:
        return EntropyResult.from_growth(1.0, "laps", 0.0)
    g = math.exp(math.log(laps[-1]) / n)
    g_prev = math.exp(math.log(laps[-2]) / (n - 1))
    return EntropyResult.from_growth(g, "laps", abs(g - g_prev))


# ---------------------------------------------------------------- front end


METHODS = ("automaton", "kneading", "laps")


def _portrait(vein) -> OrbitPortrait:
    if isinstance(vein, OrbitPortrait):
        return vein
    if vein is None:
        return orbit_portrait(1, 2)
    if isinstance(vein, str):
        p, q = (int(t) for t in vein.split("/"))
        return orbit_portrait(p, q)
    if isinstance(vein, Fraction):
        return orbit_portrait(vein.numerator, vein.denominator)
    return orbit_portrait(*vein)


def characteristic_leaf(theta, vein=None) -> tuple[OrbitPortrait, Leaf, list]:
    """Portrait and characteristic leaf for a parameter angle, with substitution notes."""
    P = _portrait(vein)
    theta = as_angle(theta)
    notes = []
    if P.q == 2:
        t, sub = real_representative(theta)
        if sub and t != min(theta, 1 - theta):
            notes.append(f"replaced by window root {format_angle(t)}")
        return P, symmetric_leaf(t), notes
    leaf, t, sub = vein_leaf(P, theta)
    if sub:
        notes.append(f"real preimage replaced by window root {format_angle(t)}")
    return P, leaf, notes


def forbidden_arcs(theta, vein=None, kind: str = "H") -> tuple[list[Arc], list]:
    P, leaf, notes = characteristic_leaf(theta, vein)
    if kind == "H":
        return vein_forbidden(P, leaf), notes
    if kind == "S":
        if P.q != 2:
            raise PreconditionError("spine sets are only implemented on the real vein")
        a = leaf.a
        return ([Arc(a, 1 - a, False)] if a != HALF else []), notes
    raise PreconditionError(f"unknown set {kind!r}")


def automaton_entropy(arcs, tol: float = DEFAULT_TOL, notes=()) -> EntropyResult:
    A = build_automaton(arcs)
    s, err = spectral_radius_matrix(A.matrix(), tol)
    return EntropyResult.from_growth(s, "automaton", err, notes)


def leaf_kneading(P: OrbitPortrait, leaf: Leaf) -> tuple[KneadingData, list]:
    notes = []
    theta = leaf.a
    periodic = is_periodic(theta) and theta != 0
    if periodic:
        notes.append("periodic critical value: root itinerary used")
    return kneading_data(P, theta, root=periodic), notes


def _degenerate_tree(P: OrbitPortrait, leaf: Leaf) -> bool:
    return leaf.degenerate and leaf.a == 0


def dimension_of(theta=None, vein=None, method: str = "automaton", kind: str = "H",
                 tol: float = DEFAULT_TOL, scan_step: float = DEFAULT_SCAN,
                 arcs=None, kneading: KneadingData | None = None, laps_n: int = 60) -> EntropyResult:
    """Entropy and dimension for a parameter angle, an arc list or kneading data."""
    if arcs is not None:
        return automaton_entropy(arcs, tol)
    if kneading is not None:
        if method == "laps":
            return lap_growth(kneading, laps_n)
        return kneading_root(kneading, tol, scan_step)
    if method not in METHODS:
        raise PreconditionError(f"unknown method {method!r}")
    if method == "automaton" or kind != "H":
        arcs, notes = forbidden_arcs(theta, vein, kind)
        return automaton_entropy(arcs, tol, notes)
    P, leaf, notes = characteristic_leaf(theta, vein)
    if _degenerate_tree(P, leaf):
        return EntropyResult.from_growth(1.0, method, 0.0, notes)
    K, more = leaf_kneading(P, leaf)
    res = lap_growth(K, laps_n) if method == "laps" else kneading_root(K, tol, scan_step)
    res.notes = notes + more + res.notes
    return res


def entropy_of_leaf(P: OrbitPortrait, leaf: Leaf, tol: float = DEFAULT_TOL) -> EntropyResult:
    return automaton_entropy(vein_forbidden(P, leaf), tol)


def bifurcation_measure(leaf1: Leaf, leaf2: Leaf, P: OrbitPortrait | None = None) -> float:
    """Entropy gained between two ordered leaves of the same vein."""
    from .angles import leaf_separates

    P = _portrait(P)
    if leaf1 != leaf2 and not leaf_separates(leaf1, leaf2, Fraction(0)):
        raise PreconditionError(f"{leaf1} does not precede {leaf2}")
    if leaf1 == leaf2:
        return 0.0
    return entropy_of_leaf(P, leaf2).entropy_nats - entropy_of_leaf(P, leaf1).entropy_nats


# ---------------------------------------------------------------- parameter side


SCALE_OFFSET = 10
SLOPE_BITS = 4


def _gaps(windows, top: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Closed intervals of [0, top] left uncovered by the open windows."""
    out, x = [], Fraction(0)
    for w in windows:
        if w.lo > x:
            out.append((x, min(w.lo, top)))
        x = max(x, w.hi)
        if x >= top:
            break
    if x < top:
        out.append((x, top))
    return [(a, b) for a, b in out if a < b]


def _box_count(gaps, k: int) -> int:
    """Number of dyadic intervals of length 2^-k meeting the union of gaps."""
    scale = 2 ** k
    n, cur_lo, cur_hi = 0, None, None
    for a, b in gaps:
        lo, hi = math.floor(a * scale), math.ceil(b * scale)
        if cur_hi is None or lo > cur_hi:
            if cur_hi is not None:
                n += cur_hi - cur_lo
            cur_lo, cur_hi = lo, hi
        else:
            cur_hi = max(cur_hi, hi)
    if cur_hi is not None:
        n += cur_hi - cur_lo
    return n


def param_dimension_estimate(theta_c, depth: int) -> float:
    """Box-counting upper estimate for the dimension of P_c from the window cover.

    At bisection depth d the uncovered gaps are counted with dyadic boxes
    SCALE_OFFSET bits finer than d, and the slope is taken over SLOPE_BITS
    bits. Boxes finer than the cover overcount, which biases the slope
    upwards; the running minimum over depths makes the estimate
    nonincreasing. Convergence is slow.
    """
    theta_c = Fraction(theta_c)
    if depth < 2:
        raise PreconditionError("depth must be at least 2")
    if not 0 < theta_c <= HALF:
        raise PreconditionError("theta_c must lie in (0, 1/2]")
    levelled = windows_by_level(depth)
    best = 1.0
    for d in range(2, depth + 1):
        gaps = _gaps([w for lv, w in levelled if lv <= d], theta_c)
        if not gaps:
            return 0.0
        k = d + SCALE_OFFSET
        coarse, fine = _box_count(gaps, k - SLOPE_BITS), _box_count(gaps, k)
        best = min(best, math.log2(fine / coarse) / SLOPE_BITS)
    return best
