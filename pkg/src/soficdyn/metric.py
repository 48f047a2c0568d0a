"""Graph systems, shift graph systems from sofic pairs, and certified distance brackets.

A graph system is a sequence of finite undirected graphs G_0, G_1, ... with a
self-loop at every vertex and vertex-surjective homomorphisms G_{n+1} → G_n.
Itinerary costs are dyadic, so every shortest path below runs over integers
scaled by 2^M and is returned as an exact ``Fraction``.
"""

from __future__ import annotations

import heapq
import math
import threading
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Sequence

from . import automata as fa
from . import symbolic as sym
from .automata import FiniteAutomaton
from .errors import NotEquivalence, ParseError, PointNotInSubshift, UnknownVertex

INF = math.inf


class GraphSystem:
    """Lazily materialized levels; subclasses implement ``_build_level``.

    ``_build_level(n)`` returns ``(vertices, neighbors, parent)`` where
    ``neighbors[v]`` is a set containing v itself and ``parent`` maps level-n
    vertices to level n-1 (empty for n = 0).
    """

    def __init__(self):
        self._levels: dict[int, tuple[list, dict, dict]] = {}
        self._children: dict[int, dict] = {}
        self._lock = threading.Lock()

    def _build_level(self, n: int):
        raise NotImplementedError

    def _level(self, n: int):
        lvl = self._levels.get(n)
        if lvl is None:
            with self._lock:
                lvl = self._levels.get(n)
                if lvl is None:
                    lvl = self._build_level(n)
                    self._levels[n] = lvl
        return lvl

    def vertices(self, n: int) -> list:
        return self._level(n)[0]

    def neighbors(self, n: int, v) -> set:
        try:
            return self._level(n)[1][v]
        except KeyError:
            raise UnknownVertex(f"{v!r} is not a vertex of level {n}") from None

    def edges(self, n: int) -> set[tuple]:
        return {(u, v) for u, nb in self._level(n)[1].items() for v in nb}

    def projection(self, n: int) -> dict:
        """Map vertices(n+1) → vertices(n)."""
        return self._level(n + 1)[2]

    def project(self, v, frm: int, to: int):
        for n in range(frm, to, -1):
            v = self._level(n)[2][v]
        return v

    def children(self, n: int, v) -> list:
        """Level-(n+1) vertices projecting to v."""
        ch = self._children.get(n)
        if ch is None:
            ch = {}
            for w, p in self.projection(n).items():
                ch.setdefault(p, []).append(w)
            self._children[n] = ch
        return ch.get(v, [])

    def point_vertex(self, x, n: int):
        """Level-n vertex of a point; a point may be given as a ray (sequence of vertices)."""
        if isinstance(x, (list, tuple)):
            if n >= len(x):
                raise ValueError(f"ray is only known up to level {len(x) - 1}")
            return x[n]
        raise TypeError(f"cannot read a level-{n} vertex from {x!r}")

    def check_point(self, x):
        """Raise if x is not a point of the system; rays are checked level by level."""
        if isinstance(x, (list, tuple)):
            for n, v in enumerate(x):
                if v not in self._level(n)[1]:
                    raise PointNotInSubshift(f"{v!r} is not a vertex of level {n}")
                if n and self._level(n)[2][v] != x[n - 1]:
                    raise PointNotInSubshift(f"ray is not compatible at level {n}")

    def same_point(self, x, y) -> bool:
        return x == y


# -- explicit systems ---------------------------------------------------------------

class ExplicitGraphSystem(GraphSystem):
    """Levels listed explicitly; ``period (P, L)`` makes level n ≥ P+L a copy of level n-L."""

    def __init__(self, levels: Sequence[tuple[Iterable, Iterable]], parents: Sequence[dict],
                 period: tuple[int, int] | None = None):
        super().__init__()
        self._raw = []
        for i, (verts, edges) in enumerate(levels):
            verts = list(verts)
            nb = {v: {v} for v in verts}
            for u, v in edges:
                if u not in nb or v not in nb:
                    raise UnknownVertex(f"edge ({u!r}, {v!r}) at level {i} uses an unknown vertex")
                nb[u].add(v)
                nb[v].add(u)
            self._raw.append((verts, nb))
        self._parents = [dict(p) for p in parents]
        if len(self._parents) != len(self._raw):
            raise ValueError("need one parent map per level (empty for level 0)")
        self.period = period
        if period is not None:
            p, length = period
            if length < 1 or p + length >= len(self._raw):
                raise ValueError("period needs levels 0..P+L listed")

    def _base(self, n: int) -> int:
        if self.period is None:
            if n >= len(self._raw):
                raise UnknownVertex(f"level {n} is beyond the listed levels")
            return n
        p, length = self.period
        while n > p + length:
            n -= length
        return n

    def _build_level(self, n):
        b = self._base(n)
        verts, nb = self._raw[b]
        return verts, nb, self._parents[b]

    @property
    def depth(self) -> int | None:
        return None if self.period else len(self._raw) - 1


def parse_graph_system(text: str) -> ExplicitGraphSystem:
    """Leveled edge list::

        level 0
        vertex a
        level 1
        vertex a0 a1
        edge a0 a1
        proj a0 a
        proj a1 a
        period 1 1
    """
    levels: list[tuple[list, list]] = []
    parents: list[dict] = []
    period = None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, *rest = line.split()
        if key == "level":
            if int(rest[0]) != len(levels):
                raise ParseError(f"line {lineno}: levels must be listed in order")
            levels.append(([], []))
            parents.append({})
        elif key == "period":
            period = (int(rest[0]), int(rest[1]))
        elif not levels:
            raise ParseError(f"line {lineno}: {key!r} before the first level")
        elif key == "vertex":
            levels[-1][0].extend(rest)
        elif key == "edge":
            levels[-1][1].append((rest[0], rest[1]))
        elif key == "proj":
            parents[-1][rest[0]] = rest[1]
        else:
            raise ParseError(f"line {lineno}: unknown directive {key!r}")
    return ExplicitGraphSystem(levels, parents, period)


class IntervalSystem(GraphSystem):
    """Level i: binary words of length i on a path in lexicographic order; projection drops the last bit."""

    def _build_level(self, n):
        verts = ["".join(bits) for bits in fa.all_words(fa.Alphabet.of("01"), n)] if n else [""]
        nb = {v: {v} for v in verts}
        for u, v in zip(verts, verts[1:]):
            nb[u].add(v)
            nb[v].add(u)
        parent = {v: v[:-1] for v in verts} if n else {}
        return verts, nb, parent

    def point_vertex(self, x, n):
        if isinstance(x, sym.EventuallyPeriodicPoint):
            return "".join(x.window(0, n))
        return super().point_vertex(x, n)

    def check_point(self, x):
        if isinstance(x, sym.EventuallyPeriodicPoint):
            if x.side != "N" or any(t not in "01" for t in x.core + x.right_period):
                raise PointNotInSubshift(f"{x} is not a binary one-sided point")
        else:
            super().check_point(x)

    def same_point(self, x, y):
        if isinstance(x, sym.EventuallyPeriodicPoint) and isinstance(y, sym.EventuallyPeriodicPoint):
            return _points_equal(x, y)
        return x == y


def interval_system() -> IntervalSystem:
    return IntervalSystem()


def diagonal_system(n_components: int) -> ExplicitGraphSystem:
    """Constant system: ``n_components`` isolated vertices with self-loops at every level."""
    verts = [str(i) for i in range(n_components)]
    return ExplicitGraphSystem([(verts, []), (verts, [])], [{}, {v: v for v in verts}], period=(0, 1))


def _points_equal(x: sym.EventuallyPeriodicPoint, y: sym.EventuallyPeriodicPoint) -> bool:
    z = sym.zip_points(x, y)
    return all(a == b for tok in z.core + z.right_period + z.left_period for a, b in [tok.split("|")])


# -- shift graph systems ----------------------------------------------------------------

class ShiftGraphSystem(GraphSystem):
    """Level n: words of length 2n+1 (side Z) or n+1 (side N) of y; u ~ v iff the zipped word is in L(z)."""

    def __init__(self, y: sym.SoficPresentation, z: sym.SoficRelation, c: int, q: int):
        super().__init__()
        self.y = y
        self.z = z
        self.c = c
        self.q = q
        self._ylang = sym.block_language(y)
        self._zlang = sym.block_language(z.presentation)

    @property
    def side(self):
        return self.y.side

    def width(self, n: int) -> int:
        return 2 * n + 1 if self.side == "Z" else n + 1

    def _build_level(self, n):
        width = self.width(n)
        syms = self.y.alphabet.symbols
        ytab = self._ylang.table()
        yacc = self._ylang.accepting
        verts: list[tuple] = []

        def grow(word, q):
            if len(word) == width:
                verts.append(tuple(word))
                return
            for a, t in enumerate(ytab[q]):
                if t in yacc:
                    word.append(syms[a])
                    grow(word, t)
                    word.pop()

        grow([], self._ylang.start())
        k = len(syms)
        ztab = self._zlang.table()
        zacc = self._zlang.accepting
        idx = {s: i for i, s in enumerate(syms)}
        nb: dict = {}
        for u in verts:
            out: set = set()
            code = [idx[s] for s in u]

            def match(i, q, word):
                if i == width:
                    out.add(tuple(word))
                    return
                for b in range(k):
                    t = ztab[q][code[i] * k + b]
                    if t in zacc:
                        word.append(syms[b])
                        match(i + 1, t, word)
                        word.pop()

            match(0, self._zlang.start(), [])
            nb[u] = out
        if n == 0:
            parent = {}
        elif self.side == "Z":
            parent = {u: u[1:-1] for u in verts}
        else:
            parent = {u: u[:-1] for u in verts}
        return verts, nb, parent

    def point_vertex(self, x, n):
        if isinstance(x, sym.EventuallyPeriodicPoint):
            return x.window(-n, n + 1) if self.side == "Z" else x.window(0, n + 1)
        return super().point_vertex(x, n)

    def check_point(self, x):
        if isinstance(x, sym.EventuallyPeriodicPoint):
            if not sym.membership(x, self.y):
                raise PointNotInSubshift(f"{x} is not a point of the subshift")
        else:
            super().check_point(x)

    def same_point(self, x, y):
        if isinstance(x, sym.EventuallyPeriodicPoint) and isinstance(y, sym.EventuallyPeriodicPoint):
            return _points_equal(x, y)
        return x == y


def telescope_constant(y: sym.SoficPresentation, z: sym.SoficRelation) -> tuple[int, int]:
    """(q_Z, q_Z² + 1) with q_Z the state count of the minimal complete DFA of L(z ∩ y²)."""
    kernel = sym.restrict(z, y)
    q = sym.block_language(kernel.presentation).n_states
    return q, q * q + 1


def build_shift_graph_system(y: sym.SoficPresentation, z: sym.SoficRelation) -> ShiftGraphSystem:
    kernel = sym.restrict(z, y)
    if not sym.equivalence_check(kernel, y).is_equivalence:
        raise NotEquivalence("z restricted to y² is not an equivalence relation")
    q, c = telescope_constant(y, z)
    return ShiftGraphSystem(y, kernel, c, q)


# -- distances --------------------------------------------------------------------------

def graph_distance(g: GraphSystem, n: int, u, v) -> float:
    """BFS distance in level n, with d(u, u) = 1 and ∞ across components."""
    nb = g._level(n)[1]
    for w in (u, v):
        if w not in nb:
            raise UnknownVertex(f"{w!r} is not a vertex of level {n}")
    if u == v:
        return 1
    dist = {u: 0}
    queue = deque([u])
    while queue:
        a = queue.popleft()
        for b in nb[a]:
            if b not in dist:
                dist[b] = dist[a] + 1
                if b == v:
                    return dist[b]
                queue.append(b)
    return INF


def _ball(g: GraphSystem, n: int, u, radius: int) -> set:
    seen = {u}
    frontier = {u}
    for _ in range(radius):
        frontier = {b for a in frontier for b in g.neighbors(n, a)} - seen
        seen |= frontier
    return seen


# -- hyperbolicity ----------------------------------------------------------------------

@dataclass(frozen=True)
class HyperbolicityResult:
    holds: bool
    c: int
    n_max: int
    counterexample: tuple | None = None  # (n, u, v) with u, v at level n + c

    def __bool__(self):
        return self.holds


def _check_hyperbolicity_brute(g: GraphSystem, c: int, n_max: int) -> HyperbolicityResult:
    for n in range(n_max + 1):
        deep = n + c
        for u in g.vertices(deep):
            pu = g.project(u, deep, n)
            near = g.neighbors(n, pu)
            for v in _ball(g, deep, u, 2):
                if g.project(v, deep, n) not in near:
                    return HyperbolicityResult(False, c, n_max, (n, u, v))
    return HyperbolicityResult(True, c, n_max)


def _check_hyperbolicity_shift(g: ShiftGraphSystem, c: int, n_max: int) -> HyperbolicityResult:
    """Automata route: words of the doubled kernel whose c-padded centres leave L(kernel)."""
    kp = g.z.presentation
    k = len(g.z.base)
    pairs = kp.alphabet
    by_mid: dict[int, list] = {}
    for q, b, q2 in kp.edges:
        by_mid.setdefault(b // k, []).append((q, b % k, q2))
    n2 = kp.n
    edges = []
    for p, a, p2 in kp.edges:
        x, y = divmod(a, k)
        for q, zz, q2 in by_mid.get(y, ()):
            edges.append((p * n2 + q, x * k + zz, p2 * n2 + q2))
    nv = kp.n * n2
    succ = [set() for _ in range(nv)]
    pred = [set() for _ in range(nv)]
    for s, _, t in edges:
        succ[s].add(t)
        pred[t].add(s)
    starts = set(range(nv))
    ends = set(range(nv))
    for _ in range(c):
        ends = {s for s in range(nv) if succ[s] & ends}
        if g.side == "Z":
            starts = {t for t in range(nv) if pred[t] & starts}
    centre = FiniteAutomaton.build(pairs, nv, edges, starts, ends)
    lang = sym.block_language(kp)
    for n in range(n_max + 1):
        width = g.width(n)
        bad = fa.difference(fa.intersection(centre, fa.length_exactly(pairs, width)), lang)
        w = fa.shortest_word(bad)
        if w is not None:
            u = tuple(pairs.split(t)[0] for t in w)
            v = tuple(pairs.split(t)[1] for t in w)
            return HyperbolicityResult(False, c, n_max, (n, u, v))
    return HyperbolicityResult(True, c, n_max)


def check_hyperbolicity(g: GraphSystem, c: int | None = None, n_max: int = 4,
                        method: str = "auto") -> HyperbolicityResult:
    """d_{n+c}(u, v) ≤ 2 ⇒ d_n(π u, π v) ≤ 1 for all n ≤ n_max.

    Shift systems use the automata route by default (all pairs at once);
    ``method="brute"`` enumerates the level graphs instead.
    """
    if c is None:
        c = g.c if isinstance(g, ShiftGraphSystem) else 1
    if method not in ("auto", "brute", "automata"):
        raise ValueError(f"unknown method {method!r}")
    if isinstance(g, ShiftGraphSystem) and method != "brute":
        return _check_hyperbolicity_shift(g, c, n_max)
    if method == "automata":
        raise TypeError("the automata route needs a shift graph system")
    return _check_hyperbolicity_brute(g, c, n_max)


# -- itinerary brackets -----------------------------------------------------------------

def _dijkstra(start: Iterable[Hashable], targets: set, step) -> int | None:
    dist: dict = {}
    heap = [(0, i, s) for i, s in enumerate(start)]
    counter = len(heap)
    heapq.heapify(heap)
    while heap:
        d, _, node = heapq.heappop(heap)
        if node in dist:
            continue
        dist[node] = d
        if node in targets:
            return d
        for nxt, w in step(node):
            if nxt not in dist:
                counter += 1
                heapq.heappush(heap, (d + w, counter, nxt))
    return None


def _itinerary_cost(g: GraphSystem, a, b, m: int, teleports: bool) -> Fraction | None:
    """Shortest dyadic cost from level-m vertex a to b.

    With ``teleports``: pivots at depths p < m (weight 2^{-p+1}) and teleports
    at level m (weight (d_m − 1)/2^m), never two teleports in a row.  Without:
    pivots at depths p ≤ m and at least one move.
    """
    scale = 1 << m
    top = m - 1 if teleports else m

    def step(node):
        kind = node[0]
        if kind == "v":
            _, v, flag = node
            if top >= 0:
                yield ("u", top, v if top == m else g.project(v, m, top)), 0
            if teleports and flag == 0:
                yield ("t0", v), 0
        elif kind == "u":
            _, p, w = node
            if p > 0:
                yield ("u", p - 1, g.project(w, p, p - 1)), 0
            cost = scale >> (p - 1) if p >= 1 else scale << 1
            for w2 in g.neighbors(p, w):
                yield ("d", p, w2), cost
        elif kind == "d":
            _, p, w = node
            if p == m:
                yield ("v", w, 0), 0
            else:
                for ch in g.children(p, w):
                    yield ("d", p + 1, ch), 0
        elif kind == "t0":
            v = node[1]
            yield ("v", v, 1), 0
            for w in g.neighbors(m, v):
                yield ("t1", w), 0
        else:  # t1
            v = node[1]
            yield ("v", v, 1), 0
            for w in g.neighbors(m, v):
                if w != v:
                    yield ("t1", w), 1

    if teleports:
        start = [("v", a, 0)]
    else:
        start = [("u", m, a)]
    d = _dijkstra(start, {("v", b, 0), ("v", b, 1)}, step)
    return None if d is None else Fraction(d, scale)


def truncated_lower_bound(g: GraphSystem, x, y, m: int) -> Fraction:
    """Least cost over m-truncated itineraries from x to y (pivots above depth m, teleports at m)."""
    if m < 0:
        raise ValueError("depth must be nonnegative")
    g.check_point(x)
    g.check_point(y)
    if g.same_point(x, y):
        return Fraction(0)
    a, b = g.point_vertex(x, m), g.point_vertex(y, m)
    if a == b:
        return Fraction(0)
    cost = _itinerary_cost(g, a, b, m, teleports=True)
    if cost is None:
        raise ValueError("points are not connected by any truncated itinerary")
    return cost


def pivot_upper_bound(g: GraphSystem, x, y, m: int) -> Fraction:
    """s_m: cheapest itinerary using only pivots at depths ≤ m."""
    g.check_point(x)
    g.check_point(y)
    if g.same_point(x, y):
        return Fraction(0)
    cost = _itinerary_cost(g, g.point_vertex(x, m), g.point_vertex(y, m), m, teleports=False)
    if cost is None:
        raise ValueError("points are not connected by pivots")
    return cost


@dataclass(frozen=True)
class DistanceBracket:
    m: int
    lower: Fraction
    upper: Fraction

    def __str__(self):
        return f"[{self.lower}, {self.upper}] ≈ [{float(self.lower):.6g}, {float(self.upper):.6g}]"


def distance_bracket(g: GraphSystem, x, y, m: int) -> DistanceBracket:
    """Certified enclosure of d(x, y) from levels 0..m+1.

    The lower end is the running maximum of the truncated lower bounds up to
    truncation depth m+1; the upper end is min(s_{m+1}, (5/2)·lower + 2^{-m}).
    """
    if m < 1:
        raise ValueError("depth must be at least 1")
    g.check_point(x)
    g.check_point(y)
    if g.same_point(x, y):
        return DistanceBracket(m, Fraction(0), Fraction(0))
    lower = max(truncated_lower_bound(g, x, y, j) for j in range(m + 2))
    upper = min(pivot_upper_bound(g, x, y, m + 1), Fraction(5, 2) * lower + Fraction(1, 1 << m))
    return DistanceBracket(m, lower, upper)


def dimension_upper_bound(y: sym.SoficPresentation, z: sym.SoficRelation) -> float:
    """2·c·h(y)/log 2 for the telescope constant c of (y, z)."""
    g = build_shift_graph_system(y, z)
    h = sym.entropy(y)
    return 2 * g.c * max(h, 0.0) / math.log(2)
