"""Sofic shifts and sofic relations over N and Z as essential labeled graphs.

A presentation denotes the set of label sequences of its infinite paths:
bi-infinite paths on side ``Z``, right-infinite paths on side ``N``.  On
side N every vertex of an essential presentation is treated as initial,
because the denoted set is shift-invariant and therefore equals the set of
labels of right-infinite paths from any surviving vertex.

Relations are presentations over the pair alphabet ``Alphabet.pairs(base)``;
the token ``a|b`` has index ``i*|base| + j``.  Composition follows
``compose(R, S) = {(x, z) : (x, y) ∈ R and (y, z) ∈ S for some y}``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from . import automata as fa
from .automata import Alphabet, FiniteAutomaton, _strip_comment
from .errors import (AlphabetMismatch, EmptySubshift, NotEquivalence, ParseError,
                     SideMismatch)

SIDES = ("N", "Z")


@dataclass(frozen=True)
class SoficPresentation:
    side: str
    alphabet: Alphabet
    n: int
    edges: tuple  # sorted (src, symbol index, dst), deduplicated
    initial: frozenset

    def __repr__(self):
        return f"SoficPresentation(side={self.side}, |V|={self.n}, |E|={len(self.edges)}, |Σ|={len(self.alphabet)})"

    def out_edges(self) -> list[list[tuple[int, int]]]:
        out: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for s, a, t in self.edges:
            out[s].append((a, t))
        return out


@dataclass(frozen=True)
class SoficRelation:
    presentation: SoficPresentation
    base: Alphabet

    @property
    def side(self):
        return self.presentation.side

    def __repr__(self):
        p = self.presentation
        return f"SoficRelation(side={p.side}, |V|={p.n}, |E|={len(p.edges)}, base={self.base.symbols})"


# -- essentialization -------------------------------------------------------------

def _live_vertices(n: int, edges: Sequence[tuple[int, int, int]], side: str,
                   initial: Iterable[int] | None) -> list[int]:
    succ: list[set[int]] = [set() for _ in range(n)]
    pred: list[set[int]] = [set() for _ in range(n)]
    for s, _, t in edges:
        succ[s].add(t)
        pred[t].add(s)
    alive = [True] * n
    if side == "N" and initial is not None:
        seen = set(initial)
        stack = list(seen)
        while stack:
            s = stack.pop()
            for t in succ[s]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        alive = [v in seen for v in range(n)]
    outd = [sum(1 for t in succ[v] if alive[t]) for v in range(n)]
    ind = [sum(1 for p in pred[v] if alive[p]) for v in range(n)]
    queue = deque(v for v in range(n) if alive[v] and (outd[v] == 0 or (side == "Z" and ind[v] == 0)))
    while queue:
        v = queue.popleft()
        if not alive[v]:
            continue
        alive[v] = False
        for p in pred[v]:
            if alive[p]:
                outd[p] -= 1
                if outd[p] == 0:
                    queue.append(p)
        if side == "Z":
            for t in succ[v]:
                if alive[t]:
                    ind[t] -= 1
                    if ind[t] == 0:
                        queue.append(t)
    return [v for v in range(n) if alive[v]]


def essentialize(alphabet: Alphabet, n: int, edges: Iterable[tuple[int, int, int]], side: str,
                 initial: Iterable[int] | None = None, allow_empty: bool = False) -> SoficPresentation:
    """Trim a raw labeled graph to an essential presentation of its path-label subshift."""
    if side not in SIDES:
        raise SideMismatch(f"side must be N or Z, got {side!r}")
    edges = list(edges)
    keep = _live_vertices(n, edges, side, initial)
    if not keep and not allow_empty:
        raise EmptySubshift("no infinite paths")
    ren = {v: i for i, v in enumerate(keep)}
    new_edges = sorted({(ren[s], a, ren[t]) for s, a, t in edges if s in ren and t in ren})
    return SoficPresentation(side, alphabet, len(keep), tuple(new_edges), frozenset(range(len(keep))))


def is_empty(x: SoficPresentation) -> bool:
    return x.n == 0


# -- block languages --------------------------------------------------------------

@lru_cache(maxsize=512)
def block_language(x: SoficPresentation) -> FiniteAutomaton:
    """Canonical DFA of the finite path-label words of an essential presentation."""
    nfa = FiniteAutomaton.build(x.alphabet, x.n, x.edges, range(x.n), range(x.n))
    return fa.determinize_minimize(nfa)


def presentation_from_dfa(d: FiniteAutomaton, side: str, allow_empty: bool = False) -> SoficPresentation:
    """Presentation read off a DFA of a factorial extendable language (sink dropped)."""
    edges = [(s, a, t) for s, a, t in d.edges() if s in d.accepting and t in d.accepting]
    return essentialize(d.alphabet, d.n_states, edges, side, allow_empty=allow_empty)


@lru_cache(maxsize=512)
def reduce(x: SoficPresentation) -> SoficPresentation:
    """Right-resolving presentation from the minimal DFA of the block language."""
    if x.n == 0:
        return x
    return presentation_from_dfa(block_language(x), x.side)


def language_equal(x: SoficPresentation, y: SoficPresentation) -> bool:
    if x.side != y.side:
        return False
    return fa.language_equal(block_language(x), block_language(y))


def includes(x: SoficPresentation, y: SoficPresentation) -> bool:
    """True iff the subshift of y is contained in that of x."""
    _check(x, y)
    return fa.includes(block_language(x), block_language(y))


def _check(x: SoficPresentation, y: SoficPresentation):
    if x.side != y.side:
        raise SideMismatch(f"{x.side} vs {y.side}")
    if x.alphabet.symbols != y.alphabet.symbols:
        raise AlphabetMismatch("alphabets differ")


# -- constructors -----------------------------------------------------------------

def full_shift(alphabet: Alphabet | Iterable[str], side: str = "Z") -> SoficPresentation:
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet.of(alphabet)
    return essentialize(alphabet, 1, [(0, a, 0) for a in range(len(alphabet))], side)


def from_forbidden_words(words: Iterable[Sequence[str]], alphabet: Alphabet | Iterable[str],
                         side: str = "Z") -> SoficPresentation:
    """SFT forbidding exactly the given words."""
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet.of(alphabet)
    words = [tuple(w) for w in words]
    if any(len(w) == 0 for w in words):
        raise ValueError("forbidden words must be nonempty")
    k = len(alphabet)
    # NFA for Σ* F Σ* via a trie with looping root and looping accept state
    edges = [(0, a, 0) for a in range(k)]
    n = 2  # 0 = root, 1 = seen a forbidden word
    edges += [(1, a, 1) for a in range(k)]
    trie: dict[tuple[int, int], int] = {}
    for w in words:
        s = 0
        codes = alphabet.encode(w)
        for i, a in enumerate(codes):
            if i == len(codes) - 1:
                edges.append((s, a, 1))
                break
            if (s, a) not in trie:
                trie[(s, a)] = n
                edges.append((s, a, n))
                n += 1
            s = trie[(s, a)]
    bad = FiniteAutomaton.build(alphabet, n, edges, [0], [1])
    good = fa.complement(bad)
    return presentation_from_dfa(good, side)


def from_graph(alphabet: Alphabet | Iterable[str], edges: Iterable[tuple], side: str = "Z",
               initial: Iterable | None = None) -> SoficPresentation:
    """Presentation from edges (src, token, dst) with arbitrary hashable vertex names."""
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet.of(alphabet)
    names: dict = {}
    raw = []
    for s, tok, t in edges:
        si = names.setdefault(s, len(names))
        ti = names.setdefault(t, len(names))
        raw.append((si, alphabet.index(tok), ti))
    init = None if initial is None else [names[v] for v in initial if v in names]
    return essentialize(alphabet, len(names), raw, side, init)


def golden_mean(side: str = "Z") -> SoficPresentation:
    return from_forbidden_words(["11"], "01", side)


def at_most_n_ones(n: int, side: str = "Z") -> SoficPresentation:
    """X_{≤n}: binary points with at most n occurrences of 1."""
    edges = [(i, "0", i) for i in range(n + 1)] + [(i, "1", i + 1) for i in range(n)]
    return from_graph("01", edges, side, initial=[0])


def union(x: SoficPresentation, y: SoficPresentation) -> SoficPresentation:
    _check(x, y)
    edges = list(x.edges) + [(s + x.n, a, t + x.n) for s, a, t in y.edges]
    return essentialize(x.alphabet, x.n + y.n, edges, x.side, allow_empty=True)


def intersect(x: SoficPresentation, y: SoficPresentation) -> SoficPresentation:
    _check(x, y)
    by_label: dict[int, list[tuple[int, int]]] = {}
    for s, a, t in y.edges:
        by_label.setdefault(a, []).append((s, t))
    edges = []
    for s, a, t in x.edges:
        for q, r in by_label.get(a, ()):
            edges.append((s * y.n + q, a, t * y.n + r))
    return essentialize(x.alphabet, x.n * y.n, edges, x.side, allow_empty=True)


# -- points -----------------------------------------------------------------------

@dataclass(frozen=True)
class EventuallyPeriodicPoint:
    """^∞(left_period) core (right_period)^∞, with core starting at coordinate 0."""

    side: str
    core: tuple
    right_period: tuple
    left_period: tuple = ()

    def __post_init__(self):
        for name in ("core", "right_period", "left_period"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if not self.right_period:
            raise ValueError("right period must be nonempty")
        if self.side == "Z" and not self.left_period:
            raise ValueError("side Z needs a nonempty left period")
        if self.side == "N" and self.left_period:
            raise ValueError("side N points have no left part")

    @classmethod
    def parse(cls, text: str) -> "EventuallyPeriodicPoint":
        """``(L)core(R)`` for side Z, ``core(R)`` for side N; single-character tokens."""
        text = text.replace(" ", "")
        if text.startswith("(") and text.count("(") == 2:
            close = text.index(")")
            left, rest = text[1:close], text[close + 1:]
            side = "Z"
        else:
            left, rest, side = "", text, "N"
        if not rest.endswith(")") or "(" not in rest:
            raise ParseError(f"cannot parse point {text!r}")
        open_ = rest.rindex("(")
        return cls(side, tuple(rest[:open_]), tuple(rest[open_ + 1:-1]), tuple(left))

    def symbol(self, i: int):
        if i < 0:
            if self.side == "N":
                raise IndexError("side N point has no negative coordinates")
            return self.left_period[i % len(self.left_period)]
        if i < len(self.core):
            return self.core[i]
        return self.right_period[(i - len(self.core)) % len(self.right_period)]

    def window(self, lo: int, hi: int) -> tuple:
        return tuple(self.symbol(i) for i in range(lo, hi))

    def __str__(self):
        left = f"^∞({''.join(self.left_period)})" if self.side == "Z" else ""
        return f"{left}{''.join(self.core)}({''.join(self.right_period)})^∞"


def zip_points(p: EventuallyPeriodicPoint, q: EventuallyPeriodicPoint) -> EventuallyPeriodicPoint:
    if p.side != q.side:
        raise SideMismatch("points live on different sides")
    b = max(len(p.core), len(q.core))
    rq = math.lcm(len(p.right_period), len(q.right_period))
    pair = lambda i: f"{p.symbol(i)}|{q.symbol(i)}"
    core = tuple(pair(i) for i in range(b))
    right = tuple(pair(i) for i in range(b, b + rq))
    left = ()
    if p.side == "Z":
        lq = math.lcm(len(p.left_period), len(q.left_period))
        left = tuple(pair(i) for i in range(-lq, 0))
    return EventuallyPeriodicPoint(p.side, core, right, left)


def _cycle_fixpoint(x: SoficPresentation, period: Sequence[int], forward: bool) -> set[int]:
    """Vertices at a period boundary carrying an infinite path labeled by the repeated period.

    forward=True: right-infinite paths (period)^∞ leaving the vertex.
    forward=False: left-infinite paths ^∞(period) arriving at the vertex.
    """
    out = x.out_edges()
    p = len(period)
    nodes = {(i, v) for i in range(p) for v in range(x.n)}
    succ = {nd: [] for nd in nodes}
    pred = {nd: [] for nd in nodes}
    for i in range(p):
        for v in range(x.n):
            for a, t in out[v]:
                if a == period[i]:
                    u = ((i + 1) % p, t)
                    succ[(i, v)].append(u)
                    pred[u].append((i, v))
    nbr, back = (succ, pred) if forward else (pred, succ)
    alive = set(nodes)
    deg = {nd: len(nbr[nd]) for nd in nodes}
    queue = deque(nd for nd in nodes if deg[nd] == 0)
    while queue:
        nd = queue.popleft()
        if nd not in alive:
            continue
        alive.discard(nd)
        for m in back[nd]:
            if m in alive:
                deg[m] -= 1
                if deg[m] == 0:
                    queue.append(m)
    return {v for (i, v) in alive if i == 0}


def membership(p: EventuallyPeriodicPoint, x: SoficPresentation) -> bool:
    if p.side != x.side:
        raise SideMismatch("point and subshift on different sides")
    try:
        core = x.alphabet.encode(p.core)
        right = x.alphabet.encode(p.right_period)
        left = x.alphabet.encode(p.left_period)
    except AlphabetMismatch:
        return False
    if x.n == 0:
        return False
    current = _cycle_fixpoint(x, left, forward=False) if p.side == "Z" else set(range(x.n))
    out = x.out_edges()
    for a in core:
        current = {t for v in current for b, t in out[v] if b == a}
    return bool(current & _cycle_fixpoint(x, right, forward=True))


def pair_membership(pair: tuple[EventuallyPeriodicPoint, EventuallyPeriodicPoint], r: SoficRelation) -> bool:
    return membership(zip_points(*pair), r.presentation)


# -- relations ----------------------------------------------------------------------

def _pair_index(k: int, i: int, j: int) -> int:
    return i * k + j


def _finish_relation(base: Alphabet, n: int, edges, side: str) -> SoficRelation:
    raw = essentialize(Alphabet.pairs(base), n, edges, side, allow_empty=True)
    return SoficRelation(reduce(raw), base)


def as_relation(x: SoficPresentation, base: Alphabet | None = None) -> SoficRelation:
    """View a presentation over a paired alphabet as a relation over the full pair alphabet."""
    if base is None:
        base = x.alphabet.base()
    pairs = Alphabet.pairs(base)
    edges = [(s, pairs.index(x.alphabet.symbols[a]), t) for s, a, t in x.edges]
    return _finish_relation(base, x.n, edges, x.side)


def diagonal(x: SoficPresentation) -> SoficRelation:
    k = len(x.alphabet)
    edges = [(s, _pair_index(k, a, a), t) for s, a, t in x.edges]
    return _finish_relation(x.alphabet, x.n, edges, x.side)


def product_relation(x: SoficPresentation, y: SoficPresentation) -> SoficRelation:
    """The relation X × Y."""
    _check(x, y)
    k = len(x.alphabet)
    edges = [(s * y.n + q, _pair_index(k, a, b), t * y.n + r)
             for s, a, t in x.edges for q, b, r in y.edges]
    return _finish_relation(x.alphabet, x.n * y.n, edges, x.side)


def transpose(r: SoficRelation) -> SoficRelation:
    k = len(r.base)
    p = r.presentation
    edges = [(s, _pair_index(k, a % k, a // k), t) for s, a, t in p.edges]
    return _finish_relation(r.base, p.n, edges, p.side)


def _check_rel(r: SoficRelation, s: SoficRelation):
    if r.side != s.side:
        raise SideMismatch(f"{r.side} vs {s.side}")
    if r.base.symbols != s.base.symbols:
        raise AlphabetMismatch("relation alphabets differ")


def relation_intersect(r: SoficRelation, s: SoficRelation) -> SoficRelation:
    _check_rel(r, s)
    p = intersect(r.presentation, s.presentation)
    return SoficRelation(reduce(p), r.base)


def relation_union(r: SoficRelation, s: SoficRelation) -> SoficRelation:
    _check_rel(r, s)
    p = union(r.presentation, s.presentation)
    return SoficRelation(reduce(p), r.base)


def restrict(r: SoficRelation, x: SoficPresentation, left: bool = True, right: bool = True) -> SoficRelation:
    """Intersect r with X × X (or with X on one track only)."""
    if r.side != x.side:
        raise SideMismatch("relation and subshift on different sides")
    if r.base.symbols != x.alphabet.symbols:
        raise AlphabetMismatch("relation base differs from subshift alphabet")
    full = full_shift(r.base, x.side)
    box = product_relation(x if left else full, x if right else full)
    return relation_intersect(r, box)


def compose(r: SoficRelation, s: SoficRelation) -> SoficRelation:
    """{(x, z) : (x, y) ∈ r, (y, z) ∈ s}: triple-track product, middle track projected out."""
    _check_rel(r, s)
    k = len(r.base)
    rp, sp = r.presentation, s.presentation
    by_mid: dict[int, list[tuple[int, int, int]]] = {}
    for q, b, q2 in sp.edges:
        by_mid.setdefault(b // k, []).append((q, b % k, q2))
    edges = []
    n2 = sp.n
    for p, a, p2 in rp.edges:
        x, y = divmod(a, k)
        for q, z, q2 in by_mid.get(y, ()):
            edges.append((p * n2 + q, _pair_index(k, x, z), p2 * n2 + q2))
    return _finish_relation(r.base, rp.n * n2, edges, r.side)


def relation_algebra(kind: str, *args) -> SoficRelation:
    """Dispatch: diagonal(X), transpose(R), restrict(R, X), compose(R, S), union(R, S), intersect(R, S)."""
    ops = {"diagonal": diagonal, "transpose": transpose, "restrict": restrict, "compose": compose,
           "union": relation_union, "intersect": relation_intersect}
    if kind not in ops:
        raise ValueError(f"unknown relation operation {kind!r}")
    return ops[kind](*args)


def relation_equal(r: SoficRelation, s: SoficRelation) -> bool:
    return r.base.symbols == s.base.symbols and language_equal(r.presentation, s.presentation)


def relation_includes(r: SoficRelation, s: SoficRelation) -> bool:
    """True iff s ⊆ r."""
    _check_rel(r, s)
    if s.presentation.n == 0:
        return True
    if r.presentation.n == 0:
        return False
    return includes(r.presentation, s.presentation)


def left_projection(r: SoficRelation) -> SoficPresentation:
    k = len(r.base)
    p = r.presentation
    return reduce(essentialize(r.base, p.n, [(s, a // k, t) for s, a, t in p.edges], p.side))


# -- forbidden words ------------------------------------------------------------------

@dataclass(frozen=True)
class ForbiddenWords:
    automaton: FiniteAutomaton
    finite: bool
    words: tuple | None  # sorted by (length, symbol order) when finite

    def sample(self, count: int = 5, max_len: int = 12) -> list[tuple]:
        return fa.words_up_to(self.automaton, max_len)[:count]


@lru_cache(maxsize=256)
def minimal_forbidden_words(x: SoficPresentation) -> ForbiddenWords:
    """Words outside L(X) whose two maximal proper factors lie in L(X)."""
    L = block_language(x)
    alph = x.alphabet
    k = len(alph)
    table = L.table()
    n = L.n_states
    acc = L.accepting
    # A: w[1:] ∈ L   (fresh start state n reads any first symbol into L's start)
    edges = [(s, a, t) for s in range(n) for a, t in enumerate(table[s])]
    edges += [(n, a, L.start()) for a in range(k)]
    drop_first = FiniteAutomaton.build(alph, n + 1, edges, [n], acc)
    # B: w nonempty and w[:-1] ∈ L; states (q, flag) encoded 2q+flag, flag = last prefix accepted
    edges = []
    for q in range(n):
        for flag in (0, 1):
            for a, t in enumerate(table[q]):
                edges.append((2 * q + flag, a, 2 * t + (1 if q in acc else 0)))
    drop_last = FiniteAutomaton.build(alph, 2 * n, edges, [2 * L.start()], [2 * q + 1 for q in range(n)])
    mf = fa.difference(fa.intersection(drop_first, drop_last), L)
    info = fa.classify_language(mf)
    words = None
    if info.finite:
        longest = 0
        d = mf
        # bound the length by the number of DFA states of a finite language
        longest = d.n_states
        words = tuple(fa.words_up_to(d, longest))
    return ForbiddenWords(mf, info.finite, words)


def is_sft(x: SoficPresentation) -> bool:
    return minimal_forbidden_words(x).finite


def sorted_patterns(words: Iterable[Sequence[str]], alphabet: Alphabet) -> list[tuple]:
    return sorted((tuple(w) for w in words), key=lambda w: (len(w), alphabet.encode(w)))


# -- entropy ----------------------------------------------------------------------------

def _perron_root(m: np.ndarray, rtol: float = 4e-16) -> float:
    """Spectral radius of an irreducible nonnegative matrix via Collatz-Wielandt bounds.

    Iterates until the bounds meet to ``rtol`` or stop tightening (rounding floor).
    """
    n = m.shape[0]
    a = m + np.eye(n)  # primitive, same Perron vector
    v = np.ones(n)
    best_gap, stale = math.inf, 0
    lo = hi = 0.0
    for _ in range(100000):
        w = a @ v
        ratios = w / v
        lo, hi = ratios.min(), ratios.max()
        gap = hi - lo
        if gap <= rtol * hi:
            break
        if gap < best_gap:
            best_gap, stale = gap, 0
        else:
            stale += 1
            if stale > 50:
                break
        v = w / np.linalg.norm(w)
    return 0.5 * (lo + hi) - 1.0


def spectral_radius(adj: np.ndarray) -> float:
    n = adj.shape[0]
    if n == 0:
        return 0.0
    ncomp, labels = connected_components(csr_matrix(adj), directed=True, connection="strong")
    best = 0.0
    for c in range(ncomp):
        idx = np.flatnonzero(labels == c)
        sub = adj[np.ix_(idx, idx)]
        if sub.sum() == 0:
            continue
        best = max(best, _perron_root(sub))
    return best


def entropy(x: SoficPresentation) -> float:
    """Natural-log entropy from the right-resolving presentation."""
    y = reduce(x)
    adj = np.zeros((y.n, y.n))
    for s, _, t in y.edges:
        adj[s, t] += 1
    rho = spectral_radius(adj)
    return math.log(rho) if rho > 0 else float("-inf")


# -- equivalence and closure ------------------------------------------------------------

@dataclass(frozen=True)
class EquivalenceReport:
    reflexive: bool
    symmetric: bool
    transitive: bool

    @property
    def is_equivalence(self) -> bool:
        return self.reflexive and self.symmetric and self.transitive


def is_transitive(r: SoficRelation, x: SoficPresentation) -> bool:
    return relation_includes(r, restrict(compose(r, r), x))


def equivalence_check(r: SoficRelation, x: SoficPresentation) -> EquivalenceReport:
    if r.side != x.side:
        raise SideMismatch("relation and subshift on different sides")
    refl = relation_includes(r, diagonal(x))
    sym = relation_equal(transpose(r), r)
    trans = is_transitive(r, x)
    return EquivalenceReport(refl, sym, trans)


@dataclass(frozen=True)
class Closed:
    m: int
    relation: SoficRelation


@dataclass(frozen=True)
class Exhausted:
    m_max: int
    relation: SoficRelation


def transitive_closure_semialg(r: SoficRelation, x: SoficPresentation, m_max: int,
                               cancel: Callable[[], bool] | None = None) -> Closed | Exhausted:
    """Iterate R^{≤m+1} = R^{≤m} ∪ (R^{≤m} ∘ R) on X² until transitive or m_max is reached."""
    base = restrict(r, x)
    cur = base
    for m in range(1, m_max + 1):
        if is_transitive(cur, x):
            return Closed(m, cur)
        if m == m_max or (cancel is not None and cancel()):
            break
        cur = relation_union(cur, restrict(compose(cur, base), x))
    return Exhausted(m_max, cur)


# -- expansivity ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExpansiveWithWindow:
    k: int
    name = "ExpansiveWithWindow"


@dataclass(frozen=True)
class NotExpansive:
    witnesses: tuple = ()
    name = "NotExpansive"


@dataclass(frozen=True)
class UnknownWithinBound:
    k_max: int
    witnesses: tuple  # one word per k = 1..k_max
    name = "UnknownWithinBound"


ExpansivityCertificate = ExpansiveWithWindow | NotExpansive | UnknownWithinBound


def approximation_witness(kernel: SoficPresentation, ambient: SoficPresentation, k: int,
                          max_states: int = 2_000_000):
    """Compare the k-block SFT approximation of ``kernel`` (within ``ambient``) with ``kernel``.

    Returns None when they are language-equal, else a shortest word of the
    approximation's language outside L(kernel).  ``ambient`` must present a
    superset of ``kernel`` over the same alphabet.
    """
    L = block_language(kernel)
    table = L.table()
    start = L.start()
    sink = {q for q in range(L.n_states) if q not in L.accepting}
    amb_out = ambient.out_edges()
    # states: (tuple of L-states for the last j < k symbols' suffixes, ambient vertex)
    ids: dict = {}
    order: list = []
    edges: list[tuple[int, int, int]] = []

    def get(state):
        i = ids.get(state)
        if i is None:
            if len(order) >= max_states:
                raise MemoryError("approximation automaton exceeds the state budget")
            i = ids[state] = len(order)
            order.append(state)
        return i

    for v in range(ambient.n):
        get(((), v))
    i = 0
    while i < len(order):
        tup, v = order[i]
        for a, w in amb_out[v]:
            new = (table[start][a],) + tuple(table[q][a] for q in tup)
            if any(q in sink for q in new):
                continue
            new = new[: k - 1]
            edges.append((i, a, get((new, w))))
        i += 1
    approx = essentialize(kernel.alphabet, len(order), edges, kernel.side, allow_empty=True)
    if approx.n == 0:
        return None
    return fa.inclusion_witness(L, block_language(approx))


def is_expansive(y: SoficPresentation, z: SoficRelation, k_max: int = 12,
                 cancel: Callable[[], bool] | None = None) -> ExpansivityCertificate:
    kernel = restrict(z, y)
    if not equivalence_check(kernel, y).is_equivalence:
        raise NotEquivalence("restricted relation is not an equivalence relation")
    kp = kernel.presentation
    amb = product_relation(y, y).presentation
    if is_sft(y):
        mf = minimal_forbidden_words(kp)
        if not mf.finite:
            return NotExpansive(tuple(mf.sample()))
        top = max((len(w) for w in mf.words), default=1)
        for k in range(1, max(top, 1) + 1):
            if approximation_witness(kp, amb, k) is None:
                return ExpansiveWithWindow(k)
        return ExpansiveWithWindow(top)
    witnesses = []
    for k in range(1, k_max + 1):
        if cancel is not None and cancel():
            break
        w = approximation_witness(kp, amb, k)
        if w is None:
            return ExpansiveWithWindow(k)
        witnesses.append(w)
    return UnknownWithinBound(k_max, tuple(witnesses))


# -- text format ---------------------------------------------------------------------------

def to_text(x: SoficPresentation) -> str:
    lines = [f"side {x.side}", f"alphabet {' '.join(x.alphabet.symbols)}"]
    lines += [f"state v{v}" for v in range(x.n)]
    if x.side == "N":
        lines += [f"initial v{v}" for v in sorted(x.initial)]
    lines += [f"edge v{s} {x.alphabet.symbols[a]} v{t}" for s, a, t in x.edges]
    return "\n".join(lines) + "\n"


def from_text(text: str) -> SoficPresentation:
    side = "Z"
    toks: list[str] = []
    names: dict[str, int] = {}
    raw = []
    initial = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = _strip_comment(line)
        if not line:
            continue
        kw, *args = line.split()
        if kw == "side" and len(args) == 1 and args[0] in SIDES:
            side = args[0]
        elif kw == "alphabet" and args:
            toks.extend(t for t in args if t not in toks)
        elif kw == "state" and len(args) == 1:
            names.setdefault(args[0], len(names))
        elif kw == "initial" and len(args) == 1:
            initial.append(names.setdefault(args[0], len(names)))
        elif kw == "edge" and len(args) == 3:
            s = names.setdefault(args[0], len(names))
            t = names.setdefault(args[2], len(names))
            raw.append((s, args[1], t))
            if args[1] not in toks:
                toks.append(args[1])
        else:
            raise ParseError(f"line {lineno}: cannot parse {line!r}")
    paired = bool(toks) and all(t.count("|") == 1 for t in toks)
    alphabet = Alphabet(tuple(toks), paired)
    edges = [(s, alphabet.index(a), t) for s, a, t in raw]
    return essentialize(alphabet, len(names), edges, side, initial if initial else None)


def relation_from_text(text: str) -> SoficRelation:
    return as_relation(from_text(text))


def relation_to_text(r: SoficRelation) -> str:
    return to_text(r.presentation)


def to_dot(x: SoficPresentation, name: str = "G") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for v in range(x.n):
        shape = "doublecircle" if x.side == "N" and v in x.initial else "circle"
        lines.append(f'  v{v} [shape={shape}];')
    for s, a, t in x.edges:
        lines.append(f'  v{s} -> v{t} [label="{x.alphabet.symbols[a]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- named subshifts and relations -----------------------------------------------------------

def from_allowed_windows(windows: Iterable[Sequence[str]], alphabet: Alphabet, side: str = "Z") -> SoficPresentation:
    """SFT whose points have every length-w window in ``windows`` (all windows of one length w ≥ 1)."""
    windows = {tuple(w) for w in windows}
    lengths = {len(w) for w in windows}
    if len(lengths) != 1:
        raise ValueError("allowed windows must share one length")
    (w,) = lengths
    names: dict = {}
    edges = []
    for win in windows:
        s = names.setdefault(win[:-1], len(names))
        t = names.setdefault(win[1:], len(names))
        edges.append((s, alphabet.index(win[-1]), t))
    return essentialize(alphabet, len(names), edges, side)


def a_req() -> list[tuple[str, ...]]:
    """Allowed 3-windows (as pair tokens top|bottom) for equality of binary expansions."""
    out = set()
    for a in (0, 1):
        for b in (0, 1):
            for c in (0, 1):
                cols = [
                    ((a, b, c), (a, b, c)),
                    ((a, b, c), (a, b, 1 - c)),
                    ((a, b, 1 - b), (a, 1 - b, b)),
                    ((a, 1 - a, 1 - a), (1 - a, a, a)),
                    ((1 - a, 1 - a, 1 - a), (a, a, a)),
                ]
                for top, bot in cols:
                    out.add(tuple(f"{x}|{y}" for x, y in zip(top, bot)))
    return sorted(out)


def binary_reals_relation(side: str = "Z") -> SoficRelation:
    """E_N / E_Z: the SFT relation on {0,1}^M with allowed windows A_req."""
    base = Alphabet.of("01")
    pres = from_allowed_windows(a_req(), Alphabet.pairs(base), side)
    return SoficRelation(reduce(pres), base)


def block_map_relation(rule: Callable[[str, str], str], domain: Iterable[str], alphabet: Alphabet,
                       side: str = "Z") -> SoficRelation:
    """Graph {(x, f(x))} of the block map f(x)_i = rule(x_i, x_{i+1}) over ``domain``^M, inside alphabet²."""
    domain = list(domain)
    edges = []
    k = len(alphabet)
    ids = {a: i for i, a in enumerate(domain)}
    for a in domain:
        for b in domain:
            edges.append((ids[a], alphabet.index(a) * k + alphabet.index(rule(a, b)), ids[b]))
    return _finish_relation(alphabet, len(domain), edges, side)
