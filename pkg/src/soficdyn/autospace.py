"""Automatic-space presentations of finite simplicial complexes and their suspensions.

A closed ω-automatic set is stored as a deterministic prefix automaton:
every state is accepting, every state has a successor, and the set is the
labels of infinite runs from the start state.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Callable, Hashable, Iterable, Sequence

from . import automata as fa
from . import symbolic as sym
from .automata import Alphabet, FiniteAutomaton
from .errors import EmptyComplex, ParseError

MARK = "#"


# -- simplicial complexes -----------------------------------------------------------

@dataclass(frozen=True)
class SimplicialComplex:
    d: int
    facets: frozenset  # frozensets of 0-based vertex indices, maximal under inclusion

    @classmethod
    def of(cls, d: int, simplices: Iterable[Iterable[int]]) -> "SimplicialComplex":
        sets = {frozenset(s) for s in simplices}
        if not sets or frozenset() in sets and len(sets) == 1:
            raise EmptyComplex("complex has no vertices")
        for s in sets:
            if any(not 0 <= v < d for v in s):
                raise ValueError(f"simplex {sorted(s)} uses a vertex outside 0..{d - 1}")
        maximal = frozenset(s for s in sets if s and not any(s < t for t in sets))
        return cls(d, maximal)

    @classmethod
    def parse(cls, text: str, d: int | None = None) -> "SimplicialComplex":
        """Facets as 1-based digit strings separated by commas, e.g. ``12,13,23``."""
        parts = [p.strip() for p in text.replace(";", ",").split(",") if p.strip()]
        if not parts:
            raise EmptyComplex("no facets given")
        try:
            simplices = [[int(c) - 1 for c in p] for p in parts]
        except ValueError:
            raise ParseError(f"cannot parse facets {text!r}") from None
        if d is None:
            d = max(v for s in simplices for v in s) + 1
        return cls.of(d, simplices)

    def is_face(self, s: frozenset) -> bool:
        return any(s <= f for f in self.facets)

    def faces(self) -> list[frozenset]:
        out = set()
        for f in self.facets:
            for r in range(len(f) + 1):
                out.update(frozenset(c) for c in combinations(sorted(f), r))
        return sorted(out, key=lambda s: (len(s), sorted(s)))


def simplex_boundary(n: int) -> SimplicialComplex:
    """Boundary of the n-simplex: n+1 vertices, all n-subsets as facets."""
    return SimplicialComplex.of(n + 1, combinations(range(n + 1), n))


# -- prefix automata ----------------------------------------------------------------

def _explore(alphabet: Alphabet, start: Hashable,
             step: Callable[[Hashable, int], Hashable | None]) -> tuple[list, list]:
    ids = {start: 0}
    order = [start]
    edges = []
    i = 0
    while i < len(order):
        s = order[i]
        for a in range(len(alphabet)):
            t = step(s, a)
            if t is None:
                continue
            if t not in ids:
                ids[t] = len(order)
                order.append(t)
            edges.append((i, a, ids[t]))
        i += 1
    return order, edges


def prefix_automaton(alphabet: Alphabet, n: int, edges: Sequence[tuple[int, int, int]],
                     start: int) -> FiniteAutomaton | None:
    """Trim to states with an infinite continuation, reachable from ``start``; None if empty."""
    succ = [set() for _ in range(n)]
    pred = [set() for _ in range(n)]
    for s, _, t in edges:
        succ[s].add(t)
        pred[t].add(s)
    alive = [True] * n
    outd = [len(x) for x in succ]
    queue = deque(v for v in range(n) if outd[v] == 0)
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
    if not alive[start]:
        return None
    seen = {start}
    stack = [start]
    while stack:
        s = stack.pop()
        for t in succ[s]:
            if alive[t] and t not in seen:
                seen.add(t)
                stack.append(t)
    keep = sorted(seen, key=lambda v: (v != start, v))
    ren = {v: i for i, v in enumerate(keep)}
    new = [(ren[s], a, ren[t]) for s, a, t in edges if s in ren and t in ren]
    return FiniteAutomaton.build(alphabet, len(keep), new, [0], range(len(keep)))


def _product(autos: Sequence[FiniteAutomaton], alphabet: Alphabet,
             split: Callable[[str], Sequence[str]]) -> FiniteAutomaton | None:
    """Synchronous product; a token of ``alphabet`` splits into one token per factor."""
    parts = [[a.alphabet.index(t) for a, t in zip(autos, split(tok))] for tok in alphabet.symbols]
    tables = [[dict((x, next(iter(ts))) for x, ts in row.items()) for row in a.delta] for a in autos]

    def step(state, x):
        out = []
        for tab, q, y in zip(tables, state, parts[x]):
            t = tab[q].get(y)
            if t is None:
                return None
            out.append(t)
        return tuple(out)

    start = tuple(a.start() for a in autos)
    order, edges = _explore(alphabet, start, step)
    return prefix_automaton(alphabet, len(order), edges, 0)


# -- equal binary reals ---------------------------------------------------------------

BIT_PAIRS = Alphabet.pairs(Alphabet.of("01"))


def _step_with_history(allowed, flips):
    # state: (started, last two tokens); started is False until the first full window is checked
    def step(state, x):
        tok = BIT_PAIRS.symbols[x]
        checked, hist = state
        hist = hist + (tok,)
        if len(hist) == 3:
            if hist not in allowed or (not checked and hist in flips):
                return None
            return (True, hist[1:])
        return (checked, hist)

    return step


def _coordinate_relation() -> FiniteAutomaton:
    """Pairs of binary streams denoting the same number in [0, 1]."""
    allowed = set(sym.a_req())
    flips = {tuple(f"{1 - a}|{a}" for _ in range(3)) for a in (0, 1)}
    order, edges = _explore(BIT_PAIRS, (False, ()), _step_with_history(allowed, flips))
    return prefix_automaton(BIT_PAIRS, len(order), edges, 0)


def equal_reals_relation(d: int = 1) -> FiniteAutomaton:
    """Prefix automaton over pairs of d-bit columns whose coordinates denote equal reals."""
    if d < 1:
        raise ValueError("d must be positive")
    coord = _coordinate_relation()
    if d == 1:
        return coord
    cols = column_alphabet(d)
    pairs = Alphabet.pairs(cols)

    def split(tok):
        a, b = tok.split("|")
        return [f"{a[j]}|{b[j]}" for j in range(d)]

    return _product([coord] * d, pairs, split)


def column_alphabet(d: int) -> Alphabet:
    return Alphabet.of("".join(bits) for bits in product("01", repeat=d))


def bin_value(stream: Sequence[str]) -> float:
    return sum(int(b) * 2.0 ** -(i + 1) for i, b in enumerate(stream))


# -- simplex spaces -------------------------------------------------------------------

@dataclass(frozen=True)
class AutomaticSpacePresentation:
    """Y/Z with Y, Z closed ω-automatic; Z is built on demand as the d-fold equal-reals relation."""

    complex: SimplicialComplex
    y: FiniteAutomaton  # over column_alphabet(d)

    @property
    def d(self) -> int:
        return self.complex.d

    @property
    def alphabet(self) -> Alphabet:
        return self.y.alphabet

    @cached_property
    def z(self) -> FiniteAutomaton:
        return equal_reals_relation(self.d)

    @cached_property
    def kernel(self) -> FiniteAutomaton:
        """z ∩ y²."""
        pairs = Alphabet.pairs(self.alphabet)
        out = _product([self.z, self.y, self.y], pairs, lambda tok: [tok, *tok.split("|")])
        if out is None:
            raise EmptyComplex("empty kernel")
        return out

    def accepts_prefix(self, word: Sequence[str]) -> bool:
        return self.y.accepts(word)


def simplex_space(k: SimplicialComplex) -> AutomaticSpacePresentation:
    """Columns of d bits whose coordinate values sum to 1 with support a face of k.

    State (r, S): r is the scaled remainder 2^n·(1 − partial sum), S the support
    so far.  A state is kept while some facet F ⊇ S satisfies 0 ≤ r ≤ |F|, and
    states without an infinite continuation are pruned.
    """
    if not k.facets:
        raise EmptyComplex("complex has no facets")
    d = k.d
    cols = column_alphabet(d)
    facets = list(k.facets)

    def viable(r, s):
        return r >= 0 and any(s <= f and r <= len(f) for f in facets)

    def step(state, x):
        r, s = state
        col = cols.symbols[x]
        s2 = s | frozenset(j for j in range(d) if col[j] == "1")
        r2 = 2 * r - col.count("1")
        return (r2, s2) if viable(r2, s2) else None

    order, edges = _explore(cols, (1, frozenset()), step)
    y = prefix_automaton(cols, len(order), edges, 0)
    if y is None:
        raise EmptyComplex("no point of the complex")
    return AutomaticSpacePresentation(k, y)


def remainder_states(space: AutomaticSpacePresentation) -> set[int]:
    """Remainders r visited by the trimmed automaton, recomputed by replaying columns."""
    cols = space.alphabet
    out = set()
    queue = deque([(space.y.start(), 1)])
    seen = {(space.y.start(), 1)}
    while queue:
        q, r = queue.popleft()
        out.add(r)
        for x, ts in space.y.delta[q].items():
            (t,) = ts
            nxt = (t, 2 * r - cols.symbols[x].count("1"))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return out


# -- ω-relation checks ---------------------------------------------------------------

def omega_equivalence_check(z: FiniteAutomaton, y: FiniteAutomaton) -> sym.EquivalenceReport:
    """Reflexivity, symmetry and transitivity of a closed relation z on a closed set y.

    Closed sets are determined by their prefix languages, so each property is a
    finite-word inclusion after trimming.
    """
    base = y.alphabet
    pairs = Alphabet.pairs(base)
    if z.alphabet.symbols != pairs.symbols:
        raise ValueError("relation alphabet must be the pair alphabet of y")
    zy = _product([z, y, y], pairs, lambda tok: [tok, *tok.split("|")])
    # diagonal of y
    k = len(base)
    diag_edges = [(s, a * k + a, t) for s, a, t in y.edges()]
    diag = prefix_automaton(pairs, y.n_states, diag_edges, y.start())
    refl = diag is None or (zy is not None and fa.includes(zy, diag))
    if zy is None:
        return sym.EquivalenceReport(refl, True, True)
    tr_edges = [(s, (a % k) * k + a // k, t) for s, a, t in zy.edges()]
    tr = FiniteAutomaton.build(pairs, zy.n_states, tr_edges, zy.initial, zy.accepting)
    symm = fa.language_equal(fa.determinize_minimize(tr), fa.determinize_minimize(zy))
    # composition zy ∘ zy: triple product keyed on the middle track, then trimmed
    tab = [dict((x, next(iter(ts))) for x, ts in row.items()) for row in zy.delta]
    edges = []
    n = zy.n_states
    for p in range(n):
        for q in range(n):
            for a, p2 in tab[p].items():
                x, mid = divmod(a, k)
                for b, q2 in tab[q].items():
                    if b // k == mid:
                        edges.append((p * n + q, x * k + b % k, p2 * n + q2))
    comp = prefix_automaton(pairs, n * n, edges, zy.start() * n + zy.start())
    trans = comp is None or fa.includes(zy, comp)
    return sym.EquivalenceReport(refl, symm, trans)


# -- suspensions ---------------------------------------------------------------------

def suspension(space: AutomaticSpacePresentation | FiniteAutomaton,
               kernel: FiniteAutomaton | None = None,
               side: str = "Z") -> tuple[sym.SoficPresentation, sym.SoficRelation]:
    """Sofic pair (Y, Z) for the one-point-compactified suspension of a compact automatic space.

    Y: points ^∞# x with x in the space (the last # followed by a viable
    stream), plus all of Σ^M and #^M.  Z: pairs with the last # at the same
    coordinate and tails related by the space kernel, plus one class holding
    every point with no (#, Σ)-boundary.
    """
    if isinstance(space, AutomaticSpacePresentation):
        x_aut, k_aut = space.y, space.kernel if kernel is None else kernel
    else:
        x_aut, k_aut = space, kernel
        if k_aut is None:
            raise ValueError("a bare automaton needs an explicit kernel")
    sigma = list(x_aut.alphabet.symbols)
    if MARK in sigma:
        raise ValueError(f"{MARK!r} is reserved for the suspension marker")
    alph = Alphabet.of(sigma + [MARK])
    k = len(alph)
    m = alph.index(MARK)
    ns = len(sigma)

    # Y: vertex 0 = #-loop, 1..n = space automaton, n+1 = full shift on Σ
    n = x_aut.n_states
    edges = [(0, m, 0)]
    for a, ts in x_aut.delta[x_aut.start()].items():
        for t in ts:
            edges.append((0, a, 1 + t))
    edges += [(1 + s, a, 1 + t) for s, a, t in x_aut.edges()]
    edges += [(n + 1, a, n + 1) for a in range(ns)]
    y = sym.reduce(sym.essentialize(alph, n + 2, edges, side))

    # Z: vertex 0 = (#,#)-loop, 1..nk = kernel automaton, then three sink components
    nk = k_aut.n_states
    kb = len(sigma)
    pairs = Alphabet.pairs(alph)
    zedges = [(0, m * k + m, 0)]

    def lift(x):  # kernel pair index over Σ → pair index over Σ ∪ {#}
        i, j = divmod(x, kb)
        return i * k + j

    for x, ts in k_aut.delta[k_aut.start()].items():
        for t in ts:
            zedges.append((0, lift(x), 1 + t))
    zedges += [(1 + s, lift(x), 1 + t) for s, x, t in k_aut.edges()]
    d0, d1, d2 = nk + 1, nk + 2, nk + 3
    zedges += [(d0, i * k + j, d0) for i in range(ns) for j in range(ns)]
    zedges += [(d1, m * k + j, d1) for j in range(ns)]
    zedges += [(d2, i * k + m, d2) for i in range(ns)]
    raw = sym.essentialize(pairs, nk + 4, zedges, side)
    z = sym.restrict(sym.SoficRelation(sym.reduce(raw), alph), y)
    return y, z


def circle() -> AutomaticSpacePresentation:
    return simplex_space(simplex_boundary(2))
