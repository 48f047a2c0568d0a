"""Brute-force reference implementations used by the tests.

Everything here enumerates paths or words directly and never goes through
the DFA pipeline of the package.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from soficdyn.automata import Alphabet


def extendable(n: int, edges, steps: int, forward: bool) -> set[int]:
    """Vertices with a path of length ``steps`` leaving (forward) or entering them."""
    cur = set(range(n))
    for _ in range(steps):
        if forward:
            cur = {s for s, _, t in edges if t in cur}
        else:
            cur = {t for s, _, t in edges if s in cur}
    return cur


def path_words(n: int, edges, length: int, side: str = "Z", initial=None) -> set[tuple[int, ...]]:
    """Labels of length-``length`` paths that extend to infinite paths (both ways on side Z)."""
    fwd = extendable(n, edges, n + 1, True)
    if side == "Z":
        starts = extendable(n, edges, n + 1, False)
    else:
        starts = set(range(n)) if initial is None else _reachable(n, edges, initial)
    layer = {(v, ()) for v in starts & fwd}
    for _ in range(length):
        layer = {(t, w + (a,)) for v, w in layer for s, a, t in edges if s == v and t in fwd}
    return {w for _, w in layer}


def _reachable(n, edges, initial):
    seen = set(initial)
    stack = list(seen)
    while stack:
        v = stack.pop()
        for s, _, t in edges:
            if s == v and t not in seen:
                seen.add(t)
                stack.append(t)
    return seen


def language(x, max_len: int) -> set[tuple[str, ...]]:
    """Block language of a presentation up to ``max_len`` by path enumeration."""
    out = set()
    for n in range(max_len + 1):
        out |= {x.alphabet.decode(w) for w in path_words(x.n, x.edges, n, x.side)}
    return out


def relation_words(r, length: int) -> set[tuple[str, str]]:
    """L_length(r) as pairs (top word, bottom word)."""
    p = r.presentation
    out = set()
    for w in path_words(p.n, p.edges, length, p.side):
        toks = p.alphabet.decode(w)
        out.add((tuple(t.split("|")[0] for t in toks), tuple(t.split("|")[1] for t in toks)))
    return out


def compose_words(r, s, length: int) -> set[tuple[tuple, tuple]]:
    """L_length(r ∘ s) from paths in the raw product graph with matching middle track."""
    rp, sp = r.presentation, s.presentation
    n2 = sp.n
    edges = []
    labels = {}
    for p, a, p2 in rp.edges:
        x, y = rp.alphabet.symbols[a].split("|")
        for q, b, q2 in sp.edges:
            y2, z = sp.alphabet.symbols[b].split("|")
            if y == y2:
                key = (x, z)
                code = labels.setdefault(key, len(labels))
                edges.append((p * n2 + q, code, p2 * n2 + q2))
    inv = {v: k for k, v in labels.items()}
    out = set()
    for w in path_words(rp.n * n2, edges, length, rp.side):
        out.add((tuple(inv[c][0] for c in w), tuple(inv[c][1] for c in w)))
    return out


def minimal_forbidden(lang: set[tuple[str, ...]], alphabet: Alphabet, max_len: int) -> set[tuple[str, ...]]:
    out = set()
    for n in range(1, max_len + 1):
        for w in product(alphabet.symbols, repeat=n):
            if w not in lang and w[1:] in lang and w[:-1] in lang:
                out.add(w)
    return out


def random_graph(rng: random.Random, n_states: int, n_symbols: int, density: float = 0.5):
    edges = set()
    for s in range(n_states):
        for a in range(n_symbols):
            for t in range(n_states):
                if rng.random() < density / n_states:
                    edges.add((s, a, t))
    # keep at least one cycle so the shift is nonempty
    edges.add((0, rng.randrange(n_symbols), 0))
    return sorted(edges)


def beta_word_allowed(w: str, dstar_prefix: str) -> bool:
    """Every suffix of w is lexicographically ≤ the prefix of d* of the same length."""
    return all(w[i:] <= dstar_prefix[: len(w) - i] for i in range(len(w)))


def truncated_itinerary_bound(g, a, b, m: int) -> Fraction:
    """Least cost of an m-truncated itinerary by exhaustive relaxation over direct moves.

    Moves between level-m vertices u → v: a pivot at depth p < m whenever the
    level-p projections are adjacent (cost 2^{1-p}); a teleport whenever u, v are
    connected in G_m (cost (d_m(u,v) − 1)/2^m), never two teleports in a row.
    """
    verts = g.vertices(m)
    proj = {v: [g.project(v, m, p) for p in range(m + 1)] for v in verts}
    dist_m = {}
    for u in verts:
        seen = {u: 0}
        frontier = [u]
        while frontier:
            nxt = []
            for x in frontier:
                for y in g.neighbors(m, x):
                    if y not in seen:
                        seen[y] = seen[x] + 1
                        nxt.append(y)
            frontier = nxt
        dist_m[u] = seen
    INF = None
    best = {(a, 0): Fraction(0)}
    changed = True
    while changed:
        changed = False
        for (u, flag), c in list(best.items()):
            for v in verts:
                for p in reversed(range(m)):
                    if proj[v][p] in g.neighbors(p, proj[u][p]):
                        cost = c + Fraction(2, 2 ** p)
                        if best.get((v, 0), INF) is INF or cost < best[(v, 0)]:
                            best[(v, 0)] = cost
                            changed = True
                        break
                if flag == 0 and v in dist_m[u]:
                    d = 1 if u == v else dist_m[u][v]
                    cost = c + Fraction(d - 1, 2 ** m)
                    if best.get((v, 1), INF) is INF or cost < best[(v, 1)]:
                        best[(v, 1)] = cost
                        changed = True
    vals = [best[k] for k in ((b, 0), (b, 1)) if k in best]
    return min(vals)


def same_torus_point(x, y, spec, terms: int = 120, tol: float = 1e-7) -> bool:
    """Whether x, y (Z-points over digits) code the same torus point, in floating point.

    π(x) = Σ_{i≥0} x_i λ^{-i} v_λ + Σ_{i<0} x_i μ^{-i} v_μ mod Z², so the pair is
    identified iff the same sums over the difference stream land on the lattice.
    """
    lam, mu = float(spec.lam), float(spec.mu)
    d = [int(x.symbol(i)) - int(y.symbol(i)) for i in range(-terms, terms)]
    s = sum(d[terms + i] * lam ** -i for i in range(terms))
    t = sum(d[terms - i] * mu ** i for i in range(1, terms + 1))
    vl = [float(c) for c in spec.v_lam]
    vm = [float(c) for c in spec.v_mu]
    k = [s * vl[j] + t * vm[j] for j in (0, 1)]
    return all(abs(c - round(c)) < tol for c in k)


def beta_value(x, beta: float, terms: int = 160) -> float:
    return sum(int(x.symbol(i)) * beta ** -(i + 1) for i in range(terms))


def same_circle_point(x, y, beta: float, orbit_of_one=(), tol: float = 1e-9) -> bool:
    """x, y in S_β are identified under x ↦ Σ x_i β^{-(i+1)} mod 1.

    Shift invariance forces 0 ~ 1 to drag along the whole T-orbit of 1, so values
    in ``orbit_of_one`` (taken mod 1) all fall into the class of 0.
    """
    def cls(v):
        v %= 1.0
        special = [0.0] + [o % 1.0 for o in orbit_of_one]
        if any(min(abs(v - o), 1 - abs(v - o)) < tol for o in special):
            return None
        return v

    a, b = cls(beta_value(x, beta)), cls(beta_value(y, beta))
    if a is None or b is None:
        return a is None and b is None
    return min(abs(a - b), 1 - abs(a - b)) < tol


def periodic_binary_value(core: str, period: str) -> Fraction:
    """Exact value of 0.core(period)^∞ in base 2."""
    head = Fraction(int(core, 2) if core else 0, 2 ** len(core))
    cyc = Fraction(int(period, 2), 2 ** len(period) - 1)
    return head + cyc / 2 ** len(core)


def simplex_prefix_ok(cols: tuple[str, ...], facets) -> bool:
    """A column prefix extends to a point with coordinate sum 1 and support in a facet."""
    n = len(cols)
    d = len(cols[0]) if cols else 0
    vals = [sum(Fraction(int(c[j]), 2 ** (i + 1)) for i, c in enumerate(cols)) for j in range(d)]
    support = {j for j in range(d) if vals[j] > 0}
    rest = 1 - sum(vals)
    return any(support <= set(f) and 0 <= rest <= Fraction(len(f), 2 ** n) for f in facets)


def intersect_words(x, y, length: int) -> set[tuple[str, ...]]:
    """L_length(X ∩ Y) from paths in the raw label-synchronized product graph."""
    edges = []
    for p, a, p2 in x.edges:
        for q, b, q2 in y.edges:
            if x.alphabet.symbols[a] == y.alphabet.symbols[b]:
                edges.append((p * y.n + q, a, p2 * y.n + q2))
    return {x.alphabet.decode(w) for w in path_words(x.n * y.n, edges, length, x.side)}
