"""Carry automata, kernels of hyperbolic 2x2 toral automorphisms, and the golden pipeline.

Coding used for a matrix A with eigenvalues |λ| > 1 > |μ| and digits
{0, ..., n-1}: a point x ∈ Σ^Z maps to

    Σ_{i<0} x_i μ^{-i} v_μ + Σ_{i≥0} x_i λ^{-i} v_λ   (mod Z²)

with eigenvectors normalized by v_λ - v_μ = (1, 0).  Two points are
identified iff their difference z = x - y (a stream over digit differences)
has (P_λ(z), P_μ(z)) on the lattice of pairs (s, t) with s v_λ + t v_μ ∈ Z².
For each such lattice point the right half z_0 z_1 ... must represent s/λ
in base λ and the left half z_{-1} z_{-2} ... must represent t in base
1/μ; both conditions are recognized by carry automata.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import symbolic as S
from .automata import Alphabet
from .errors import HypothesisViolated, NotClosedUnderComposition, NotHyperbolic
from .quadratic import QuadraticNumber, squarefree_part
from .symbolic import EventuallyPeriodicPoint, SoficPresentation, SoficRelation

BINARY = Alphabet.of("01")


# -- carry automata -------------------------------------------------------------------

@dataclass(frozen=True)
class CarryAutomaton:
    beta: QuadraticNumber
    xi: QuadraticNumber
    digits: tuple[int, ...]
    states: tuple  # QuadraticNumber values; index 0 is the initial state -ξ
    edges: tuple  # (src index, digit, dst index)

    @property
    def initial(self) -> int:
        return 0

    def successors(self) -> list[list[tuple[int, int]]]:
        out: list[list[tuple[int, int]]] = [[] for _ in self.states]
        for s, a, t in self.edges:
            out[s].append((a, t))
        return out

    def run(self, word: Sequence[int]) -> QuadraticNumber | None:
        """State reached from -ξ after reading ``word``, or None if the path leaves the automaton."""
        out = self.successors()
        cur = self.initial
        for a in word:
            nxt = [t for b, t in out[cur] if b == a]
            if not nxt:
                return None
            cur = nxt[0]
        return self.states[cur]

    def is_empty(self) -> bool:
        return not self.states


def _as_q(x) -> QuadraticNumber:
    return x if isinstance(x, QuadraticNumber) else QuadraticNumber(x)


def carry_automaton(beta, xi, digits: Iterable[int], max_states: int = 200_000) -> CarryAutomaton:
    """Automaton whose infinite paths from -ξ are the digit streams x with Σ_{i≥1} x_{i-1} β^{-i} = ξ.

    States are kept while |s| ≤ max|digit| / (|β| - 1); the transition is t = βs + a.
    Only states with an infinite continuation survive.
    """
    beta, xi = _as_q(beta), _as_q(xi)
    digits = tuple(sorted(set(int(a) for a in digits)))
    if abs(beta) <= 1:
        raise HypothesisViolated("need |β| > 1")
    if not beta.is_rational() and abs(beta.conjugate()) >= 1:
        raise HypothesisViolated("the conjugate of β must have absolute value < 1")
    amax = max(abs(a) for a in digits)
    bound = QuadraticNumber(amax) / (abs(beta) - 1)
    conj_bound = None
    if not beta.is_rational():
        conj_bound = QuadraticNumber(amax) / (1 - abs(beta.conjugate())) + abs(xi.conjugate())
    start = -xi
    if abs(start) > bound:
        return CarryAutomaton(beta, xi, digits, (), ())
    ids = {start: 0}
    order = [start]
    edges = []
    i = 0
    while i < len(order):
        s = order[i]
        for a in digits:
            t = beta * s + a
            if abs(t) > bound:
                continue
            if conj_bound is not None and abs(t.conjugate()) > conj_bound:
                raise HypothesisViolated("conjugate bound violated; β is not a unit-like Pisot number")
            j = ids.get(t)
            if j is None:
                if len(order) >= max_states:
                    raise HypothesisViolated("carry automaton exceeds the state budget")
                j = ids[t] = len(order)
                order.append(t)
            edges.append((i, a, j))
        i += 1
    # keep states with an infinite forward path (greatest fixpoint)
    alive = set(range(len(order)))
    out: dict[int, set[int]] = {s: set() for s in alive}
    pred: dict[int, set[int]] = {s: set() for s in alive}
    for s, _, t in edges:
        out[s].add(t)
        pred[t].add(s)
    deg = {s: len(out[s]) for s in alive}
    queue = deque(s for s in alive if deg[s] == 0)
    while queue:
        s = queue.popleft()
        if s not in alive:
            continue
        alive.discard(s)
        for p in pred[s]:
            if p in alive:
                deg[p] -= 1
                if deg[p] == 0:
                    queue.append(p)
    if 0 not in alive:
        return CarryAutomaton(beta, xi, digits, (), ())
    # reachable from the start among the alive states, numbered in BFS order
    ren = {0: 0}
    queue = deque([0])
    while queue:
        s = queue.popleft()
        for t in sorted(out[s]):
            if t in alive and t not in ren:
                ren[t] = len(ren)
                queue.append(t)
    states = [None] * len(ren)
    for old, new in ren.items():
        states[new] = order[old]
    kept = tuple(sorted((ren[s], a, ren[t]) for s, a, t in edges if s in ren and t in ren))
    return CarryAutomaton(beta, xi, digits, tuple(states), kept)


def digit_value(word: Sequence[int], beta: QuadraticNumber) -> QuadraticNumber:
    """ρ(w) = Σ_i w_i β^{|w|-1-i}."""
    out = QuadraticNumber(0, 0, beta.d or None)
    for a in word:
        out = out * beta + a
    return out


# -- toral specifications -------------------------------------------------------------

@dataclass(frozen=True)
class ToralSpec:
    matrix: tuple[tuple[int, int], tuple[int, int]]
    lam: QuadraticNumber
    mu: QuadraticNumber
    v_lam: tuple[QuadraticNumber, QuadraticNumber]
    v_mu: tuple[QuadraticNumber, QuadraticNumber]
    n: int  # digits are 0..n-1

    @property
    def digits(self) -> tuple[int, ...]:
        return tuple(range(self.n))

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet.of(str(a) for a in self.digits)


def _eigvec(m, e: QuadraticNumber) -> tuple[QuadraticNumber, QuadraticNumber]:
    (p, q), (r, s) = m
    if q != 0:
        return (QuadraticNumber(q) + 0 * e, e - p)
    return (e - s, QuadraticNumber(r) + 0 * e)


def _det2(a, b, c, d):
    return a * d - b * c


def toral_spec(matrix, n: int | None = None) -> ToralSpec:
    """Eigen data for a 2x2 integer matrix with |det| = 1.

    Default digit count is ⌊|λ|⌋ + 1, i.e. digits 0..⌊|λ|⌋.
    """
    (p, q), (r, s) = matrix
    m = ((int(p), int(q)), (int(r), int(s)))
    det = p * s - q * r
    if abs(det) != 1:
        raise HypothesisViolated("matrix must have determinant ±1")
    tr = p + s
    disc = tr * tr - 4 * det
    if disc <= 0:
        raise NotHyperbolic("eigenvalues are not real and distinct")
    f, d = squarefree_part(disc)
    if d == 1:
        raise NotHyperbolic("rational eigenvalues: not hyperbolic")
    root = QuadraticNumber(0, f, d)
    e1 = (tr + root) / 2
    e2 = (tr - root) / 2
    lam, mu = (e1, e2) if abs(e1) > abs(e2) else (e2, e1)
    if not (abs(lam) > 1 > abs(mu)):
        raise NotHyperbolic("need |λ| > 1 > |μ|")
    u_l, u_m = _eigvec(m, lam), _eigvec(m, mu)
    # α u_λ - β u_μ = (1, 0)
    D = _det2(u_l[0], -u_m[0], u_l[1], -u_m[1])
    alpha = _det2(QuadraticNumber(1), -u_m[0], QuadraticNumber(0), -u_m[1]) / D
    beta = _det2(u_l[0], QuadraticNumber(1), u_l[1], QuadraticNumber(0)) / D
    v_l = (alpha * u_l[0], alpha * u_l[1])
    v_m = (beta * u_m[0], beta * u_m[1])
    if n is None:
        n = abs(lam).floor() + 1
    return ToralSpec(m, lam, mu, v_l, v_m, n)


def lattice_coordinates(spec: ToralSpec, k: tuple[int, int]) -> tuple[QuadraticNumber, QuadraticNumber]:
    """(s, t) with s v_λ + t v_μ = k."""
    (a, c), (b, d) = spec.v_lam, spec.v_mu
    den = _det2(a, b, c, d)
    s = _det2(QuadraticNumber(k[0]) + 0 * a, b, QuadraticNumber(k[1]) + 0 * a, d) / den
    t = _det2(a, QuadraticNumber(k[0]) + 0 * a, c, QuadraticNumber(k[1]) + 0 * a) / den
    return s, t


def digit_bounds(spec: ToralSpec) -> tuple[QuadraticNumber, QuadraticNumber]:
    """Sup of |P_λ| and |P_μ| over difference streams with digits in ±(n-1)."""
    amax = spec.n - 1
    bl = QuadraticNumber(amax) * abs(spec.lam) / (abs(spec.lam) - 1)
    bm = QuadraticNumber(amax) * abs(spec.mu) / (1 - abs(spec.mu))
    return bl, bm


def lattice_box(spec: ToralSpec) -> list[tuple[int, int]]:
    """Lattice points k with |s(k)| ≤ B_λ and |t(k)| ≤ B_μ."""
    bl, bm = digit_bounds(spec)
    reach = [abs(float(spec.v_lam[j])) * float(bl) + abs(float(spec.v_mu[j])) * float(bm) for j in (0, 1)]
    r0, r1 = (math.ceil(x) + 1 for x in reach)
    out = []
    for k0 in range(-r0, r0 + 1):
        for k1 in range(-r1, r1 + 1):
            s, t = lattice_coordinates(spec, (k0, k1))
            if abs(s) <= bl and abs(t) <= bm:
                out.append((k0, k1))
    return out


def difference_language(spec: ToralSpec) -> tuple[int, list[tuple[int, int, int]]]:
    """Z-graph (n vertices, edges labeled by digit differences) presenting the admissible differences."""
    diffs = tuple(range(-(spec.n - 1), spec.n))
    vertices = 0
    edges: list[tuple[int, int, int]] = []
    for k in lattice_box(spec):
        s, t = lattice_coordinates(spec, k)
        right = carry_automaton(spec.lam, s / spec.lam, diffs)
        left = carry_automaton(1 / spec.mu, t, diffs)
        if right.is_empty() or left.is_empty():
            continue
        off_l = vertices
        off_r = vertices + len(left.states)
        vertices = off_r + len(right.states)
        for a_, d, b_ in left.edges:  # reversed: reading z_{-1} last, so arrows point toward -ξ
            edges.append((off_l + b_, d, off_l + a_))
            if a_ == left.initial:  # splice the ε-move at the origin
                edges.append((off_l + b_, d, off_r + right.initial))
        for a_, d, b_ in right.edges:
            edges.append((off_r + a_, d, off_r + b_))
    return vertices, edges


def toral_kernel(spec: ToralSpec | Sequence, cover: SoficPresentation | None = None) -> SoficRelation:
    """Kernel {(x, y) ∈ cover² : x and y code the same torus point} as a sofic relation."""
    if not isinstance(spec, ToralSpec):
        spec = toral_spec(spec)
    alph = spec.alphabet
    if cover is None:
        cover = S.full_shift(alph, "Z")
    if cover.alphabet.symbols != alph.symbols:
        raise HypothesisViolated("cover alphabet must be the digit alphabet")
    nv, dedges = difference_language(spec)
    by_diff: dict[int, list[tuple[int, int]]] = {}
    for u, d, v in dedges:
        by_diff.setdefault(d, []).append((u, v))
    k = len(alph)
    c = cover
    cn = c.n
    edges = []
    for p, a, p2 in c.edges:
        for q, b, q2 in c.edges:
            for u, v in by_diff.get(a - b, ()):
                src = (u * cn + p) * cn + q
                dst = (v * cn + p2) * cn + q2
                edges.append((src, a * k + b, dst))
    raw = S.essentialize(Alphabet.pairs(alph), nv * cn * cn, edges, "Z", allow_empty=True)
    return SoficRelation(S.reduce(raw), alph)


# -- the golden pipeline ----------------------------------------------------------------

# Closure of K_R: a diagonal state D plus one cycle per orientation of the right tail swap.
# The zipped tails of 10^∞ and (01)^∞ read (1|0) then ((0|1)(0|0))^∞.
K_R_GRAPH = (
    ("D", "0|0", "D"), ("D", "1|1", "D"),
    ("D", "1|0", "A"), ("A", "0|1", "B"), ("B", "0|0", "A"),
    ("D", "0|1", "A'"), ("A'", "1|0", "B'"), ("B'", "0|0", "A'"),
)

# Closure of K_L: left tails ^∞(10)100 and ^∞(01)001 zip to ^∞((1|0)(0|1)) (1|0)(0|0)(0|1)
# before the common part; the cycle needs two exit states per orientation.
K_L_GRAPH = (
    ("D", "0|0", "D"), ("D", "1|1", "D"),
    ("P", "0|1", "Q"), ("Q", "1|0", "P"), ("Q", "0|0", "R"), ("R", "1|0", "D"),
    ("P'", "1|0", "Q'"), ("Q'", "0|1", "P'"), ("Q'", "0|0", "R'"), ("R'", "0|1", "D"),
)

RIGHT_TAILS = ("1(0)", "(01)")  # 10^∞, (01)^∞
LEFT_TAILS = ("(10)100", "(01)001")  # ^∞(10)100, ^∞(01)001


def _relation_from_graph(edges, base: Alphabet = BINARY) -> SoficRelation:
    pres = S.from_graph(Alphabet.pairs(base), edges, "Z")
    return S.as_relation(pres, base)


def _parse_tail(text: str, right: bool) -> EventuallyPeriodicPoint:
    """Right tails ``core(period)`` as N-points; left tails ``(period)core`` reversed into N-points."""
    if right:
        open_ = text.index("(")
        return EventuallyPeriodicPoint("N", tuple(text[:open_]), tuple(text[open_ + 1:-1]))
    close = text.index(")")
    period, core = text[1:close], text[close + 1:]
    return EventuallyPeriodicPoint("N", tuple(reversed(core)), tuple(reversed(period)))


def tail_swap_closure(tails: Sequence[str], right: bool, base: Alphabet = BINARY) -> SoficRelation:
    """Closure of Δ ∪ {(u b, u b') : b ≠ b' tails} built programmatically from the tail words.

    For left tails the construction is mirrored: (b u, b' u).
    """
    edges = [("D", f"{a}|{a}", "D") for a in base.symbols]
    pts = [_parse_tail(t, right) for t in tails]
    for i, p in enumerate(pts):
        for j, q in enumerate(pts):
            if i == j:
                continue
            z = S.zip_points(p, q)
            labels = list(z.core or z.right_period) + list(z.right_period)
            c = len(labels) - len(z.right_period)
            nodes = ["D"] + [(i, j, m) for m in range(1, len(labels) + 1)]
            nodes[-1] = nodes[c]  # close the periodic cycle
            seq = [(nodes[m], lab, nodes[m + 1]) for m, lab in enumerate(labels)]
            if not right:
                seq = [(d, lab, s) for s, lab, d in seq]
            edges.extend(seq)
    return _relation_from_graph(edges, base)


def k_right() -> SoficRelation:
    return _relation_from_graph(K_R_GRAPH)


def k_left() -> SoficRelation:
    return _relation_from_graph(K_L_GRAPH)


def pattern_has_11(word: Sequence[str]) -> bool:
    tracks = list(zip(*(tok.split("|") for tok in word)))
    return any(t[i] == "1" and t[i + 1] == "1" for t in tracks for i in range(len(t) - 1))


@dataclass(frozen=True)
class GoldenPipeline:
    X: SoficPresentation
    L: SoficRelation
    R: SoficRelation
    K: SoficRelation
    patterns: tuple  # sorted by (width, zipped word)

    def profile(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for w in self.patterns:
            out[len(w)] = out.get(len(w), 0) + 1
        return dict(sorted(out.items()))


def golden_pipeline(verify: bool = True) -> GoldenPipeline:
    X = S.golden_mean("Z")
    L = S.restrict(k_left(), X)
    R = S.restrict(k_right(), X)
    K = S.restrict(S.compose(L, R), X)
    if verify and not S.equivalence_check(K, X).is_equivalence:
        raise HypothesisViolated("composed golden relation is not an equivalence")
    mf = S.minimal_forbidden_words(K.presentation)
    pats = [w for w in mf.words if not pattern_has_11(w)]
    return GoldenPipeline(X, L, R, K, tuple(S.sorted_patterns(pats, K.presentation.alphabet)))


def pattern_rows(word: Sequence[str]) -> tuple[str, str]:
    top = "".join(tok.split("|")[0] for tok in word)
    bot = "".join(tok.split("|")[1] for tok in word)
    return top, bot


# -- multiplication tables ----------------------------------------------------------------

@dataclass(frozen=True)
class MultiplicationTable:
    names: tuple[str, ...]
    entries: dict  # (row, col) -> name of row ∘ col
    relations: dict = field(repr=False)

    def format(self) -> str:
        lines = []
        for a in self.names:
            for b in self.names:
                lines.append(f"{a} o {b} = {self.entries[(a, b)]}")
        return "\n".join(lines)


def multiplication_table(relations: Sequence[tuple[str, SoficRelation]], X: SoficPresentation) -> MultiplicationTable:
    names = [n for n, _ in relations]
    rels = dict(relations)
    entries: dict = {}

    def match(r):
        for nm in names:
            if S.relation_equal(rels[nm], r):
                return nm
        return None

    discovered = 0
    for round_ in range(2):
        pending = [(a, b) for a in names for b in names if (a, b) not in entries]
        for a, b in pending:
            prod = S.restrict(S.compose(rels[a], rels[b]), X)
            nm = match(prod)
            if nm is None:
                if round_ == 1:
                    raise NotClosedUnderComposition(f"{a} o {b} escapes the relation set")
                discovered += 1
                nm = f"{a}{b}" if f"{a}{b}" not in rels else f"P{discovered}"
                names.append(nm)
                rels[nm] = prod
            entries[(a, b)] = nm
        if all((a, b) in entries for a in names for b in names):
            break
    return MultiplicationTable(tuple(names), entries, rels)


def golden_table_relations() -> tuple[SoficPresentation, list[tuple[str, SoficRelation]]]:
    X = S.golden_mean("Z")
    L = S.restrict(k_left(), X)
    R = S.restrict(k_right(), X)
    RR = S.restrict(S.compose(R, R), X)
    LR = S.restrict(S.compose(L, R), X)
    return X, [("L", L), ("R", R), ("RR", RR), ("LR", LR)]
