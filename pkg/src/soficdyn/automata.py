"""Finite-word automata over token alphabets.

Every language-valued result is returned in canonical form: the minimal
complete DFA whose states are numbered in BFS order from the initial state
(symbols visited in alphabet order).  Two canonical automata over the same
alphabet accept the same language iff they are equal as values.

Words are sequences of tokens.  A plain ``str`` works as a word whenever
every token is a single character.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import AlphabetMismatch, ParseError

PAIR_SEP = "|"


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]
    paired: bool = False
    _index: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("alphabet symbols must be distinct")
        for s in self.symbols:
            if not s or any(ch.isspace() for ch in s):
                raise ValueError(f"bad token {s!r}")
            if self.paired and s.count(PAIR_SEP) != 1:
                raise ValueError(f"pair token {s!r} must contain exactly one {PAIR_SEP!r}")
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.symbols)})

    @classmethod
    def of(cls, symbols: Iterable[str]) -> "Alphabet":
        return cls(tuple(str(s) for s in symbols))

    @classmethod
    def pairs(cls, base: "Alphabet") -> "Alphabet":
        """Pair alphabet base x base; token a|b sits at index i*|base| + j."""
        return cls(tuple(f"{a}{PAIR_SEP}{b}" for a in base.symbols for b in base.symbols), True)

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, tok):
        return tok in self._index

    def index(self, tok: str) -> int:
        try:
            return self._index[tok]
        except KeyError:
            raise AlphabetMismatch(f"token {tok!r} not in alphabet") from None

    def encode(self, word: Sequence[str]) -> tuple[int, ...]:
        return tuple(self.index(t) for t in word)

    def decode(self, codes: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.symbols[c] for c in codes)

    def split(self, tok: str) -> tuple[str, str]:
        if not self.paired:
            raise AlphabetMismatch("alphabet is not paired")
        a, b = tok.split(PAIR_SEP)
        return a, b

    def base(self) -> "Alphabet":
        """Track alphabet of a pair alphabet built by :meth:`pairs`."""
        if not self.paired:
            raise AlphabetMismatch("alphabet is not paired")
        seen: list[str] = []
        for tok in self.symbols:
            for part in tok.split(PAIR_SEP):
                if part not in seen:
                    seen.append(part)
        return Alphabet(tuple(seen))


@dataclass(frozen=True)
class FiniteAutomaton:
    """NFA (or DFA) with integer states ``0..n_states-1``.

    ``delta[s]`` maps a symbol index to the frozenset of successor states.
    """

    alphabet: Alphabet
    n_states: int
    delta: tuple
    initial: frozenset
    accepting: frozenset

    @classmethod
    def build(cls, alphabet: Alphabet, n_states: int, edges: Iterable[tuple[int, int, int]],
              initial: Iterable[int], accepting: Iterable[int]) -> "FiniteAutomaton":
        """Edges are (src, symbol index, dst)."""
        rows: list[dict[int, set[int]]] = [dict() for _ in range(n_states)]
        for s, a, t in edges:
            rows[s].setdefault(a, set()).add(t)
        delta = tuple({a: frozenset(ts) for a, ts in sorted(r.items())} for r in rows)
        return cls(alphabet, n_states, delta, frozenset(initial), frozenset(accepting))

    def edges(self) -> Iterator[tuple[int, int, int]]:
        for s, row in enumerate(self.delta):
            for a, ts in row.items():
                for t in ts:
                    yield s, a, t

    @property
    def is_deterministic(self) -> bool:
        return len(self.initial) == 1 and all(len(ts) <= 1 for row in self.delta for ts in row.values())

    def table(self) -> list[list[int]]:
        """Transition table of a complete DFA."""
        k = len(self.alphabet)
        out = []
        for row in self.delta:
            line = []
            for a in range(k):
                (t,) = row[a]
                line.append(t)
            out.append(line)
        return out

    def start(self) -> int:
        (s,) = self.initial
        return s

    def accepts(self, word: Sequence[str]) -> bool:
        cur = set(self.initial)
        for a in self.alphabet.encode(word):
            nxt: set[int] = set()
            for s in cur:
                nxt |= self.delta[s].get(a, frozenset())
            cur = nxt
            if not cur:
                return False
        return bool(cur & self.accepting)

    def __repr__(self):
        return f"FiniteAutomaton(|Q|={self.n_states}, |Σ|={len(self.alphabet)})"


# -- constructors -------------------------------------------------------------

def empty_language(alphabet: Alphabet) -> FiniteAutomaton:
    return determinize_minimize(FiniteAutomaton.build(alphabet, 1, [], [0], []))


def universal_language(alphabet: Alphabet) -> FiniteAutomaton:
    return determinize_minimize(
        FiniteAutomaton.build(alphabet, 1, [(0, a, 0) for a in range(len(alphabet))], [0], [0]))


def from_words(alphabet: Alphabet, words: Iterable[Sequence[str]]) -> FiniteAutomaton:
    """Canonical DFA of a finite word list (built as a trie)."""
    edges = []
    accepting = set()
    trie: dict[tuple[int, int], int] = {}
    n = 1
    for w in words:
        s = 0
        for a in alphabet.encode(w):
            if (s, a) not in trie:
                trie[(s, a)] = n
                edges.append((s, a, n))
                n += 1
            s = trie[(s, a)]
        accepting.add(s)
    return determinize_minimize(FiniteAutomaton.build(alphabet, n, edges, [0], accepting))


def length_exactly(alphabet: Alphabet, n: int) -> FiniteAutomaton:
    k = len(alphabet)
    edges = [(i, a, i + 1) for i in range(n) for a in range(k)]
    return determinize_minimize(FiniteAutomaton.build(alphabet, n + 1, edges, [0], [n]))


# -- determinization and minimization ------------------------------------------

def _subset_construction(a: FiniteAutomaton) -> tuple[list[list[int]], list[bool]]:
    k = len(a.alphabet)
    start = frozenset(a.initial)
    ids = {start: 0}
    order = [start]
    table: list[list[int]] = []
    i = 0
    while i < len(order):
        cur = order[i]
        row = []
        for sym in range(k):
            nxt = set()
            for s in cur:
                nxt |= a.delta[s].get(sym, frozenset())
            key = frozenset(nxt)
            if key not in ids:
                ids[key] = len(order)
                order.append(key)
            row.append(ids[key])
        table.append(row)
        i += 1
    acc = [bool(S & a.accepting) for S in order]
    return table, acc


def _minimize_table(table: list[list[int]], acc: list[bool], start: int) -> tuple[list[list[int]], list[bool]]:
    """Moore refinement, then renumber in BFS order from ``start``."""
    n = len(table)
    cls = [1 if x else 0 for x in acc]
    n_cls = len(set(cls))
    while True:
        sigs: dict[tuple, int] = {}
        new = []
        for s in range(n):
            sig = (cls[s], tuple(cls[t] for t in table[s]))
            new.append(sigs.setdefault(sig, len(sigs)))
        if len(sigs) == n_cls:
            cls = new
            break
        cls, n_cls = new, len(sigs)
    # BFS renumbering of class representatives
    rep = {}
    for s in range(n):
        rep.setdefault(cls[s], s)
    ids = {cls[start]: 0}
    queue = deque([cls[start]])
    out_rows: list[list[int]] = []
    out_acc: list[bool] = []
    while queue:
        c = queue.popleft()
        s = rep[c]
        row = []
        for t in table[s]:
            ct = cls[t]
            if ct not in ids:
                ids[ct] = len(ids)
                queue.append(ct)
            row.append(ids[ct])
        out_rows.append(row)
        out_acc.append(acc[s])
    return out_rows, out_acc


def _from_table(alphabet: Alphabet, table: list[list[int]], acc: list[bool]) -> FiniteAutomaton:
    delta = tuple({a: frozenset((t,)) for a, t in enumerate(row)} for row in table)
    return FiniteAutomaton(alphabet, len(table), delta, frozenset((0,)),
                           frozenset(i for i, x in enumerate(acc) if x))


def determinize_minimize(a: FiniteAutomaton) -> FiniteAutomaton:
    """Canonical minimal complete DFA accepting L(a)."""
    table, acc = _subset_construction(a)
    rows, racc = _minimize_table(table, acc, 0)
    return _from_table(a.alphabet, rows, racc)


def canonical(a: FiniteAutomaton) -> FiniteAutomaton:
    return determinize_minimize(a)


# -- boolean operations ---------------------------------------------------------

def _check_same(a: FiniteAutomaton, b: FiniteAutomaton):
    if a.alphabet.symbols != b.alphabet.symbols:
        raise AlphabetMismatch("alphabets differ")


def _dfa(a: FiniteAutomaton) -> tuple[list[list[int]], list[bool], int]:
    if a.is_deterministic and all(len(row) == len(a.alphabet) for row in a.delta):
        return a.table(), [s in a.accepting for s in range(a.n_states)], a.start()
    table, acc = _subset_construction(a)
    return table, acc, 0


def boolean(kind: str, a: FiniteAutomaton, b: FiniteAutomaton | None = None) -> FiniteAutomaton:
    """``kind`` is one of and / or / diff / complement."""
    if kind == "complement":
        if b is not None:
            raise ValueError("complement takes one argument")
        t, acc, s0 = _dfa(a)
        rows, racc = _minimize_table(t, [not x for x in acc], s0)
        return _from_table(a.alphabet, rows, racc)
    if b is None:
        raise ValueError(f"{kind} needs two arguments")
    _check_same(a, b)
    op = {"and": lambda x, y: x and y,
          "or": lambda x, y: x or y,
          "diff": lambda x, y: x and not y}[kind]
    ta, acca, sa = _dfa(a)
    tb, accb, sb = _dfa(b)
    k = len(a.alphabet)
    ids = {(sa, sb): 0}
    order = [(sa, sb)]
    table = []
    i = 0
    while i < len(order):
        p, q = order[i]
        row = []
        for sym in range(k):
            key = (ta[p][sym], tb[q][sym])
            if key not in ids:
                ids[key] = len(order)
                order.append(key)
            row.append(ids[key])
        table.append(row)
        i += 1
    acc = [op(acca[p], accb[q]) for p, q in order]
    rows, racc = _minimize_table(table, acc, 0)
    return _from_table(a.alphabet, rows, racc)


def intersection(a, b):
    return boolean("and", a, b)


def union(a, b):
    return boolean("or", a, b)


def difference(a, b):
    return boolean("diff", a, b)


def complement(a):
    return boolean("complement", a)


# -- projection -------------------------------------------------------------------

def project(a: FiniteAutomaton, morphism: Mapping[str, str], target: Alphabet | None = None) -> FiniteAutomaton:
    """Image of L(a) under the letterwise relabeling ``morphism``."""
    if set(morphism) != set(a.alphabet.symbols):
        missing = set(a.alphabet.symbols) - set(morphism)
        raise AlphabetMismatch(f"morphism not total, missing {sorted(missing)}")
    if target is None:
        target = Alphabet(tuple(dict.fromkeys(morphism[s] for s in a.alphabet.symbols)))
    img = [target.index(morphism[s]) for s in a.alphabet.symbols]
    edges = [(s, img[x], t) for s, x, t in a.edges()]
    return determinize_minimize(FiniteAutomaton.build(target, a.n_states, edges, a.initial, a.accepting))


def reverse(a: FiniteAutomaton) -> FiniteAutomaton:
    edges = [(t, x, s) for s, x, t in a.edges()]
    return determinize_minimize(FiniteAutomaton.build(a.alphabet, a.n_states, edges, a.accepting, a.initial))


# -- analysis ---------------------------------------------------------------------

@dataclass(frozen=True)
class LanguageClass:
    empty: bool
    finite: bool
    word_count_if_finite: int | None


def _trim_states(a: FiniteAutomaton) -> set[int]:
    fwd = set(a.initial)
    stack = list(a.initial)
    while stack:
        s = stack.pop()
        for ts in a.delta[s].values():
            for t in ts:
                if t not in fwd:
                    fwd.add(t)
                    stack.append(t)
    pred: list[set[int]] = [set() for _ in range(a.n_states)]
    for s, _, t in a.edges():
        pred[t].add(s)
    bwd = set(a.accepting)
    stack = list(a.accepting)
    while stack:
        s = stack.pop()
        for p in pred[s]:
            if p not in bwd:
                bwd.add(p)
                stack.append(p)
    return fwd & bwd


def classify_language(a: FiniteAutomaton) -> LanguageClass:
    d = determinize_minimize(a)
    live = _trim_states(d)
    if not live:
        return LanguageClass(True, True, 0)
    table = d.table()
    # cycle detection restricted to live states (Kahn)
    indeg = {s: 0 for s in live}
    for s in live:
        for t in table[s]:
            if t in live:
                indeg[t] += 1
    queue = deque(s for s in live if indeg[s] == 0)
    topo = []
    while queue:
        s = queue.popleft()
        topo.append(s)
        for t in table[s]:
            if t in live:
                indeg[t] -= 1
                if indeg[t] == 0:
                    queue.append(t)
    if len(topo) != len(live):
        return LanguageClass(False, False, None)
    # exact path counting to accepting states
    ways = {s: (1 if s in d.accepting else 0) for s in live}
    for s in reversed(topo):
        ways[s] += sum(ways[t] for t in table[s] if t in live)
    return LanguageClass(False, True, ways[d.start()])


def is_empty(a: FiniteAutomaton) -> bool:
    return not (_trim_states(a) & set(a.initial))


def shortest_word(a: FiniteAutomaton) -> tuple[str, ...] | None:
    """A shortest accepted word (BFS, ties broken by symbol order), or None."""
    d = determinize_minimize(a)
    table = d.table()
    prev: dict[int, tuple[int, int] | None] = {d.start(): None}
    queue = deque([d.start()])
    while queue:
        s = queue.popleft()
        if s in d.accepting:
            word = []
            while prev[s] is not None:
                p, x = prev[s]
                word.append(x)
                s = p
            return d.alphabet.decode(reversed(word))
        for x, t in enumerate(table[s]):
            if t not in prev:
                prev[t] = (s, x)
                queue.append(t)
    return None


def includes(a: FiniteAutomaton, b: FiniteAutomaton) -> bool:
    """True iff L(b) ⊆ L(a)."""
    _check_same(a, b)
    return is_empty(difference(b, a))


def inclusion_witness(a: FiniteAutomaton, b: FiniteAutomaton) -> tuple[str, ...] | None:
    """A shortest word of L(b) \\ L(a), or None when L(b) ⊆ L(a)."""
    _check_same(a, b)
    return shortest_word(difference(b, a))


def language_equal(a: FiniteAutomaton, b: FiniteAutomaton) -> bool:
    if a.alphabet.symbols != b.alphabet.symbols:
        return False
    return determinize_minimize(a) == determinize_minimize(b)


def words_up_to(a: FiniteAutomaton, max_len: int) -> list[tuple[str, ...]]:
    """All accepted words of length ≤ max_len, sorted by (length, symbol order)."""
    d = determinize_minimize(a)
    table = d.table()
    live = _trim_states(d)
    out = []
    layer = [((), d.start())] if d.start() in live else []
    for n in range(max_len + 1):
        for w, s in layer:
            if s in d.accepting:
                out.append(d.alphabet.decode(w))
        if n == max_len:
            break
        layer = [(w + (x,), t) for w, s in layer for x, t in enumerate(table[s]) if t in live]
    return out


def all_words(alphabet: Alphabet, n: int) -> Iterator[tuple[str, ...]]:
    return product(alphabet.symbols, repeat=n)


# -- text format ------------------------------------------------------------------

def _strip_comment(line: str) -> str:
    """Whole-line comments start with ``# ``; a bare ``#`` elsewhere is a token (the suspension marker)."""
    line = line.strip()
    return "" if line.startswith(("# ", "##")) else line


def to_text(a: FiniteAutomaton) -> str:
    lines = [f"alphabet {' '.join(a.alphabet.symbols)}"]
    lines += [f"state q{s}" for s in range(a.n_states)]
    lines += [f"initial q{s}" for s in sorted(a.initial)]
    lines += [f"accept q{s}" for s in sorted(a.accepting)]
    lines += [f"edge q{s} {a.alphabet.symbols[x]} q{t}" for s, x, t in a.edges()]
    return "\n".join(lines) + "\n"


def from_text(text: str, alphabet: Alphabet | None = None) -> FiniteAutomaton:
    names: dict[str, int] = {}
    raw_edges = []
    initial, accepting = [], []
    toks: list[str] = list(alphabet.symbols) if alphabet else []

    def st(name):
        return names.setdefault(name, len(names))

    for lineno, line in enumerate(text.splitlines(), 1):
        line = _strip_comment(line)
        if not line:
            continue
        parts = line.split()
        kw, args = parts[0], parts[1:]
        if kw == "alphabet":
            if alphabet is None:
                toks.extend(t for t in args if t not in toks)
        elif kw == "state" and len(args) == 1:
            st(args[0])
        elif kw == "initial" and len(args) == 1:
            initial.append(st(args[0]))
        elif kw == "accept" and len(args) == 1:
            accepting.append(st(args[0]))
        elif kw == "edge" and len(args) == 3:
            raw_edges.append((st(args[0]), args[1], st(args[2])))
            if alphabet is None and args[1] not in toks:
                toks.append(args[1])
        else:
            raise ParseError(f"line {lineno}: cannot parse {line!r}")
    if alphabet is None:
        paired = bool(toks) and all(t.count(PAIR_SEP) == 1 for t in toks)
        alphabet = Alphabet(tuple(toks), paired)
    edges = [(s, alphabet.index(x), t) for s, x, t in raw_edges]
    return FiniteAutomaton.build(alphabet, len(names), edges, initial, accepting)
