"""β-shifts and β-kernels for eventually periodic d*_β(1).

Digits are single characters ``0``..``9``; a ``DStar`` is the infinite word
u v^∞.  All subshifts here are one-sided (side N).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from . import symbolic as sym
from .automata import Alphabet
from .errors import NotAValidDStar, VerificationMismatch
from .quadratic import QuadraticNumber


@dataclass(frozen=True)
class DStar:
    u: str
    v: str

    @property
    def top(self) -> int:
        return max(int(c) for c in self.u + self.v)

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet.of(str(i) for i in range(self.top + 1))

    def digit(self, i: int) -> str:
        if i < len(self.u):
            return self.u[i]
        return self.v[(i - len(self.u)) % len(self.v)]

    def prefix(self, n: int) -> str:
        return "".join(self.digit(i) for i in range(n))

    def point(self) -> sym.EventuallyPeriodicPoint:
        return sym.EventuallyPeriodicPoint("N", tuple(self.u), tuple(self.v))

    def shifted(self, p: int) -> sym.EventuallyPeriodicPoint:
        if p < len(self.u):
            return sym.EventuallyPeriodicPoint("N", tuple(self.u[p:]), tuple(self.v))
        r = (p - len(self.u)) % len(self.v)
        return sym.EventuallyPeriodicPoint("N", (), tuple(self.v[r:] + self.v[:r]))

    @property
    def is_constant(self) -> bool:
        return not self.u and len(self.v) == 1

    @property
    def is_totally_periodic(self) -> bool:
        return not self.u

    def __str__(self):
        return f"{self.u}({self.v})^∞"


def _primitive_root(v: str) -> str:
    for p in range(1, len(v) + 1):
        if len(v) % p == 0 and v[:p] * (len(v) // p) == v:
            return v[:p]
    return v


def validate_dstar(u: str, v: str) -> DStar:
    """Normalize u v^∞ to its least preperiod and period and check self-domination."""
    if not v:
        raise NotAValidDStar("period must be nonempty")
    if any(c not in "0123456789" for c in u + v):
        raise NotAValidDStar("digits must be 0-9")
    v = _primitive_root(v)
    while u and u[-1] == v[-1]:
        u, v = u[:-1], v[-1] + v[:-1]
    if set(v) == {"0"}:
        raise NotAValidDStar("d* cannot end in 0^∞")
    d = DStar(u, v)
    n = len(u) + 2 * len(v)
    ref = d.prefix(n)
    for p in range(1, len(u) + len(v)):
        if "".join(d.digit(p + i) for i in range(n)) > ref:
            raise NotAValidDStar(f"shift by {p} exceeds the word", shift=p)
    return d


def parse_dstar(text: str) -> DStar:
    """``u:v`` or ``u(v)``."""
    text = text.strip()
    if ":" in text:
        u, v = text.split(":", 1)
    elif text.endswith(")") and "(" in text:
        i = text.index("(")
        u, v = text[:i], text[i + 1:-1]
    else:
        raise NotAValidDStar(f"cannot parse {text!r}; use u:v or u(v)")
    return validate_dstar(u, v)


# -- automata ---------------------------------------------------------------------

def beta_shift_automaton(d: DStar) -> sym.SoficPresentation:
    """S_β via the follower automaton: state i = length of the running match with d*."""
    A = d.alphabet
    m, p = len(d.u), len(d.v)
    edges = []
    for i in range(m + p):
        ti = int(d.digit(i))
        for a in range(ti):
            edges.append((i, a, 0))
        edges.append((i, ti, i + 1 if i + 1 < m + p else m))
    return sym.reduce(sym.essentialize(A, m + p, edges, "N", initial=[0]))


def _lasso_edges(pt: sym.EventuallyPeriodicPoint, pairs: Alphabet, start: int) -> tuple[list, int, int]:
    """Edges of a path spelling ``pt``; returns (edges, entry vertex, next free id)."""
    labels = list(pt.core) + list(pt.right_period)
    ids = list(range(start, start + len(labels)))
    edges = []
    for j, tok in enumerate(labels):
        nxt = ids[j + 1] if j + 1 < len(labels) else ids[len(pt.core)]
        edges.append((ids[j], pairs.index(tok), nxt))
    return edges, ids[0], start + len(labels)


def s_prime(d: DStar) -> list[sym.EventuallyPeriodicPoint]:
    """The points of S_β whose value is 0 or in the closure of the T-orbit of 1."""
    zero = sym.EventuallyPeriodicPoint("N", (), ("0",))
    pts = [zero]
    if d.is_constant:
        return pts + [d.point()]
    m, p = len(d.u), len(d.v)
    pts += [d.shifted(i) for i in range(m + p)]
    if d.is_totally_periodic:
        # shifts of the finite expansion d(1) = t_0 .. (t_{p-1} + 1) 0^∞
        fin = d.v[:-1] + str(int(d.v[-1]) + 1)
        pts += [sym.EventuallyPeriodicPoint("N", tuple(fin[i:]), ("0",)) for i in range(1, p)]
    return pts


def _integer_kernel(d: DStar) -> sym.SoficRelation:
    b = d.top
    A = d.alphabet
    digits = A.symbols
    pairs = Alphabet.pairs(A)
    allowed = set()
    for w in (x + y + z for x in digits for y in digits for z in digits):
        allowed.add(tuple(f"{c}|{c}" for c in w))
    bstr = str(b)
    for w in (x + y for x in digits for y in digits):
        for a in range(1, b + 1):
            top = w + str(a) + "000"
            bot = w + str(a - 1) + bstr * 3
            for s, t in ((top, bot), (bot, top)):
                for i in range(len(s) - 2):
                    allowed.add(tuple(f"{s[j]}|{t[j]}" for j in range(i, i + 3)))
    pres = sym.from_allowed_windows(allowed, pairs, "N")
    return sym.SoficRelation(sym.reduce(pres), A)


def _automaton_kernel(d: DStar) -> sym.SoficRelation:
    A = d.alphabet
    pairs = Alphabet.pairs(A)
    k = len(A)
    m, p = len(d.u), len(d.v)
    n_tail = m + p
    qI = 0
    minus = lambda i: 1 + i
    plus = lambda i: 1 + n_tail + i
    edges = [(qI, a * k + a, qI) for a in range(k)]
    for a in range(1, k):
        edges.append((qI, a * k + (a - 1), minus(0)))
        edges.append((qI, (a - 1) * k + a, plus(0)))
    for i in range(n_tail):
        t = int(d.digit(i))
        nxt = i + 1 if i + 1 < n_tail else m
        edges.append((minus(i), 0 * k + t, minus(nxt)))
        edges.append((plus(i), t * k + 0, plus(nxt)))
    n = 1 + 2 * n_tail
    initial = [qI]
    pts = s_prime(d)
    for x in pts:
        for y in pts:
            e, entry, n = _lasso_edges(sym.zip_points(x, y), pairs, n)
            edges += e
            initial.append(entry)
    pres = sym.essentialize(pairs, n, edges, "N", initial=initial)
    return sym.SoficRelation(sym.reduce(pres), A)


def beta_kernel_automaton(d: DStar) -> sym.SoficRelation:
    """K_β as a sofic relation on S_β."""
    raw = _integer_kernel(d) if d.is_constant else _automaton_kernel(d)
    return sym.restrict(raw, beta_shift_automaton(d))


# -- classification ---------------------------------------------------------------

class BetaClass(enum.Enum):
    SFT_over_SFT = "SFT/SFT"
    SFT_over_ProperSofic = "SFT/proper-sofic"
    ProperSofic_over_ProperSofic = "proper-sofic/proper-sofic"


@dataclass(frozen=True)
class BetaReport:
    dstar: DStar
    cls: BetaClass
    shift: sym.SoficPresentation
    kernel: sym.SoficRelation
    shift_is_sft: bool
    kernel_is_sft: bool
    shift_window: int | None  # longest minimal forbidden word when finite
    kernel_window: int | None
    shift_forbidden: tuple = field(default=())
    kernel_forbidden: tuple = field(default=())


def _predicted(d: DStar) -> BetaClass:
    if d.is_constant:
        return BetaClass.SFT_over_SFT
    if d.is_totally_periodic:
        return BetaClass.SFT_over_ProperSofic
    return BetaClass.ProperSofic_over_ProperSofic


def classify_beta(d: DStar) -> BetaReport:
    """Syntactic class of (S_β, K_β), cross-checked against the constructed automata."""
    cls = _predicted(d)
    S = beta_shift_automaton(d)
    K = beta_kernel_automaton(d)
    ms = sym.minimal_forbidden_words(S)
    mk = sym.minimal_forbidden_words(K.presentation)
    expected = {
        BetaClass.SFT_over_SFT: (True, True),
        BetaClass.SFT_over_ProperSofic: (True, False),
        BetaClass.ProperSofic_over_ProperSofic: (False, False),
    }[cls]
    if (ms.finite, mk.finite) != expected:
        raise VerificationMismatch(
            f"{d}: predicted {cls.value}, automata give is_sft = {ms.finite}/{mk.finite}")
    window = lambda f: max((len(w) for w in f.words), default=0) if f.finite else None
    return BetaReport(d, cls, S, K, ms.finite, mk.finite, window(ms), window(mk),
                      tuple(ms.sample(6)), tuple(mk.sample(6)))


# -- greedy expansion -------------------------------------------------------------

@dataclass(frozen=True)
class GreedyExpansion:
    digits: tuple[int, ...]  # prefix of d_β(1)
    finite: bool  # a 0-tail was reached within the prefix
    dstar: DStar | None  # set when the expansion is finite or its orbit repeats


def greedy_dstar(beta, k: int, max_steps: int | None = None) -> GreedyExpansion:
    """k digits of d_β(1) by exact iteration of x ↦ βx − ⌊βx⌋ from 1.

    Also detects a repeating orbit (or a 0-tail) within ``max_steps`` iterations
    and returns d*_β(1) in that case.
    """
    if not isinstance(beta, QuadraticNumber):
        beta = QuadraticNumber(Fraction(beta))
    if not beta > 1:
        raise ValueError("β must exceed 1")
    steps = max(k, max_steps or 0)
    x = QuadraticNumber(1, 0, beta.d or None)
    digits: list[int] = []
    seen: dict = {}
    dstar = None
    finite = False
    for i in range(steps):
        if x == 0:
            finite = True
            break
        key = (x.a, x.b)
        if key in seen and dstar is None:
            j = seen[key]
            dstar = validate_dstar("".join(map(str, digits[:j])), "".join(map(str, digits[j:i])))
            if len(digits) >= k:
                break
        seen.setdefault(key, i)
        y = beta * x
        t = y.floor()
        digits.append(t)
        x = y - t
    if x == 0:
        finite = True
    if finite:
        last = len(digits)
        word = digits[: last - 1] + [digits[last - 1] - 1]
        dstar = validate_dstar("", "".join(map(str, word)))
    out = (digits + [0] * k)[:k] if finite else digits[:k]
    if max(out, default=0) > 9 or (dstar and dstar.top > 9):
        raise ValueError("digits above 9 are not supported")
    return GreedyExpansion(tuple(out), finite, dstar)


def beta_from_dstar(d: DStar, tol: float = 1e-12) -> float:
    """Numerical β with Σ t_i β^{-(i+1)} = 1 (bisection on (1, top+1])."""
    n = 200

    def value(b):
        return sum(int(d.digit(i)) * b ** -(i + 1) for i in range(n))

    lo, hi = 1.0 + 1e-9, d.top + 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if value(mid) > 1:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)

