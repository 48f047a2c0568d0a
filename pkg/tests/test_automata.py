import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from soficdyn import automata as fa
from soficdyn.automata import Alphabet, FiniteAutomaton
from soficdyn.errors import AlphabetMismatch, ParseError

AB = Alphabet.of("ab")


def words(max_len, alphabet=AB):
    for n in range(max_len + 1):
        yield from product(alphabet.symbols, repeat=n)


@st.composite
def nfas(draw, max_states=4):
    n = draw(st.integers(1, max_states))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, 1), st.integers(0, n - 1)),
                          max_size=3 * n))
    init = draw(st.sets(st.integers(0, n - 1), min_size=1))
    acc = draw(st.sets(st.integers(0, n - 1)))
    return FiniteAutomaton.build(AB, n, edges, init, acc)


def lang(a, max_len=6):
    return {w for w in words(max_len) if a.accepts(w)}


def test_pair_alphabet_indexing():
    p = Alphabet.pairs(Alphabet.of("012"))
    assert p.index("1|2") == 1 * 3 + 2
    assert p.split("2|0") == ("2", "0")
    assert p.base().symbols == ("0", "1", "2")
    with pytest.raises(AlphabetMismatch):
        p.index("3|3")


def test_from_words_and_length_exactly():
    a = fa.from_words(AB, [("a",), ("a", "b")])
    assert lang(a) == {("a",), ("a", "b")}
    assert lang(fa.length_exactly(AB, 2)) == {w for w in words(2) if len(w) == 2}


@given(nfas())
@settings(max_examples=60, deadline=None)
def test_minimization_preserves_language(a):
    d = fa.determinize_minimize(a)
    assert d.is_deterministic
    assert lang(d) == lang(a)


@given(nfas(), nfas())
@settings(max_examples=60, deadline=None)
def test_boolean_operations_match_sets(a, b):
    la, lb = lang(a), lang(b)
    every = set(words(6))
    assert lang(fa.intersection(a, b)) == la & lb
    assert lang(fa.union(a, b)) == la | lb
    assert lang(fa.difference(a, b)) == la - lb
    assert lang(fa.complement(a)) == every - la


@given(nfas(), nfas())
@settings(max_examples=60, deadline=None)
def test_canonical_form_decides_equality(a, b):
    same = fa.language_equal(a, b)
    if same:
        assert lang(a, 7) == lang(b, 7)
    # equal languages always give equal canonical automata
    assert fa.language_equal(a, fa.determinize_minimize(a))


@given(nfas())
@settings(max_examples=40, deadline=None)
def test_reverse(a):
    assert lang(fa.reverse(a)) == {w[::-1] for w in lang(a)}


@given(nfas())
@settings(max_examples=40, deadline=None)
def test_classify_counts_finite_languages(a):
    info = fa.classify_language(a)
    assert info.empty == (not lang(a, 8))
    if info.finite:
        # finite languages have no word longer than the state count
        assert len(lang(a, a.n_states + 3)) == info.word_count_if_finite
    else:
        assert info.word_count_if_finite is None


def test_shortest_word_and_witness():
    a = fa.from_words(AB, [("a", "b", "a"), ("b",)])
    assert fa.shortest_word(a) == ("b",)
    assert fa.shortest_word(fa.empty_language(AB)) is None
    u = fa.universal_language(AB)
    assert fa.includes(u, a)
    assert fa.inclusion_witness(a, u) == ()


def test_project_merges_symbols():
    a = fa.from_words(AB, [("a", "b")])
    target = Alphabet.of("x")
    p = fa.project(a, {"a": "x", "b": "x"}, target)
    assert p.accepts(("x", "x")) and not p.accepts(("x",))


def test_text_round_trip():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(1, 4)
        edges = [(rng.randrange(n), rng.randrange(2), rng.randrange(n)) for _ in range(rng.randint(0, 6))]
        a = FiniteAutomaton.build(AB, n, edges, [0], [rng.randrange(n)])
        b = fa.from_text(fa.to_text(a), AB)
        assert fa.language_equal(a, b)


def test_text_format_errors():
    with pytest.raises(ParseError):
        fa.from_text("bogus line here\n")


def test_hash_token_is_not_a_comment():
    a = fa.from_text("# header comment\nstate q0\ninitial q0\naccept q0\nedge q0 # q0\n")
    assert a.alphabet.symbols == ("#",)
    assert a.accepts(("#", "#"))
