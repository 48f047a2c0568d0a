import itertools
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from oracles import same_torus_point

from soficdyn import symbolic as S
from soficdyn import toral as T
from soficdyn.errors import HypothesisViolated, NotHyperbolic
from soficdyn.quadratic import Q

PATTERNS = Path(__file__).parent / "data" / "golden_patterns.txt"
P = S.EventuallyPeriodicPoint


def reference_rows():
    rows = []
    for line in PATTERNS.read_text().splitlines():
        if line.strip() and not line.startswith("#"):
            top, bot = line.split()
            rows.append((top, bot))
    return rows


@pytest.fixture(scope="module")
def golden():
    return T.golden_pipeline()


def small_points(alphabet):
    pers = [(a,) for a in alphabet] + [p for p in itertools.product(alphabet, repeat=2) if p[0] != p[1]]
    cores = [()] + [(a,) for a in alphabet]
    return [P("Z", c, r, l) for l in pers for c in cores for r in pers]


def test_spec_eigen_data():
    spec = T.toral_spec([[1, 1], [1, 0]])
    phi = Q.parse("(1+sqrt(5))/2")
    assert spec.lam == phi and spec.n == 2
    assert spec.lam * spec.mu == -1
    diff = (spec.v_lam[0] - spec.v_mu[0], spec.v_lam[1] - spec.v_mu[1])
    assert diff == (1, 0)
    assert T.toral_spec([[2, 1], [1, 1]]).n == 3


def test_non_hyperbolic_matrices_rejected():
    with pytest.raises(NotHyperbolic):
        T.toral_spec([[1, 1], [0, 1]])
    with pytest.raises(NotHyperbolic):
        T.toral_spec([[0, -1], [1, 0]])
    with pytest.raises(HypothesisViolated):
        T.toral_spec([[2, 0], [0, 1]])


@given(st.lists(st.integers(0, 1), max_size=12))
def test_digit_value_is_horner(w):
    phi = Q.parse("(1+sqrt(5))/2")
    want = sum(a * float(phi) ** (len(w) - 1 - i) for i, a in enumerate(w))
    assert abs(float(T.digit_value(w, phi)) - want) < 1e-6


@pytest.mark.parametrize("matrix", [[[1, 1], [1, 0]], [[2, 1], [1, 1]]])
def test_toral_kernel_matches_float_oracle(matrix):
    spec = T.toral_spec(matrix)
    K = T.toral_kernel(spec)
    pts = small_points([str(a) for a in spec.digits])
    if len(pts) > 60:
        pts = pts[::5]
    hits = 0
    for x in pts:
        for y in pts:
            got = S.pair_membership((x, y), K)
            assert got == same_torus_point(x, y, spec), (x, y)
            hits += got
    assert hits > len(pts)  # more than the diagonal


def test_toral_kernel_is_an_equivalence_on_the_cover():
    K = T.toral_kernel([[1, 1], [1, 0]])
    assert S.equivalence_check(K, S.full_shift("01")).is_equivalence


def test_pipeline_kernel_equals_direct_kernel(golden):
    direct = S.restrict(T.toral_kernel([[1, 1], [1, 0]], cover=golden.X), golden.X)
    assert S.relation_equal(direct, golden.K)


def test_tail_swap_closures_match_hand_built_graphs():
    assert S.relation_equal(T.tail_swap_closure(T.RIGHT_TAILS, True), T.k_right())
    assert S.relation_equal(T.tail_swap_closure(T.LEFT_TAILS, False), T.k_left())


def test_right_closure_is_not_transitive_but_composite_is(golden):
    rep = S.equivalence_check(golden.R, golden.X)
    assert rep.reflexive and rep.symmetric and not rep.transitive
    assert S.equivalence_check(golden.K, golden.X).is_equivalence


def test_golden_patterns_agree_with_reference_list(golden):
    got = {T.pattern_rows(w) for w in golden.patterns}
    want = set(reference_rows())
    assert got == want
    assert not any(T.pattern_has_11(w) for w in golden.patterns)
    assert golden.profile() == {4: 4, 5: 40, 6: 20}


def test_golden_pattern_order_is_by_width(golden):
    widths = [len(w) for w in golden.patterns]
    assert widths == sorted(widths)


def test_multiplication_table():
    X, rels = T.golden_table_relations()
    tb = T.multiplication_table(rels, X)
    e = tb.entries
    assert e[("L", "L")] == "L" and e[("R", "R")] == "RR" and e[("RR", "RR")] == "RR"
    assert e[("L", "R")] == "LR" and e[("R", "L")] == "LR"
    assert all(e[("LR", b)] == "LR" and e[(b, "LR")] == "LR" for b in tb.names)
    assert len(tb.format().splitlines()) == 16


def test_carry_automaton_accepts_exact_expansions():
    phi = Q.parse("(1+sqrt(5))/2")
    ca = T.carry_automaton(phi, Q(0), (-1, 0, 1))
    assert not ca.is_empty()
    assert ca.run([0, 0, 0]) == 0
