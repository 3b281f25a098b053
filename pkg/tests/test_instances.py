"""Instance types, file formats, and generators."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gapred import (
    CnfFormula,
    Graph,
    LabelCover,
    ParseError,
    SetSystem,
    ValidationError,
    emit_cnf,
    emit_graph,
    emit_labelcover,
    emit_setsystem,
    parse_cnf,
    parse_graph,
    parse_labelcover,
    parse_setsystem,
    random_cnf,
    random_graph,
    random_labelcover,
)

from corpus import complete_graph


# ---------------------------------------------------------------------------
# CNF


def test_parse_cnf_basic():
    f = parse_cnf("p cnf 2 1\n1 -2 0\n")
    assert f.num_vars == 2
    assert f.clauses == ((1, -2),)


def test_parse_cnf_units():
    f = parse_cnf("p cnf 1 2\n1 0\n-1 0\n")
    assert f.clauses == ((1,), (-1,))


def test_parse_cnf_literal_out_of_range():
    with pytest.raises(ParseError):
        parse_cnf("p cnf 2 1\n1 2 3 0\n")


def test_parse_cnf_rejects_wide_clause():
    with pytest.raises(ParseError):
        parse_cnf("p cnf 4 1\n1 2 3 4 0\n")


def test_parse_cnf_count_mismatch():
    with pytest.raises(ParseError):
        parse_cnf("p cnf 2 2\n1 2 0\n")


def test_parse_cnf_malformed_header():
    with pytest.raises(ParseError):
        parse_cnf("p dimacs 2 1\n1 2 0\n")
    with pytest.raises(ParseError):
        parse_cnf("1 2 0\n")


def test_parse_cnf_accepts_comments_and_multiline_clauses():
    f = parse_cnf("c hello\np cnf 3 1\n1 2\n3 0\n")
    assert f.clauses == ((1, 2, 3),)


def test_parse_cnf_bytes_input():
    assert parse_cnf(b"p cnf 1 1\n1 0\n").clauses == ((1,),)


def test_cnf_validation():
    with pytest.raises(ValidationError):
        CnfFormula(2, ((1, 1, 2),))  # repeated variable
    with pytest.raises(ValidationError):
        CnfFormula(2, ((0,),))
    with pytest.raises(ValidationError):
        CnfFormula(2, (tuple(),))


# ---------------------------------------------------------------------------
# Graph


def test_emit_graph_k3():
    out = emit_graph(complete_graph(3))
    assert out.splitlines() == ["p edge 3 3", "e 1 2", "e 1 3", "e 2 3"]


def test_graph_invariants():
    with pytest.raises(ValidationError):
        Graph(3, {(0, 0)})
    with pytest.raises(ValidationError):
        Graph(2, {(0, 2)})
    with pytest.raises(ValidationError):
        Graph(2, {(0, 1)}, bipartition=(frozenset({0, 1}), frozenset()))


def test_graph_bipartition_not_compared():
    g1 = Graph(2, frozenset(), bipartition=(frozenset({0}), frozenset({1})))
    g2 = Graph(2, frozenset())
    assert g1 == g2


def test_graph_complement():
    g = Graph(3, {(0, 1)})
    assert g.complement().edges == frozenset({(0, 2), (1, 2)})


def test_parse_graph_errors():
    with pytest.raises(ParseError):
        parse_graph("p edge 2 1\ne 1 3\n")
    with pytest.raises(ParseError):
        parse_graph("p edge 2 2\ne 1 2\ne 2 1\n")  # duplicate edge
    with pytest.raises(ParseError):
        parse_graph("p edge 2 0\ne 1 2\n")  # count mismatch is 0 vs 1
    with pytest.raises(ParseError):
        parse_graph("p edge 2 1\ne 1 1\n")


# ---------------------------------------------------------------------------
# SetSystem


def test_emit_setsystem_format():
    s = SetSystem(2, ((1, frozenset({0})), (2, frozenset({0, 1}))))
    assert emit_setsystem(s).splitlines() == ["ss 2 2", "s 1 1 1", "s 2 2 1 2"]


def test_setsystem_duplicate_ids():
    with pytest.raises(ValidationError):
        SetSystem(2, ((1, frozenset({0})), (1, frozenset({1}))))


def test_parse_setsystem_size_field():
    with pytest.raises(ParseError):
        parse_setsystem("ss 2 1\ns 1 2 1\n")


def test_setsystem_empty_set_roundtrip():
    s = SetSystem(3, ((5, frozenset()),))
    assert parse_setsystem(emit_setsystem(s)) == s


# ---------------------------------------------------------------------------
# LabelCover


def test_labelcover_invariants():
    with pytest.raises(ValidationError):
        LabelCover(1, 1, 2, 2, {(0, 0): {(2, 0)}})  # label out of range
    with pytest.raises(ValidationError):
        LabelCover(1, 1, 2, 2, {(0, 1): set()})  # edge out of range
    with pytest.raises(ValidationError):
        LabelCover(1, 1, 2, 2, {}, admissible={0: {3}})


def test_labelcover_default_admissible_is_full():
    lc = LabelCover(2, 1, 3, 2, {(0, 0): {(0, 1)}})
    assert lc.admissible[1] == frozenset({0, 1, 2})
    assert lc.is_full_admissible(0)


def test_labelcover_empty_admissible_allowed():
    lc = LabelCover(1, 1, 2, 2, {(0, 0): set()}, admissible={0: frozenset()})
    assert lc.admissible[0] == frozenset()


def test_labelcover_emit_omits_full_admissible():
    lc = LabelCover(2, 1, 2, 2, {(0, 0): {(0, 1)}}, admissible={0: {0}, 1: {0, 1}})
    text = emit_labelcover(lc)
    assert "a 1 1 0" in text
    assert "a 2" not in text


def test_parse_labelcover_errors():
    with pytest.raises(ParseError):
        parse_labelcover("lc 1 1 2 2\ne 1 1 2 0 0\n")  # npairs mismatch
    with pytest.raises(ParseError):
        parse_labelcover("lc 1 1 2\n")


# ---------------------------------------------------------------------------
# Round trips over generated corpora


@given(st.integers(0, 10**9))
@settings(max_examples=40, deadline=None)
def test_cnf_roundtrip(seed):
    f = random_cnf(6, 8, seed)
    assert parse_cnf(emit_cnf(f)) == f


@given(st.integers(0, 10**9))
@settings(max_examples=40, deadline=None)
def test_graph_roundtrip(seed):
    g = random_graph(7, 0.4, seed)
    assert parse_graph(emit_graph(g)) == g


@given(st.integers(0, 10**9))
@settings(max_examples=50, deadline=None)
def test_labelcover_roundtrip(seed):
    lc = random_labelcover(3, 3, 3, 2, density=0.7, seed=seed, admissible_density=0.6)
    assert parse_labelcover(emit_labelcover(lc)) == lc


@given(st.integers(0, 10**9))
@settings(max_examples=30, deadline=None)
def test_projection_labelcover_roundtrip(seed):
    lc = random_labelcover(3, 2, 2, 3, density=0.8, seed=seed, projection=True)
    assert parse_labelcover(emit_labelcover(lc)) == lc


# ---------------------------------------------------------------------------
# Generators


def test_random_cnf_deterministic():
    assert random_cnf(6, 8, seed=1) == random_cnf(6, 8, seed=1)


def test_random_cnf_empty():
    assert random_cnf(3, 0, seed=5).clauses == ()


def test_random_cnf_distinct_variables():
    f = random_cnf(6, 8, seed=3)
    for clause in f.clauses:
        assert len(clause) == 3
        assert len({abs(lit) for lit in clause}) == 3


def test_random_cnf_needs_three_vars():
    with pytest.raises(ValidationError):
        random_cnf(2, 1, seed=0)


def test_random_labelcover_single_cell():
    lc = random_labelcover(1, 1, 1, 1, density=1.0, seed=0)
    assert lc.edges == ((0, 0),)
    assert lc.relations[(0, 0)] <= {(0, 0)}


def test_random_labelcover_deterministic():
    a = random_labelcover(3, 3, 2, 2, density=0.5, seed=9)
    b = random_labelcover(3, 3, 2, 2, density=0.5, seed=9)
    assert a == b


def test_random_labelcover_left_degrees():
    lc = random_labelcover(4, 5, 2, 2, seed=2, left_degrees=(1, 3))
    for u in range(4):
        assert 1 <= len(lc.left_neighbors[u]) <= 3


def test_random_graph_deterministic():
    assert random_graph(8, 0.5, seed=4) == random_graph(8, 0.5, seed=4)


def test_labeling_cover_helpers():
    from gapred import Labeling, cnf_to_labelcover, max_cov

    lc = cnf_to_labelcover(CnfFormula(2, ((1, 2), (-1, 2))))
    best = 0
    import itertools

    for left in itertools.product(*(sorted(lc.admissible[u]) for u in range(lc.left_size))):
        for right in itertools.product(range(lc.right_alphabet), repeat=lc.right_size):
            lab = Labeling(left, right)
            lab.validate(lc)
            best = max(best, lab.covered_count(lc))
    assert best == max_cov(lc)


def test_multilabeling_cost_and_cover():
    from gapred import LabelCover, MultiLabeling, min_lab

    lc = LabelCover(2, 1, 1, 2, {(0, 0): {(0, 0)}, (1, 0): {(0, 1)}})
    ml = MultiLabeling((0, 0), (frozenset({0, 1}),))
    ml.validate(lc)
    assert ml.covers_all(lc)
    assert ml.cost() == 2 == min_lab(lc)
    partial = MultiLabeling((0, 0), (frozenset({0}),))
    assert not partial.covers_all(lc)


def test_labeling_validation_errors():
    from gapred import LabelCover, Labeling

    lc = LabelCover(1, 1, 2, 2, {(0, 0): {(0, 0)}}, admissible={0: {0}})
    with pytest.raises(ValidationError):
        Labeling((1,), (0,)).validate(lc)  # label 1 not admissible
    with pytest.raises(ValidationError):
        Labeling((0,), (5,)).validate(lc)


def test_empty_formula_roundtrip():
    f = CnfFormula(0, ())
    assert parse_cnf(emit_cnf(f)) == f
    f2 = CnfFormula(4, ())
    assert parse_cnf(emit_cnf(f2)) == f2


def test_empty_graph_roundtrip():
    g = Graph(0, frozenset())
    assert parse_graph(emit_graph(g)) == g


def test_empty_labelcover_roundtrip():
    lc = LabelCover(0, 3, 8, 2, {})
    assert parse_labelcover(emit_labelcover(lc)) == lc


def test_setsystem_order_insensitive():
    a = SetSystem(2, ((2, frozenset({1})), (1, frozenset({0}))))
    b = SetSystem(2, ((1, frozenset({0})), (2, frozenset({1}))))
    assert a == b
    assert parse_setsystem(emit_setsystem(a)) == a


def test_tuple_decoder():
    from gapred import TupleDecoder

    dec = TupleDecoder((4, 7), ((0, 1), (2, 3), (2, 5)))
    assert dec.arity == 2
    assert dec.decode(1) == (2, 3)
    assert dec.sub_label(2, 7) == 5
    with pytest.raises(ValidationError):
        TupleDecoder((4,), ((0, 1),))
