"""Term AST, parser, printer and JSON round-trips."""

import pytest
from hypothesis import given

from conftest import term_strategy
from stonework.errors import DuplicateGenerator, ParseError
from stonework.terms import (
    And,
    Gen,
    Not,
    ONE,
    One,
    Or,
    Term,
    ZERO,
    Zero,
    eval_term,
    generators_of,
    join,
    meet,
    parse_gen_list,
    parse_term,
    parse_term_list,
    substitute,
    term_from_json,
    term_to_json,
)

G0, G1, G2 = Gen("g0"), Gen("g1"), Gen("g2")


class TestParser:
    def test_precedence_not_binds_tightest_then_and(self):
        # ~g0 & g1 | g2 reads as ((~g0) & g1) | g2
        assert parse_term("~g0 & g1 | g2") == Or(And(Not(G0), G1), G2)

    def test_parens_and_constants(self):
        assert parse_term("(g0 | g1) & ~1") == And(Or(G0, G1), Not(ONE))
        assert parse_term("0") == ZERO
        assert parse_term("1") == ONE

    def test_trailing_operator_rejected(self):
        with pytest.raises(ParseError):
            parse_term("g0 &")

    def test_unbalanced_paren_rejected(self):
        with pytest.raises(ParseError):
            parse_term("(g0 | g1")

    def test_garbage_rejected(self):
        with pytest.raises(ParseError):
            parse_term("g0 @ g1")

    def test_empty_rejected(self):
        with pytest.raises(ParseError):
            parse_term("")

    def test_nested_negation(self):
        assert parse_term("~~g0") == Not(Not(G0))

    def test_term_list(self):
        assert parse_term_list("g0 , g1 & g2") == [G0, And(G1, G2)]
        assert parse_term_list("") == []
        assert parse_term_list("   ") == []

    def test_gen_list(self):
        assert parse_gen_list("g0 g1 g2") == ["g0", "g1", "g2"]
        assert parse_gen_list("") == []

    def test_gen_list_duplicate(self):
        with pytest.raises(DuplicateGenerator):
            parse_gen_list("g0 g0")

    def test_gen_list_bad_identifier(self):
        with pytest.raises(ParseError):
            parse_gen_list("g0 9x")


class TestPrinter:
    def test_operator_sugar_matches_constructors(self):
        assert (G0 & G1) == And(G0, G1)
        assert (G0 | G1) == Or(G0, G1)
        assert (~G0) == Not(G0)

    def test_str_inserts_needed_parens(self):
        t = And(Or(G0, G1), Not(G2))
        assert parse_term(str(t)) == t

    @given(term_strategy(["g0", "g1", "g2"]))
    def test_parse_str_round_trip(self, t: Term):
        assert parse_term(str(t)) == t


class TestEval:
    def test_truth_table_of_core_ops(self):
        a = {"g0": 1, "g1": 0}
        assert eval_term(G0, a) == 1
        assert eval_term(~G0, a) == 0
        assert eval_term(G0 & G1, a) == 0
        assert eval_term(G0 | G1, a) == 1
        assert eval_term(ZERO, a) == 0
        assert eval_term(ONE, a) == 1

    def test_empty_join_is_zero_empty_meet_is_one(self):
        assert join([]) == ZERO
        assert meet([]) == ONE
        assert join([G0]) == G0
        assert meet([G0]) == G0

    def test_generators_of(self):
        assert generators_of(And(G0, Or(G1, Not(G0)))) == {"g0", "g1"}
        assert generators_of(ONE) == set()

    def test_substitute(self):
        t = substitute(G0 & G1, {"g0": ~G2, "g1": ONE})
        assert t == And(Not(G2), ONE)

    @given(term_strategy(["g0", "g1"]))
    def test_substitution_identity(self, t: Term):
        assert substitute(t, {"g0": G0, "g1": G1}) == t

    @given(term_strategy(["g0", "g1"]))
    def test_double_negation_semantics(self, t: Term):
        for b0 in (0, 1):
            for b1 in (0, 1):
                a = {"g0": b0, "g1": b1}
                assert eval_term(Not(Not(t)), a) == eval_term(t, a)


class TestJson:
    def test_shapes(self):
        assert term_to_json(ZERO) == "0"
        assert term_to_json(ONE) == "1"
        assert term_to_json(G0) == "g0"
        assert term_to_json(~G0) == ["~", "g0"]
        assert term_to_json(G0 & G1) == ["&", "g0", "g1"]
        assert term_from_json(["|", "g0", ["~", "1"]]) == Or(G0, Not(ONE))

    @given(term_strategy(["g0", "g1", "g2"]))
    def test_round_trip(self, t: Term):
        assert term_from_json(term_to_json(t)) == t

    def test_singletons(self):
        assert isinstance(ZERO, Zero)
        assert isinstance(ONE, One)
