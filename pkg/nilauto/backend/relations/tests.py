from itertools import product

from django.test import SimpleTestCase

from automata.services.alphabet import digits
from automata.services.dfa import Dfa, accepts, all_words, count_words, equivalent, is_empty
from core.exceptions import InputError
from .services.convolution import PaddedAlphabet, convolve, deconvolve, word_matrix
from .services.join import cylindrify, join, project
from .services.relation import (
    RelationAutomaton, as_language, equality_relation, lex_len_order, negate, rebase, regroup,
    reorder, scan_relation, solve, unary, well_formed,
)

BINARY = digits(2)


def w(text):
    return BINARY.parse_word(text)


def shorter_relation():
    """{(u, v) : |u| < |v|}"""
    def step(state, column):
        u, v = column
        if v is None:
            return None
        if u is None:
            return 'longer'
        return None if state == 'longer' else state
    return scan_relation(BINARY, 2, 'same', step, lambda s: s == 'longer')


class ConvolutionTests(SimpleTestCase):
    def test_adder_figure(self):
        padded = PaddedAlphabet(BINARY, 2)
        packed = convolve([w("101"), w("11001")], BINARY)
        self.assertEqual(
            [padded.unpack(c) for c in packed],
            [(1, 1), (0, 1), (1, 0), (2, 0), (2, 1)],
        )
        self.assertEqual(deconvolve(packed, 2, BINARY), [w("101"), w("11001")])

    def test_empty_tuple(self):
        self.assertEqual(convolve([(), ()], BINARY), ())
        self.assertEqual(deconvolve((), 2, BINARY), [(), ()])

    def test_padding(self):
        padded = PaddedAlphabet(BINARY, 2)
        self.assertEqual(convolve([w("0"), w("00")], BINARY), (padded.pack((0, 0)), padded.pack((2, 0))))
        self.assertEqual(deconvolve(convolve([(), w("1")], BINARY), 2, BINARY), [(), (1,)])

    def test_all_pad_column_has_no_code(self):
        padded = PaddedAlphabet(BINARY, 2)
        self.assertEqual(padded.packed_size, 8)
        with self.assertRaises(InputError):
            padded.pack((2, 2))
        self.assertEqual(padded.label(padded.pack((1, 2))), "(1,◇)")

    def test_resumed_track_rejected(self):
        padded = PaddedAlphabet(BINARY, 2)
        with self.assertRaises(InputError):
            deconvolve((padded.pack((2, 1)), padded.pack((1, 1))), 2, BINARY)

    def test_round_trip_pairs(self):
        words = all_words(BINARY, 3)
        for u, v in product(words, repeat=2):
            self.assertEqual(deconvolve(convolve([u, v], BINARY), 2, BINARY), [u, v])


class WellFormedTests(SimpleTestCase):
    def test_membership(self):
        padded = PaddedAlphabet(BINARY, 2)
        relation = well_formed(BINARY, 2)
        self.assertTrue(accepts(relation.dfa, convolve([w("1"), w("11")], BINARY)))
        self.assertFalse(accepts(relation.dfa, (padded.pack((2, 1)), padded.pack((1, 1)))))

    def test_counts_match_enumeration(self):
        relation = well_formed(BINARY, 2)
        packed_words = all_words(PaddedAlphabet(BINARY, 2).alphabet, 3)
        for length in range(4):
            expected = 0
            for packed in packed_words:
                if len(packed) != length:
                    continue
                try:
                    deconvolve(packed, 2, BINARY)
                except InputError:
                    continue
                expected += 1
            self.assertEqual(count_words(relation.dfa, length), expected)

    def test_constructor_intersects_with_well_formed(self):
        padded = PaddedAlphabet(BINARY, 2)
        relation = RelationAutomaton(BINARY, 2, Dfa.universal(padded.alphabet))
        self.assertTrue(equivalent(relation.dfa, well_formed(BINARY, 2).dfa))


class OrderTests(SimpleTestCase):
    def test_equality(self):
        self.assertTrue(equality_relation(BINARY).contains([w("01"), w("01")]))
        self.assertFalse(equality_relation(BINARY).contains([w("01"), w("010")]))

    def test_lex_len_examples(self):
        order = lex_len_order(BINARY)
        self.assertTrue(order.contains([w("01"), w("11")]))
        self.assertTrue(order.contains([w("111"), w("0000")]))
        self.assertFalse(order.contains([w("0000"), w("111")]))
        self.assertTrue(order.contains([w("10"), w("10")]))

    def test_lex_len_is_total_order(self):
        order = lex_len_order(BINARY)
        words = all_words(BINARY, 4)
        leq = {(u, v): order.contains([u, v]) for u in words for v in words}
        for u, v in product(words, repeat=2):
            self.assertTrue(leq[u, v] or leq[v, u])
            if leq[u, v] and leq[v, u]:
                self.assertEqual(u, v)
            self.assertEqual(leq[u, v], (len(u), u) <= (len(v), v))
        for u, v, x in product(words[:15], repeat=3):
            if leq[u, v] and leq[v, x]:
                self.assertTrue(leq[u, x])


class TrackAlgebraTests(SimpleTestCase):
    def test_project_equality(self):
        self.assertTrue(equivalent(as_language(project(equality_relation(BINARY), 1)), Dfa.universal(BINARY)))

    def test_project_empty(self):
        empty = RelationAutomaton(BINARY, 2, Dfa.empty(PaddedAlphabet(BINARY, 2).alphabet))
        self.assertTrue(is_empty(project(empty, 0).dfa))

    def test_project_needs_longer_witness(self):
        shorter = shorter_relation()
        self.assertTrue(equivalent(as_language(project(shorter, 1)), Dfa.universal(BINARY)))
        nonempty = as_language(project(shorter, 0))
        self.assertFalse(accepts(nonempty, ()))
        self.assertTrue(accepts(nonempty, w("0")))

    def test_cylindrify_then_project(self):
        order = lex_len_order(BINARY)
        for position in range(3):
            lifted = cylindrify(order, position)
            self.assertEqual(lifted.arity, 3)
            self.assertTrue(equivalent(project(lifted, position).dfa, order.dfa))

    def test_cylindrify_membership(self):
        lifted = cylindrify(lex_len_order(BINARY), 1)
        for u, x, v in product(all_words(BINARY, 2), repeat=3):
            self.assertEqual(lifted.contains([u, x, v]), (len(u), u) <= (len(v), v))

    def test_reorder(self):
        order = lex_len_order(BINARY)
        self.assertTrue(equivalent(reorder(order, (0, 1)).dfa, order.dfa))
        swapped = reorder(order, (1, 0))
        self.assertTrue(swapped.contains([w("11"), w("01")]))
        self.assertTrue(equivalent(reorder(swapped, (1, 0)).dfa, order.dfa))
        with self.assertRaises(InputError):
            reorder(order, (0, 0))

    def test_negate_within_well_formed(self):
        order = lex_len_order(BINARY)
        strict = negate(reorder(order, (1, 0)))
        for u, v in product(all_words(BINARY, 3), repeat=2):
            self.assertEqual(strict.contains([u, v]), (len(u), u) < (len(v), v))

    def test_join_with_shared_variable(self):
        # x ≤ y ∧ y ≤ x  ⇔  x = y
        order = lex_len_order(BINARY)
        both = join([(order, (0, 1)), (order, (1, 0))], 2)
        self.assertTrue(equivalent(both.dfa, equality_relation(BINARY).dfa))

    def test_join_sentence(self):
        order = lex_len_order(BINARY)
        self.assertTrue(join([(order, (0, 1))], 0, hidden=2))
        self.assertFalse(join([(shorter_relation(), (0, 0))], 0, hidden=1))

    def test_contains_batch(self):
        order = lex_len_order(BINARY)
        words = all_words(BINARY, 3)
        pairs = list(product(words, repeat=2))
        left = word_matrix([u for u, _ in pairs], BINARY.size)
        right = word_matrix([v for _, v in pairs], BINARY.size, width=5)
        self.assertEqual(
            order.contains_batch([left, right]).tolist(), [order.contains([u, v]) for u, v in pairs],
        )
        with self.assertRaises(InputError):
            order.contains_batch([left])


class SolveTests(SimpleTestCase):
    def test_equality(self):
        self.assertEqual(solve(equality_relation(BINARY), {0: w("0110")}, 1), w("0110"))

    def test_least_solution(self):
        self.assertEqual(solve(shorter_relation(), {0: w("11")}, 1), w("000"))
        self.assertEqual(solve(lex_len_order(BINARY), {1: w("10")}, 0), ())

    def test_no_solution(self):
        self.assertIsNone(solve(shorter_relation(), {1: ()}, 0))


class AlphabetChangeTests(SimpleTestCase):
    def test_rebase_keeps_codes(self):
        ternary = digits(3)
        bigger = rebase(equality_relation(BINARY), ternary)
        self.assertTrue(bigger.contains([(1, 0), (1, 0)]))
        self.assertFalse(bigger.contains([(2,), (2,)]))

    def test_regroup_pairs(self):
        # (u0, u1, v0, v1) 가 u0 = v0, u1 = v1 이면 쌍 알파벳에서 u = v
        eq = equality_relation(BINARY)
        four = join([(eq, (0, 2)), (eq, (1, 3))], 4)
        paired = regroup(four, 2)
        self.assertEqual(paired.arity, 2)
        self.assertEqual(paired.base.size, 8)
        words = all_words(BINARY, 1)
        for u0, u1, v0, v1 in product(words, repeat=4):
            left, right = convolve([u0, u1], BINARY), convolve([v0, v1], BINARY)
            self.assertEqual(paired.contains([left, right]), (u0, u1) == (v0, v1))

    def test_unary_round_trip(self):
        d = Dfa(BINARY, [[0, 1], [0, 1]], 0, [1])
        self.assertTrue(equivalent(as_language(unary(BINARY, d)), d))
