from itertools import product

from django.test import SimpleTestCase, tag

from automata.services.alphabet import digits
from automata.services.dfa import enumerate_words
from core.exceptions import CocycleError, InputError
from logic.services.compiler import decide
from oracle.services.example12 import decode_q, derive_cocycle, encode_a, encode_q, join, split
from presentations.services.builders import (
    ep_presentation, finite_group_presentation, finite_power, hp_presentation, integer_presentation,
)
from presentations.services.finite_groups import cyclic
from relations.services.convolution import PaddedAlphabet
from relations.services.join import join as join_relations
from relations.services.relation import scan_relation
from .services.cocycle import (
    CocycleSpec, build_extension, check_function, cocycle_for, decode_pair, encode_pair, ep_cocycle,
    ep_word_to_pair, extension_constants, hp_cocycle, hp_word_to_pair, is_symmetric, pair_alphabet,
    two_sorted, verify_cocycle, zero_cocycle,
)
from .services.example12 import example12_cocycle, example12_presentation
from .services.finite_index import finite_index_extension
from .services.integers import integer_flip_presentation

Q_WORDS = [(), (1,), (0, 1), (1, 1), (0, 0, 1), (1, 0, 1)]
A_VALUES = [(k, gamma) for k in range(-3, 4) for gamma in [(), (1,), (0, 1)]]
COMMUTATIVE = "(forall (x y z) (implies (Op x y z) (Op y x z)))"
INVERSE_LAW = "(forall x (exists y (Op x y $e)))"
ORDER_FOUR = "(exists x (and (not (= (pow x 2) $e)) (= (pow x 4) $e)))"


def corner_cocycle(spec):
    """f(u,v) = 1 ⇔ u, v 의 첫 성분이 모두 1 (항등식이 깨진다)"""
    def step(state, column):
        u, v, a = column
        if state == 'start':
            expected = 1 if (u, v) == (1, 1) else 0
            return 'rest' if a == expected else None
        return state if a is None else None

    f = scan_relation(spec.base, 3, 'start', step, lambda s: s == 'rest')
    return CocycleSpec(spec.Q, spec.A, f, name='corner')


def pair_product(extension, first, second):
    base = digits(extension.meta['pairBase'])
    word = extension.evaluate(encode_pair(*first, base), encode_pair(*second, base))
    return decode_pair(word, base)


def ep_value(alpha, beta, p=3):
    """E_p 코사이클 값 −Σ_k α_k Σ_{i<k} β_i mod p"""
    return -sum(a * sum(beta[:k]) for k, a in enumerate(alpha)) % p


class PairWordTests(SimpleTestCase):
    def test_labels(self):
        base = digits(3)
        pairs = pair_alphabet(base)
        padded = PaddedAlphabet(base, 2)
        self.assertEqual(pairs.label(padded.pack((1, 3))), "1/◇")
        self.assertEqual(pairs.label(padded.pack((0, 2))), "0/2")

    def test_encode_decode(self):
        base = digits(3)
        word = encode_pair((1, 1), (2,), base)
        self.assertEqual(len(word), 2)
        self.assertEqual(decode_pair(word, base), ((1, 1), (2,)))

    def test_presentation_words(self):
        self.assertEqual(ep_word_to_pair((2, 1, 1)), ((1, 1), (2,)))
        self.assertEqual(hp_word_to_pair((1, 7), 3), ((1, 1), (0, 2)))
        self.assertEqual(hp_word_to_pair((), 3), ((), ()))


class TwoSortedTests(SimpleTestCase):
    def test_sorts_are_tagged(self):
        structure = two_sorted(ep_cocycle(3))
        self.assertTrue(structure.relation('SortQ').contains([(0, 1, 2)]))
        self.assertTrue(structure.relation('SortA').contains([(1, 2)]))
        self.assertFalse(structure.relation('SortA').contains([(1, 2, 0)]))
        self.assertEqual(structure.constants['eA'], (1, 0))

    def test_tagged_cocycle(self):
        structure = two_sorted(ep_cocycle(3))
        # f(x1, x0) = -1
        self.assertTrue(structure.relation('F').contains([(0, 0, 1), (0, 1), (1, 2)]))
        self.assertFalse(structure.relation('F').contains([(0, 1), (0, 0, 1), (1, 2)]))


class FunctionCheckTests(SimpleTestCase):
    def test_total_function(self):
        check_function(ep_cocycle(3))

    def test_missing_value(self):
        spec = ep_cocycle(3)

        def step(state, column):
            u, v, a = column
            if u is not None:
                return None
            if state == 'start':
                return 'rest' if a == 0 else None
            return state if a is None else None

        partial = CocycleSpec(spec.Q, spec.A, scan_relation(spec.base, 3, 'start', step, lambda s: s == 'rest'))
        with self.assertRaises(CocycleError) as ctx:
            check_function(partial)
        self.assertIsNotNone(ctx.exception.witness)

    def test_two_values(self):
        spec = ep_cocycle(3)
        anything = join_relations([(spec.A.domain_relation, (2,))], 3, base=spec.base)
        with self.assertRaises(CocycleError):
            check_function(CocycleSpec(spec.Q, spec.A, anything))


class VerifyTests(SimpleTestCase):
    def test_zero_cocycle(self):
        spec = cocycle_for('zero')
        self.assertTrue(verify_cocycle(spec))
        self.assertTrue(is_symmetric(spec))

    def test_corner_cocycle_fails(self):
        self.assertFalse(verify_cocycle(corner_cocycle(ep_cocycle(3))))
        with self.assertRaises(CocycleError):
            build_extension(corner_cocycle(ep_cocycle(3)))

    def test_not_symmetric(self):
        self.assertFalse(is_symmetric(ep_cocycle(3)))

    def test_non_abelian_quotient(self):
        e3 = ep_presentation(3)
        spec = ep_cocycle(3)
        with self.assertRaises(CocycleError):
            verify_cocycle(zero_cocycle(e3, spec.A))

    def test_unknown_kind(self):
        with self.assertRaises(InputError):
            cocycle_for('sl2')

    @tag("slow")
    def test_standard_cocycles(self):
        self.assertTrue(verify_cocycle(ep_cocycle(3)))
        self.assertTrue(verify_cocycle(hp_cocycle(3)))


class ExtensionTests(SimpleTestCase):
    def test_zero_extension_is_direct_product(self):
        extension = build_extension(cocycle_for('zero'), verify=False)
        self.assertEqual(pair_product(extension, ((0, 1), (2,)), ((1, 2), (2,))), ((1,), (1,)))
        self.assertEqual(extension.neutral_word, encode_pair((), (0,), digits(3)))

    def test_ep_extension_defining_example(self):
        extension = build_extension(ep_cocycle(3), verify=False)
        product_ = pair_product(extension, ep_word_to_pair((0, 0, 1)), ep_word_to_pair((0, 1)))
        self.assertEqual(product_, ep_word_to_pair((2, 1, 1)))

    def test_hp_extension_defining_example(self):
        extension = build_extension(hp_cocycle(3), verify=False)
        product_ = pair_product(extension, hp_word_to_pair((0, 1), 3), hp_word_to_pair((1,), 3))
        self.assertEqual(product_, hp_word_to_pair((1, 7), 3))

    def test_constants(self):
        extension = build_extension(ep_cocycle(3), verify=False)
        base = digits(3)
        self.assertEqual(extension.constants['x1'], encode_pair((0, 1), (0,), base))
        self.assertEqual(extension.constants['z'], encode_pair((), (1,), base))
        self.assertEqual(pair_product(extension, ((1,), (0,)), ((0, 1), (0,))), ((1, 1), (0,)))

    def test_constant_clash(self):
        table = cyclic(3)
        spec = zero_cocycle(finite_power(table, {'z': (1,)}), finite_group_presentation(table, {'z': (1,)}))
        with self.assertRaises(InputError):
            extension_constants(spec, spec.base)

    def test_inverse_formula(self):
        spec = ep_cocycle(3)
        extension = build_extension(spec, verify=False)
        for u in enumerate_words(spec.Q.domain, 2):
            minus_u = tuple(-s % 3 for s in u)
            for a in range(3):
                element = (u, (a,))
                inverse = (minus_u, ((-a - ep_value(u, minus_u)) % 3,))
                self.assertEqual(pair_product(extension, element, inverse), ((), (0,)))
                self.assertEqual(pair_product(extension, inverse, element), ((), (0,)))

    @tag("slow")
    def test_inverse_law(self):
        for kind in ('zero', 'ep'):
            with self.subTest(kind=kind):
                self.assertTrue(decide(INVERSE_LAW, build_extension(cocycle_for(kind), verify=False)))

    @tag("slow")
    def test_generator_sentences(self):
        extension = build_extension(ep_cocycle(3), verify=False)
        self.assertTrue(decide("(= (comm $x0 $x1) $z)", extension))
        self.assertTrue(decide("(= (pow $x2 3) $e)", extension))
        self.assertFalse(decide("(= (comm $x1 $x0) $z)", extension))

    @tag("slow")
    def test_ep_extension_matches_ep(self):
        e3 = ep_presentation(3)
        extension = build_extension(ep_cocycle(3), verify=False)
        words = enumerate_words(e3.domain, 3)
        for x, y in product(words, repeat=2):
            expected = ep_word_to_pair(e3.evaluate(x, y))
            self.assertEqual(pair_product(extension, ep_word_to_pair(x), ep_word_to_pair(y)), expected)

    @tag("slow")
    def test_hp_extension_matches_hp(self):
        h3 = hp_presentation(3)
        extension = build_extension(hp_cocycle(3), verify=False)
        words = enumerate_words(h3.domain, 2)
        for x, y in product(words, repeat=2):
            expected = hp_word_to_pair(h3.evaluate(x, y), 3)
            self.assertEqual(pair_product(extension, hp_word_to_pair(x, 3), hp_word_to_pair(y, 3)), expected)


class AbelianSymmetryTests(SimpleTestCase):
    """L_f 가 가환 ⇔ f 가 대칭"""

    def assertAbelianIffSymmetric(self, spec, expected):
        self.assertEqual(is_symmetric(spec), expected)
        self.assertEqual(decide(COMMUTATIVE, build_extension(spec, verify=False)), expected)

    @tag("slow")
    def test_zero(self):
        self.assertAbelianIffSymmetric(cocycle_for('zero'), True)

    @tag("slow")
    def test_ep(self):
        self.assertAbelianIffSymmetric(ep_cocycle(3), False)

    @tag("slow")
    def test_hp(self):
        self.assertAbelianIffSymmetric(hp_cocycle(3), False)


class IntegerFlipTests(SimpleTestCase):
    def test_addition_matches_oracle(self):
        op = integer_flip_presentation().relation('Op')
        for (k1, g1), (k2, g2) in product(A_VALUES, repeat=2):
            g = tuple(a ^ b for a, b in zip((g1 + (0, 0))[:2], (g2 + (0, 0))[:2]))
            while g and g[-1] == 0:
                g = g[:-1]
            words = [encode_a((k1, g1)), encode_a((k2, g2)), encode_a((k1 + k2, g))]
            self.assertTrue(op.contains(words), words)

    def test_domain(self):
        flips = integer_flip_presentation()
        self.assertTrue(flips.contains((0,)))
        self.assertFalse(flips.contains((1,)))
        self.assertFalse(flips.contains((1, 2)))
        self.assertTrue(flips.contains((1, 3)))
        self.assertFalse(flips.contains((0, 1, 0)))
        self.assertEqual(flips.evaluate((0, 1), (1, 1)), (0,))


class Example12Tests(SimpleTestCase):
    def test_relation_matches_derived_cocycle(self):
        spec = example12_cocycle()
        for u, v in product(Q_WORDS, repeat=2):
            value = encode_a(derive_cocycle(decode_q(u), decode_q(v)))
            self.assertTrue(spec.f.contains([u, v, value]), (u, v, value))
            k, gamma = derive_cocycle(decode_q(u), decode_q(v))
            self.assertFalse(spec.f.contains([u, v, encode_a((k + 1, gamma))]))

    def test_y_component(self):
        spec = example12_cocycle()
        # q_{0,e0} · q_{1,∅}: x z_0 y_0
        self.assertTrue(spec.f.contains([(0, 1), (1,), (0, 2)]))
        self.assertFalse(spec.f.contains([(0, 1), (1,), (0,)]))

    @tag("slow")
    def test_cocycle_identity(self):
        self.assertTrue(verify_cocycle(example12_cocycle()))

    @tag("slow")
    def test_extension_matches_group(self):
        extension = example12_presentation()
        self.assertEqual(extension.meta['kind'], 'example12')
        base = digits(extension.meta['pairBase'])
        quotients = [decode_q(w) for w in Q_WORDS[:4]]
        values = [(0, ()), (1, (1,)), (-1, ())]
        for (q0, a0), (q1, a1) in product(product(quotients, values), repeat=2):
            word = extension.evaluate(encode_pair(encode_q(q0), encode_a(a0), base),
                                      encode_pair(encode_q(q1), encode_a(a1), base))
            q, a = split(join(q0, a0) * join(q1, a1))
            self.assertEqual(decode_pair(word, base), (encode_q(q), encode_a(a)))

    @tag("slow")
    def test_sentences(self):
        extension = example12_presentation()
        self.assertFalse(decide(COMMUTATIVE, extension))
        self.assertFalse(is_symmetric(example12_cocycle()))
        self.assertTrue(decide("(= (pow $y0 2) $e)", extension))
        self.assertFalse(decide("(= $y0 $e)", extension))
        self.assertTrue(decide("(= (pow $x 2) $x2)", extension))


class FiniteIndexTests(SimpleTestCase):
    def test_trivial_quotient(self):
        integers = integer_presentation()
        group = finite_index_extension(integers, cyclic(1), check=False)
        self.assertEqual(group.neutral_word, (0, 0))
        self.assertEqual(group.evaluate((0, 0, 1, 1), (0, 1, 1, 0, 1)), (0, 1, 0, 1))

    def test_cyclic_of_order_four(self):
        z2 = finite_group_presentation(cyclic(2))
        group = finite_index_extension(z2, cyclic(2), corrections={(1, 1): "1"})
        t = power = (1, 0)
        powers = []
        for _ in range(4):
            power = group.evaluate(power, t)
            powers.append(power)
        self.assertEqual(powers, [(0, 1), (1, 1), (0, 0), (1, 0)])

    def test_direct_product(self):
        z2 = finite_group_presentation(cyclic(2))
        group = finite_index_extension(z2, cyclic(2))
        self.assertEqual(group.evaluate((1, 0), (1, 0)), (0, 0))
        self.assertEqual(group.meta['index'], 2)

    def test_bad_identity(self):
        z2 = finite_group_presentation(cyclic(2))
        with self.assertRaises(CocycleError):
            finite_index_extension(z2, cyclic(2), corrections={(0, 1): "1"})

    def test_bad_keys(self):
        z2 = finite_group_presentation(cyclic(2))
        with self.assertRaises(InputError):
            finite_index_extension(z2, cyclic(2), corrections={(0, 5): "1"})

    @tag("slow")
    def test_checked_over_integers(self):
        group = finite_index_extension(integer_presentation(), cyclic(1))
        self.assertEqual(group.meta['quotient'], 'Z/1')

    @tag("slow")
    def test_power_direct_product(self):
        group = finite_index_extension(finite_power(cyclic(2)), cyclic(2))
        self.assertEqual(group.evaluate((1, 1), (1, 0, 1)), (0, 1, 1))
        self.assertTrue(decide("(forall x (= (pow x 2) $e))", group))
        self.assertFalse(decide(ORDER_FOUR, group))

    @tag("slow")
    def test_power_with_element_of_order_four(self):
        group = finite_index_extension(finite_power(cyclic(2)), cyclic(2), corrections={(1, 1): "1"})
        self.assertEqual(group.evaluate((1,), (1,)), (0, 1))
        self.assertTrue(decide(ORDER_FOUR, group))
