import tempfile
from itertools import product
from pathlib import Path

from django.test import SimpleTestCase, tag

from automata.services.alphabet import digits
from automata.services.dfa import Dfa, enumerate_words, equivalent
from automata.services.serialization import dumps, loads
from core.exceptions import InputError, InvalidPrimeError, PresentationError
from oracle.services.integers import encode_nat
from relations.services.convolution import word_matrix
from relations.services.join import product_of, project
from relations.services.relation import lex_len_order, scan_relation
from .services.builders import (
    define, ep_presentation, finite_group_presentation, finite_power, hp_presentation,
    integer_presentation, nat_add, restrict_domain, trailing_domain, ut3_presentation,
)
from .services.bundle import load_bundle, load_manifest, save_bundle
from .services.canonical import canonicalize, check_equivalence
from .services.finite_groups import FiniteGroupTable, cyclic, ut3
from .services.presentation import Presentation, growth
from .services.registry import build_structure, structure_names

BINARY = digits(2)


def holds(presentation, *texts, relation='Op'):
    words = [presentation.parse_word(t) for t in texts]
    return presentation.relation(relation).contains(words)


def group_elements(presentation, max_length):
    return enumerate_words(presentation.domain, max_length)


def padded_adder():
    """끝에 0 하나를 허용하는 이진 정의역과 값 비교 등호"""
    def domain_step(state, symbol):
        if symbol == 1:
            return 'ok'
        return 'one_zero' if state == 'ok' else None

    def carry(c, column):
        a, b, s = (0 if x is None else x for x in column)
        total = a + b + c
        return total // 2 if s == total % 2 else None

    def same_value(state, column):
        a, b = (0 if x is None else x for x in column)
        return state if a == b else None

    domain = Dfa.from_function(BINARY, 'ok', domain_step, lambda s: True)
    op = scan_relation(BINARY, 3, 0, carry, lambda c: c == 0)
    equality = scan_relation(BINARY, 2, 'eq', same_value, lambda s: True)
    return Presentation('padded-adder', BINARY, domain, {'Op': op}, (), equality=equality,
                        constants={'one': (1, 0)})


class NatAddTests(SimpleTestCase):
    def test_figure_example(self):
        adder = nat_add()
        self.assertTrue(holds(adder, "101", "11001", "00011"))
        self.assertFalse(holds(adder, "101", "11001", "0001"))

    def test_evaluate(self):
        adder = nat_add()
        self.assertEqual(adder.evaluate("11", "1"), (0, 0, 1))
        self.assertEqual(adder.evaluate("", ""), ())

    def test_outside_domain(self):
        adder = nat_add()
        self.assertFalse(holds(adder, "10", "1", "11"))
        with self.assertRaises(InputError):
            adder.evaluate("10", "1")

    def test_signature(self):
        self.assertEqual(nat_add().signature, {'Op': 3, 'is_e': 1, 'is_one': 1, 'Leq': 2})

    def test_unknown_relation(self):
        with self.assertRaises(InputError):
            nat_add().relation('Mul')

    def test_sum_exists_for_every_pair(self):
        adder = nat_add()
        pairs = project(adder.relation('Op'), 2)
        domain = adder.domain_relation
        self.assertTrue(equivalent(pairs.dfa, product_of([domain, domain], adder.base).dfa))
        words = [encode_nat(n) for n in range(256)]
        left = word_matrix([a for a, _ in product(words, repeat=2)], adder.base.size)
        right = word_matrix([b for _, b in product(words, repeat=2)], adder.base.size)
        self.assertTrue(pairs.contains_batch([left, right]).all())


class IntegerTests(SimpleTestCase):
    def test_signed_sums(self):
        integers = integer_presentation()
        # 3 + (-5) = -2, (-1) + 1 = 0
        self.assertTrue(holds(integers, "011", "1101", "101"))
        self.assertTrue(holds(integers, "11", "01", "0"))
        self.assertFalse(holds(integers, "11", "01", "1"))

    def test_no_negative_zero(self):
        self.assertFalse(integer_presentation().contains((1,)))


class EpTests(SimpleTestCase):
    def test_defining_example(self):
        e3 = ep_presentation(3)
        self.assertTrue(holds(e3, "001", "01", "211"))
        self.assertFalse(holds(e3, "01", "001", "211"))
        self.assertTrue(holds(e3, "01", "001", "011"))

    def test_domain(self):
        e3 = ep_presentation(3)
        self.assertTrue(e3.contains((0,)))
        self.assertFalse(e3.contains(()))
        self.assertFalse(e3.contains((1, 2, 0)))

    def test_constants(self):
        e3 = ep_presentation(3)
        self.assertEqual(e3.constants['x0'], (0, 1))
        self.assertEqual(e3.constants['z'], (1,))
        self.assertEqual(e3.neutral_word, (0,))

    def test_identity_and_inverse(self):
        e3 = ep_presentation(3)
        for word in group_elements(e3, 3):
            self.assertEqual(e3.evaluate(word, (0,)), word)
            self.assertEqual(e3.evaluate((0,), word), word)

    def test_bad_prime(self):
        for p in (2, 4, 9):
            with self.assertRaises(InvalidPrimeError):
                ep_presentation(p)

    @tag("slow")
    def test_functional_and_associative_length_three(self):
        e3 = ep_presentation(3)
        elements = group_elements(e3, 3)
        for x, y in product(elements, repeat=2):
            self.assertIsNotNone(e3.evaluate(x, y))
        for x, y, z in product(elements[:9], repeat=3):
            left = e3.evaluate(e3.evaluate(x, y), z)
            right = e3.evaluate(x, e3.evaluate(y, z))
            self.assertEqual(left, right)


class HpTests(SimpleTestCase):
    def test_defining_example(self):
        h3 = hp_presentation(3)
        self.assertTrue(holds(h3, "0/0 1/0", "1/0", "1/0 1/2"))
        self.assertFalse(holds(h3, "1/0", "0/0 1/0", "1/0 1/2"))
        self.assertTrue(holds(h3, "1/0", "0/0 1/0", "1/0 1/0"))

    def test_domain(self):
        h3 = hp_presentation(3)
        self.assertTrue(h3.contains(()))
        self.assertFalse(h3.contains((3,)))
        self.assertFalse(h3.contains((1, 0)))
        self.assertEqual(h3.neutral_word, ())

    def test_constants_and_track_order(self):
        h3 = hp_presentation(3)
        self.assertEqual(h3.format_word(h3.constants['z1']), "0/0 0/1")
        self.assertEqual(h3.meta['trackOrder'], ['alpha', 'v'])


class FinitePowerTests(SimpleTestCase):
    def test_example(self):
        power = finite_power(cyclic(2))
        self.assertTrue(holds(power, "11", "01", "1"))
        self.assertFalse(holds(power, "11", "01", "10"))

    def test_every_element_has_order_two(self):
        power = finite_power(cyclic(2))
        for word in group_elements(power, 4):
            self.assertEqual(power.evaluate(word, word), ())

    def test_needs_a_table(self):
        with self.assertRaises(PresentationError):
            finite_power([[0]])


class FiniteGroupTests(SimpleTestCase):
    def test_ut3_table(self):
        table = ut3(3)
        self.assertEqual(table.order, 27)
        self.assertFalse(table.is_abelian())
        x0, x1, z = (table.index(label) for label in ("(1,0,0)", "(0,1,0)", "(0,0,1)"))
        inv = table.inverse
        bracket = table.multiply(table.multiply(inv(x0), inv(x1)), table.multiply(x0, x1))
        self.assertEqual(bracket, z)
        for g in range(1, table.order):
            self.assertEqual(table.element_order(g), 3)

    def test_ut3_presentation(self):
        presentation = ut3_presentation(3)
        self.assertEqual(len(group_elements(presentation, 2)), 27)
        x0, x1 = presentation.constants['x0'], presentation.constants['x1']
        self.assertNotEqual(presentation.evaluate(x0, x1), presentation.evaluate(x1, x0))

    def test_validation(self):
        with self.assertRaises(PresentationError):
            FiniteGroupTable([[0, 1], [1, 1]])
        with self.assertRaises(PresentationError):
            FiniteGroupTable([[0, 1], [1, 0]], identity=1)
        with self.assertRaises(PresentationError):
            FiniteGroupTable([[0, 1, 2], [1, 2, 0]])
        with self.assertRaises(PresentationError):
            cyclic(0)
        with self.assertRaises(PresentationError):
            cyclic(3).index("7")

    def test_non_associative(self):
        # 항등원과 역원은 있지만 결합법칙이 깨지는 위수 5 의 라틴 방진
        table = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
        with self.assertRaises(PresentationError) as ctx:
            FiniteGroupTable(table)
        self.assertIn("associative", str(ctx.exception))

    def test_group_itself(self):
        z3 = finite_group_presentation(cyclic(3))
        self.assertTrue(holds(z3, "2", "2", "1"))
        self.assertFalse(z3.contains(()))
        self.assertFalse(z3.contains((1, 1)))


class DerivedPresentationTests(SimpleTestCase):
    def test_restrict_domain_to_centre(self):
        e3 = ep_presentation(3)
        centre = Dfa.from_function(e3.base, 0, lambda n, s: n + 1 if n < 2 else 2, lambda n: n == 1)
        sub = restrict_domain(e3, centre, name='centre')
        self.assertEqual(len(group_elements(sub, 4)), 3)
        self.assertTrue(holds(sub, "1", "2", "0"))
        self.assertFalse(holds(sub, "01", "0", "01"))

    def test_define(self):
        doubled = define(nat_add(), 'Double', "(Op x x y)", variables=['x', 'y'])
        self.assertEqual(doubled.signature['Double'], 2)
        self.assertTrue(holds(doubled, "11", "011", relation='Double'))
        self.assertFalse(holds(doubled, "11", "11", relation='Double'))

    def test_growth(self):
        for p in (3, 5):
            counts, cumulative = growth(ep_presentation(p), 4)
            self.assertEqual(counts[0], 0)
            self.assertEqual(cumulative[1:], [p ** m for m in range(1, 5)])

    def test_growth_h(self):
        _, cumulative = growth(hp_presentation(3), 3)
        self.assertEqual(cumulative, [1, 3, 27, 243])


class CanonicalTests(SimpleTestCase):
    def test_identity_equality_is_unchanged(self):
        adder = nat_add()
        self.assertIs(canonicalize(adder), adder)

    def test_padded_adder(self):
        canonical = canonicalize(padded_adder())
        self.assertTrue(equivalent(canonical.domain, trailing_domain(BINARY)))
        self.assertEqual(canonical.evaluate("101", "11001"), (0, 0, 0, 1, 1))
        self.assertEqual(canonical.constants['one'], (1,))
        self.assertTrue(canonical.meta['canonical'])

    def test_not_an_equivalence(self):
        base = BINARY
        adder = padded_adder()
        broken = Presentation('broken', base, adder.domain, adder.relations, (), equality=lex_len_order(base))
        with self.assertRaises(PresentationError) as ctx:
            check_equivalence(broken)
        self.assertIn("symmetric", str(ctx.exception))


class BundleTests(SimpleTestCase):
    def round_trip(self, presentation):
        with tempfile.TemporaryDirectory() as directory:
            path = save_bundle(presentation, directory)
            self.assertEqual(path.name, 'manifest.json')
            return load_bundle(directory)

    def test_ep_round_trip(self):
        e3 = ep_presentation(3)
        loaded = self.round_trip(e3)
        self.assertTrue(equivalent(loaded.domain, e3.domain))
        self.assertTrue(equivalent(loaded.relation('Op').dfa, e3.relation('Op').dfa))
        self.assertEqual(loaded.constants, e3.constants)
        self.assertEqual(loaded.meta, {'kind': 'ep', 'p': 3})

    def test_hp_keeps_labels_and_track_order(self):
        loaded = self.round_trip(hp_presentation(3))
        self.assertEqual(loaded.base.label(7), "1/2")
        self.assertEqual(loaded.meta['trackOrder'], ['alpha', 'v'])
        self.assertTrue(holds(loaded, "0/0 1/0", "1/0", "1/0 1/2"))

    def test_equality_is_saved(self):
        loaded = self.round_trip(padded_adder())
        self.assertIsNotNone(loaded.equality)
        self.assertTrue(loaded.equality.contains([(1,), (1, 0)]))

    def test_manifest_without_op(self):
        with tempfile.TemporaryDirectory() as directory:
            save_bundle(nat_add(), directory)
            manifest_path = Path(directory) / 'manifest.json'
            manifest = loads(manifest_path.read_bytes())
            manifest['relations'] = {}
            manifest_path.write_bytes(dumps(manifest))
            with self.assertRaises(InputError):
                load_manifest(directory)

    def test_missing_directory(self):
        with self.assertRaises(InputError):
            load_bundle('/nonexistent/bundle')


class RegistryTests(SimpleTestCase):
    def test_names(self):
        self.assertEqual(
            structure_names(), ['ep', 'example12', 'hp', 'integers', 'nat-add', 'power', 'ut3'],
        )

    def test_cached(self):
        self.assertIs(build_structure('ep', p=3), build_structure('ep'))
        self.assertEqual(build_structure('power', order=3).name, 'power-Z/3')

    def test_errors(self):
        with self.assertRaises(InputError):
            build_structure('free')
        with self.assertRaises(InvalidPrimeError):
            build_structure('hp', p=4)
