from itertools import product

from django.test import SimpleTestCase, tag

from automata.services.dfa import Dfa, enumerate_words, equivalent, is_empty
from core.exceptions import FormulaError
from oracle.services.codec import decode_ep, decode_hp, encode_ep, encode_hp
from oracle.services.integers import decode_nat, encode_nat
from oracle.services.nil_element import commutator, inverse
from presentations.services.builders import ep_presentation, hp_presentation, nat_add
from .services.compiler import compile_formula, compile_prepared, decide, define_set
from .services.formula import (
    And, Apply, Atom, Const, Equals, Exists, ForAll, Not, Or, Var, WordIs, WordLiteral, desugar,
    free_variables, normalize, prepare,
)
from .services.parser import parse_formula

ASSOCIATIVE = "(forall (x y z) (= (* (* x y) z) (* x (* y z))))"
COMMUTATIVE = "(forall (x y z) (implies (Op x y z) (Op y x z)))"
IDENTITY = "(forall x (and (= (* $e x) x) (= (* x $e) x)))"
INVERSES = "(forall x (exists y (and (= (* x y) $e) (= (* y x) $e))))"
CLASS_TWO = "(forall (x y z) (= (comm (comm x y) z) $e))"
CENTRE = "(forall y (= (* x y) (* y x)))"


class ParserTests(SimpleTestCase):
    def test_atom_and_quantifiers(self):
        node = parse_formula("(forall (x y) (exists z (Op x y z)))")
        self.assertEqual(
            node,
            ForAll(('x', 'y'), Exists(('z',), Atom('Op', (Var('x'), Var('y'), Var('z'))))),
        )

    def test_terms(self):
        node = parse_formula('(= (comm $x0 (inv y)) "211")')
        self.assertEqual(
            node,
            Equals(Apply('comm', (Const('x0'), Apply('inv', (Var('y'),)))), WordLiteral('211')),
        )
        self.assertEqual(parse_formula("(= (pow x -2) x)").left, Apply('pow', (Var('x'),), -2))

    def test_connective_arity(self):
        self.assertEqual(parse_formula("(and)").value, True)
        self.assertEqual(parse_formula("(or)").value, False)
        self.assertEqual(parse_formula("(and (Op x x x))"), Atom('Op', (Var('x'),) * 3))
        self.assertIsInstance(parse_formula("(or (Op x x x) (= x y) true)"), Or)

    def test_text_round_trip(self):
        for text in (ASSOCIATIVE, COMMUTATIVE, "(not (<-> (Leq x y) (Leq y x)))", '(= x "0 1")'):
            node = parse_formula(text)
            self.assertEqual(parse_formula(str(node)), node)

    def test_errors(self):
        bad = [
            "(Op x y",
            "(= (foo x) y)",
            "(forall x)",
            "(not a b)",
            "(exists and (Op and and and))",
            "(= (pow x y) x)",
            "(* x y)",
            "(exists () (Op x x x))",
            "x",
        ]
        for text in bad:
            with self.assertRaises(FormulaError, msg=text):
                parse_formula(text)


class FormulaTransformTests(SimpleTestCase):
    def test_free_variables_in_order(self):
        node = parse_formula("(and (Op x y z) (exists w (Op w x u)))")
        self.assertEqual(free_variables(node), ('x', 'y', 'z', 'u'))

    def test_desugar_product(self):
        node = desugar(parse_formula("(= (* x y) z)"))
        self.assertIsInstance(node, Exists)
        self.assertEqual(len(node.variables), 1)
        self.assertEqual(free_variables(node), ('x', 'y', 'z'))

    def test_desugar_constant_and_literal(self):
        node = desugar(parse_formula('(= $z "1")'))
        atoms = node.body.parts
        self.assertEqual(atoms[0].relation, 'is_z')
        self.assertIsInstance(atoms[1], WordIs)

    def test_normalize_pushes_negation(self):
        node = normalize(parse_formula("(not (and (Op x x x) (not (= x y))))"))
        self.assertEqual(
            node, Or((Not(Atom('Op', (Var('x'),) * 3)), Equals(Var('x'), Var('y')))),
        )

    def test_forall_becomes_not_exists(self):
        node = normalize(parse_formula("(forall x (Op x x x))"))
        self.assertEqual(node, Not(Exists(('x',), Not(Atom('Op', (Var('x'),) * 3)))))

    def test_flattening(self):
        node = normalize(parse_formula("(and (and (= x x) (= y y)) (= z z))"))
        self.assertIsInstance(node, And)
        self.assertEqual(len(node.parts), 3)

    def test_free_bound_clash(self):
        with self.assertRaises(FormulaError):
            prepare(parse_formula("(and (Op x y z) (exists x (Op x x x)))"))

    def test_repeated_block_variable(self):
        with self.assertRaises(FormulaError):
            prepare(parse_formula("(exists (x x) (Op x x x))"))

    def test_bound_names_are_separated(self):
        node = prepare(parse_formula("(and (exists y (Op y y y)) (exists y (Leq y y)))"))
        names = {name for part in node.parts for name in part.variables}
        self.assertEqual(names, {'y', 'y#1'})


class AdderLogicTests(SimpleTestCase):
    def setUp(self):
        self.adder = nat_add()

    def test_equality_is_domain(self):
        self.assertTrue(equivalent(define_set("(= x x)", self.adder), self.adder.domain))

    def test_commutative(self):
        self.assertTrue(decide(COMMUTATIVE, self.adder))

    def test_identity_is_least(self):
        self.assertTrue(decide("(forall x (Leq $e x))", self.adder))
        self.assertFalse(decide("(forall x (Leq x $one))", self.adder))

    def test_repeated_variable(self):
        zero = define_set("(Op x x x)", self.adder)
        self.assertEqual(enumerate_words(zero, 4), [()])

    def test_track_order(self):
        relation = compile_formula("(Op x y z)", self.adder, variables=['z', 'y', 'x'])
        words = [self.adder.parse_word(t) for t in ("00011", "11001", "101")]
        self.assertTrue(relation.contains(words))

    def test_unused_track_is_domain(self):
        relation = compile_formula("(Op x x x)", self.adder, variables=['x', 'y'])
        self.assertTrue(relation.contains([(), (1, 1)]))
        self.assertFalse(relation.contains([(), (1, 0)]))

    def test_constants_truth(self):
        self.assertFalse(decide("false", self.adder))
        self.assertTrue(decide("(and)", self.adder))
        self.assertTrue(decide('(= (* $one $one) "01")', self.adder))

    def test_errors(self):
        with self.assertRaises(FormulaError):
            decide("(Op x y z)", self.adder)
        with self.assertRaises(FormulaError):
            compile_formula("(forall x (Op x x x))", self.adder)
        with self.assertRaises(FormulaError):
            compile_formula("(Op x y z)", self.adder, variables=['x', 'y'])
        with self.assertRaises(FormulaError):
            decide("(exists x (Mul x x x))", self.adder)
        with self.assertRaises(FormulaError):
            decide("(exists x (Op x x))", self.adder)
        with self.assertRaises(FormulaError):
            define_set("(Op x y z)", self.adder)

    def test_cached(self):
        first = compile_formula("(Op x y z)", self.adder)
        self.assertIs(compile_formula("(Op x y z)", self.adder), first)

    def test_cache_is_bounded(self):
        limit = compile_prepared.cache_info().maxsize
        for n in range(1, limit + 4):
            word = self.adder.format_word(encode_nat(n))
            self.assertTrue(decide(f'(exists x (= x "{word}"))', self.adder))
        self.assertLessEqual(compile_prepared.cache_info().currsize, limit)


class EpLogicTests(SimpleTestCase):
    def setUp(self):
        self.e3 = ep_presentation(3)

    def test_identity_set(self):
        identity = define_set("(forall y (Op x y y))", self.e3)
        self.assertTrue(equivalent(identity, Dfa.word(self.e3.base, (0,))))

    def test_not_commutative(self):
        self.assertFalse(decide(COMMUTATIVE, self.e3))

    def test_centre(self):
        centre = define_set("(forall y (= (* x y) (* y x)))", self.e3)
        self.assertEqual(enumerate_words(centre, 5), [(0,), (1,), (2,)])

    def test_double_negation(self):
        self.assertTrue(decide("(not (not (forall x (Op x $e x))))", self.e3))

    def test_quantifier_duality(self):
        left = define_set("(exists y (not (Op x y y)))", self.e3)
        right = define_set("(not (forall y (Op x y y)))", self.e3)
        self.assertTrue(equivalent(left, right))
        self.assertEqual(enumerate_words(left, 1), [(1,), (2,)])

    def test_word_literal(self):
        single = define_set('(= x "211")', self.e3)
        self.assertEqual(enumerate_words(single, 4), [(2, 1, 1)])
        self.assertTrue(is_empty(define_set('(= x "210")', self.e3)))

    def test_inverse_term(self):
        inverse = define_set('(= x (inv "01"))', self.e3)
        self.assertEqual(enumerate_words(inverse, 3), [(0, 2)])

    @tag("slow")
    def test_associative(self):
        self.assertTrue(decide(ASSOCIATIVE, self.e3))

    @tag("slow")
    def test_commutator_relations(self):
        self.assertTrue(decide("(= (comm $x0 $x1) $z)", self.e3))
        self.assertTrue(decide("(= (comm $x1 $x3) $z)", self.e3))
        self.assertFalse(decide("(= (comm $x1 $x0) $z)", self.e3))

    @tag("slow")
    def test_exponent(self):
        self.assertTrue(decide("(forall x (= (pow x 3) $e))", self.e3))
        self.assertFalse(decide("(forall x (= (pow x 2) $e))", self.e3))

    def test_two_sided_identity(self):
        self.assertTrue(decide(IDENTITY, self.e3))

    @tag("slow")
    def test_inverses(self):
        self.assertTrue(decide(INVERSES, self.e3))

    @tag("slow")
    def test_class_two(self):
        self.assertTrue(decide(CLASS_TWO, self.e3))


class HpLogicTests(SimpleTestCase):
    def setUp(self):
        self.h3 = hp_presentation(3)

    def test_identity_set(self):
        identity = define_set("(forall y (Op x y y))", self.h3)
        self.assertEqual(enumerate_words(identity, 3), [()])

    @tag("slow")
    def test_commutator_relations(self):
        self.assertTrue(decide("(= (comm $x0 $x1) $z1)", self.h3))
        self.assertTrue(decide("(= (comm $x0 $x2) $z2)", self.h3))
        self.assertTrue(decide("(= (comm $x1 $x2) $z2)", self.h3))
        self.assertFalse(decide("(= (comm $x0 $x2) $z1)", self.h3))

    @tag("slow")
    def test_group_axioms(self):
        for sentence in (ASSOCIATIVE, IDENTITY, INVERSES, "(forall x (= (pow x 3) $e))", CLASS_TWO):
            with self.subTest(sentence=sentence):
                self.assertTrue(decide(sentence, self.h3))

    @tag("slow")
    def test_not_commutative(self):
        self.assertFalse(decide(COMMUTATIVE, self.h3))

    @tag("slow")
    def test_centre_is_alpha_zero(self):
        centre = enumerate_words(define_set(CENTRE, self.h3), 6)
        central = [w for w in enumerate_words(self.h3.domain, 6) if decode_hp(w, 3, rank=6).is_central]
        self.assertEqual(len(central), 243)
        self.assertEqual(centre, central)


class OracleAgreementTests(SimpleTestCase):
    """컴파일한 관계의 소속 여부를 오라클 계산과 비교"""

    def test_adder_sum(self):
        adder = nat_add()
        relation = compile_formula("(= (* x y) z)", adder, variables=['x', 'y', 'z'])
        words = enumerate_words(adder.domain, 4)
        for x, y, z in product(words, repeat=3):
            expected = encode_nat(decode_nat(x) + decode_nat(y)) == z
            self.assertEqual(relation.contains([x, y, z]), expected, (x, y, z))

    @tag("slow")
    def test_ep_commutator(self):
        e3 = ep_presentation(3)
        relation = compile_formula("(= (comm x y) z)", e3, variables=['x', 'y', 'z'])
        words = enumerate_words(e3.domain, 3)
        for x, y, z in product(words, repeat=3):
            expected = encode_ep(commutator(decode_ep(x, 3), decode_ep(y, 3))) == z
            self.assertEqual(relation.contains([x, y, z]), expected, (x, y, z))

    @tag("slow")
    def test_hp_inverse(self):
        h3 = hp_presentation(3)
        relation = compile_formula("(= (inv x) y)", h3, variables=['x', 'y'])
        words = enumerate_words(h3.domain, 2)
        for x, y in product(words, repeat=2):
            expected = encode_hp(inverse(decode_hp(x, 3))) == y
            self.assertEqual(relation.contains([x, y]), expected, (x, y))
