from itertools import product

import numpy as np
from django.test import SimpleTestCase, tag

from core.exceptions import InvalidPrimeError, OracleError
from .services.codec import decode_ep, decode_hp, encode_ep, encode_hp
from .services.integers import decode_int, decode_nat, encode_int, encode_nat
from .services.nil_element import (
    E, FREE, H, NilElement, bilinear_form, check_prime, commutator, format_element, inverse,
    multiply, parse_element, power, to_quotient,
)
from .services.example12 import (
    Example12Element, decode_a, decode_q, derive_cocycle, encode_a, encode_q, join, split, transversal,
    x_power, y_gen, z_gen,
)

SEED = 20240521


def x(kind, i, p=3, rank=4):
    return NilElement.generator(kind, p, i, rank)


def all_elements(kind, p=3, rank=3):
    """E 또는 H 의 계수 rank 원소 전부"""
    shape = NilElement.identity(kind, p, rank)._central().shape
    central_size = int(np.prod(shape, dtype=np.int64))
    for alpha in product(range(p), repeat=rank):
        for flat in product(range(p), repeat=central_size):
            if kind == H and flat[0]:
                continue
            central = np.array(flat, dtype=np.int64).reshape(shape)
            yield NilElement._from_arrays(kind, p, np.array(alpha), central)


def random_element(rng, kind, p, rank):
    alpha = rng.integers(0, p, rank)
    shape = NilElement.identity(kind, p, rank)._central().shape
    central = rng.integers(0, p, shape) if shape else np.int64(rng.integers(0, p))
    if kind == H:
        central[0] = 0
    return NilElement._from_arrays(kind, p, alpha, central)


class PrimeTests(SimpleTestCase):
    def test_odd_primes(self):
        self.assertEqual(check_prime(3), 3)
        self.assertEqual(check_prime(5), 5)

    def test_rejects_two_and_composites(self):
        for bad in (2, 1, 9, -3, 0):
            with self.assertRaises(InvalidPrimeError) as ctx:
                check_prime(bad)
            self.assertIn("p must be an odd prime", str(ctx.exception))


class MultiplyTests(SimpleTestCase):
    def test_e_commutation(self):
        result = x(E, 1) * x(E, 0)
        self.assertEqual(result.alpha[:2], (1, 1))
        self.assertEqual(result.central, (2,))
        self.assertEqual(format_element(result), "z^2 x0 x1")

    def test_h_commutation(self):
        result = x(H, 1) * x(H, 0)
        self.assertEqual(format_element(result), "z1^2 x0 x1")

    def test_identity_is_neutral(self):
        rng = np.random.default_rng(SEED)
        for kind in (FREE, E, H):
            e = NilElement.identity(kind, 3, 4)
            for _ in range(20):
                a = random_element(rng, kind, 3, 4)
                self.assertEqual(a * e, a)
                self.assertEqual(e * a, a)

    def test_mismatch(self):
        with self.assertRaises(OracleError):
            x(E, 0) * x(H, 0)
        with self.assertRaises(OracleError):
            x(E, 0, p=3) * x(E, 0, p=5)
        with self.assertRaises(OracleError):
            x(E, 0, rank=3) * x(E, 0, rank=4)

    def test_generator_beyond_rank(self):
        with self.assertRaises(OracleError):
            NilElement.generator(E, 3, 5, rank=4)

    def test_associativity_random(self):
        rng = np.random.default_rng(SEED)
        for kind, p in product((FREE, E, H), (3, 5)):
            for _ in range(300):
                a, b, c = (random_element(rng, kind, p, 5) for _ in range(3))
                self.assertEqual((a * b) * c, a * (b * c))


class InverseAndPowerTests(SimpleTestCase):
    def test_inverse_of_identity(self):
        e = NilElement.identity(E, 3, 4)
        self.assertEqual(inverse(e), e)

    def test_inverse_of_generator(self):
        inv = inverse(x(E, 0))
        self.assertEqual(inv.alpha[0], 2)
        self.assertEqual(inv, power(x(E, 0), 2))

    def test_inverse_random(self):
        rng = np.random.default_rng(SEED)
        for kind in (FREE, E, H):
            for _ in range(50):
                a = random_element(rng, kind, 5, 4)
                self.assertTrue(multiply(a, inverse(a)).is_identity)
                self.assertTrue(multiply(inverse(a), a).is_identity)

    def test_power_of_product(self):
        self.assertTrue(power(x(E, 0) * x(E, 1), 3).is_identity)

    def test_negative_power(self):
        a = x(H, 0) * x(H, 2)
        self.assertEqual(power(a, -2), power(inverse(a), 2))

    @tag("slow")
    def test_exponent_law_exhaustive(self):
        for kind in (E, H):
            for a in all_elements(kind):
                self.assertTrue(power(a, 3).is_identity, a)


class CommutatorTests(SimpleTestCase):
    def test_defining_relations(self):
        for i, k in product(range(4), repeat=2):
            if i >= k:
                continue
            self.assertEqual(commutator(x(E, i), x(E, k)), NilElement.central_generator(E, 3, rank=4))
            self.assertEqual(
                commutator(x(H, i), x(H, k)), NilElement.central_generator(H, 3, k=k, rank=4),
            )

    def test_non_commuting_pair(self):
        # k < r < s
        k, r, s = 0, 1, 2
        a = x(E, r) * inverse(x(E, k))
        b = x(E, s) * inverse(x(E, k))
        self.assertEqual(commutator(a, b), NilElement.central_generator(E, 3, rank=4))

    def test_matches_bilinear_form(self):
        rng = np.random.default_rng(SEED)
        for kind in (FREE, E, H):
            for _ in range(100):
                a, b = random_element(rng, kind, 5, 4), random_element(rng, kind, 5, 4)
                self.assertEqual(commutator(a, b), bilinear_form(a, b))
                self.assertTrue(commutator(a, b).is_central)

    def test_class_two_and_bilinearity(self):
        elements = list(all_elements(E))
        rng = np.random.default_rng(SEED)
        picks = rng.choice(len(elements), size=(200, 3))
        for i, j, k in picks:
            a, b, c = elements[i], elements[j], elements[k]
            self.assertTrue(commutator(commutator(a, b), c).is_identity)
            self.assertEqual(commutator(a * b, c), commutator(a, c) * commutator(b, c))

    @tag("slow")
    def test_class_two_exhaustive(self):
        elements = list(all_elements(H))
        central = [e for e in elements if e.is_central]
        for a, b in product(elements, repeat=2):
            c = commutator(a, b)
            self.assertTrue(c.is_central)
            for z in central[:3]:
                self.assertTrue(commutator(c, z).is_identity)


class QuotientTests(SimpleTestCase):
    def test_quotient_maps_are_homomorphisms(self):
        rng = np.random.default_rng(SEED)
        for kind in (E, H):
            for _ in range(200):
                a, b = random_element(rng, FREE, 3, 5), random_element(rng, FREE, 3, 5)
                self.assertEqual(to_quotient(a * b, kind), to_quotient(a, kind) * to_quotient(b, kind))

    def test_quotient_of_bracket(self):
        bracket = NilElement.central_generator(FREE, 3, i=0, k=2, rank=4)
        self.assertEqual(to_quotient(bracket, H), NilElement.central_generator(H, 3, k=2, rank=4))

    def test_only_from_free(self):
        with self.assertRaises(OracleError):
            to_quotient(x(E, 0), H)


class TextFormTests(SimpleTestCase):
    def test_parse_and_format(self):
        for kind, text in ((E, "z^2 x0 x1"), (H, "z1^2 x0 x1"), (FREE, "x0^2 x1 [x0,x1]^2")):
            element = parse_element(text, kind, 3, rank=4)
            self.assertEqual(format_element(element), text)

    def test_identity_text(self):
        self.assertTrue(parse_element("e", E, 3, rank=4).is_identity)
        self.assertEqual(format_element(NilElement.identity(H, 3, 4)), "e")

    def test_left_to_right_multiplication(self):
        self.assertEqual(parse_element("x1 x0", E, 3, rank=4), x(E, 1) * x(E, 0))

    def test_errors(self):
        with self.assertRaises(OracleError):
            parse_element("z1", E, 3, rank=4)
        with self.assertRaises(OracleError):
            parse_element("[x0,x1]", E, 3, rank=4)
        with self.assertRaises(OracleError):
            parse_element("y0", E, 3, rank=4)


class CodecTests(SimpleTestCase):
    def test_e_words(self):
        self.assertEqual(encode_ep(NilElement.identity(E, 3, 4)), (0,))
        self.assertEqual(encode_ep(parse_element("z^2 x0 x1", E, 3, rank=4)), (2, 1, 1))
        self.assertEqual(encode_ep(x(E, 1)), (0, 0, 1))

    def test_h_words(self):
        self.assertEqual(encode_hp(NilElement.identity(H, 3, 4)), ())
        self.assertEqual(encode_hp(x(H, 1)), (0, 1))
        self.assertEqual(encode_hp(NilElement.central_generator(H, 3, k=1, rank=4)), (0, 3))
        self.assertEqual(encode_hp(x(H, 1) * x(H, 0)), (1, 1 + 3 * 2))

    def test_e_round_trip_length_four(self):
        for length in range(1, 5):
            for word in product(range(3), repeat=length):
                if length > 1 and word[-1] == 0:
                    continue
                self.assertEqual(encode_ep(decode_ep(word, 3, rank=4)), word)

    def test_h_round_trip(self):
        for length in range(0, 4):
            for word in product(range(9), repeat=length):
                if word and (word[-1] == 0 or word[0] >= 3):
                    continue
                self.assertEqual(encode_hp(decode_hp(word, 3, rank=4)), word)

    def test_domain_errors(self):
        with self.assertRaises(OracleError):
            decode_ep((), 3)
        with self.assertRaises(OracleError):
            decode_ep((0, 1, 0), 3)
        with self.assertRaises(OracleError):
            decode_hp((3,), 3)
        with self.assertRaises(OracleError):
            decode_ep((0,) + (1,) * 9, 3, rank=8)


class IntegerCodecTests(SimpleTestCase):
    def test_naturals(self):
        self.assertEqual(encode_nat(0), ())
        self.assertEqual(encode_nat(5), (1, 0, 1))
        self.assertEqual(decode_nat((0, 0, 0, 1, 1)), 24)
        with self.assertRaises(OracleError):
            decode_nat((1, 0))

    def test_integers(self):
        for n in range(-20, 21):
            self.assertEqual(decode_int(encode_int(n)), n)
        self.assertEqual(encode_int(0), (0,))
        with self.assertRaises(OracleError):
            decode_int((1,))


class Example12GroupTests(SimpleTestCase):
    def test_relation_z_x(self):
        # z_i x = x z_i y_i
        self.assertEqual(z_gen(0) * x_power(1), x_power(1) * z_gen(0) * y_gen(0))

    def test_y_central_and_involutions(self):
        for g in (x_power(1), z_gen(0), z_gen(2), y_gen(1)):
            self.assertEqual(g * y_gen(1), y_gen(1) * g)
        self.assertEqual(y_gen(0) * y_gen(0), Example12Element())
        self.assertEqual(z_gen(1) * z_gen(1), Example12Element())

    def test_inverse(self):
        for g in (Example12Element(3, (1, 0, 1), (0, 1)), Example12Element(-2, (1,), ())):
            self.assertEqual(g * g.inverse(), Example12Element())
            self.assertEqual(g.inverse() * g, Example12Element())

    def test_derived_cocycle_example(self):
        # q_{0,e0} · q_{1,∅} · q_{1,e0}⁻¹ = y_0
        self.assertEqual(derive_cocycle((0, (1,)), (1, ())), (0, (1,)))

    def test_derived_cocycle_formula(self):
        alphas = [(), (1,), (0, 1), (1, 1)]
        for s, t, alpha, beta in product((0, 1), (0, 1), alphas, alphas):
            k, gamma = derive_cocycle((s, alpha), (t, beta))
            self.assertEqual(k, s * t)
            self.assertEqual(gamma, tuple(t * a for a in alpha) if t else ())

    def test_split_join(self):
        g = Example12Element(5, (0, 1), (1,))
        q, a = split(g)
        self.assertEqual(q, (1, (0, 1)))
        self.assertEqual(join(q, a), g)
        self.assertEqual(transversal(*q) * Example12Element(2 * a[0], (), a[1]), g)

    def test_word_codecs(self):
        self.assertEqual(encode_q((1, (0, 1))), (1, 0, 1))
        self.assertEqual(decode_q((1, 0, 1)), (1, (0, 1)))
        self.assertEqual(decode_q(()), (0, ()))
        self.assertEqual(encode_a((-3, (0, 1))), (1, 1, 3))
        for k, gamma in product(range(-5, 6), [(), (1,), (0, 1)]):
            self.assertEqual(decode_a(encode_a((k, gamma))), (k, gamma))
        with self.assertRaises(OracleError):
            decode_a((1, 2))
