import numpy as np
from django.test import SimpleTestCase, tag

from core.exceptions import AlphabetMismatchError, InputError
from core.utils import get_setting
from .services.alphabet import Alphabet, digits
from .services.dfa import (
    Dfa, accepts, accepts_batch, all_words, complement, count_words, enumerate_words, equivalent,
    intersect, is_empty, minimize, shortest_word, union,
)
from .services.nfa import Nfa, determinize
from .services.serialization import dfa_from_dict, dfa_to_dict, dumps, loads, to_dot

BINARY = digits(2)


def even_ones():
    return Dfa(BINARY, [[0, 1], [1, 0]], 0, [0])


def ends_in_one():
    return Dfa(BINARY, [[0, 1], [0, 1]], 0, [1])


def word(text):
    return BINARY.parse_word(text)


def random_dfa(rng, max_states=8, max_alphabet=4):
    n = int(rng.integers(1, max_states + 1))
    alphabet = Alphabet(int(rng.integers(1, max_alphabet + 1)))
    delta = rng.integers(0, n, size=(n, alphabet.size))
    return Dfa(alphabet, delta, int(rng.integers(0, n)), rng.random(n) < 0.4)


def random_nfa(rng, alphabet, n=6):
    delta = {}
    for s in range(n):
        for a in range(alphabet.size):
            delta[(s, a)] = set(np.flatnonzero(rng.random(n) < 0.3).tolist())
    start = set(np.flatnonzero(rng.random(n) < 0.3).tolist()) or {0}
    accepting = set(np.flatnonzero(rng.random(n) < 0.3).tolist())
    return Nfa(alphabet, n, start, accepting, delta)


class AcceptsTests(SimpleTestCase):
    def test_even_ones(self):
        self.assertTrue(accepts(even_ones(), word("1010")))
        self.assertFalse(accepts(even_ones(), word("1011")))

    def test_empty_word_is_start_acceptance(self):
        self.assertTrue(accepts(even_ones(), ()))
        self.assertFalse(accepts(ends_in_one(), ()))

    def test_universal(self):
        self.assertTrue(accepts(Dfa.universal(BINARY), word("110")))

    def test_symbol_out_of_range(self):
        with self.assertRaises(InputError):
            accepts(even_ones(), (0, 2))

    def test_incomplete_table_rejected(self):
        with self.assertRaises(InputError):
            Dfa(BINARY, [[0, 1], [1, 5]], 0, [0])

    def test_batch_matches_single_words(self):
        words = all_words(BINARY, 4)
        matrix = np.full((len(words), 4), BINARY.size, dtype=np.int64)
        for i, w in enumerate(words):
            matrix[i, :len(w)] = w
        for dfa in (even_ones(), ends_in_one()):
            self.assertEqual(accepts_batch(dfa, matrix).tolist(), [accepts(dfa, w) for w in words])

    def test_batch_symbol_out_of_range(self):
        with self.assertRaises(InputError):
            accepts_batch(even_ones(), np.array([[0, 3]]))


class DeterminizeTests(SimpleTestCase):
    def test_sigma_star_one(self):
        nfa = Nfa(BINARY, 2, {0}, {1}, {(0, 0): {0}, (0, 1): {0, 1}})
        dfa = determinize(nfa)
        words = all_words(BINARY, 6)
        self.assertEqual(len(words), 127)
        for w in words:
            self.assertEqual(accepts(dfa, w), nfa.accepts(w), w)

    def test_deterministic_input(self):
        d = even_ones()
        self.assertTrue(equivalent(determinize(Nfa.from_dfa(d)), d))

    def test_random_nfas_against_subset_simulation(self):
        rng = np.random.default_rng(get_setting('NILAUTO_SEED'))
        alphabet = Alphabet(2)
        words = all_words(alphabet, 8)
        for _ in range(5):
            nfa = random_nfa(rng, alphabet)
            dfa = determinize(nfa)
            for w in words:
                self.assertEqual(accepts(dfa, w), nfa.accepts(w))


class MinimizeTests(SimpleTestCase):
    def test_minimal_is_fixpoint(self):
        self.assertEqual(minimize(even_ones()).state_count, 2)

    def test_bisimilar_states_merge(self):
        d = Dfa(BINARY, [[1, 2], [1, 2], [1, 2]], 0, [1, 2])
        m = minimize(d)
        self.assertLess(m.state_count, d.state_count)
        self.assertTrue(equivalent(d, m))

    def test_minimize_is_canonical(self):
        a = Dfa(BINARY, [[1, 0], [0, 1]], 0, [0])
        b = Dfa(BINARY, [[1, 0], [0, 1], [2, 2]], 0, [0])
        self.assertEqual(minimize(a).delta.tolist(), minimize(b).delta.tolist())


class BooleanTests(SimpleTestCase):
    def test_complement_involution(self):
        self.assertTrue(equivalent(complement(complement(even_ones())), even_ones()))

    def test_intersect_identity(self):
        self.assertTrue(equivalent(intersect(even_ones(), Dfa.universal(BINARY)), even_ones()))

    def test_alphabet_mismatch(self):
        with self.assertRaises(AlphabetMismatchError):
            union(even_ones(), Dfa.universal(Alphabet(3)))

    def test_not_equivalent_with_witness(self):
        other = Dfa(BINARY, [[0, 1], [1, 1]], 0, [1])
        self.assertFalse(equivalent(ends_in_one(), other))
        self.assertNotEqual(accepts(ends_in_one(), word("10")), accepts(other, word("10")))

    def test_empty(self):
        self.assertTrue(is_empty(Dfa.empty(BINARY)))
        self.assertFalse(is_empty(ends_in_one()))
        self.assertEqual(shortest_word(ends_in_one()), (1,))
        self.assertIsNone(shortest_word(Dfa.empty(BINARY)))


class CountingTests(SimpleTestCase):
    def test_universal_count(self):
        self.assertEqual(count_words(Dfa.universal(BINARY), 5), 32)

    def test_even_ones_count(self):
        self.assertEqual(count_words(even_ones(), 4), 8)

    def test_empty_count(self):
        self.assertEqual(count_words(Dfa.empty(BINARY), 7), 0)

    def test_count_is_exact_for_large_lengths(self):
        self.assertEqual(count_words(Dfa.universal(Alphabet(3)), 90), 3 ** 90)

    def test_enumerate(self):
        self.assertEqual(enumerate_words(Dfa.universal(BINARY), 1), [(), (0,), (1,)])
        self.assertEqual(enumerate_words(ends_in_one(), 2), [(1,), (0, 1), (1, 1)])


@tag("slow")
class RandomPropertyTests(SimpleTestCase):
    """무작위 오토마타에 대해 단어 단위 판정과 비교"""

    def test_operations_agree_with_membership(self):
        rng = np.random.default_rng(get_setting('NILAUTO_SEED'))
        cache = {}
        for _ in range(500):
            a = random_dfa(rng)
            b = Dfa(a.alphabet, rng.integers(0, 3, size=(3, a.alphabet.size)), 0, rng.random(3) < 0.5)
            if a.alphabet.size not in cache:
                cache[a.alphabet.size] = all_words(a.alphabet, 8 if a.alphabet.size <= 2 else 5)
            m, c = minimize(a), complement(a)
            i, u = intersect(a, b), union(a, b)
            self.assertLessEqual(m.state_count, a.state_count)
            for w in cache[a.alphabet.size]:
                x, y = accepts(a, w), accepts(b, w)
                self.assertEqual(accepts(m, w), x)
                self.assertEqual(accepts(c, w), not x)
                self.assertEqual(accepts(i, w), x and y)
                self.assertEqual(accepts(u, w), x or y)
            lengths = range(a.state_count + 1)
            counts = [sum(1 for w in cache[a.alphabet.size] if len(w) == n and accepts(a, w)) for n in lengths if n <= 5]
            self.assertEqual(counts, [count_words(a, n) for n in lengths if n <= 5])


class SerializationTests(SimpleTestCase):
    def test_round_trip(self):
        d = minimize(ends_in_one())
        data = loads(dumps(dfa_to_dict(d)))
        self.assertTrue(equivalent(dfa_from_dict(data), d))

    def test_sink_transitions_omitted(self):
        d = minimize(Dfa.word(BINARY, word("11")))
        data = dfa_to_dict(d)
        self.assertIn('sink', data)
        self.assertTrue(all(t[2] != data['sink'] for t in data['transitions']))
        self.assertTrue(equivalent(dfa_from_dict(data), d))

    def test_output_is_deterministic(self):
        self.assertEqual(dumps(dfa_to_dict(even_ones())), dumps(dfa_to_dict(minimize(even_ones()))))

    def test_dot_has_one_node_per_state(self):
        text = ''.join(to_dot(even_ones()))
        self.assertEqual(text.count('shape="'), 2)

    def test_malformed(self):
        with self.assertRaises(InputError):
            dfa_from_dict({'alphabet': 2})
        with self.assertRaises(InputError):
            loads(b"{not json")
