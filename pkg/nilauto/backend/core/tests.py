import os
import re
import tempfile
from io import StringIO
from pathlib import Path

from django.core.cache import cache
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, tag
from rest_framework.test import APISimpleTestCase

from automata.services.dfa import Dfa, equivalent
from automata.services.serialization import dfa_from_dict, loads
from core.exceptions import InputError, PresentationError
from logic.services.compiler import decide
from presentations.services.builders import ep_presentation, nat_add
from presentations.services.bundle import load_bundle, save_bundle
from presentations.services.registry import build_structure
from relations.services.convolution import PaddedAlphabet, convolve
from relations.services.relation import RelationAutomaton, negate
from .services.census import crossover, demand, run_census
from .services.crosscheck import crosscheck
from .services.loading import load_presentation

COMMUTATIVE = "(forall (x y z) (implies (Op x y z) (Op y x z)))"


def mutated_adder():
    """1 + 1 의 결과만 지운 덧셈"""
    adder = nat_add()
    base = adder.base
    single = RelationAutomaton(
        base, 3, Dfa.word(PaddedAlphabet(base, 3).alphabet, convolve([(1,), (1,), (0, 1)], base)),
    )
    return adder.derive(name='nat-add-mutated', relations={'Op': negate(single, within=adder.relation('Op'))})


def run(*args, **options):
    out = StringIO()
    call_command(*args, stdout=out, **options)
    return out.getvalue()


class CensusTests(SimpleTestCase):
    def test_ep_cumulative_counts(self):
        report = run_census(ep_presentation(3), 8, p=3)
        self.assertEqual(report.cumulative, [0] + [3 ** m for m in range(1, 9)])
        self.assertEqual(report.counts[:3], [0, 3, 6])
        self.assertEqual(report.demand[4], 729)
        self.assertEqual(report.crossover, 4)

    def test_adder_without_series(self):
        report = run_census(nat_add(), 3)
        self.assertEqual(report.counts, [1, 1, 2, 4])
        self.assertEqual(report.cumulative, [1, 2, 4, 8])
        self.assertEqual(report.demand, [])
        self.assertIsNone(report.crossover)

    def test_crossover(self):
        self.assertEqual(demand(3, 4), 729)
        self.assertIsNone(crossover([1, 3, 9, 27], 3))
        supply = [3 ** m for m in range(9)]
        self.assertEqual(crossover(supply, 3), 4)
        self.assertIsNone(crossover(supply, 3, c=2))

    def test_render_and_rows(self):
        report = run_census(ep_presentation(3), 4, p=3)
        text = report.render()
        self.assertIn("# crossover (c=1): n = 4", text)
        self.assertEqual(list(report.rows())[4], (4, 54, 81, 729))
        self.assertEqual(report.to_dict()['maxLength'], 4)

    def test_invalid_arguments(self):
        with self.assertRaises(InputError):
            run_census(nat_add(), 0)
        with self.assertRaises(InputError):
            run_census(nat_add(), 2, c=0)


class CrosscheckTests(SimpleTestCase):
    def test_adder_passes(self):
        report = crosscheck(nat_add(), 4)
        self.assertTrue(report.passed)
        self.assertEqual(report.pairs_checked, 16 ** 2)
        self.assertIn("result: pass", report.render())

    def test_mutation_is_found(self):
        report = crosscheck(mutated_adder(), 3, workers=3)
        self.assertFalse(report.passed)
        ce = report.counterexample
        self.assertEqual((ce.x, ce.y, ce.expected, ce.actual), ("1", "1", "01", None))

    def test_sampling_is_deterministic(self):
        first = crosscheck(nat_add(), 4, sample=20, seed=7)
        second = crosscheck(nat_add(), 4, sample=20, seed=7, workers=1)
        self.assertEqual(first.pairs_checked, 20)
        self.assertEqual(first.to_dict(), second.to_dict())
        self.assertEqual(crosscheck(nat_add(), 4, sample=10_000).pairs_checked, 256)

    def test_unsupported_kind(self):
        with self.assertRaises(PresentationError):
            crosscheck(build_structure('power'), 2)
        with self.assertRaises(InputError):
            crosscheck(nat_add(), -1)

    def test_small_chunks(self):
        with self.settings(NILAUTO_CROSSCHECK_CHUNK=7):
            self.assertTrue(crosscheck(nat_add(), 4).passed)
            ce = crosscheck(mutated_adder(), 3).counterexample
        self.assertEqual((ce.x, ce.y), ("1", "1"))

    @tag("slow")
    def test_adder_all_pairs_below_4096(self):
        report = crosscheck(nat_add(), 12)
        self.assertTrue(report.passed)
        self.assertEqual(report.pairs_checked, 4096 ** 2)

    @tag("slow")
    def test_ep3_passes(self):
        report = crosscheck(ep_presentation(3), 3)
        self.assertTrue(report.passed)
        self.assertEqual(report.pairs_checked, 729)

    @tag("slow")
    def test_hp3_passes(self):
        self.assertTrue(crosscheck(build_structure('hp', p=3), 3).passed)

    @tag("slow")
    def test_ep5_passes(self):
        report = crosscheck(ep_presentation(5), 3)
        self.assertTrue(report.passed)
        self.assertEqual(report.pairs_checked, 5 ** 6)


class CommandTests(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.root = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def assertExit(self, code, *args, **options):
        with self.assertRaises(CommandError) as ctx:
            run(*args, **options)
        self.assertEqual(ctx.exception.returncode, code)
        return ctx.exception

    def test_build_ep(self):
        out = run('build', 'ep', p=3, out=str(self.root / 'ep3'))
        self.assertEqual(out.strip(), str(self.root / 'ep3' / 'manifest.json'))
        bundle = load_bundle(self.root / 'ep3')
        self.assertTrue(bundle.contains((2, 1, 1)))

    def test_build_rejects_two(self):
        error = self.assertExit(2, 'build', 'ep', p=2, out=str(self.root / 'ep2'))
        self.assertIn("p must be an odd prime", str(error))

    def test_build_unknown_name(self):
        self.assertExit(2, 'build', 'sl2', out=str(self.root / 'x'))

    def test_build_then_decide(self):
        run('build', 'nat-add', out=str(self.root / 'adder'))
        self.assertEqual(run('decide', str(self.root / 'adder'), COMMUTATIVE).strip(), "true")

    def test_decide(self):
        self.assertEqual(run('decide', 'ep', COMMUTATIVE, p=3).strip(), "false")
        self.assertExit(2, 'decide', 'ep', "(Op x y z)", p=3)
        self.assertExit(2, 'decide', 'ep', "(Op x y", p=3)

    def test_eval(self):
        self.assertEqual(run('eval', 'nat-add', '101', '11001').strip(), "00011")
        self.assertEqual(run('eval', 'ep', '0', '211', p=3).strip(), "211")
        self.assertEqual(run('eval', 'ep', '001', '01', p=3).strip(), "211")
        self.assertEqual(run('eval', 'nat-add', '', '').strip(), "")

    def test_eval_agrees_with_decide(self):
        z = run('eval', 'nat-add', '101', '11001').strip()
        self.assertTrue(decide(f'(= (* "101" "11001") "{z}")', nat_add()))

    def test_eval_outside_domain(self):
        self.assertExit(2, 'eval', 'ep', '', '0', p=3)
        self.assertExit(2, 'eval', 'nat-add', '10', '1')

    def test_crosscheck(self):
        out = run('crosscheck', 'nat-add', max_len=4)
        self.assertIn("result: pass", out)
        data = loads(run('crosscheck', 'nat-add', max_len=4, format='json'))
        self.assertTrue(data['passed'])
        self.assertEqual(data['pairsChecked'], 256)

    def test_crosscheck_failure_exit(self):
        save_bundle(mutated_adder(), self.root / 'mutated')
        out = StringIO()
        with self.assertRaises(CommandError) as ctx:
            call_command('crosscheck', str(self.root / 'mutated'), max_len=2, stdout=out)
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertIn("counterexample: x='1' y='1'", out.getvalue())

    def test_crosscheck_unsupported(self):
        self.assertExit(2, 'crosscheck', 'power', max_len=2)

    def test_census(self):
        out = run('census', 'ep', p=3, max_len=8)
        self.assertIn("# crossover (c=1): n = 4", out)
        data = loads(run('census', 'ep', p=3, max_len=8, format='json'))
        self.assertEqual(data['cumulative'][8], 3 ** 8)
        self.assertEqual(data['demand'][4], 729)
        self.assertExit(2, 'census', 'ep', p=3, max_len=0)

    def test_census_length_one(self):
        data = loads(run('census', 'nat-add', max_len=1, format='json'))
        self.assertEqual(data['cumulative'], [1, 2])

    def test_export_json_is_stable(self):
        first = run('export', 'nat-add', 'Op')
        self.assertEqual(first, run('export', 'nat-add', 'Op'))
        data = loads(first)
        self.assertEqual((data['arity'], data['baseAlphabet']), (3, 2))
        self.assertTrue(equivalent(dfa_from_dict(data), nat_add().relation('Op').dfa))

    def test_export_dot(self):
        states = loads(run('export', 'nat-add', 'Op'))['states']
        dot = run('export', 'nat-add', 'Op', format='dot')
        nodes = [line for line in dot.splitlines() if re.match(r'^  \d+ \[shape=', line)]
        self.assertEqual(len(nodes), states)
        self.assertTrue(dot.startswith('digraph "nat-add.Op" {'))

    def test_export_domain_to_file(self):
        target = self.root / 'out' / 'domain.json'
        run('export', 'ep', 'domain', p=3, out=str(target))
        self.assertTrue(equivalent(dfa_from_dict(loads(target.read_bytes())), ep_presentation(3).domain))

    def test_export_unknown_relation(self):
        self.assertExit(2, 'export', 'nat-add', 'Mul')

    def test_build_is_deterministic(self):
        run('build', 'hp', p=3, out=str(self.root / 'a'))
        run('build', 'hp', p=3, out=str(self.root / 'b'))
        for path in sorted((self.root / 'a').iterdir()):
            self.assertEqual(path.read_bytes(), (self.root / 'b' / path.name).read_bytes(), path.name)

    def test_registry_name_wins_over_local_directory(self):
        save_bundle(nat_add(), self.root / 'ep')
        cwd = os.getcwd()
        os.chdir(self.root)
        try:
            self.assertEqual(load_presentation('ep', p=3).meta['kind'], 'ep')
            self.assertEqual(load_presentation('./ep').name, 'nat-add')
            self.assertEqual(run('eval', 'ep', '001', '01', p=3).strip(), "211")
        finally:
            os.chdir(cwd)


class ApiTests(APISimpleTestCase):
    def setUp(self):
        cache.clear()

    def test_eval(self):
        response = self.client.post('/api/eval/', {'structure': 'nat-add', 'x': '101', 'y': '11001'}, format='json')
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.data['z'], "00011")
        response = self.client.post('/api/eval/', {'structure': 'ep', 'p': 3, 'x': '001', 'y': '01'}, format='json')
        self.assertEqual(response.data['z'], "211")

    def test_eval_errors(self):
        response = self.client.post('/api/eval/', {'structure': 'ep', 'x': '', 'y': '0'}, format='json')
        self.assertEqual(response.status_code, 400)
        response = self.client.post('/api/eval/', {'structure': 'ep'}, format='json')
        self.assertEqual(response.status_code, 400)
        response = self.client.post('/api/eval/', {'structure': 'ep', 'p': 2, 'x': '0', 'y': '0'}, format='json')
        self.assertEqual(response.status_code, 400)

    def test_decide(self):
        response = self.client.post('/api/decide/', {'structure': 'nat-add', 'formula': COMMUTATIVE}, format='json')
        self.assertEqual(response.status_code, 200)
        self.assertIs(response.data['result'], True)
        response = self.client.post('/api/decide/', {'structure': 'nat-add', 'formula': '(Op x'}, format='json')
        self.assertEqual(response.status_code, 400)

    def test_census(self):
        response = self.client.get('/api/census/ep/', {'max_len': 4})
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.data['cumulative'], [0, 3, 9, 27, 81])
        self.assertEqual(response.data['crossover'], 4)

    def test_census_errors(self):
        self.assertEqual(self.client.get('/api/census/sl2/').status_code, 400)
        self.assertEqual(self.client.get('/api/census/ep/', {'max_len': 'x'}).status_code, 400)
        self.assertEqual(self.client.get('/api/census/ep/', {'max_len': 1000}).status_code, 400)
