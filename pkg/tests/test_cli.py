import copy
import io
import json
import os
import tempfile
from pathlib import Path
from unittest import TestCase

from betti_characters.cli import format_validation_errors, run

S4_PROBLEM = str(Path(__file__).resolve().parent.parent / 'problems' / 'symmetric_shifted.json')

SWAP = {
    'field': {'kind': 'rational'},
    'ring': {'variables': ['x', 'y', 'z']},
    'definitions': [{'kind': 'ideal', 'name': 'I', 'generators': ['x^2', 'y^2']}],
    'module': {'kind': 'quotient', 'ideal': 'I'},
    'group': {'elements': [
        {'kind': 'substitution', 'name': 'id', 'images': ['x', 'y', 'z']},
        {'kind': 'substitution', 'name': 's', 'images': ['y', 'x', 'z']},
    ]},
    'tasks': [{'kind': 'betti-characters'}],
}


class CommandLineTest(TestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)

    def write_problem(self, data):
        path = os.path.join(self.directory.name, 'problem.json')
        with open(path, 'w', encoding='utf-8') as stream:
            json.dump(data, stream)
        return path

    def run_cli(self, *argv):
        stdout, stderr = io.StringIO(), io.StringIO()
        code = run(list(argv), stdout=stdout, stderr=stderr)
        return code, stdout.getvalue(), stderr.getvalue()

    def test_pretty(self):
        code, out, err = self.run_cli(S4_PROBLEM)
        self.assertEqual(code, 0, err)
        self.assertTrue(out.startswith('-- betti-table\n'))
        self.assertIn('R  <-- R  <-- R  <-- R  <-- 0', out)
        self.assertIn('-- betti-characters\n', out)
        self.assertIn('1 {2} => (4) + (3,1) + (2,2)', out)
        self.assertIn('2 {3} => (3,1) + (2,2) + (2,1,1)', out)
        self.assertIn('3 {4} => (2,1,1)', out)
        self.assertIn('-- molien-check\n', out)

    def test_structured(self):
        code, out, err = self.run_cli(S4_PROBLEM, '--format', 'structured', '--threads', '2')
        self.assertEqual(code, 0, err)
        tasks = json.loads(out)['tasks']
        self.assertEqual([t['kind'] for t in tasks], ['betti-table', 'betti-characters', 'decompose', 'molien-check'])
        self.assertEqual(tasks[0]['ranks'], [1, 6, 8, 3])
        characters = {(c['homological_degree'], c['degree']): c['values'] for c in tasks[1]['characters']}
        self.assertEqual(characters[(2, 3)], {
            'four-cycle': '0', 'three-cycle': '-1', 'double-transposition': '0', 'transposition': '0', 'identity': '8',
        })
        self.assertTrue(all(check['holds'] for check in tasks[3]['checks']))

    def test_output_file(self):
        output = os.path.join(self.directory.name, 'result.json')
        code, out, err = self.run_cli(S4_PROBLEM, '--output', output)
        self.assertEqual(code, 0, err)
        self.assertIn('-- betti-table', out)
        with open(output, encoding='utf-8') as stream:
            self.assertEqual(json.load(stream)['tasks'][0]['ranks'], [1, 6, 8, 3])

    def test_schema_errors(self):
        data = copy.deepcopy(SWAP)
        data['tasks'] = []
        code, out, err = self.run_cli(self.write_problem(data))
        self.assertEqual(code, 3)
        self.assertEqual(out, '')
        self.assertIn('error: tasks: At least one task is required.', err)

    def test_unreadable_files(self):
        code, _, err = self.run_cli(os.path.join(self.directory.name, 'missing.json'))
        self.assertEqual(code, 3)
        self.assertIn('Cannot read', err)

        path = os.path.join(self.directory.name, 'broken.json')
        with open(path, 'w', encoding='utf-8') as stream:
            stream.write('{"field": ')
        code, _, err = self.run_cli(path)
        self.assertEqual(code, 3)

    def test_threads(self):
        code, out, err = self.run_cli(S4_PROBLEM, '--threads', '0')
        self.assertEqual(code, 3)
        self.assertEqual(out, '')
        self.assertIn('--threads', err)

    def test_invariance(self):
        data = copy.deepcopy(SWAP)
        data['definitions'][0]['generators'] = ['x^2', 'y*z']
        code, out, err = self.run_cli(self.write_problem(data))
        self.assertEqual(code, 2)
        self.assertEqual(out, '')
        self.assertIn('error: Element s maps the generator', err)

    def test_molien_option(self):
        code, out, err = self.run_cli(self.write_problem(SWAP), '--check', 'molien', '--degree-bound', '5')
        self.assertEqual(code, 0, err)
        self.assertIn('Molien identity up to degree 5:', out)
        self.assertIn('  s: ', out)

    def test_module_character_needs_degrees(self):
        data = copy.deepcopy(SWAP)
        data['tasks'] = [{'kind': 'module-character'}]
        self.assertEqual(self.run_cli(self.write_problem(data))[0], 3)
        code, out, err = self.run_cli(self.write_problem(data), '--degree-bound', '2', '--format', 'structured')
        self.assertEqual(code, 0, err)
        entries = json.loads(out)['tasks'][0]['characters']
        self.assertEqual([(e['degree'], e['dimension']) for e in entries], [(0, 1), (1, 3), (2, 4)])
        self.assertEqual(entries[2]['values'], {'id': '4', 's': '2'})

    def test_timeout(self):
        code, out, err = self.run_cli(S4_PROBLEM, '--timeout', '0')
        self.assertEqual(code, 6)
        self.assertEqual(out, '')


class ValidationErrorFormatTest(TestCase):
    def test_nested(self):
        errors = {
            'ring': {'variables': ['Variable names must be distinct.']},
            'tasks': [{}, {'kind': ['Not a valid type.']}],
            'non_field_errors': ['Broken.'],
        }
        self.assertEqual(format_validation_errors(errors), [
            'ring.variables: Variable names must be distinct.',
            'tasks[1].kind: Not a valid type.',
            'non_field_errors: Broken.',
        ])
