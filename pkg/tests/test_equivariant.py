from unittest import TestCase

from betti_characters.characters import Character
from betti_characters.equivariant import (
    ActionOnComplex, ActionOnGradedModule, GroupActionSpec, GroupElementSpec, action_on_complex, action_on_module,
    betti_characters, betti_characters_at, module_character, molien_check, molien_series_sides, propagate
)
from betti_characters.exceptions import ContainmentError, InvarianceError, UnsupportedError, UsageError
from betti_characters.fields import FieldSpec
from betti_characters.groebner import Ideal, ideal_power
from betti_characters.polyring import PolyMatrix, RingContext
from betti_characters.resolution import free_resolution, resolve_quotient

from tests.oracles import koszul_betti_character
from tests.test_resolution import quadrics_ideal


def rational(*values):
    return Character.from_values(FieldSpec.rational(), values)


def symmetric_group_on_quadrics():
    ideal = quadrics_ideal()
    ring = ideal.ring
    elements = [
        GroupElementSpec.from_substitution_row('four-cycle', ['x_2', 'x_3', 'x_4', 'x_1'], ring),
        GroupElementSpec.from_substitution_row('three-cycle', ['x_2', 'x_3', 'x_1', 'x_4'], ring),
        GroupElementSpec.from_substitution_row('double-transposition', ['x_2', 'x_1', 'x_4', 'x_3'], ring),
        GroupElementSpec.from_substitution_row('transposition', ['x_2', 'x_1', 'x_3', 'x_4'], ring),
        GroupElementSpec.from_substitution_row('identity', ['x_1', 'x_2', 'x_3', 'x_4'], ring),
    ]
    return ideal, GroupActionSpec(elements, [6, 8, 3, 6, 1], 24)


class SymmetricGroupOnQuadricsTest(TestCase):
    def setUp(self):
        self.ideal, self.group = symmetric_group_on_quadrics()
        self.complex = resolve_quotient(self.ideal)
        self.action = ActionOnComplex(self.complex, self.group)

    def test_betti_characters(self):
        table = betti_characters(self.action)
        self.assertEqual(dict(table[0].items()), {0: rational(1, 1, 1, 1, 1)})
        self.assertEqual(dict(table[1].items()), {2: rational(0, 0, 2, 2, 6)})
        self.assertEqual(dict(table[2].items()), {3: rational(0, -1, 0, 0, 8)})
        self.assertEqual(dict(table[3].items()), {4: rational(1, 0, -1, -1, 3)})

    def test_identity_gives_betti_numbers(self):
        table = betti_characters(self.action)
        betti = self.complex.betti_table()
        for (i, j), value in table.at(self.group.names.index('identity')).items():
            self.assertEqual(value, betti[(i, j)])

    def test_single_homological_degree(self):
        self.assertEqual(betti_characters_at(self.action, 2)[3], rational(0, -1, 0, 0, 8))
        with self.assertRaises(UsageError):
            betti_characters_at(self.action, 4)

    def test_lifts_do_not_depend_on_the_division_order(self):
        reversed_action = action_on_complex(self.complex, self.group, reverse_lifts=True)
        self.assertEqual(betti_characters(reversed_action).rows, betti_characters(self.action).rows)

    def test_threads(self):
        threaded = action_on_complex(self.complex, self.group, threads=3)
        self.assertEqual(betti_characters(threaded).rows, betti_characters(self.action).rows)

    def test_propagated_matrices_commute_with_differentials(self):
        lifted = propagate(self.action, 'four-cycle')
        element = self.group.element('four-cycle')
        for i in range(1, self.complex.length + 1):
            d = self.complex.differential(i)
            self.assertEqual(d * lifted[i], lifted[i - 1] * element.substitution.apply_matrix(d))

    def test_module_character(self):
        module = action_on_module(None, self.ideal, self.group)
        self.assertEqual(module.dimension(3), 4)
        self.assertEqual(module.character(3), rational(0, 1, 0, 2, 4))
        self.assertEqual(module.character(0), rational(1, 1, 1, 1, 1))
        graded = module_character(module, [1, 2])
        self.assertEqual(graded[1], rational(0, 1, 0, 2, 4))
        self.assertEqual(graded[2], rational(0, 1, 0, 2, 4))

    def test_molien_identity(self):
        module = ActionOnGradedModule(None, self.ideal, self.group)
        for name in self.group.names:
            with self.subTest(element=name):
                self.assertTrue(molien_check(self.action, module, name, 7))
        series, alternating = molien_series_sides(self.action, module, self.group.element('identity'), 4)
        self.assertEqual(str(alternating), '1-6*t^2+8*t^3-3*t^4')
        self.assertEqual(series, alternating)

    def test_cycle_types(self):
        self.assertEqual(self.group.cycle_types(), [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)])


class CoordinatePointsTest(TestCase):
    def setUp(self):
        self.ring = RingContext(FieldSpec.rational(), ('x', 'y', 'z'))
        self.ideal = Ideal(self.ring, [self.ring.parse(f) for f in ['x*y', 'x*z', 'y*z']])
        self.group = GroupActionSpec([
            GroupElementSpec.from_substitution_row('id', ['x', 'y', 'z'], self.ring),
            GroupElementSpec.from_substitution_row('transposition', ['y', 'x', 'z'], self.ring),
            GroupElementSpec.from_substitution_row('three-cycle', ['y', 'z', 'x'], self.ring),
        ], [1, 3, 2], 6)

    def test_betti_characters(self):
        table = betti_characters(ActionOnComplex(resolve_quotient(self.ideal), self.group))
        self.assertEqual(table.render().split('\n'), [
            'HashTable{0 => GradedCharacter{{0} => Character{1, 1, 1}}',
            '          1 => GradedCharacter{{2} => Character{3, 1, 0}}',
            '          2 => GradedCharacter{{3} => Character{2, 0, -1}}}',
        ])

    def test_lifts_do_not_depend_on_the_division_order(self):
        complex_ = resolve_quotient(self.ideal)
        expected = betti_characters(action_on_complex(complex_, self.group)).render()
        self.assertEqual(betti_characters(action_on_complex(complex_, self.group, reverse_lifts=True)).render(),
                         expected)
        self.assertEqual(betti_characters(action_on_complex(complex_, self.group, threads=2)).render(), expected)

    def test_subquotient(self):
        module = ActionOnGradedModule(self.ideal, ideal_power(self.ideal, 2), self.group)
        self.assertEqual(module.character(2), rational(3, 1, 0))
        self.assertEqual(module.character(3), rational(7, 1, 1))
        self.assertEqual(module.dimension(1), 0)

    def test_invariance_is_checked(self):
        ideal = Ideal(self.ring, [self.ring.parse('x*y'), self.ring.parse('x*z')])
        with self.assertRaises(InvarianceError):
            ActionOnComplex(resolve_quotient(ideal), self.group)
        with self.assertRaises(InvarianceError):
            ActionOnGradedModule(None, ideal, self.group)

    def test_containment_is_checked(self):
        with self.assertRaises(ContainmentError):
            ActionOnGradedModule(self.ideal, Ideal(self.ring, [self.ring.parse('x^2')]), self.group)

    def test_rank_one_presentations_only(self):
        x, y, _ = self.ring.gens()
        complex_ = free_resolution(PolyMatrix.from_rows(self.ring, [[x, 0], [0, y]]))
        with self.assertRaises(UnsupportedError):
            ActionOnComplex(complex_, self.group)

    def test_molien_check_needs_the_resolved_quotient(self):
        action = ActionOnComplex(resolve_quotient(self.ideal), self.group)
        with self.assertRaises(UsageError):
            molien_series_sides(action, ActionOnGradedModule(self.ideal, ideal_power(self.ideal, 2), self.group),
                                self.group.element('id'), 3)


class ConjugateElementsTest(TestCase):
    def setUp(self):
        self.ring = RingContext(FieldSpec.rational(), ('x', 'y', 'z'))
        self.group = GroupActionSpec([
            GroupElementSpec.from_substitution_row(name, images, self.ring)
            for name, images in [
                ('id', ['x', 'y', 'z']),
                ('swap-xy', ['y', 'x', 'z']),
                ('swap-yz', ['x', 'z', 'y']),
                ('swap-xz', ['z', 'y', 'x']),
                ('cycle', ['y', 'z', 'x']),
                ('cycle-inverse', ['z', 'x', 'y']),
            ]
        ])

    def test_elements_are_conjugate(self):
        cycle = self.group.element('cycle').substitution
        conjugate = cycle @ self.group.element('swap-xy').substitution @ cycle ** -1
        self.assertEqual(list(conjugate.images), list(self.group.element('swap-yz').substitution.images))
        self.assertEqual(list((cycle ** -1).images), list(self.group.element('cycle-inverse').substitution.images))

    def test_conjugate_elements_have_equal_characters(self):
        for generators in [['x*y', 'x*z', 'y*z'], ['x^2', 'y^2', 'z^2', 'x*y+y*z+z*x']]:
            with self.subTest(generators=generators):
                ideal = Ideal(self.ring, [self.ring.parse(f) for f in generators])
                table = betti_characters(action_on_complex(resolve_quotient(ideal), self.group))
                for _, graded in table.items():
                    for degree, character in graded.items():
                        self.assertEqual(character[1], character[2])
                        self.assertEqual(character[1], character[3])
                        self.assertEqual(character[4], character[5])


class DiagonalActionTest(TestCase):
    def setUp(self):
        self.field = FieldSpec.cyclotomic(3, 'w')
        self.ring = RingContext(self.field, ('x', 'y', 'z'))
        self.ideal = Ideal(self.ring, [self.ring.parse(f) for f in ['x^3', 'y^3', 'x*y*z']])
        self.group = GroupActionSpec([
            GroupElementSpec.from_matrix('id', [[1, 0, 0], [0, 1, 0], [0, 0, 1]], self.ring),
            GroupElementSpec.from_matrix('g', [['w', 0, 0], [0, 1, 0], [0, 0, 1]], self.ring),
            GroupElementSpec.from_matrix('h', [['w', 0, 0], [0, 'w^2', 0], [0, 0, 1]], self.ring),
        ])
        self.complex = resolve_quotient(self.ideal)
        self.action = ActionOnComplex(self.complex, self.group)

    def test_generators(self):
        w = self.field.gen()
        self.assertEqual(betti_characters_at(self.action, 1)[3][1], 2 + w)

    def test_agrees_with_koszul_homology(self):
        table = betti_characters(self.action)
        for i, graded in table.items():
            for j, character in graded.items():
                for element, value in zip(self.group.elements, character):
                    with self.subTest(i=i, j=j, element=element.name):
                        self.assertEqual(value, koszul_betti_character(self.ideal, element.substitution, i, j))

    def test_molien_identity(self):
        module = ActionOnGradedModule(None, self.ideal, self.group)
        for name in self.group.names:
            self.assertTrue(molien_check(self.action, module, name, 8))


class GroupActionSpecTest(TestCase):
    def setUp(self):
        self.ring = RingContext(FieldSpec.rational(), ('x', 'y'))

    def element(self, name, images):
        return GroupElementSpec.from_substitution_row(name, images, self.ring)

    def test_validation(self):
        with self.assertRaises(UsageError):
            GroupActionSpec([])
        with self.assertRaises(UsageError):
            GroupActionSpec([self.element('g', ['y', 'x']), self.element('g', ['x', 'y'])])
        with self.assertRaises(UsageError):
            GroupActionSpec([self.element('g', ['y', 'x'])], class_sizes=[1, 1])
        with self.assertRaises(UsageError):
            GroupActionSpec([self.element('g', ['y', 'x'])], group_order=0)

    def test_inconsistent_class_sizes_warn(self):
        with self.assertLogs('betti_characters.equivariant', 'WARNING'):
            GroupActionSpec([self.element('e', ['x', 'y']), self.element('s', ['y', 'x'])], [1, 1], 3)

    def test_lookup(self):
        group = GroupActionSpec([self.element('e', ['x', 'y']), self.element('s', ['y', 'x'])])
        self.assertEqual(group.element('s').cycle_type, (2,))
        self.assertTrue(group.element('e').is_identity())
        with self.assertRaises(UsageError):
            group.element('t')

    def test_scaled_matrix(self):
        element = GroupElementSpec.from_matrix('m', [['1', '1'], ['1', '-1']], self.ring, scale='1/2')
        x, y = self.ring.gens()
        self.assertEqual(list(element.substitution.images), [(x + y) / 2, (x - y) / 2])
        self.assertEqual(element.form, 'matrix')
