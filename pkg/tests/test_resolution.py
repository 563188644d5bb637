from unittest import TestCase

from betti_characters.exceptions import UsageError
from betti_characters.fields import FieldSpec
from betti_characters.groebner import Ideal
from betti_characters.polyring import PolyMatrix, RingContext
from betti_characters.resolution import (
    BettiTable, betti_table, free_resolution, minimize, presentation_of_quotient, render_ranks, resolve_quotient,
    schreyer_resolution
)

from tests.oracles import koszul_betti_numbers

SQUAREFREE_QUADRICS = ['x_1*x_2', 'x_1*x_3', 'x_1*x_4', 'x_2*x_3', 'x_2*x_4', 'x_3*x_4']


def quadrics_ideal():
    ring = RingContext(FieldSpec.rational(), ('x_1', 'x_2', 'x_3', 'x_4'))
    return Ideal(ring, [ring.parse(f) for f in SQUAREFREE_QUADRICS])


class ResolutionTest(TestCase):
    def setUp(self):
        self.ring = RingContext(FieldSpec.rational(), ('x', 'y', 'z'))

    def ideal(self, *generators):
        return Ideal(self.ring, [self.ring.parse(g) for g in generators])

    def assertResolves(self, complex_):
        complex_.check()
        self.assertTrue(complex_.is_minimal())

    def test_squarefree_quadrics(self):
        complex_ = resolve_quotient(quadrics_ideal())
        self.assertResolves(complex_)
        self.assertEqual(complex_.ranks, [1, 6, 8, 3])
        self.assertEqual(betti_table(complex_).entries, {(0, 0): 1, (1, 2): 6, (2, 3): 8, (3, 4): 3})
        self.assertEqual([m.degrees for m in complex_.modules], [(0,), (2,) * 6, (3,) * 8, (4,) * 3])

    def test_complete_intersection(self):
        complex_ = resolve_quotient(self.ideal('x^2', 'y^2', 'z^2'))
        self.assertResolves(complex_)
        self.assertEqual(complex_.betti_table().entries, {(0, 0): 1, (1, 2): 3, (2, 4): 3, (3, 6): 1})

    def test_coordinate_points(self):
        complex_ = resolve_quotient(self.ideal('x*y', 'x*z', 'y*z'))
        self.assertResolves(complex_)
        self.assertEqual(complex_.betti_table().entries, {(0, 0): 1, (1, 2): 3, (2, 3): 2})

    def test_twisted_cubic(self):
        ring = RingContext(FieldSpec.rational(), ('x', 'y', 'z', 'w'))
        ideal = Ideal(ring, [ring.parse(f) for f in ['x*z-y^2', 'x*w-y*z', 'y*w-z^2']])
        complex_ = resolve_quotient(ideal)
        self.assertResolves(complex_)
        self.assertEqual(complex_.betti_table().entries, {(0, 0): 1, (1, 2): 3, (2, 3): 2})

    def test_agrees_with_koszul_homology(self):
        for generators in [
            ('x^3', 'y^3', 'x*y*z'),
            ('x^2', 'x*y', 'y*z^2'),
            ('x^2-y*z', 'y^2-x*z', 'z^2-x*y'),
            ('x^3+y^3+z^3', 'x^2*y+y^2*z+z^2*x'),
            ('x^2', 'y^2', 'z^2', 'x*y+y*z+z*x'),
        ]:
            with self.subTest(generators=generators):
                ideal = self.ideal(*generators)
                complex_ = resolve_quotient(ideal)
                self.assertResolves(complex_)
                top = max(d for module in complex_.modules for d in module.degrees)
                self.assertEqual(complex_.betti_table().entries, koszul_betti_numbers(ideal, top + 1))

    def test_schreyer_frame_is_a_resolution(self):
        frame = schreyer_resolution(presentation_of_quotient(self.ideal('x^2', 'x*y', 'y*z^2')))
        frame.check()
        minimal = minimize(frame)
        self.assertTrue(minimal.is_minimal())
        self.assertLessEqual(sum(minimal.ranks), sum(frame.ranks))

    def test_module_presentations(self):
        x, y, z = self.ring.gens()
        residue_field = free_resolution(PolyMatrix.from_rows(self.ring, [[x, y, z]]))
        self.assertEqual(residue_field.ranks, [1, 3, 3, 1])
        split = free_resolution(PolyMatrix.from_rows(self.ring, [[x, 0], [0, y]]))
        self.assertEqual(split.ranks, [2, 2])
        self.assertEqual(split.betti_table().entries, {(0, 0): 2, (1, 1): 2})

    def test_unit_and_zero_ideals(self):
        self.assertEqual(resolve_quotient(Ideal.zero(self.ring)).ranks, [1])
        self.assertEqual(resolve_quotient(Ideal.unit(self.ring)).ranks, [0])

    def test_differentials(self):
        complex_ = resolve_quotient(self.ideal('x*y', 'x*z', 'y*z'))
        self.assertEqual(complex_.length, 2)
        self.assertEqual(complex_.differential(2).shape, (3, 2))
        with self.assertRaises(UsageError):
            complex_.differential(3)
        with self.assertRaises(UsageError):
            free_resolution(presentation_of_quotient(self.ideal('x')), RingContext(FieldSpec.rational(), ('u',)))


class RenderingTest(TestCase):
    def test_ranks(self):
        self.assertEqual(render_ranks([1, 6, 8, 3]).split('\n'), [
            ' 1      6      8      3',
            'R  <-- R  <-- R  <-- R  <-- 0',
            '',
            '0      1      2      3      4',
        ])

    def test_betti_table(self):
        table = BettiTable({(0, 0): 1, (1, 2): 6, (2, 3): 8, (3, 4): 3})
        self.assertEqual(table.render().split('\n'), [
            '       0 1 2 3',
            'total: 1 6 8 3',
            '    0: 1 . . .',
            '    1: . 6 8 3',
        ])
        self.assertEqual(table.ranks(), [1, 6, 8, 3])
        self.assertEqual(table[(2, 4)], 0)
        self.assertEqual(str(BettiTable()), 'total:')
