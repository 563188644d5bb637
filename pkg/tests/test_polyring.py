from fractions import Fraction
from unittest import TestCase

from betti_characters.exceptions import GradingError, InternalInvariantError, UsageError
from betti_characters.fields import FieldSpec
from betti_characters.polyring import (
    LEX, Elimination, FreeModule, LinearSubstitution, PolyMatrix, RingContext, hessian_det_scaled, jacobian, minors
)


class RingContextTest(TestCase):
    def test_validation(self):
        with self.assertRaises(UsageError):
            RingContext(FieldSpec.rational(), ())
        with self.assertRaises(UsageError):
            RingContext(FieldSpec.rational(), ('x', 'x'))
        with self.assertRaises(UsageError):
            RingContext(FieldSpec.cyclotomic(7), ('a', 'b'))

    def test_monomials_of_degree(self):
        ring = RingContext(FieldSpec.rational(), ('x', 'y', 'z'))
        rendered = [ring.render_monomial(m) for m in ring.monomials_of_degree(2)]
        self.assertEqual(rendered, ['x^2', 'x*y', 'y^2', 'x*z', 'y*z', 'z^2'])
        self.assertEqual(len(ring.monomials_of_degree(4)), 15)
        self.assertEqual(ring.monomials_of_degree(0), [(0, 0, 0)])
        self.assertEqual(ring.monomials_of_degree(-1), [])

    def test_str(self):
        self.assertEqual(str(RingContext(FieldSpec.rational(), ('x', 'y'))), 'QQ[x,y]')


class PolynomialTest(TestCase):
    def setUp(self):
        self.ring = RingContext(FieldSpec.rational(), ('x', 'y', 'z'))
        self.x, self.y, self.z = self.ring.gens()

    def test_leading_terms(self):
        f = self.x * self.z + self.y ** 2
        self.assertEqual(f.leading_term()[1], (0, 2, 0))
        lex = self.ring.with_order(LEX)
        self.assertEqual(lex.parse('x*z + y^2').leading_term()[1], (1, 0, 1))
        elimination = self.ring.with_order(Elimination(block=1))
        self.assertEqual(elimination.parse('y^3 + x*z').leading_term()[1], (1, 0, 1))
        with self.assertRaises(UsageError):
            self.ring.zero().leading_term()

    def test_arithmetic(self):
        f = (self.x + self.y) * (self.x - self.y)
        self.assertEqual(f, self.x ** 2 - self.y ** 2)
        self.assertEqual(f - f, 0)
        self.assertEqual(1 - self.x, -(self.x - 1))
        self.assertEqual((2 * self.x) / 4, self.x * Fraction(1, 2))
        self.assertEqual(self.x ** 0, 1)
        with self.assertRaises(UsageError):
            self.x / self.y
        with self.assertRaises(UsageError):
            self.x ** -1

    def test_rings_do_not_mix(self):
        other = RingContext(FieldSpec.rational(), ('u', 'v'))
        with self.assertRaises(UsageError):
            self.x + other.variable('u')

    def test_inspection(self):
        f = self.ring.parse('x^2*y + 3*z^3 - 2')
        self.assertEqual(f.degree, 3)
        self.assertFalse(f.is_homogeneous())
        self.assertEqual(f.homogeneous_component(3), self.ring.parse('x^2*y + 3*z^3'))
        self.assertEqual(f.constant_term(), -2)
        self.assertEqual(f.evaluate([1, 2, 3]), 81)
        self.assertIsNone(self.ring.zero().degree)
        self.assertTrue(self.ring.constant(5).is_constant())

    def test_derivative(self):
        f = self.ring.parse('x^2*y + y*z^3')
        self.assertEqual(f.derivative('x'), 2 * self.x * self.y)
        self.assertEqual(f.derivative(2), 3 * self.y * self.z ** 2)

    def test_divide_exact(self):
        f = self.x ** 2 - self.y ** 2
        self.assertEqual(f.divide_exact(self.x + self.y), self.x - self.y)
        with self.assertRaises(InternalInvariantError):
            (self.x ** 2 + self.y ** 2).divide_exact(self.x + self.y)

    def test_str(self):
        self.assertEqual(str(self.ring.parse('(x+y)^2')), 'x^2+2*x*y+y^2')
        self.assertEqual(str(self.ring.zero()), '0')
        ring = RingContext(FieldSpec.cyclotomic(3, 'w'), ('x',))
        self.assertEqual(str(ring.parse('(w+2)*x')), '(2+w)*x')
        self.assertEqual(str(ring.parse('(w+1)*x')), '-w^2*x')


class PolyMatrixTest(TestCase):
    def setUp(self):
        self.ring = RingContext(FieldSpec.rational(), ('x', 'y', 'z'))
        self.x, self.y, self.z = self.ring.gens()

    def test_grading(self):
        matrix = PolyMatrix.from_rows(self.ring, [[self.x, self.y ** 2]])
        self.assertEqual(matrix.source.degrees, (1, 2))
        self.assertEqual(matrix.target.degrees, (0,))
        self.assertEqual(matrix.shape, (1, 2))
        with self.assertRaises(GradingError):
            PolyMatrix(self.ring, FreeModule((0,)), FreeModule((1,)), [[self.x * self.y]])
        with self.assertRaises(GradingError):
            PolyMatrix.from_rows(self.ring, [[self.x + self.y * self.z]])
        with self.assertRaises(UsageError):
            PolyMatrix(self.ring, FreeModule((0, 0)), FreeModule((1,)), [[self.x]])

    def test_product(self):
        matrix = PolyMatrix.from_rows(self.ring, [[self.x, self.y], [self.z, self.x]], source_degrees=[1, 1])
        identity = PolyMatrix.identity(self.ring, matrix.target)
        self.assertEqual(identity * matrix, matrix)
        square = matrix * PolyMatrix.from_rows(self.ring, [[self.y], [-self.x]], target_degrees=[1, 1])
        self.assertEqual(square.column(0), [self.x * self.y - self.y * self.x, self.z * self.y - self.x ** 2])
        self.assertEqual(square.source.degrees, (2,))
        with self.assertRaises(UsageError):
            matrix * PolyMatrix.from_rows(self.ring, [[self.x]])

    def test_str(self):
        matrix = PolyMatrix.from_rows(self.ring, [[self.x, self.y ** 2]])
        self.assertEqual(str(matrix), 'matrix{{x, y^2}}')
        self.assertEqual(str(matrix.source), 'R^2')
        self.assertEqual(matrix.source.degree_labels(), ['{1}', '{2}'])


class LinearSubstitutionTest(TestCase):
    def setUp(self):
        self.ring = RingContext(FieldSpec.rational(), ('x', 'y'))
        self.x, self.y = self.ring.gens()
        self.swap = LinearSubstitution.from_matrix([[0, 1], [1, 0]], self.ring)
        self.shear = LinearSubstitution.from_matrix([[1, 1], [0, 1]], self.ring)

    def test_columns_are_images(self):
        self.assertEqual(list(self.shear.images), [self.x, self.x + self.y])
        self.assertEqual(self.shear.matrix, [[1, 1], [0, 1]])
        self.assertEqual(self.swap(self.x * self.y ** 2), self.y * self.x ** 2)

    def test_permutations(self):
        self.assertEqual(self.swap.permutation, (1, 0))
        self.assertEqual(self.swap.cycle_type, (2,))
        self.assertIsNone(self.shear.permutation)
        self.assertIsNone(self.shear.cycle_type)
        self.assertEqual(LinearSubstitution.identity(self.ring).cycle_type, (1, 1))

    def test_group_operations(self):
        inverse = self.shear.inverse()
        self.assertEqual(list(inverse.images), [self.x, self.y - self.x])
        self.assertTrue(self.shear.compose(inverse).is_identity())
        self.assertEqual(self.shear ** -1, inverse)
        self.assertEqual((self.shear ** 3).images[1], 3 * self.x + self.y)
        self.assertTrue((self.swap ** 2).is_identity())
        f = self.x * self.y + self.y ** 2
        self.assertEqual((self.swap @ self.shear)(f), self.swap(self.shear(f)))

    def test_singular(self):
        with self.assertRaises(UsageError):
            LinearSubstitution.from_matrix([[1, 1], [1, 1]], self.ring).inverse()

    def test_linear_images_only(self):
        with self.assertRaises(UsageError):
            LinearSubstitution(self.ring, [self.x * self.x, self.y])
        with self.assertRaises(UsageError):
            LinearSubstitution(self.ring, [self.x])


class DerivedObjectsTest(TestCase):
    def setUp(self):
        self.ring = RingContext(FieldSpec.rational(), ('x', 'y', 'z'))
        self.x, self.y, self.z = self.ring.gens()

    def test_jacobian(self):
        matrix = jacobian([self.x ** 2 * self.y, self.y ** 3])
        self.assertEqual(matrix.shape, (3, 2))
        self.assertEqual(matrix.column(0), [2 * self.x * self.y, self.x ** 2, self.ring.zero()])
        self.assertEqual(matrix.column(1), [self.ring.zero(), 3 * self.y ** 2, self.ring.zero()])
        self.assertEqual(matrix.source.degrees, (2, 2))
        with self.assertRaises(GradingError):
            jacobian([self.x + self.y ** 2])

    def test_hessian(self):
        f = self.x ** 3 + self.y ** 3 + self.z ** 3
        self.assertEqual(hessian_det_scaled(f, Fraction(1, 216)), self.x * self.y * self.z)

    def test_minors(self):
        matrix = PolyMatrix.from_rows(self.ring, [[self.x, self.y, self.z], [self.y, self.z, self.x]])
        self.assertEqual(minors(2, matrix), [
            self.x * self.z - self.y ** 2,
            self.x ** 2 - self.y * self.z,
            self.x * self.y - self.z ** 2,
        ])
        self.assertEqual(len(minors(1, matrix)), 6)
        with self.assertRaises(UsageError):
            minors(3, matrix)
