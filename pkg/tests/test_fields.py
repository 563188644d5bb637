from unittest import TestCase

from rest_framework.exceptions import ValidationError
from rest_framework.serializers import Serializer

from betti_characters import schema
from betti_characters.fields import FieldSpec
from betti_characters.schema import SchemaSerializer
from betti_characters.schema_fields import FieldElementField, KindUnionField


class FieldElementFieldTest(TestCase):
    def bound(self, field_spec):
        field = FieldElementField()
        field.bind('value', Serializer(context={'field': field_spec}))
        return field

    def test_rational_by_default(self):
        field = FieldElementField()
        self.assertEqual(field.to_internal_value('-3/6'), FieldSpec.rational().from_rational(-1) / 2)
        self.assertEqual(field.to_internal_value(4), FieldSpec.rational().from_rational(4))
        self.assertEqual(field.to_representation(field.to_internal_value('2/4')), '1/2')

    def test_field_from_context(self):
        spec = FieldSpec.cyclotomic(7)
        field = self.bound(spec)
        a = spec.gen()
        value = field.to_internal_value('a+a^6')
        self.assertEqual(value, a + a ** 6)
        self.assertEqual(field.to_representation(value), 'a+a^6')

    def test_invalid(self):
        field = FieldElementField()
        for data in ['a+1', '1/0', '', True, ['1']]:
            with self.subTest(data=data), self.assertRaises(ValidationError):
                field.to_internal_value(data)

        with self.assertRaises(ValidationError) as context:
            field.to_internal_value('2*')
        self.assertTrue(str(context.exception.detail[0]).startswith('Not a valid field element: '))


class KindUnionFieldTest(TestCase):
    def setUp(self):
        self.field = KindUnionField({
            schema.QuotientModule: SchemaSerializer(dataclass=schema.QuotientModule),
            schema.SubquotientModule: SchemaSerializer(dataclass=schema.SubquotientModule),
        })

    def test_discriminator(self):
        self.assertEqual(self.field.type_mapping, {
            schema.QuotientModule: 'quotient',
            schema.SubquotientModule: 'subquotient',
        })

    def test_internal_value(self):
        self.assertEqual(self.field.to_internal_value({'kind': 'quotient', 'ideal': 'I'}),
                         schema.QuotientModule(ideal='I'))
        self.assertEqual(self.field.to_internal_value({'kind': 'subquotient', 'denominator': 'B'}),
                         schema.SubquotientModule(denominator='B'))

    def test_representation(self):
        self.assertEqual(dict(self.field.to_representation(schema.SubquotientModule('B', 'A'))),
                         {'kind': 'subquotient', 'denominator': 'B', 'numerator': 'A'})

    def test_invalid(self):
        for data in ['quotient', ['I'], {'ideal': 'I'}, {'kind': 'kernel', 'ideal': 'I'}]:
            with self.subTest(data=data), self.assertRaises(ValidationError):
                self.field.to_internal_value(data)
