"""
Serializer fields used by the problem file and result schemas.
"""
from typing import Any, Dict

from rest_framework.fields import CharField, Field
from rest_framework_dataclasses.fields import UnionField

from betti_characters.exceptions import BettiCharactersError
from betti_characters.fields import FieldElement, FieldSpec
from betti_characters.parser import parse_field_element


class KindUnionField(UnionField):
    """
    Tagged union discriminated by a `kind` key. Every member dataclass declares its tag in a `kind` class variable.
    """
    discriminator_field_name = 'kind'
    default_error_messages = {
        'not_a_mapping': 'Expected an object with a "kind" key.',
    }

    def get_discriminator(self, tp: type) -> str:
        return getattr(tp, 'kind', tp.__name__)

    def bind(self, field_name: str, parent: Any) -> None:
        super().bind(field_name, parent)
        # Members need a parent chain up to the root serializer to see its context.
        for child in self.child_fields.values():
            child.bind(field_name='', parent=self)

    def to_internal_value(self, data: Dict[str, Any]) -> Any:
        if not isinstance(data, dict):
            self.fail('not_a_mapping')
        return super().to_internal_value(data)


class FieldElementField(Field):
    """
    A field element, written as an expression in the generator of the coefficient field ("a+a^6", "-1/2").

    Parsing needs the `FieldSpec` in the serializer context under the key `field`; the rational field is assumed
    when there is none.
    """
    default_error_messages = {
        'invalid': 'Not a valid field element: {message}',
    }

    def to_internal_value(self, data: Any) -> FieldElement:
        if isinstance(data, int) and not isinstance(data, bool):
            data = str(data)
        data = CharField().run_validation(data)
        field = self.context.get('field') or FieldSpec.rational()
        try:
            return parse_field_element(data, field)
        except BettiCharactersError as error:
            self.fail('invalid', message=str(error))

    def to_representation(self, value: FieldElement) -> str:
        return str(value)
