"""
Problem files.

A problem file is a JSON document describing a coefficient field, a polynomial ring, a list of named definitions
(polynomials, matrices and ideals, each built from earlier ones), the module to study, an optional group given by
class representatives, and the tasks to run. The document is validated into a `ProblemSpec` by
`ProblemSerializer`; tagged unions use a `kind` key.
"""
import dataclasses
from typing import ClassVar, Dict, List, Literal, Optional, Union

from rest_framework import serializers
from rest_framework_dataclasses.serializers import DataclassSerializer

from betti_characters.fields import FieldElement
from betti_characters.schema_fields import FieldElementField, KindUnionField


# Coefficient fields

@dataclasses.dataclass
class RationalField:
    kind: ClassVar[str] = 'rational'


@dataclasses.dataclass
class ExtensionField:
    """
    Q[generator]/(min_poly), with the minimal polynomial written as an expression in the generator.
    """
    kind: ClassVar[str] = 'extension'
    generator: str
    min_poly: str
    cyclotomic_order: Optional[int] = None


@dataclasses.dataclass
class CyclotomicField:
    kind: ClassVar[str] = 'cyclotomic'
    order: int
    generator: str = 'a'


@dataclasses.dataclass
class RingBlock:
    variables: List[str]


# Definitions

@dataclasses.dataclass
class PolyDefinition:
    kind: ClassVar[str] = 'poly'
    name: str
    expression: str


@dataclasses.dataclass
class JacobianDefinition:
    kind: ClassVar[str] = 'jacobian-of'
    name: str
    of: List[str]


@dataclasses.dataclass
class HessianDefinition:
    kind: ClassVar[str] = 'hessian-det-scaled'
    name: str
    of: str
    scale: str = '1'


@dataclasses.dataclass
class MinorsDefinition:
    kind: ClassVar[str] = 'minors'
    name: str
    size: int
    of: str


@dataclasses.dataclass
class IdealDefinition:
    """
    Generators are names of defined polynomials, or expressions in the ring variables.
    """
    kind: ClassVar[str] = 'ideal'
    name: str
    generators: List[str]


@dataclasses.dataclass
class PowerDefinition:
    kind: ClassVar[str] = 'power'
    name: str
    of: str
    exponent: int


@dataclasses.dataclass
class SymbolicPowerDefinition:
    kind: ClassVar[str] = 'symbolic-power'
    name: str
    of: str
    exponent: int


@dataclasses.dataclass
class ProductDefinition:
    kind: ClassVar[str] = 'product'
    name: str
    of: List[str]


@dataclasses.dataclass
class IntersectionDefinition:
    kind: ClassVar[str] = 'intersection'
    name: str
    of: List[str]


@dataclasses.dataclass
class QuotientDefinition:
    kind: ClassVar[str] = 'quotient'
    name: str
    of: str
    by: str


@dataclasses.dataclass
class SaturationDefinition:
    """
    Saturation by `by`, or by the irrelevant ideal when it is omitted.
    """
    kind: ClassVar[str] = 'saturation'
    name: str
    of: str
    by: Optional[str] = None


Definition = Union[
    PolyDefinition, JacobianDefinition, HessianDefinition, MinorsDefinition, IdealDefinition, PowerDefinition,
    SymbolicPowerDefinition, ProductDefinition, IntersectionDefinition, QuotientDefinition, SaturationDefinition,
]

# What each definition produces, and what the names it refers to must be.
POLYNOMIAL, MATRIX, IDEAL = 'polynomial', 'matrix', 'ideal'

DEFINITION_RESULTS: Dict[type, str] = {
    PolyDefinition: POLYNOMIAL,
    JacobianDefinition: MATRIX,
    HessianDefinition: POLYNOMIAL,
    MinorsDefinition: IDEAL,
    IdealDefinition: IDEAL,
    PowerDefinition: IDEAL,
    SymbolicPowerDefinition: IDEAL,
    ProductDefinition: IDEAL,
    IntersectionDefinition: IDEAL,
    QuotientDefinition: IDEAL,
    SaturationDefinition: IDEAL,
}


def definition_references(definition: Definition) -> Dict[str, List[str]]:
    """
    The names a definition refers to, grouped by the kind of object they must name.
    """
    if isinstance(definition, JacobianDefinition):
        return {POLYNOMIAL: list(definition.of)}
    if isinstance(definition, HessianDefinition):
        return {POLYNOMIAL: [definition.of]}
    if isinstance(definition, MinorsDefinition):
        return {MATRIX: [definition.of]}
    if isinstance(definition, (PowerDefinition, SymbolicPowerDefinition)):
        return {IDEAL: [definition.of]}
    if isinstance(definition, (ProductDefinition, IntersectionDefinition)):
        return {IDEAL: list(definition.of)}
    if isinstance(definition, QuotientDefinition):
        return {IDEAL: [definition.of, definition.by]}
    if isinstance(definition, SaturationDefinition):
        return {IDEAL: [definition.of] + ([definition.by] if definition.by is not None else [])}
    return {}


# Modules

@dataclasses.dataclass
class QuotientModule:
    """
    R/I.
    """
    kind: ClassVar[str] = 'quotient'
    ideal: str


@dataclasses.dataclass
class SubquotientModule:
    """
    A/B for ideals B inside A; A is the whole ring when no numerator is given.
    """
    kind: ClassVar[str] = 'subquotient'
    denominator: str
    numerator: Optional[str] = None


# Group elements

@dataclasses.dataclass
class SubstitutionElement:
    """
    The images of the variables, in order.
    """
    kind: ClassVar[str] = 'substitution'
    name: str
    images: List[str]


@dataclasses.dataclass
class MatrixElement:
    """
    A matrix whose j-th column is the image of the j-th variable, optionally multiplied by a scalar.
    """
    kind: ClassVar[str] = 'matrix'
    name: str
    rows: List[List[str]]
    scale: Optional[str] = None


@dataclasses.dataclass
class PowerElement:
    kind: ClassVar[str] = 'power'
    name: str
    of: str
    exponent: int


GroupElement = Union[SubstitutionElement, MatrixElement, PowerElement]


@dataclasses.dataclass
class GroupBlock:
    elements: List[GroupElement]
    class_sizes: Optional[List[int]] = None
    group_order: Optional[int] = None


# Tasks

@dataclasses.dataclass
class BettiTableTask:
    kind: ClassVar[str] = 'betti-table'


@dataclasses.dataclass
class BettiCharactersTask:
    kind: ClassVar[str] = 'betti-characters'
    homological_degree: Optional[int] = None


@dataclasses.dataclass
class DegreeRange:
    low: int
    high: int


@dataclasses.dataclass
class ModuleCharacterTask:
    """
    Characters on the listed degrees and on every degree of the range; with neither, on the degrees up to the
    degree bound given on the command line.
    """
    kind: ClassVar[str] = 'module-character'
    degrees: List[int] = dataclasses.field(default_factory=list)
    degree_range: Optional[DegreeRange] = None


@dataclasses.dataclass
class MolienCheckTask:
    kind: ClassVar[str] = 'molien-check'
    bound: Optional[int] = None


@dataclasses.dataclass
class DecomposeTask:
    kind: ClassVar[str] = 'decompose'
    against: Literal['symmetric-group'] = 'symmetric-group'
    homological_degree: Optional[int] = None


Task = Union[BettiTableTask, BettiCharactersTask, ModuleCharacterTask, MolienCheckTask, DecomposeTask]

GROUP_TASKS = (BettiCharactersTask, ModuleCharacterTask, MolienCheckTask, DecomposeTask)


@dataclasses.dataclass
class ProblemSpec:
    field: Union[RationalField, ExtensionField, CyclotomicField]
    ring: RingBlock
    module: Union[QuotientModule, SubquotientModule]
    tasks: List[Task]
    definitions: List[Definition] = dataclasses.field(default_factory=list)
    group: Optional[GroupBlock] = None
    description: str = ''


# Serializers

class SchemaSerializer(DataclassSerializer):
    """
    Dataclass serializer with `kind`-tagged unions and field elements, used for problem files and results alike.
    """
    serializer_field_mapping = {
        **DataclassSerializer.serializer_field_mapping,
        FieldElement: FieldElementField,
    }
    serializer_union_field = KindUnionField

    @property
    def serializer_dataclass_field(self):
        return SchemaSerializer


class ProblemSerializer(SchemaSerializer):
    class Meta:
        dataclass = ProblemSpec

    def validate_tasks(self, tasks):
        if not tasks:
            raise serializers.ValidationError('At least one task is required.')
        return tasks

    def validate_ring(self, ring):
        if not ring.variables:
            raise serializers.ValidationError({'variables': 'At least one variable is required.'})
        if len(set(ring.variables)) != len(ring.variables):
            raise serializers.ValidationError({'variables': 'Variable names must be distinct.'})
        return ring

    def validate(self, problem: ProblemSpec) -> ProblemSpec:
        reserved = set(problem.ring.variables)
        if not isinstance(problem.field, RationalField):
            reserved.add(problem.field.generator)
        defined = self._validate_definitions(problem.definitions, reserved)
        self._validate_module(problem.module, defined)
        if problem.group is not None:
            self._validate_group(problem.group)
        if problem.group is None and any(isinstance(task, GROUP_TASKS) for task in problem.tasks):
            raise serializers.ValidationError({'group': 'The tasks need a group.'})
        for task in problem.tasks:
            if isinstance(task, ModuleCharacterTask):
                if any(degree < 0 for degree in task.degrees):
                    raise serializers.ValidationError({'tasks': 'Degrees must be non-negative.'})
                if task.degree_range is not None and not 0 <= task.degree_range.low <= task.degree_range.high:
                    raise serializers.ValidationError({'tasks': 'Degree ranges need 0 <= low <= high.'})
            if isinstance(task, MolienCheckTask) and task.bound is not None and task.bound < 0:
                raise serializers.ValidationError({'tasks': 'The degree bound must be non-negative.'})
        return problem

    @staticmethod
    def _validate_definitions(definitions: List[Definition], reserved: set) -> Dict[str, str]:
        defined: Dict[str, str] = {}
        for definition in definitions:
            for expected, names in definition_references(definition).items():
                for name in names:
                    if name not in defined:
                        raise serializers.ValidationError({'definitions': "'{name}' is used before it is defined."
                                                          .format(name=name)})
                    if defined[name] != expected:
                        raise serializers.ValidationError({'definitions': "'{name}' is a {actual}, not a {expected}."
                                                          .format(name=name, actual=defined[name],
                                                                  expected=expected)})
            if definition.name in defined or definition.name in reserved:
                raise serializers.ValidationError({'definitions': "The name '{name}' is already taken."
                                                  .format(name=definition.name)})
            defined[definition.name] = DEFINITION_RESULTS[type(definition)]
        return defined

    @staticmethod
    def _validate_module(module: Union[QuotientModule, SubquotientModule], defined: Dict[str, str]) -> None:
        if isinstance(module, QuotientModule):
            names = [module.ideal]
        else:
            names = [module.denominator] + ([module.numerator] if module.numerator is not None else [])
        for name in names:
            if defined.get(name) != IDEAL:
                raise serializers.ValidationError({'module': "'{name}' is not a defined ideal.".format(name=name)})

    @staticmethod
    def _validate_group(group: GroupBlock) -> None:
        if not group.elements:
            raise serializers.ValidationError({'group': 'At least one element is required.'})
        seen = set()
        for element in group.elements:
            if element.name in seen:
                raise serializers.ValidationError({'group': "Element '{name}' is listed twice."
                                                  .format(name=element.name)})
            if isinstance(element, PowerElement) and element.of not in seen:
                raise serializers.ValidationError({'group': "Element '{name}' is used before it is defined."
                                                  .format(name=element.of)})
            if isinstance(element, MatrixElement) and len({len(row) for row in element.rows}) > 1:
                raise serializers.ValidationError({'group': "The rows of '{name}' have different lengths."
                                                  .format(name=element.name)})
            seen.add(element.name)
        if group.class_sizes is not None and len(group.class_sizes) != len(group.elements):
            raise serializers.ValidationError({'group': 'Class sizes must align with the elements.'})
