"""
Running a validated problem: definitions are executed in order, and the resolution, the group actions and the
module are built the first time a task needs them.
"""
import functools
import logging
from typing import Callable, Dict, List, Optional, Union

from django.utils.functional import cached_property

from betti_characters import schema
from betti_characters.characters import Character, GradedCharacter
from betti_characters.equivariant import (
    ActionOnComplex, ActionOnGradedModule, GroupActionSpec, GroupElementSpec, molien_series_sides
)
from betti_characters.exceptions import InternalInvariantError, UsageError
from betti_characters.fields import FieldElement, FieldSpec
from betti_characters.groebner import (
    Ideal, ideal_intersection, ideal_power, ideal_product, ideal_quotient, saturate, symbolic_power
)
from betti_characters.parser import parse_field_element, parse_polynomial
from betti_characters.polyring import PolyMatrix, Polynomial, RingContext, hessian_det_scaled, jacobian, minors
from betti_characters.render import (
    BettiCharactersResult, BettiEntry, BettiTableResult, CharacterEntry, DecomposeResult, DecompositionEntry,
    ModuleCharacterEntry, ModuleCharacterResult, MolienCheckResult, MolienEntry, Report, TaskResult
)
from betti_characters.resolution import ChainComplex, resolve_quotient
from betti_characters.symmetric_group import align_to_classes, class_size, decompose, symmetric_group_table

logger = logging.getLogger(__name__)

Value = Union[Polynomial, PolyMatrix, Ideal]


def build_field(block: Union[schema.RationalField, schema.ExtensionField, schema.CyclotomicField]) -> FieldSpec:
    if isinstance(block, schema.CyclotomicField):
        return FieldSpec.cyclotomic(block.order, block.generator)
    if isinstance(block, schema.ExtensionField):
        univariate = RingContext(FieldSpec.rational(), (block.generator,))
        min_poly = parse_polynomial(block.min_poly, univariate)
        degree = min_poly.degree or 0
        coefficients = [min_poly.coefficient((k,)).to_fraction() for k in range(degree + 1)]
        return FieldSpec.extension(block.generator, coefficients, block.cyclotomic_order)
    return FieldSpec.rational()


class Session:
    """
    A problem brought to life. Betti tasks resolve R/B for the denominator B of the module, which is the module
    itself when it is a quotient of the ring.
    """

    def __init__(self, problem: schema.ProblemSpec, threads: int = 1, degree_bound: Optional[int] = None):
        self.problem = problem
        self.threads = threads
        self.degree_bound = degree_bound

    @cached_property
    def field(self) -> FieldSpec:
        return build_field(self.problem.field)

    @cached_property
    def ring(self) -> RingContext:
        return RingContext(self.field, tuple(self.problem.ring.variables))

    # Definitions

    @cached_property
    def namespace(self) -> Dict[str, Value]:
        namespace: Dict[str, Value] = {}
        for definition in self.problem.definitions:
            namespace[definition.name] = self._define(definition, namespace)
            logger.debug('Defined %s (%s)', definition.name, definition.kind)
        return namespace

    def _define(self, definition: schema.Definition, namespace: Dict[str, Value]) -> Value:
        ring = self.ring
        if isinstance(definition, schema.PolyDefinition):
            return parse_polynomial(definition.expression, ring)
        if isinstance(definition, schema.JacobianDefinition):
            return jacobian([namespace[name] for name in definition.of])
        if isinstance(definition, schema.HessianDefinition):
            return hessian_det_scaled(namespace[definition.of], parse_field_element(definition.scale, self.field))
        if isinstance(definition, schema.MinorsDefinition):
            return Ideal(ring, minors(definition.size, namespace[definition.of]))
        if isinstance(definition, schema.IdealDefinition):
            generators = []
            for text in definition.generators:
                value = namespace.get(text)
                generators.append(value if isinstance(value, Polynomial) else parse_polynomial(text, ring))
            return Ideal(ring, generators)
        if isinstance(definition, schema.PowerDefinition):
            return ideal_power(namespace[definition.of], definition.exponent)
        if isinstance(definition, schema.SymbolicPowerDefinition):
            return symbolic_power(namespace[definition.of], definition.exponent)
        if isinstance(definition, schema.ProductDefinition):
            return functools.reduce(ideal_product, [namespace[name] for name in definition.of])
        if isinstance(definition, schema.IntersectionDefinition):
            return functools.reduce(ideal_intersection, [namespace[name] for name in definition.of])
        if isinstance(definition, schema.QuotientDefinition):
            return ideal_quotient(namespace[definition.of], namespace[definition.by])
        if isinstance(definition, schema.SaturationDefinition):
            by = namespace[definition.by] if definition.by is not None else Ideal.irrelevant(ring)
            return saturate(namespace[definition.of], by)
        raise UsageError("Unknown definition kind '{kind}'.".format(kind=definition.kind))

    # The module and the group

    @cached_property
    def numerator(self) -> Optional[Ideal]:
        module = self.problem.module
        if isinstance(module, schema.SubquotientModule) and module.numerator is not None:
            return self.namespace[module.numerator]
        return None

    @cached_property
    def denominator(self) -> Ideal:
        module = self.problem.module
        name = module.ideal if isinstance(module, schema.QuotientModule) else module.denominator
        return self.namespace[name]

    @cached_property
    def group(self) -> GroupActionSpec:
        block = self.problem.group
        if block is None:
            raise UsageError('The problem has no group.')
        built: Dict[str, GroupElementSpec] = {}
        for element in block.elements:
            if isinstance(element, schema.SubstitutionElement):
                built[element.name] = GroupElementSpec.from_substitution_row(element.name, element.images, self.ring)
            elif isinstance(element, schema.MatrixElement):
                built[element.name] = GroupElementSpec.from_matrix(element.name, element.rows, self.ring,
                                                                   element.scale)
            else:
                power = built[element.of].substitution ** element.exponent
                built[element.name] = GroupElementSpec(element.name, power, 'power')
        return GroupActionSpec(list(built.values()), block.class_sizes, block.group_order)

    @cached_property
    def complex(self) -> ChainComplex:
        return resolve_quotient(self.denominator)

    @cached_property
    def complex_action(self) -> ActionOnComplex:
        return ActionOnComplex(self.complex, self.group, self.threads)

    @cached_property
    def module_action(self) -> ActionOnGradedModule:
        return ActionOnGradedModule(self.numerator, self.denominator, self.group)

    @cached_property
    def quotient_action(self) -> ActionOnGradedModule:
        if self.numerator is None:
            return self.module_action
        return ActionOnGradedModule(None, self.denominator, self.group)

    # Tasks

    def run(self, task: schema.Task) -> TaskResult:
        handlers: Dict[type, Callable] = {
            schema.BettiTableTask: self._betti_table,
            schema.BettiCharactersTask: self._betti_characters,
            schema.ModuleCharacterTask: self._module_character,
            schema.MolienCheckTask: self._molien_check,
            schema.DecomposeTask: self._decompose,
        }
        logger.info('Running task %s', task.kind)
        result = handlers[type(task)](task)
        logger.info('Finished task %s', task.kind)
        return result

    def run_all(self, check_molien: bool = False) -> Report:
        results = [self.run(task) for task in self.problem.tasks]
        if check_molien and not any(isinstance(task, schema.MolienCheckTask) for task in self.problem.tasks):
            if self.problem.group is None:
                raise UsageError('The Molien check needs a group.')
            results.append(self.run(schema.MolienCheckTask()))
        return Report(results)

    def _betti_table(self, task: schema.BettiTableTask) -> BettiTableResult:
        table = self.complex.betti_table()
        entries = [BettiEntry(i, j, count) for (i, j), count in sorted(table.entries.items())]
        return BettiTableResult(self.complex.ranks, entries)

    def _character_values(self, character: Character) -> Dict[str, FieldElement]:
        return dict(zip(self.group.names, character.values))

    def _graded_rows(self, task_degree: Optional[int]) -> Dict[int, GradedCharacter]:
        if task_degree is None:
            return dict(self.complex_action.character().items())
        return {task_degree: self.complex_action.character(task_degree)}

    def _betti_characters(self, task: schema.BettiCharactersTask) -> BettiCharactersResult:
        entries = [
            CharacterEntry(i, j, self._character_values(character))
            for i, graded in self._graded_rows(task.homological_degree).items()
            for j, character in graded.items()
        ]
        return BettiCharactersResult(self.group.names, entries, task.homological_degree)

    def _module_degrees(self, task: schema.ModuleCharacterTask) -> List[int]:
        degrees = set(task.degrees)
        if task.degree_range is not None:
            degrees.update(range(task.degree_range.low, task.degree_range.high + 1))
        if not degrees:
            if self.degree_bound is None:
                raise UsageError('module-character needs degrees, a degree range or --degree-bound.')
            degrees.update(range(self.degree_bound + 1))
        return sorted(degrees)

    def _module_character(self, task: schema.ModuleCharacterTask) -> ModuleCharacterResult:
        module = self.module_action
        entries = [
            ModuleCharacterEntry(degree, module.dimension(degree), self._character_values(module.character(degree)))
            for degree in self._module_degrees(task)
        ]
        return ModuleCharacterResult(self.group.names, entries)

    def _molien_check(self, task: schema.MolienCheckTask) -> MolienCheckResult:
        bound = task.bound if task.bound is not None else self.degree_bound
        if bound is None:
            bound = max((d for module in self.complex.modules for d in module.degrees), default=0) + 2
        checks = []
        for element in self.group.elements:
            series, alternating = molien_series_sides(self.complex_action, self.quotient_action, element, bound)
            if series != alternating:
                raise InternalInvariantError(
                    "The Molien identity fails for {name}: {a} != {b}.".format(name=element.name, a=series,
                                                                               b=alternating)
                )
            checks.append(MolienEntry(element.name, True, str(series), str(alternating)))
        return MolienCheckResult(bound, checks)

    def _decompose(self, task: schema.DecomposeTask) -> DecomposeResult:
        table = symmetric_group_table(self.ring.nvars)
        cycle_types = self.group.cycle_types()
        if self.group.class_sizes is not None:
            for cycle_type, size in zip(cycle_types, self.group.class_sizes):
                if cycle_type is not None and size != class_size(cycle_type):
                    logger.warning('Class size %d given for cycle type %s, expected %d',
                                   size, cycle_type, class_size(cycle_type))
        labels = {shape: '(' + ','.join(str(k) for k in shape) + ')' for shape in table.shapes}
        entries = []
        for i, graded in self._graded_rows(task.homological_degree).items():
            for j, character in graded.items():
                multiplicities = decompose(align_to_classes(character, cycle_types, table), table)
                entries.append(DecompositionEntry(i, j, {labels[s]: m for s, m in multiplicities.items()}))
        return DecomposeResult([labels[s] for s in table.shapes], entries)
