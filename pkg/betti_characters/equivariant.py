"""
Finite group actions on minimal free resolutions and on graded modules, and their characters.

Group elements act on the ring by degree preserving linear substitutions, one representative per conjugacy
class. On a resolution of R/I the action on F_0 is the identity; it is propagated to F_i by lifting
A_{i-1} * g(d_i) through d_i, and the trace on the degree j generators of F_i is the Betti character.
"""
from __future__ import annotations

import dataclasses
import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from betti_characters import linalg
from betti_characters.characters import BettiCharacterTable, Character, GradedCharacter
from betti_characters.exceptions import (
    ContainmentError, InvarianceError, NotInImageError, UnsupportedError, UsageError
)
from betti_characters.fields import FieldElement, FieldPolynomial, reverse_char_poly
from betti_characters.groebner import Ideal
from betti_characters.limits import check_deadline
from betti_characters.parser import parse_field_element, parse_polynomial
from betti_characters.polyring import LinearSubstitution, PolyMatrix, Polynomial, RingContext, Scalar
from betti_characters.resolution import ChainComplex
from betti_characters.types import Monomial, Partition

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class GroupElementSpec:
    name: str
    substitution: LinearSubstitution
    form: str = 'substitution'

    @classmethod
    def from_substitution_row(cls, name: str, images: Sequence[Union[str, Polynomial]],
                              ring: RingContext) -> GroupElementSpec:
        """
        x_j -> images[j], as in a one-row matrix of substitutions.
        """
        parsed = [parse_polynomial(image, ring) if isinstance(image, str) else image for image in images]
        return cls(name, LinearSubstitution(ring, parsed), 'substitution')

    @classmethod
    def from_matrix(cls, name: str, rows: Sequence[Sequence[Union[str, Scalar]]], ring: RingContext,
                    scale: Union[str, Scalar, None] = None) -> GroupElementSpec:
        """
        The substitution whose j-th column is the image of x_j, optionally multiplied by a scalar.
        """
        field = ring.field
        factor = field.one()
        if scale is not None:
            factor = parse_field_element(scale, field) if isinstance(scale, str) else field.coerce(scale)
        entries = [[(parse_field_element(x, field) if isinstance(x, str) else field.coerce(x)) * factor
                    for x in row] for row in rows]
        return cls(name, LinearSubstitution.from_matrix(entries, ring), 'matrix')

    @property
    def ring(self) -> RingContext:
        return self.substitution.ring

    @property
    def cycle_type(self) -> Optional[Partition]:
        return self.substitution.cycle_type

    def is_identity(self) -> bool:
        return self.substitution.is_identity()

    def __str__(self) -> str:
        return '{name} = {substitution}'.format(name=self.name, substitution=self.substitution)


@dataclasses.dataclass
class GroupActionSpec:
    """
    Class representatives of a finite group, with optional class sizes (aligned with the elements) and order.
    """
    elements: List[GroupElementSpec]
    class_sizes: Optional[List[int]] = None
    group_order: Optional[int] = None

    def __post_init__(self) -> None:
        if not self.elements:
            raise UsageError('A group action needs at least one element.')
        names = [e.name for e in self.elements]
        if len(set(names)) != len(names):
            raise UsageError("Group element names must be distinct, got {names}.".format(names=names))
        ring = self.elements[0].ring
        if any(e.ring.variables != ring.variables for e in self.elements):
            raise UsageError('Group elements act on different rings.')
        if self.class_sizes is not None:
            if len(self.class_sizes) != len(self.elements):
                raise UsageError('Class sizes must align with the group elements.')
            if any(size < 1 for size in self.class_sizes):
                raise UsageError('Class sizes must be positive.')
        if self.group_order is not None:
            if self.group_order < 1:
                raise UsageError('The group order must be positive.')
            if self.class_sizes is not None and sum(self.class_sizes) != self.group_order:
                logger.warning('Class sizes add up to %d, not to the group order %d',
                               sum(self.class_sizes), self.group_order)

    @property
    def ring(self) -> RingContext:
        return self.elements[0].ring

    @property
    def names(self) -> List[str]:
        return [e.name for e in self.elements]

    def __len__(self) -> int:
        return len(self.elements)

    def element(self, name: str) -> GroupElementSpec:
        for e in self.elements:
            if e.name == name:
                return e
        raise UsageError("Unknown group element '{name}'.".format(name=name))

    def cycle_types(self) -> List[Optional[Partition]]:
        return [e.cycle_type for e in self.elements]


def _check_invariant(ideal: Ideal, action: GroupActionSpec, label: str) -> None:
    for element in action.elements:
        if element.is_identity():
            continue
        for f in ideal.generators:
            check_deadline()
            if not ideal.contains(element.substitution(f)):
                raise InvarianceError(
                    "Element {name} maps the generator {f} of {label} outside of it.".format(
                        name=element.name, f=f, label=label)
                )


class ActionOnComplex:
    """
    A group acting on a minimal free resolution of R/I. Lifted matrices are computed on demand and cached per
    element.
    """

    def __init__(self, complex_: ChainComplex, action: GroupActionSpec, threads: int = 1,
                 reverse_lifts: bool = False):
        if complex_.ring.variables != action.ring.variables:
            raise UsageError('The group acts on a different ring.')
        if complex_.module(0).rank != 1:
            raise UnsupportedError('Actions are only supported on resolutions with F_0 of rank one.')
        self.complex = complex_
        self.action = action
        self.threads = max(1, threads)
        self.reverse_lifts = reverse_lifts
        self._lifted: Dict[str, List[PolyMatrix]] = {}
        self._lock = threading.Lock()
        if complex_.length:
            _check_invariant(Ideal(complex_.ring, complex_.differential(1).rows[0]), action, 'the ideal')

    @property
    def ring(self) -> RingContext:
        return self.complex.ring

    def propagate(self, element: GroupElementSpec, upto: Optional[int] = None) -> List[PolyMatrix]:
        """
        The matrices A_0, ..., A_upto with d_i * A_i = A_{i-1} * g(d_i).
        """
        upto = self.complex.length if upto is None else upto
        with self._lock:
            lifted = list(self._lifted.get(element.name, ()))
        if not lifted:
            lifted = [PolyMatrix.identity(self.ring, self.complex.module(0))]
        for i in range(len(lifted), upto + 1):
            check_deadline()
            differential = self.complex.differential(i)
            moved = lifted[i - 1] * element.substitution.apply_matrix(differential)
            try:
                lifted.append(self.complex.lifter(i, self.reverse_lifts).lift(moved))
            except NotInImageError as error:
                raise InvarianceError(
                    "The action of {name} does not lift to F_{i}: {error}".format(name=element.name, i=i, error=error)
                ) from error
            logger.debug('Lifted %s to homological degree %d', element.name, i)
        with self._lock:
            if len(lifted) > len(self._lifted.get(element.name, ())):
                self._lifted[element.name] = lifted
        return lifted[:upto + 1]

    def _propagate_all(self, upto: int) -> List[List[PolyMatrix]]:
        for i in range(1, upto + 1):
            self.complex.lifter(i, self.reverse_lifts).basis
        elements = self.action.elements
        if self.threads == 1 or len(elements) == 1:
            return [self.propagate(e, upto) for e in elements]
        with ThreadPoolExecutor(max_workers=self.threads) as executor:
            return list(executor.map(lambda e: self.propagate(e, upto), elements))

    def _graded_character(self, i: int, matrices: Sequence[PolyMatrix]) -> GradedCharacter:
        field = self.ring.field
        degrees = self.complex.module(i).degrees
        characters = {}
        for degree in sorted(set(degrees)):
            values = []
            for matrix in matrices:
                trace = field.zero()
                for k, d in enumerate(degrees):
                    if d == degree:
                        trace = trace + matrix.rows[k][k].constant_term()
                values.append(trace)
            characters[degree] = Character(tuple(values))
        return GradedCharacter(characters)

    def character(self, i: Optional[int] = None) -> Union[BettiCharacterTable, GradedCharacter]:
        if i is None:
            lifted = self._propagate_all(self.complex.length)
            return BettiCharacterTable({
                k: self._graded_character(k, [matrices[k] for matrices in lifted])
                for k in range(self.complex.length + 1)
            })
        if not 0 <= i <= self.complex.length:
            raise UsageError("Homological degree {i} outside 0..{n}.".format(i=i, n=self.complex.length))
        lifted = self._propagate_all(i)
        return self._graded_character(i, [matrices[i] for matrices in lifted])

    def __str__(self) -> str:
        return 'ChainComplex with {n} actors'.format(n=len(self.action))


class ActionOnGradedModule:
    """
    A group acting on A/B for homogeneous ideals B contained in A (A = R when no numerator is given).
    """

    def __init__(self, numerator: Optional[Ideal], denominator: Ideal, action: GroupActionSpec):
        ring = denominator.ring
        if action.ring.variables != ring.variables:
            raise UsageError('The group acts on a different ring.')
        if numerator is not None:
            if numerator.ring.variables != ring.variables:
                raise UsageError('Numerator and denominator belong to different rings.')
            for f in denominator.generators:
                if not numerator.contains(f):
                    raise ContainmentError(
                        "The generator {f} of the denominator does not lie in the numerator.".format(f=f)
                    )
            _check_invariant(numerator, action, 'the numerator')
        _check_invariant(denominator, action, 'the denominator')
        self.numerator = numerator
        self.denominator = denominator
        self.action = action
        self._bases: Dict[int, Tuple[List[Polynomial], List[Monomial]]] = {}

    @property
    def ring(self) -> RingContext:
        return self.denominator.ring

    def _vector(self, f: Polynomial, index: Dict[Monomial, int]) -> List[FieldElement]:
        vector = [self.ring.field.zero()] * len(index)
        for m, c in self.denominator.normal_form(f).term_dict.items():
            vector[index[m]] = c
        return vector

    def component_basis(self, degree: int) -> Tuple[List[Polynomial], List[Monomial]]:
        """
        Polynomials whose classes form a basis of the degree component, each with its pivot monomial.
        """
        if degree in self._bases:
            return self._bases[degree]
        ring = self.ring
        monomials = ring.monomials_of_degree(degree)
        index = {m: k for k, m in enumerate(monomials)}
        if self.numerator is None:
            spanning = [ring.monomial(m) for m in monomials]
        else:
            spanning = []
            for generator in self.numerator.generators:
                for m in ring.monomials_of_degree(degree - generator.degree):
                    spanning.append(ring.monomial(m) * generator)
        rows = []
        for f in spanning:
            check_deadline()
            rows.append(self._vector(f, index))
        echelon, pivots = linalg.row_reduce(rows)
        basis = [Polynomial(ring, {monomials[k]: c for k, c in enumerate(row) if c}) for row in echelon]
        result = (basis, [monomials[p] for p in pivots])
        self._bases[degree] = result
        return result

    def dimension(self, degree: int) -> int:
        return len(self.component_basis(degree)[0])

    def trace(self, degree: int, element: GroupElementSpec) -> FieldElement:
        basis, pivots = self.component_basis(degree)
        field = self.ring.field
        if element.is_identity():
            return field.from_rational(len(basis))
        total = field.zero()
        for b, pivot in zip(basis, pivots):
            total = total + self.denominator.normal_form(element.substitution(b)).coefficient(pivot)
        return total

    def character(self, degree: int) -> Character:
        return Character(tuple(self.trace(degree, e) for e in self.action.elements))

    def __str__(self) -> str:
        return 'Module with {n} actors'.format(n=len(self.action))


# Operations in function form

def action_on_complex(complex_: ChainComplex, action: GroupActionSpec, threads: int = 1,
                      reverse_lifts: bool = False) -> ActionOnComplex:
    return ActionOnComplex(complex_, action, threads, reverse_lifts)


def propagate(action: ActionOnComplex, element: Union[str, GroupElementSpec]) -> List[PolyMatrix]:
    if isinstance(element, str):
        element = action.action.element(element)
    return action.propagate(element)


def betti_characters(action: ActionOnComplex) -> BettiCharacterTable:
    result = action.character()
    assert isinstance(result, BettiCharacterTable)
    return result


def betti_characters_at(action: ActionOnComplex, i: int) -> GradedCharacter:
    result = action.character(i)
    assert isinstance(result, GradedCharacter)
    return result


def action_on_module(numerator: Optional[Ideal], denominator: Ideal,
                     action: GroupActionSpec) -> ActionOnGradedModule:
    return ActionOnGradedModule(numerator, denominator, action)


def module_character(module: ActionOnGradedModule, degrees: Union[int, Iterable[int]]) -> GradedCharacter:
    if isinstance(degrees, int):
        degrees = [degrees]
    return GradedCharacter({degree: module.character(degree) for degree in degrees})


def molien_series_sides(action: ActionOnComplex, module: ActionOnGradedModule, element: GroupElementSpec,
                        degree_bound: int) -> Tuple[FieldPolynomial, FieldPolynomial]:
    """
    Both sides of the equivariant Hilbert series identity, truncated at `degree_bound`: the characters of the
    graded pieces of R/I times det(1 - t*g), and the alternating sum of the Betti characters.
    """
    ring = action.ring
    field = ring.field
    if module.numerator is not None and not module.numerator.is_unit():
        raise UsageError('The Molien check needs the quotient ring R/I.')
    resolved = Ideal(ring, action.complex.differential(1).rows[0]) if action.complex.length else Ideal.zero(ring)
    if resolved != module.denominator:
        raise UsageError('The module is not the quotient resolved by the complex.')
    if degree_bound < 0:
        raise UsageError('The degree bound must be non-negative.')

    series = FieldPolynomial(field, [module.trace(j, element) for j in range(degree_bound + 1)])
    left = (series * reverse_char_poly(element.substitution.matrix, field)).truncate(degree_bound)

    lifted = action.propagate(element)
    coefficients = [field.zero()] * (degree_bound + 1)
    for i, matrix in enumerate(lifted):
        sign = 1 if i % 2 == 0 else -1
        for k, degree in enumerate(action.complex.module(i).degrees):
            if degree <= degree_bound:
                coefficients[degree] = coefficients[degree] + matrix.rows[k][k].constant_term() * sign
    return left, FieldPolynomial(field, coefficients)


def molien_check(action: ActionOnComplex, module: ActionOnGradedModule, element: Union[str, GroupElementSpec],
                 degree_bound: int) -> bool:
    if isinstance(element, str):
        element = action.action.element(element)
    left, right = molien_series_sides(action, module, element, degree_bound)
    if left != right:
        logger.debug('Molien identity fails for %s: %s != %s', element.name, left, right)
    return left == right
