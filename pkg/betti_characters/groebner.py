"""
Groebner bases of ideals and of submodules of graded free modules.

Module elements ("vectors") are dictionaries from terms `(position, exponents)` to nonzero coefficients; an ideal is
a submodule of the rank one free module, with every term at position 0. Every basis element is kept with leading
coefficient one.
"""
from __future__ import annotations

import heapq
import itertools
import logging
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from django.utils.functional import cached_property

from betti_characters.exceptions import (
    ContainmentError, GradingError, InternalInvariantError, NotInImageError, UsageError
)
from betti_characters.fields import FieldElement
from betti_characters.limits import check_deadline
from betti_characters.polyring import (
    Elimination, FreeModule, MonomialOrder, PolyMatrix, Polynomial, RingContext, Terms, monomial_coprime,
    monomial_div, monomial_divides, monomial_lcm, monomial_mul
)
from betti_characters.types import Monomial, ModuleTerm

logger = logging.getLogger(__name__)

Vector = Dict[ModuleTerm, FieldElement]


# Module orders. As for monomial orders, a larger key is a larger term.

class ModuleOrder:
    def __init__(self) -> None:
        self._keys: Dict[ModuleTerm, tuple] = {}

    def key(self, term: ModuleTerm) -> tuple:
        result = self._keys.get(term)
        if result is None:
            result = self._keys[term] = self.compute_key(term)
        return result

    def compute_key(self, term: ModuleTerm) -> tuple:
        raise NotImplementedError()


class PositionOverTerm(ModuleOrder):
    """
    Lower positions first, then the monomial order. On the rank one module this is the monomial order itself.
    """

    def __init__(self, base: MonomialOrder):
        super().__init__()
        self.base = base

    def compute_key(self, term: ModuleTerm) -> tuple:
        position, monomial = term
        return -position, self.base.key(monomial)


class GradedTermOverPosition(ModuleOrder):
    """
    Compare shifted degrees first, then monomials, then prefer lower positions.
    """

    def __init__(self, base: MonomialOrder, shifts: Sequence[int]):
        super().__init__()
        self.base = base
        self.shifts = tuple(shifts)

    def compute_key(self, term: ModuleTerm) -> tuple:
        position, monomial = term
        return sum(monomial) + self.shifts[position], self.base.key(monomial), -position


class SchreyerOrder(ModuleOrder):
    """
    The order induced on a free module mapping its j-th generator onto an element with leading term
    `leads[j]`: compare images of leading terms, then prefer lower positions.
    """

    def __init__(self, previous: ModuleOrder, leads: Sequence[ModuleTerm]):
        super().__init__()
        self.previous = previous
        self.leads = tuple(leads)

    def compute_key(self, term: ModuleTerm) -> tuple:
        j, monomial = term
        position, lead = self.leads[j]
        return self.previous.key((position, monomial_mul(lead, monomial))), -j


# Vector arithmetic

def vector_add_in_place(target: Vector, vector: Vector, scale: FieldElement,
                        shift: Optional[Monomial] = None) -> None:
    """
    target += scale * x^shift * vector.
    """
    for (position, monomial), c in vector.items():
        term = (position, monomial if shift is None else monomial_mul(monomial, shift))
        value = c * scale
        current = target.get(term)
        if current is None:
            target[term] = value
        else:
            value = current + value
            if value:
                target[term] = value
            else:
                del target[term]


def combine(vectors: Sequence[Vector], combination: Vector) -> Vector:
    """
    The vector sum of c * x^m * vectors[k] over the terms ((k, m), c) of `combination`.
    """
    result: Vector = {}
    for (k, monomial), c in combination.items():
        vector_add_in_place(result, vectors[k], c, monomial)
    return result


def leading_term(vector: Vector, order: ModuleOrder) -> ModuleTerm:
    return max(vector, key=order.key)


def vector_degree(vector: Vector, shifts: Sequence[int]) -> int:
    position, monomial = next(iter(vector))
    return sum(monomial) + shifts[position]


def polynomial_to_vector(f: Polynomial, position: int = 0) -> Vector:
    return {(position, m): c for m, c in f.term_dict.items()}


def vector_to_polynomial(vector: Vector, ring: RingContext) -> Polynomial:
    return Polynomial(ring, {m: c for (_, m), c in vector.items()})


def column_vectors(matrix: PolyMatrix) -> List[Vector]:
    result = []
    for column in matrix.columns():
        vector: Vector = {}
        for k, entry in enumerate(column):
            for m, c in entry.term_dict.items():
                vector[(k, m)] = c
        result.append(vector)
    return result


def vectors_to_matrix(vectors: Sequence[Vector], ring: RingContext, target: FreeModule,
                      source: FreeModule) -> PolyMatrix:
    rows: List[List[Terms]] = [[{} for _ in vectors] for _ in range(target.rank)]
    for j, vector in enumerate(vectors):
        for (k, m), c in vector.items():
            rows[k][j][m] = c
    return PolyMatrix(ring, target, source, [[Polynomial(ring, terms) for terms in row] for row in rows])


# Division

def divide(vector: Vector, elements: Sequence[Vector], leads: Sequence[ModuleTerm], order: ModuleOrder,
           reverse: bool = False) -> Tuple[Vector, Vector]:
    """
    Multivariate division by monic elements. Returns `(quotients, remainder)` with
    vector = combine(elements, quotients) + remainder, and no term of the remainder divisible by a leading term.
    Divisors are tried in the stored order, or backwards when `reverse` is set.
    """
    work = dict(vector)
    remainder: Vector = {}
    quotients: Vector = {}
    candidates = list(enumerate(leads))
    if reverse:
        candidates.reverse()
    by_position: Dict[int, List[Tuple[int, Monomial]]] = {}
    for k, (position, monomial) in candidates:
        by_position.setdefault(position, []).append((k, monomial))
    key = order.key

    while work:
        term = max(work, key=key)
        c = work[term]
        position, monomial = term
        for k, lead in by_position.get(position, ()):
            if monomial_divides(lead, monomial):
                shift = monomial_div(monomial, lead)
                vector_add_in_place(work, elements[k], -c, shift)
                quotient_term = (k, shift)
                value = quotients.get(quotient_term)
                quotients[quotient_term] = c if value is None else value + c
                break
        else:
            remainder[term] = c
            del work[term]
    return {t: c for t, c in quotients.items() if c}, remainder


def _s_vector_data(leads: Sequence[ModuleTerm], i: int, j: int) -> Tuple[Monomial, Monomial, Monomial]:
    lcm = monomial_lcm(leads[i][1], leads[j][1])
    return lcm, monomial_div(lcm, leads[i][1]), monomial_div(lcm, leads[j][1])


class GroebnerBasis:
    """
    A reduced Groebner basis of a submodule of a free module of rank `rank`, sorted by increasing leading term.
    When computed with tracking, `transition[l]` expresses element l in terms of the inputs:
    elements[l] == combine(inputs, transition[l]).
    """

    def __init__(self, ring: RingContext, rank: int, order: ModuleOrder, elements: List[Vector],
                 inputs: Sequence[Vector], transition: Optional[List[Vector]] = None):
        self.ring = ring
        self.rank = rank
        self.order = order
        self.elements = elements
        self.leads = [leading_term(e, order) for e in elements]
        self.inputs = list(inputs)
        self.transition = transition

    def __len__(self) -> int:
        return len(self.elements)

    def divide(self, vector: Vector, reverse: bool = False) -> Tuple[Vector, Vector]:
        return divide(vector, self.elements, self.leads, self.order, reverse)

    def reduce(self, vector: Vector) -> Vector:
        return self.divide(vector)[1]

    def normal_form(self, f: Polynomial) -> Polynomial:
        return vector_to_polynomial(self.reduce(polynomial_to_vector(f)), self.ring)

    def contains(self, vector: Vector) -> bool:
        return not self.reduce(vector)

    def polynomials(self) -> List[Polynomial]:
        if self.rank != 1:
            raise UsageError('Only a Groebner basis of an ideal consists of polynomials.')
        return [vector_to_polynomial(e, self.ring) for e in self.elements]

    def pair_syzygy(self, i: int, j: int) -> Vector:
        """
        The syzygy x^si e_i - x^sj e_j - sum q_k e_k from the standard representation of the S-vector of i and j.
        """
        return pair_syzygy(self.elements, self.leads, self.order, i, j)

    def is_groebner(self) -> bool:
        for i, j in itertools.combinations(range(len(self.elements)), 2):
            if self.leads[i][0] != self.leads[j][0]:
                continue
            _, si, sj = _s_vector_data(self.leads, i, j)
            s: Vector = {}
            vector_add_in_place(s, self.elements[i], self.ring.field.one(), si)
            vector_add_in_place(s, self.elements[j], -self.ring.field.one(), sj)
            if self.reduce(s):
                return False
        return True

    def is_reduced(self) -> bool:
        for k, element in enumerate(self.elements):
            if element[self.leads[k]] != 1:
                return False
            for l, (position, lead) in enumerate(self.leads):
                if l == k:
                    continue
                if any(p == position and monomial_divides(lead, m) for p, m in element):
                    return False
        return True


def pair_syzygy(elements: Sequence[Vector], leads: Sequence[ModuleTerm], order: ModuleOrder,
                i: int, j: int) -> Vector:
    _, si, sj = _s_vector_data(leads, i, j)
    one = elements[i][leads[i]]
    s: Vector = {}
    vector_add_in_place(s, elements[i], one, si)
    vector_add_in_place(s, elements[j], -one, sj)
    quotients, remainder = divide(s, elements, leads, order)
    if remainder:
        raise InternalInvariantError('S-vector of a Groebner basis has a nonzero remainder.')
    syzygy: Vector = {(i, si): one}
    vector_add_in_place(syzygy, {(j, sj): one}, -one)
    vector_add_in_place(syzygy, quotients, -one)
    return syzygy


def _monic(vector: Vector, order: ModuleOrder) -> Tuple[Vector, FieldElement]:
    inverse = vector[leading_term(vector, order)].inverse()
    return {t: c * inverse for t, c in vector.items()}, inverse


def compute_groebner_basis(ring: RingContext, rank: int, inputs: Sequence[Vector], order: ModuleOrder,
                           track: bool = False) -> GroebnerBasis:
    """
    Buchberger's algorithm with the normal selection strategy and both of Buchberger's criteria.
    """
    one = ring.field.one()
    elements: List[Vector] = []
    leads: List[ModuleTerm] = []
    transition: List[Vector] = []
    pairs: List[Tuple[int, int, int, int]] = []
    pending = set()
    counter = itertools.count()
    skipped = reduced_pairs = 0

    def insert(vector: Vector, combination: Vector) -> None:
        vector, inverse = _monic(vector, order)
        if track:
            combination = {t: c * inverse for t, c in combination.items()}
        new = len(elements)
        elements.append(vector)
        leads.append(leading_term(vector, order))
        transition.append(combination)
        position, lead = leads[new]
        for old in range(new):
            if leads[old][0] != position:
                continue
            lcm = monomial_lcm(leads[old][1], lead)
            heapq.heappush(pairs, (sum(lcm), next(counter), old, new))
            pending.add((old, new))

    def reduce_and_insert(vector: Vector, combination: Vector) -> bool:
        quotients, remainder = divide(vector, elements, leads, order)
        if not remainder:
            return False
        if track:
            combination = dict(combination)
            for (k, shift), c in quotients.items():
                vector_add_in_place(combination, transition[k], -c, shift)
        insert(remainder, combination)
        return True

    for index, vector in enumerate(inputs):
        if vector:
            reduce_and_insert(vector, {(index, (0,) * ring.nvars): one} if track else {})

    while pairs:
        check_deadline()
        _, _, i, j = heapq.heappop(pairs)
        pending.discard((i, j))
        position = leads[i][0]
        lcm, si, sj = _s_vector_data(leads, i, j)

        if rank == 1 and monomial_coprime(leads[i][1], leads[j][1]):
            skipped += 1
            continue
        chain = False
        for k in range(len(elements)):
            if k in (i, j) or leads[k][0] != position or not monomial_divides(leads[k][1], lcm):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                chain = True
                break
        if chain:
            skipped += 1
            continue

        reduced_pairs += 1
        s: Vector = {}
        vector_add_in_place(s, elements[i], one, si)
        vector_add_in_place(s, elements[j], -one, sj)
        combination: Vector = {}
        if track:
            vector_add_in_place(combination, transition[i], one, si)
            vector_add_in_place(combination, transition[j], -one, sj)
        reduce_and_insert(s, combination)

    basis = _finalize(ring, order, elements, leads, transition if track else None)
    logger.debug('Groebner basis with %d elements from %d inputs (%d pairs reduced, %d skipped)',
                 len(basis[0]), len(inputs), reduced_pairs, skipped)
    return GroebnerBasis(ring, rank, order, basis[0], inputs, basis[1])


def _finalize(ring: RingContext, order: ModuleOrder, elements: List[Vector], leads: List[ModuleTerm],
              transition: Optional[List[Vector]]) -> Tuple[List[Vector], Optional[List[Vector]]]:
    # Drop elements whose leading term is divisible by another leading term, then reduce the tails.
    keep = []
    for k, (position, lead) in enumerate(leads):
        redundant = any(
            l != k and leads[l][0] == position and monomial_divides(leads[l][1], lead)
            and (leads[l][1] != lead or l < k)
            for l in range(len(leads))
        )
        if not redundant:
            keep.append(k)
    keep.sort(key=lambda k: order.key(leads[k]))

    minimal = [elements[k] for k in keep]
    minimal_leads = [leads[k] for k in keep]
    result, result_transition = [], []
    for index, k in enumerate(keep):
        others = [e for l, e in enumerate(minimal) if l != index]
        other_leads = [t for l, t in enumerate(minimal_leads) if l != index]
        other_keys = [l for l in keep if l != k]
        quotients, remainder = divide(elements[k], others, other_leads, order)
        result.append(remainder)
        if transition is not None:
            combination = dict(transition[k])
            for (l, shift), c in quotients.items():
                vector_add_in_place(combination, transition[other_keys[l]], -c, shift)
            result_transition.append(combination)
    return result, (result_transition if transition is not None else None)


# Matrices: syzygies and lifting

def _column_order(matrix: PolyMatrix) -> GradedTermOverPosition:
    return GradedTermOverPosition(matrix.ring.order, matrix.target.degrees)


def syzygies(matrix: PolyMatrix) -> PolyMatrix:
    """
    A homogeneous generating set of the kernel of `matrix`, from the tracked Groebner basis of its columns.
    Not minimal.
    """
    ring = matrix.ring
    columns = column_vectors(matrix)
    order = _column_order(matrix)
    basis = compute_groebner_basis(ring, matrix.target.rank, columns, order, track=True)
    assert basis.transition is not None
    one = ring.field.one()
    zero_exponent = (0,) * ring.nvars

    candidates: List[Tuple[int, Vector]] = []
    for i, j in itertools.combinations(range(len(basis)), 2):
        if basis.leads[i][0] != basis.leads[j][0]:
            continue
        syzygy = basis.pair_syzygy(i, j)
        lcm, _, _ = _s_vector_data(basis.leads, i, j)
        degree = sum(lcm) + matrix.target.degrees[basis.leads[i][0]]
        candidates.append((degree, combine(basis.transition, syzygy)))
    for k, column in enumerate(columns):
        relation: Vector = {(k, zero_exponent): one}
        if column:
            quotients, remainder = basis.divide(column)
            if remainder:
                raise InternalInvariantError('A column does not reduce to zero against its own Groebner basis.')
            vector_add_in_place(relation, combine(basis.transition, quotients), -one)
        candidates.append((matrix.source.degrees[k], relation))

    vectors, degrees, seen = [], [], set()
    for degree, vector in candidates:
        if not vector:
            continue
        frozen = frozenset(vector.items())
        if frozen in seen:
            continue
        seen.add(frozen)
        vectors.append(vector)
        degrees.append(degree)
    return vectors_to_matrix(vectors, ring, matrix.source, FreeModule(tuple(degrees)))


class Lifter:
    """
    Solves D * X = B for the fixed matrix D, reusing one tracked Groebner basis of the columns of D.
    """

    def __init__(self, matrix: PolyMatrix, reverse: bool = False):
        self.matrix = matrix
        self.reverse = reverse

    @cached_property
    def basis(self) -> GroebnerBasis:
        columns = column_vectors(self.matrix)
        if self.reverse:
            columns = columns[::-1]
        basis = compute_groebner_basis(self.matrix.ring, self.matrix.target.rank, columns,
                                       _column_order(self.matrix), track=True)
        if self.reverse:
            last = len(columns) - 1
            assert basis.transition is not None
            basis.transition = [{(last - k, m): c for (k, m), c in t.items()} for t in basis.transition]
        return basis

    def lift(self, target: PolyMatrix) -> PolyMatrix:
        if target.target != self.matrix.target:
            raise UsageError('lift_through() needs matrices with the same target.')
        basis = self.basis
        assert basis.transition is not None
        solution = []
        for j, column in enumerate(column_vectors(target)):
            quotients, remainder = basis.divide(column, reverse=self.reverse)
            if remainder:
                raise NotInImageError(
                    "Column {j} does not lie in the image of the matrix.".format(j=j)
                )
            solution.append(combine(basis.transition, quotients))
        return vectors_to_matrix(solution, self.matrix.ring, self.matrix.source, target.source)


def lift_through(matrix: PolyMatrix, target: PolyMatrix, reverse: bool = False) -> PolyMatrix:
    return Lifter(matrix, reverse).lift(target)


# Ideals

def _ideal_order(ring: RingContext) -> PositionOverTerm:
    return PositionOverTerm(ring.order)


class Ideal:
    """
    A homogeneous ideal, given by generators. The reduced Groebner basis is computed on first use.
    """

    def __init__(self, ring: RingContext, generators: Iterable[Polynomial]):
        self.ring = ring
        self.generators: List[Polynomial] = []
        for f in generators:
            if f.ring.variables != ring.variables:
                raise UsageError('Ideal generators belong to a different ring.')
            if not f.is_homogeneous():
                raise GradingError("Ideal generator {f} is not homogeneous.".format(f=f))
            if f:
                self.generators.append(f)

    @classmethod
    def unit(cls, ring: RingContext) -> Ideal:
        return cls(ring, [ring.one()])

    @classmethod
    def zero(cls, ring: RingContext) -> Ideal:
        return cls(ring, [])

    @classmethod
    def irrelevant(cls, ring: RingContext) -> Ideal:
        return cls(ring, ring.gens())

    @cached_property
    def groebner_basis(self) -> GroebnerBasis:
        vectors = [polynomial_to_vector(f) for f in self.generators]
        return compute_groebner_basis(self.ring, 1, vectors, _ideal_order(self.ring))

    def normal_form(self, f: Polynomial) -> Polynomial:
        return self.groebner_basis.normal_form(f)

    def contains(self, f: Polynomial) -> bool:
        return not self.normal_form(f)

    __contains__ = contains

    def is_subset(self, other: Ideal) -> bool:
        return all(other.contains(f) for f in self.generators)

    def is_unit(self) -> bool:
        return self.contains(self.ring.one())

    def is_zero(self) -> bool:
        return not self.generators

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.groebner_basis.elements == other.groebner_basis.elements

    __hash__ = None  # type: ignore

    def __add__(self, other: Ideal) -> Ideal:
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other: Ideal) -> Ideal:
        return ideal_product(self, other)

    def __pow__(self, exponent: int) -> Ideal:
        return ideal_power(self, exponent)

    def minimal_degree(self) -> Optional[int]:
        return min((f.degree for f in self.generators), default=None)

    def __str__(self) -> str:
        return 'ideal ({generators})'.format(generators=', '.join(str(f) for f in self.generators))

    def __repr__(self) -> str:
        return '<Ideal {text}>'.format(text=self)


def _deduplicate(polynomials: Iterable[Polynomial]) -> List[Polynomial]:
    result, seen = [], set()
    for f in polynomials:
        if f and f not in seen:
            seen.add(f)
            result.append(f)
    return result


def normal_form(f: Polynomial, basis: GroebnerBasis) -> Polynomial:
    return basis.normal_form(f)


def buchberger(generators: Sequence[Polynomial], order: Optional[MonomialOrder] = None,
               track: bool = False) -> GroebnerBasis:
    if not generators:
        raise UsageError('buchberger() needs at least one generator.')
    ring = generators[0].ring
    if order is not None:
        ring = ring.with_order(order)
    vectors = [polynomial_to_vector(f) for f in generators]
    return compute_groebner_basis(ring, 1, vectors, _ideal_order(ring), track)


def membership(f: Polynomial, ideal: Ideal) -> bool:
    return ideal.contains(f)


def ideal_product(first: Ideal, second: Ideal) -> Ideal:
    return Ideal(first.ring, _deduplicate(f * g for f in first.generators for g in second.generators))


def ideal_power(ideal: Ideal, exponent: int) -> Ideal:
    if exponent < 1:
        raise UsageError("Ideal powers need an exponent of at least one, got {m}.".format(m=exponent))
    products = []
    for factors in itertools.combinations_with_replacement(ideal.generators, exponent):
        product = ideal.ring.one()
        for f in factors:
            product = product * f
        products.append(product)
    return Ideal(ideal.ring, _deduplicate(products))


def ideal_intersection(first: Ideal, second: Ideal) -> Ideal:
    """
    Eliminate t from t*I + (1-t)*J.
    """
    ring = first.ring
    name = 't'
    while name in ring.variables or name == ring.field.generator:
        name += '_'
    auxiliary = RingContext(ring.field, (name,) + ring.variables, Elimination(block=1))

    def lift(f: Polynomial, with_t: bool) -> Terms:
        terms: Terms = {}
        for m, c in f.term_dict.items():
            if with_t:
                terms[(1,) + m] = c
            else:
                terms[(0,) + m] = c
                terms[(1,) + m] = -c
        return terms

    vectors = [{(0, m): c for m, c in lift(f, True).items()} for f in first.generators]
    vectors += [{(0, m): c for m, c in lift(g, False).items()} for g in second.generators]
    basis = compute_groebner_basis(auxiliary, 1, vectors, _ideal_order(auxiliary))
    generators = []
    for element in basis.elements:
        if all(m[0] == 0 for _, m in element):
            generators.append(Polynomial(ring, {m[1:]: c for (_, m), c in element.items()}))
    return Ideal(ring, generators)


def ideal_quotient(ideal: Ideal, other: Ideal) -> Ideal:
    """
    I : J as the intersection over the generators f of J of (I intersected with (f)) / f.
    """
    ring = ideal.ring
    result: Optional[Ideal] = None
    for f in other.generators:
        check_deadline()
        intersection = ideal_intersection(ideal, Ideal(ring, [f]))
        colon = Ideal(ring, [g.divide_exact(f) for g in intersection.generators])
        result = colon if result is None else ideal_intersection(result, colon)
    return result if result is not None else Ideal.unit(ring)


def saturate(ideal: Ideal, other: Ideal) -> Ideal:
    current = ideal
    for iteration in itertools.count(1):
        following = ideal_quotient(current, other)
        logger.debug('Saturation step %d: %d generators', iteration, len(following.groebner_basis))
        if following == current:
            return current
        current = following
    raise AssertionError('unreachable')


def symbolic_power(ideal: Ideal, exponent: int) -> Ideal:
    """
    The saturation of I^m by the irrelevant ideal. This is the m-th symbolic power when I is the saturated ideal
    of a reduced set of points.
    """
    if exponent < 1:
        raise UsageError("Symbolic powers need an exponent of at least one, got {m}.".format(m=exponent))
    return saturate(ideal_power(ideal, exponent), Ideal.irrelevant(ideal.ring))


def check_containment(inner: Ideal, outer: Ideal) -> None:
    for f in inner.generators:
        if not outer.contains(f):
            raise ContainmentError("Generator {f} does not lie in {outer}.".format(f=f, outer=outer))
