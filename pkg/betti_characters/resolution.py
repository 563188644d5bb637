"""
Minimal graded free resolutions.

A Schreyer frame is built first: the Groebner basis of the presentation, then level by level the syzygies coming
from S-pair reductions, which form a Groebner basis for the induced order on the next free module. The frame is a
free resolution but usually not a minimal one; a single cancellation pass then removes every pair of generators
joined by a unit.
"""
from __future__ import annotations

import dataclasses
import itertools
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from betti_characters.exceptions import InternalInvariantError, UsageError
from betti_characters.groebner import (
    GradedTermOverPosition, Ideal, Lifter, ModuleOrder, SchreyerOrder, Vector, column_vectors,
    compute_groebner_basis, pair_syzygy, vectors_to_matrix
)
from betti_characters.limits import check_deadline
from betti_characters.polyring import FreeModule, PolyMatrix, Polynomial, RingContext, monomial_divides, monomial_lcm
from betti_characters.types import ModuleTerm

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class BettiTable:
    """
    Graded Betti numbers: `entries[(i, j)]` generators of degree j in homological degree i.
    """
    entries: Dict[Tuple[int, int], int] = dataclasses.field(default_factory=dict)

    def __getitem__(self, index: Tuple[int, int]) -> int:
        return self.entries.get(index, 0)

    @property
    def length(self) -> int:
        return max((i for i, _ in self.entries), default=-1)

    def ranks(self) -> List[int]:
        return [sum(n for (i, _), n in self.entries.items() if i == k) for k in range(self.length + 1)]

    def render(self) -> str:
        """
        Rows are indexed by j - i, columns by i, as in the usual Betti diagram.
        """
        if not self.entries:
            return 'total:'
        columns = range(self.length + 1)
        rows = range(min(j - i for i, j in self.entries), max(j - i for i, j in self.entries) + 1)
        ranks = self.ranks()
        table = [[''] + [str(i) for i in columns], ['total:'] + [str(n) for n in ranks]]
        for row in rows:
            table.append(['{row}:'.format(row=row)] + [str(self[(i, i + row)] or '.') for i in columns])
        widths = [max(len(line[k]) for line in table) for k in range(len(table[0]))]
        return '\n'.join(
            ' '.join(cell.rjust(width) for cell, width in zip(line, widths)).rstrip() for line in table
        )

    def __str__(self) -> str:
        return self.render()


def render_ranks(ranks: Sequence[int]) -> str:
    """
    The stacked display of a free complex: ranks as exponents over `R <-- R <-- ... <-- 0`, indices below.
    """
    exponents, arrows, indices = '', '', ''
    for i, rank in enumerate(ranks):
        label = str(rank)
        cell = 'R' + ' ' * len(label) + ' <-- '
        exponents += ' ' + label + ' ' * (len(cell) - 1 - len(label))
        arrows += cell
        indices += str(i).ljust(len(cell))
    arrows += '0'
    indices += str(len(ranks))
    return '\n'.join([exponents.rstrip(), arrows, '', indices])


class ChainComplex:
    """
    Free modules F_0, ..., F_L with differentials d_i: F_i -> F_{i-1}. `differentials[i - 1]` is d_i.
    """

    def __init__(self, ring: RingContext, modules: Sequence[FreeModule], differentials: Sequence[PolyMatrix]):
        if len(differentials) != len(modules) - 1:
            raise UsageError('A complex with {n} modules needs {m} differentials.'.format(
                n=len(modules), m=len(modules) - 1))
        for i, d in enumerate(differentials, start=1):
            if d.target != modules[i - 1] or d.source != modules[i]:
                raise UsageError('Differential {i} does not map F_{i} to F_{j}.'.format(i=i, j=i - 1))
        self.ring = ring
        self.modules = list(modules)
        self.differentials = list(differentials)
        self._lifters: Dict[Tuple[int, bool], Lifter] = {}

    @property
    def length(self) -> int:
        return len(self.differentials)

    def module(self, i: int) -> FreeModule:
        return self.modules[i]

    def differential(self, i: int) -> PolyMatrix:
        if not 1 <= i <= self.length:
            raise UsageError("No differential d_{i} in a complex of length {n}.".format(i=i, n=self.length))
        return self.differentials[i - 1]

    def lifter(self, i: int, reverse: bool = False) -> Lifter:
        key = (i, reverse)
        if key not in self._lifters:
            self._lifters[key] = Lifter(self.differential(i), reverse)
        return self._lifters[key]

    @property
    def ranks(self) -> List[int]:
        return [module.rank for module in self.modules]

    def is_minimal(self) -> bool:
        return not any(entry.constant_term() for d in self.differentials for row in d.rows for entry in row)

    def check(self) -> None:
        """
        Raise unless consecutive differentials compose to zero.
        """
        for i in range(2, self.length + 1):
            if not (self.differential(i - 1) * self.differential(i)).is_zero():
                raise InternalInvariantError("d_{a} * d_{b} is not zero.".format(a=i - 1, b=i))

    def betti_table(self) -> BettiTable:
        entries: Dict[Tuple[int, int], int] = {}
        for i, module in enumerate(self.modules):
            for degree in module.degrees:
                entries[(i, degree)] = entries.get((i, degree), 0) + 1
        return BettiTable(entries)

    def __str__(self) -> str:
        return render_ranks(self.ranks)

    def __repr__(self) -> str:
        return '<ChainComplex ranks={ranks}>'.format(ranks=self.ranks)


# Schreyer frame

def _lex_descending(term: ModuleTerm) -> tuple:
    position, monomial = term
    return position, tuple(-e for e in monomial)


def _next_level(elements: List[Vector], leads: List[ModuleTerm], degrees: List[int],
                order: ModuleOrder) -> Tuple[List[Vector], List[ModuleTerm], List[int]]:
    """
    Pair syzygies of a level, keeping one syzygy per minimal leading term.
    """
    candidates: Dict[int, List[Tuple[int, int, tuple]]] = {}
    for i, j in itertools.combinations(range(len(elements)), 2):
        if leads[i][0] != leads[j][0]:
            continue
        lcm = monomial_lcm(leads[i][1], leads[j][1])
        shift = tuple(a - b for a, b in zip(lcm, leads[i][1]))
        candidates.setdefault(i, []).append((sum(shift), j, shift))

    chosen: List[Tuple[int, int, tuple]] = []
    for i, pairs in candidates.items():
        kept: List[tuple] = []
        for _, j, shift in sorted(pairs):
            if any(monomial_divides(other, shift) for other in kept):
                continue
            kept.append(shift)
            chosen.append((i, j, shift))

    chosen.sort(key=lambda item: _lex_descending((item[0], item[2])))
    new_elements, new_leads, new_degrees = [], [], []
    for i, j, shift in chosen:
        check_deadline()
        new_elements.append(pair_syzygy(elements, leads, order, i, j))
        new_leads.append((i, shift))
        new_degrees.append(degrees[i] + sum(shift))
    return new_elements, new_leads, new_degrees


def schreyer_resolution(presentation: PolyMatrix) -> ChainComplex:
    """
    The (generally non-minimal) free resolution of the cokernel of `presentation` given by the Schreyer frame.
    """
    ring = presentation.ring
    target = presentation.target
    order: ModuleOrder = GradedTermOverPosition(ring.order, target.degrees)
    basis = compute_groebner_basis(ring, target.rank, column_vectors(presentation), order)

    permutation = sorted(range(len(basis)), key=lambda k: _lex_descending(basis.leads[k]))
    elements = [basis.elements[k] for k in permutation]
    leads = [basis.leads[k] for k in permutation]
    degrees = [sum(m) + target.degrees[p] for p, m in leads]

    modules = [target, FreeModule(tuple(degrees))]
    differentials = [vectors_to_matrix(elements, ring, target, modules[1])]
    while elements:
        following = SchreyerOrder(order, leads)
        elements, leads, degrees = _next_level(elements, leads, degrees, order)
        order = following
        if not elements:
            break
        modules.append(FreeModule(tuple(degrees)))
        differentials.append(vectors_to_matrix(elements, ring, modules[-2], modules[-1]))
    logger.debug('Schreyer frame ranks %s', [m.rank for m in modules])
    return ChainComplex(ring, modules, differentials)


# Minimization

def _find_unit(rows: List[List[Polynomial]]) -> Optional[Tuple[int, int]]:
    for r, row in enumerate(rows):
        for c, entry in enumerate(row):
            if entry and entry.is_constant():
                return r, c
    return None


def minimize(complex_: ChainComplex) -> ChainComplex:
    """
    Cancel every unit entry of the differentials by Gaussian elimination, lowest homological degree first,
    then sort the generators of each module by degree, keeping the construction order among equal degrees.
    """
    ring = complex_.ring
    matrices = [[list(row) for row in d.rows] for d in complex_.differentials]
    degrees = [list(module.degrees) for module in complex_.modules]
    cancelled = 0

    for level, rows in enumerate(matrices):
        while True:
            check_deadline()
            pivot = _find_unit(rows)
            if pivot is None:
                break
            r, c = pivot
            inverse = rows[r][c].constant_term().inverse()
            pivot_row = rows[r]
            for k, row in enumerate(rows):
                if k == r or not row[c]:
                    continue
                factor = row[c] * inverse
                for j, entry in enumerate(pivot_row):
                    if j != c and entry:
                        row[j] = row[j] - factor * entry
            del rows[r]
            for row in rows:
                del row[c]
            if level > 0:
                for row in matrices[level - 1]:
                    del row[r]
            if level + 1 < len(matrices):
                del matrices[level + 1][c]
            del degrees[level][r]
            del degrees[level + 1][c]
            cancelled += 1
    logger.debug('Minimization cancelled %d pairs of generators', cancelled)

    orders = [sorted(range(len(d)), key=lambda k, d=d: (d[k], k)) for d in degrees]
    modules = [FreeModule(tuple(d[k] for k in orders[i])) for i, d in enumerate(degrees)]
    differentials = []
    for level, rows in enumerate(matrices):
        permuted = [[rows[k][j] for j in orders[level + 1]] for k in orders[level]]
        differentials.append(PolyMatrix(ring, modules[level], modules[level + 1], permuted))

    while len(modules) > 1 and modules[-1].rank == 0:
        modules.pop()
        differentials.pop()
    return ChainComplex(ring, modules, differentials)


def free_resolution(presentation: PolyMatrix, ring: Optional[RingContext] = None) -> ChainComplex:
    """
    The minimal graded free resolution of the cokernel of `presentation`.
    """
    if ring is not None and ring.variables != presentation.ring.variables:
        raise UsageError('The presentation belongs to a different ring.')
    result = minimize(schreyer_resolution(presentation))
    logger.info('Minimal resolution with ranks %s', result.ranks)
    return result


def presentation_of_quotient(ideal: Ideal) -> PolyMatrix:
    """
    The 1 x g matrix of generators, presenting R/I.
    """
    ring = ideal.ring
    return PolyMatrix(ring, FreeModule((0,)), FreeModule(tuple(f.degree for f in ideal.generators)),
                      [list(ideal.generators)])


def resolve_quotient(ideal: Ideal) -> ChainComplex:
    return free_resolution(presentation_of_quotient(ideal))


def betti_table(complex_: ChainComplex) -> BettiTable:
    return complex_.betti_table()
