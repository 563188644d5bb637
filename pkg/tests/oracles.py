"""
Reference computations for the resolution tests, independent of the Schreyer frame: graded Betti numbers of R/I
and the traces of a linear substitution on them, both read off the homology of the Koszul complex of R/I one
internal degree at a time.
"""
import itertools
from typing import Dict, List, Optional, Sequence, Tuple

from betti_characters import linalg
from betti_characters.fields import FieldElement
from betti_characters.groebner import Ideal
from betti_characters.polyring import LinearSubstitution, monomial_divides, monomial_mul
from betti_characters.types import Monomial

Basis = List[Tuple[Tuple[int, ...], Monomial]]


def standard_monomials(ideal: Ideal, degree: int) -> List[Monomial]:
    leads = [m for _, m in ideal.groebner_basis.leads]
    return [m for m in ideal.ring.monomials_of_degree(degree) if not any(monomial_divides(l, m) for l in leads)]


class KoszulComplex:
    def __init__(self, ideal: Ideal):
        self.ideal = ideal
        self.ring = ideal.ring
        self.field = ideal.ring.field

    def basis(self, i: int, j: int) -> Basis:
        if i < 0 or i > self.ring.nvars or j < i:
            return []
        subsets = itertools.combinations(range(self.ring.nvars), i)
        monomials = standard_monomials(self.ideal, j - i)
        return [(subset, m) for subset in subsets for m in monomials]

    def _coordinates(self, basis: Basis, combination: Dict[Tuple[Tuple[int, ...], Monomial], FieldElement]):
        index = {b: k for k, b in enumerate(basis)}
        vector = [self.field.zero()] * len(basis)
        for (subset, m), c in combination.items():
            reduced = self.ideal.normal_form(self.ring.monomial(m))
            for monomial, coefficient in reduced.term_dict.items():
                k = index[(subset, monomial)]
                vector[k] = vector[k] + c * coefficient
        return vector

    def differential(self, i: int, j: int) -> List[List[FieldElement]]:
        """
        Rows are the images of the basis of C_{i,j} in C_{i-1,j}.
        """
        source, target = self.basis(i, j), self.basis(i - 1, j)
        rows = []
        for subset, m in source:
            image: Dict = {}
            for k, variable in enumerate(subset):
                unit = tuple(1 if v == variable else 0 for v in range(self.ring.nvars))
                key = (subset[:k] + subset[k + 1:], monomial_mul(m, unit))
                sign = self.field.one() if k % 2 == 0 else -self.field.one()
                image[key] = image.get(key, self.field.zero()) + sign
            rows.append(self._coordinates(target, image))
        return rows

    def act(self, substitution: LinearSubstitution, i: int, j: int,
            vector: Sequence[FieldElement]) -> List[FieldElement]:
        basis = self.basis(i, j)
        matrix = substitution.matrix
        zero, one = self.field.zero(), self.field.one()
        image: Dict = {}
        for (subset, m), c in zip(basis, vector):
            if not c:
                continue
            moved = substitution(self.ring.monomial(m))
            for rows in itertools.combinations(range(self.ring.nvars), i):
                det = linalg.determinant([[matrix[r][s] for s in subset] for r in rows], zero, one)
                if not det:
                    continue
                for monomial, coefficient in moved.term_dict.items():
                    key = (rows, monomial)
                    image[key] = image.get(key, zero) + c * det * coefficient
        return self._coordinates(basis, image)

    def cycles(self, i: int, j: int) -> Tuple[List[List[FieldElement]], List[int]]:
        dimension = len(self.basis(i, j))
        if i == 0:
            rows = [[self.field.one() if a == b else self.field.zero() for b in range(dimension)]
                    for a in range(dimension)]
            return rows, list(range(dimension))
        differential = self.differential(i, j)
        width = len(self.basis(i - 1, j))
        augmented = [row + [self.field.one() if a == b else self.field.zero() for b in range(dimension)]
                     for a, row in enumerate(differential)]
        reduced, pivots = linalg.row_reduce(augmented)
        kernel = [(row[width:], p - width) for row, p in zip(reduced, pivots) if p >= width]
        return [row for row, _ in kernel], [p for _, p in kernel]

    def boundaries(self, i: int, j: int) -> Tuple[List[List[FieldElement]], List[int]]:
        if not self.basis(i + 1, j):
            return [], []
        return linalg.row_reduce(self.differential(i + 1, j))

    def trace(self, substitution: Optional[LinearSubstitution], i: int, j: int) -> FieldElement:
        total = self.field.zero()
        for sign, (rows, pivots) in ((1, self.cycles(i, j)), (-1, self.boundaries(i, j))):
            if substitution is None:
                total = total + len(rows) * sign
                continue
            for row, pivot in zip(rows, pivots):
                total = total + self.act(substitution, i, j, row)[pivot] * sign
        return total


def koszul_betti_numbers(ideal: Ideal, max_degree: int) -> Dict[Tuple[int, int], int]:
    complex_ = KoszulComplex(ideal)
    table = {}
    for j in range(max_degree + 1):
        for i in range(min(j, ideal.ring.nvars) + 1):
            count = complex_.trace(None, i, j)
            if count:
                table[(i, j)] = int(count.to_fraction())
    return table


def koszul_betti_character(ideal: Ideal, substitution: LinearSubstitution, i: int, j: int) -> FieldElement:
    return KoszulComplex(ideal).trace(substitution, i, j)
