"""
Character tables of symmetric groups by the Murnaghan-Nakayama rule, and decomposition of characters given on
permutation representatives into irreducibles.
"""
from __future__ import annotations

import dataclasses
import functools
import math
from collections import Counter
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from betti_characters.characters import Character, character_inner_product
from betti_characters.exceptions import UsageError
from betti_characters.fields import FieldElement, FieldSpec
from betti_characters.types import Partition

MAX_DEGREE = 8


def partitions(n: int, largest: Optional[int] = None) -> Iterator[Partition]:
    """
    Partitions of n in reverse lexicographic order, (n) first and (1, ..., 1) last.
    """
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest or n), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def conjugacy_classes(n: int) -> List[Partition]:
    """
    Cycle types of S_n, the identity first.
    """
    return list(partitions(n))[::-1]


def centralizer_order(cycle_type: Partition) -> int:
    result = 1
    for length, count in Counter(cycle_type).items():
        result *= length ** count * math.factorial(count)
    return result


def class_size(cycle_type: Partition) -> int:
    return math.factorial(sum(cycle_type)) // centralizer_order(cycle_type)


@functools.lru_cache(maxsize=None)
def murnaghan_nakayama(shape: Partition, cycle_type: Partition) -> int:
    """
    The value of the irreducible character indexed by `shape` on permutations of the given cycle type.

    Border strips are removed on the beta-set of the shape: removing a strip of length r moves one bead from b to
    b - r, and the height of the strip is the number of beads jumped over.
    """
    if sum(shape) != sum(cycle_type):
        raise UsageError("Partitions {a} and {b} have different sizes.".format(a=shape, b=cycle_type))
    if not cycle_type:
        return 1
    strip, rest = cycle_type[0], cycle_type[1:]
    length = len(shape)
    beads = [part + length - 1 - k for k, part in enumerate(shape)]
    occupied = set(beads)
    total = 0
    for bead in beads:
        target = bead - strip
        if target < 0 or target in occupied:
            continue
        height = sum(1 for other in beads if target < other < bead)
        moved = sorted((occupied - {bead}) | {target}, reverse=True)
        smaller = tuple(p for p in (b - (length - 1 - k) for k, b in enumerate(moved)) if p > 0)
        total += (-1) ** height * murnaghan_nakayama(smaller, rest)
    return total


@dataclasses.dataclass(frozen=True)
class SymmetricGroupTable:
    """
    Irreducible characters of S_n: `values[r][c]` is the character of `shapes[r]` on the class `classes[c]`.
    """
    n: int
    shapes: Tuple[Partition, ...]
    classes: Tuple[Partition, ...]
    values: Tuple[Tuple[int, ...], ...]

    @property
    def class_sizes(self) -> List[int]:
        return [class_size(c) for c in self.classes]

    @property
    def group_order(self) -> int:
        return math.factorial(self.n)

    def character(self, shape: Partition, field: Optional[FieldSpec] = None) -> Character:
        try:
            row = self.values[self.shapes.index(tuple(shape))]
        except ValueError:
            raise UsageError("{shape} is not a partition of {n}.".format(shape=shape, n=self.n)) from None
        return Character.from_values(field or FieldSpec.rational(), row)

    def render(self) -> str:
        def label(p: Partition) -> str:
            return '(' + ','.join(str(k) for k in p) + ')'

        table = [[''] + [label(c) for c in self.classes]]
        table += [[label(s)] + [str(v) for v in row] for s, row in zip(self.shapes, self.values)]
        widths = [max(len(line[k]) for line in table) for k in range(len(table[0]))]
        return '\n'.join(' '.join(cell.rjust(w) for cell, w in zip(line, widths)) for line in table)

    def __str__(self) -> str:
        return self.render()


def symmetric_group_table(n: int) -> SymmetricGroupTable:
    if not 1 <= n <= MAX_DEGREE:
        raise UsageError("Symmetric group tables are available for 1 <= n <= {m}, got {n}.".format(
            m=MAX_DEGREE, n=n))
    shapes = tuple(partitions(n))
    classes = tuple(conjugacy_classes(n))
    values = tuple(tuple(murnaghan_nakayama(s, c) for c in classes) for s in shapes)
    return SymmetricGroupTable(n, shapes, classes, values)


def align_to_classes(character: Character, cycle_types: Sequence[Optional[Partition]],
                     table: SymmetricGroupTable) -> Character:
    """
    Reorder a character given on representatives with the listed cycle types into the class order of `table`.
    """
    indices = []
    for cycle_type in table.classes:
        try:
            indices.append(list(cycle_types).index(cycle_type))
        except ValueError:
            raise UsageError("No representative of cycle type {c} was given.".format(c=cycle_type)) from None
    return character.reordered(indices)


def decompose(character: Character, table: SymmetricGroupTable) -> Dict[Partition, FieldElement]:
    """
    Multiplicities of the irreducible characters in a character given in the class order of `table`.
    """
    if len(character) != len(table.classes):
        raise UsageError('Character has {a} values, the table has {b} classes.'.format(
            a=len(character), b=len(table.classes)))
    field = character[0].field
    return {shape: character_inner_product(character, table.character(shape, field), table)
            for shape in table.shapes}
