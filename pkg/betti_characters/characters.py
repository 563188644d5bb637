"""
Characters of finite groups, given by their values on a list of class representatives.
"""
from __future__ import annotations

import dataclasses
from typing import Dict, Iterator, List, Sequence, Tuple, Union

from betti_characters.exceptions import UsageError
from betti_characters.fields import FieldElement, FieldSpec, Rational
from betti_characters.types import ClassData


@dataclasses.dataclass(frozen=True)
class Character:
    values: Tuple[FieldElement, ...]

    @classmethod
    def from_values(cls, field: FieldSpec, values: Sequence[Union[Rational, FieldElement]]) -> Character:
        return cls(tuple(field.coerce(v) for v in values))

    @classmethod
    def zero(cls, field: FieldSpec, size: int) -> Character:
        return cls((field.zero(),) * size)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[FieldElement]:
        return iter(self.values)

    def __getitem__(self, index: int) -> FieldElement:
        return self.values[index]

    def _check_length(self, other: Character) -> None:
        if len(self) != len(other):
            raise UsageError('Characters have different lengths: {a} and {b}.'.format(a=len(self), b=len(other)))

    def __add__(self, other: Character) -> Character:
        self._check_length(other)
        return Character(tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: Character) -> Character:
        self._check_length(other)
        return Character(tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> Character:
        return Character(tuple(-a for a in self.values))

    def __mul__(self, other: Character) -> Character:
        self._check_length(other)
        return Character(tuple(a * b for a, b in zip(self.values, other.values)))

    def conjugate(self) -> Character:
        return Character(tuple(a.conjugate() for a in self.values))

    def reordered(self, indices: Sequence[int]) -> Character:
        return Character(tuple(self.values[k] for k in indices))

    def render(self) -> str:
        return 'Character{' + ', '.join(str(v) for v in self.values) + '}'

    def __str__(self) -> str:
        return self.render()


@dataclasses.dataclass(frozen=True)
class GradedCharacter:
    """
    Characters on the graded pieces of a representation, keyed by internal degree.
    """
    characters: Dict[int, Character] = dataclasses.field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'characters', dict(sorted(self.characters.items())))

    def __getitem__(self, degree: int) -> Character:
        return self.characters[degree]

    def __contains__(self, degree: int) -> bool:
        return degree in self.characters

    def __len__(self) -> int:
        return len(self.characters)

    @property
    def degrees(self) -> List[int]:
        return list(self.characters)

    def items(self):
        return self.characters.items()

    def merge(self, other: GradedCharacter) -> GradedCharacter:
        merged = dict(self.characters)
        for degree, character in other.characters.items():
            merged[degree] = merged[degree] + character if degree in merged else character
        return GradedCharacter(merged)

    def render(self) -> str:
        return 'GradedCharacter{' + ', '.join(
            '{{{d}}} => {c}'.format(d=d, c=c.render()) for d, c in self.characters.items()
        ) + '}'

    def __str__(self) -> str:
        return self.render()


@dataclasses.dataclass(frozen=True)
class BettiCharacterTable:
    """
    Graded characters of a group on the modules of a minimal free resolution, keyed by homological degree.
    """
    rows: Dict[int, GradedCharacter] = dataclasses.field(default_factory=dict)

    def __getitem__(self, index: int) -> GradedCharacter:
        return self.rows[index]

    def __len__(self) -> int:
        return len(self.rows)

    def items(self):
        return self.rows.items()

    def at(self, index: int) -> Dict[Tuple[int, int], FieldElement]:
        """
        The values of element number `index`, keyed by (homological degree, internal degree).
        """
        return {(i, j): c[index] for i, graded in self.rows.items() for j, c in graded.items()}

    def render(self) -> str:
        lines = ['{i} => {g}'.format(i=i, g=g.render()) for i, g in self.rows.items()]
        if not lines:
            return 'HashTable{}'
        prefix = 'HashTable{'
        return prefix + ('\n' + ' ' * len(prefix)).join(lines) + '}'

    def __str__(self) -> str:
        return self.render()


def character_inner_product(x: Character, y: Character, classes: ClassData) -> FieldElement:
    """
    (1/|G|) * sum over classes of size * x * conj(y).
    """
    if classes.class_sizes is None or classes.group_order is None:
        raise UsageError('Inner products need class sizes and the group order.')
    if not len(x) == len(y) == len(classes.class_sizes):
        raise UsageError('Characters and class sizes have different lengths.')
    if not x.values:
        raise UsageError('Inner product of empty characters.')
    total = x[0].field.zero()
    for size, a, b in zip(classes.class_sizes, x.values, y.values):
        total = total + a * b.conjugate() * size
    return total / classes.group_order
