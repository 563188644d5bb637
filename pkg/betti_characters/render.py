"""
Task results, and their two renderings: the pretty text that mirrors the displays of an interactive session, and
the structured document `{"tasks": [...]}` produced by `ReportSerializer`.
"""
import dataclasses
from typing import Any, ClassVar, Dict, List, Optional, Union

from betti_characters.characters import BettiCharacterTable, Character, GradedCharacter
from betti_characters.fields import FieldElement, FieldSpec
from betti_characters.resolution import BettiTable, render_ranks
from betti_characters.schema import SchemaSerializer


@dataclasses.dataclass
class BettiEntry:
    homological_degree: int
    degree: int
    count: int


@dataclasses.dataclass
class BettiTableResult:
    kind: ClassVar[str] = 'betti-table'
    ranks: List[int]
    entries: List[BettiEntry]

    def render_pretty(self) -> str:
        table = BettiTable({(e.homological_degree, e.degree): e.count for e in self.entries})
        return render_ranks(self.ranks) + '\n\n' + table.render()


@dataclasses.dataclass
class CharacterEntry:
    homological_degree: int
    degree: int
    values: Dict[str, FieldElement]


def _character(values: Dict[str, FieldElement], elements: List[str]) -> Character:
    return Character(tuple(values[name] for name in elements))


@dataclasses.dataclass
class BettiCharactersResult:
    kind: ClassVar[str] = 'betti-characters'
    elements: List[str]
    characters: List[CharacterEntry]
    homological_degree: Optional[int] = None

    def render_pretty(self) -> str:
        rows: Dict[int, Dict[int, Character]] = {}
        for entry in self.characters:
            rows.setdefault(entry.homological_degree, {})[entry.degree] = _character(entry.values, self.elements)
        if self.homological_degree is not None:
            return GradedCharacter(rows.get(self.homological_degree, {})).render()
        return BettiCharacterTable({i: GradedCharacter(graded) for i, graded in rows.items()}).render()


@dataclasses.dataclass
class ModuleCharacterEntry:
    degree: int
    dimension: int
    values: Dict[str, FieldElement]


@dataclasses.dataclass
class ModuleCharacterResult:
    kind: ClassVar[str] = 'module-character'
    elements: List[str]
    characters: List[ModuleCharacterEntry]

    def render_pretty(self) -> str:
        return GradedCharacter({e.degree: _character(e.values, self.elements) for e in self.characters}).render()


@dataclasses.dataclass
class MolienEntry:
    element: str
    holds: bool
    series: str
    alternating_sum: str


@dataclasses.dataclass
class MolienCheckResult:
    kind: ClassVar[str] = 'molien-check'
    bound: int
    checks: List[MolienEntry]

    def render_pretty(self) -> str:
        lines = ['Molien identity up to degree {bound}:'.format(bound=self.bound)]
        for check in self.checks:
            lines.append('  {element}: {series} {relation} {alternating}'.format(
                element=check.element, series=check.series, relation='==' if check.holds else '!=',
                alternating=check.alternating_sum,
            ))
        return '\n'.join(lines)


@dataclasses.dataclass
class DecompositionEntry:
    homological_degree: int
    degree: int
    multiplicities: Dict[str, FieldElement]


@dataclasses.dataclass
class DecomposeResult:
    kind: ClassVar[str] = 'decompose'
    shapes: List[str]
    decompositions: List[DecompositionEntry]

    def render_pretty(self) -> str:
        lines = []
        for entry in self.decompositions:
            terms = []
            for shape in self.shapes:
                multiplicity = entry.multiplicities[shape]
                if multiplicity == 1:
                    terms.append(shape)
                elif multiplicity:
                    terms.append('{m}*{shape}'.format(m=multiplicity, shape=shape))
            lines.append('{i} {{{j}}} => {terms}'.format(
                i=entry.homological_degree, j=entry.degree, terms=' + '.join(terms) or '0'))
        return '\n'.join(lines)


TaskResult = Union[BettiTableResult, BettiCharactersResult, ModuleCharacterResult, MolienCheckResult, DecomposeResult]


@dataclasses.dataclass
class Report:
    tasks: List[TaskResult] = dataclasses.field(default_factory=list)


class ReportSerializer(SchemaSerializer):
    class Meta:
        dataclass = Report


def render_pretty(report: Report) -> str:
    blocks = ['-- {kind}\n{text}'.format(kind=result.kind, text=result.render_pretty()) for result in report.tasks]
    return '\n\n'.join(blocks) + '\n'


def render_structured(report: Report) -> Dict[str, Any]:
    return ReportSerializer(report).data


def parse_structured(document: Dict[str, Any], field: FieldSpec) -> Report:
    """
    Read a structured document back, parsing field elements in `field`.
    """
    serializer = ReportSerializer(data=document, context={'field': field})
    serializer.is_valid(raise_exception=True)
    return serializer.validated_data
