"""
Standard graded polynomial rings over a `FieldSpec`: monomial orders, polynomials, graded free modules and
matrices, and linear substitutions of the variables.
"""
from __future__ import annotations

import dataclasses
import itertools
import operator
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from django.utils.functional import cached_property

from betti_characters import linalg
from betti_characters.exceptions import DivisionByZero, GradingError, InternalInvariantError, UsageError
from betti_characters.fields import FieldElement, FieldSpec
from betti_characters.types import Monomial, Partition

Scalar = Union[int, Fraction, FieldElement]
Terms = Dict[Monomial, FieldElement]


# Monomial orders. Every order is described by a sort key: a larger key is a larger monomial.

@dataclasses.dataclass(frozen=True)
class MonomialOrder:
    name: str = 'grevlex'

    def key(self, monomial: Monomial) -> tuple:
        raise NotImplementedError()

    def __str__(self) -> str:
        return self.name


@dataclasses.dataclass(frozen=True)
class GRevLex(MonomialOrder):
    name: str = 'grevlex'

    def key(self, monomial: Monomial) -> tuple:
        return sum(monomial), tuple(-e for e in reversed(monomial))


@dataclasses.dataclass(frozen=True)
class Lex(MonomialOrder):
    name: str = 'lex'

    def key(self, monomial: Monomial) -> tuple:
        return monomial


@dataclasses.dataclass(frozen=True)
class Elimination(MonomialOrder):
    """
    Block order eliminating the first `block` variables: compare those in grevlex first, then the rest.
    """
    name: str = 'elimination'
    block: int = 1

    def key(self, monomial: Monomial) -> tuple:
        head, tail = monomial[:self.block], monomial[self.block:]
        return (sum(head), tuple(-e for e in reversed(head))), (sum(tail), tuple(-e for e in reversed(tail)))


GREVLEX = GRevLex()
LEX = Lex()


# Exponent vector helpers

def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(operator.add, a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(operator.sub, a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(max, a, b))


def monomial_coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


# Term dictionary helpers, used by the polynomial class and by the Groebner engine.

def terms_add(a: Terms, b: Terms, scale: Optional[FieldElement] = None, shift: Optional[Monomial] = None) -> Terms:
    """
    a + scale * x^shift * b, as a new dictionary without zero coefficients.
    """
    result = dict(a)
    for monomial, c in b.items():
        if shift is not None:
            monomial = monomial_mul(monomial, shift)
        if scale is not None:
            c = c * scale
        total = result.get(monomial)
        if total is None:
            result[monomial] = c
        else:
            total = total + c
            if total:
                result[monomial] = total
            else:
                del result[monomial]
    return result


def terms_mul(a: Terms, b: Terms) -> Terms:
    if len(a) > len(b):
        a, b = b, a
    result: Terms = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            monomial = monomial_mul(ma, mb)
            c = ca * cb
            total = result.get(monomial)
            result[monomial] = c if total is None else total + c
    return {m: c for m, c in result.items() if c}


@dataclasses.dataclass(frozen=True)
class RingContext:
    """
    A polynomial ring k[x_1, ..., x_n] with every variable in degree one.
    """
    field: FieldSpec
    variables: Tuple[str, ...]
    order: MonomialOrder = GREVLEX

    def __post_init__(self) -> None:
        object.__setattr__(self, 'variables', tuple(self.variables))
        if not self.variables:
            raise UsageError('A polynomial ring needs at least one variable.')
        if len(set(self.variables)) != len(self.variables):
            raise UsageError("Variable names must be distinct, got {names}.".format(names=list(self.variables)))
        if self.field.generator is not None and self.field.generator in self.variables:
            raise UsageError(
                "Variable name '{name}' clashes with the field generator.".format(name=self.field.generator)
            )

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def with_order(self, order: MonomialOrder) -> RingContext:
        return dataclasses.replace(self, order=order)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise UsageError("Unknown variable '{name}'.".format(name=name)) from None

    # Element constructors

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, value: Scalar) -> Polynomial:
        c = self.field.coerce(value)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def variable(self, which: Union[int, str]) -> Polynomial:
        i = self.index(which) if isinstance(which, str) else which
        if not 0 <= i < self.nvars:
            raise UsageError("Variable index {i} out of range.".format(i=i))
        exponents = [0] * self.nvars
        exponents[i] = 1
        return Polynomial(self, {tuple(exponents): self.field.one()})

    def gens(self) -> List[Polynomial]:
        return [self.variable(i) for i in range(self.nvars)]

    def monomial(self, exponents: Sequence[int], coefficient: Scalar = 1) -> Polynomial:
        if len(exponents) != self.nvars or any(e < 0 for e in exponents):
            raise UsageError("Invalid exponent vector {exponents}.".format(exponents=list(exponents)))
        c = self.field.coerce(coefficient)
        return Polynomial(self, {tuple(exponents): c} if c else {})

    def monomials_of_degree(self, degree: int) -> List[Monomial]:
        """
        All exponent vectors of the given total degree, in decreasing monomial order.
        """
        if degree < 0:
            return []
        result = []
        for combination in itertools.combinations_with_replacement(range(self.nvars), degree):
            exponents = [0] * self.nvars
            for i in combination:
                exponents[i] += 1
            result.append(tuple(exponents))
        result.sort(key=self.order.key, reverse=True)
        return result

    def parse(self, source: str) -> Polynomial:
        from betti_characters.parser import parse_polynomial
        return parse_polynomial(source, self)

    def render_monomial(self, monomial: Monomial) -> str:
        factors = []
        for name, e in zip(self.variables, monomial):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append('{name}^{e}'.format(name=name, e=e))
        return '*'.join(factors)

    def __str__(self) -> str:
        return '{field}[{variables}]'.format(field=self.field, variables=','.join(self.variables))


def _coefficient_text(c: FieldElement) -> str:
    text = str(c)
    if text.startswith('('):
        return text
    if any(ch in '+-' for ch in text[1:]):
        return '(' + text + ')'
    return text


class Polynomial:
    """
    Immutable polynomial in a `RingContext`. Terms are kept in a dictionary from exponent vectors to nonzero
    coefficients; `terms()` lists them in decreasing monomial order.
    """
    __slots__ = ('ring', '_terms', '__weakref__')

    def __init__(self, ring: RingContext, terms: Mapping[Monomial, FieldElement]):
        self.ring = ring
        self._terms = {m: c for m, c in terms.items() if c}

    @classmethod
    def from_terms(cls, ring: RingContext, terms: Iterable[Tuple[Scalar, Monomial]]) -> Polynomial:
        result: Terms = {}
        for c, monomial in terms:
            result = terms_add(result, {tuple(monomial): ring.field.coerce(c)})
        return cls(ring, result)

    # Inspection

    @property
    def term_dict(self) -> Terms:
        return self._terms

    def terms(self) -> List[Tuple[FieldElement, Monomial]]:
        key = self.ring.order.key
        return [(self._terms[m], m) for m in sorted(self._terms, key=key, reverse=True)]

    def monomials(self) -> List[Monomial]:
        return [m for _, m in self.terms()]

    def coefficient(self, monomial: Monomial) -> FieldElement:
        return self._terms.get(tuple(monomial), self.ring.field.zero())

    def leading_term(self) -> Tuple[FieldElement, Monomial]:
        if not self._terms:
            raise UsageError('The zero polynomial has no leading term.')
        monomial = max(self._terms, key=self.ring.order.key)
        return self._terms[monomial], monomial

    @property
    def degree(self) -> Optional[int]:
        """
        Total degree, or None for the zero polynomial.
        """
        return max((sum(m) for m in self._terms), default=None)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_term(self) -> FieldElement:
        return self.coefficient((0,) * self.ring.nvars)

    def homogeneous_component(self, degree: int) -> Polynomial:
        return Polynomial(self.ring, {m: c for m, c in self._terms.items() if sum(m) == degree})

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self._terms == other._terms and self.ring.variables == other.ring.variables
        if isinstance(other, (int, Fraction, FieldElement)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # Arithmetic

    def _coerce(self, other: object) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring.variables != self.ring.variables:
                raise UsageError('Polynomials belong to different rings.')
            return other
        if isinstance(other, (int, Fraction, FieldElement)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other: object) -> Polynomial:
        y = self._coerce(other)
        if y is NotImplemented:
            return NotImplemented
        return Polynomial(self.ring, terms_add(self._terms, y._terms))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: object) -> Polynomial:
        y = self._coerce(other)
        if y is NotImplemented:
            return NotImplemented
        return Polynomial(self.ring, terms_add(self._terms, y._terms, scale=self.ring.field.from_rational(-1)))

    def __rsub__(self, other: object) -> Polynomial:
        y = self._coerce(other)
        if y is NotImplemented:
            return NotImplemented
        return y - self

    def __mul__(self, other: object) -> Polynomial:
        if isinstance(other, (int, Fraction, FieldElement)):
            return self.scale(other)
        y = self._coerce(other)
        if y is NotImplemented:
            return NotImplemented
        return Polynomial(self.ring, terms_mul(self._terms, y._terms))

    __rmul__ = __mul__

    def scale(self, value: Scalar) -> Polynomial:
        c = self.ring.field.coerce(value)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: a * c for m, a in self._terms.items()})

    def __truediv__(self, other: object) -> Polynomial:
        if isinstance(other, Polynomial):
            if not other.is_constant():
                raise UsageError("Cannot divide by the non-constant polynomial {p}; use divide_exact().".format(p=other))
            other = other.constant_term()
        if not isinstance(other, (int, Fraction, FieldElement)):
            return NotImplemented
        c = self.ring.field.coerce(other)
        if not c:
            raise DivisionByZero('Division of a polynomial by zero.')
        return self.scale(c.inverse())

    def __pow__(self, exponent: int) -> Polynomial:
        if exponent < 0:
            raise UsageError('Negative powers of polynomials are not defined.')
        result = self.ring.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def derivative(self, which: Union[int, str]) -> Polynomial:
        i = self.ring.index(which) if isinstance(which, str) else which
        result: Terms = {}
        for m, c in self._terms.items():
            if m[i]:
                lowered = m[:i] + (m[i] - 1,) + m[i + 1:]
                result[lowered] = c * m[i]
        return Polynomial(self.ring, result)

    def divide_exact(self, divisor: Polynomial) -> Polynomial:
        """
        The quotient self / divisor, which must be a polynomial.
        """
        if not divisor:
            raise DivisionByZero('Division of a polynomial by zero.')
        key = self.ring.order.key
        lead_c, lead_m = divisor.leading_term()
        lead_inverse = lead_c.inverse()
        remainder = dict(self._terms)
        quotient: Terms = {}
        while remainder:
            m = max(remainder, key=key)
            if not monomial_divides(lead_m, m):
                raise InternalInvariantError(
                    "Exact division failed: {divisor} does not divide {p}.".format(divisor=divisor, p=self)
                )
            shift = monomial_div(m, lead_m)
            c = remainder[m] * lead_inverse
            quotient[shift] = c
            remainder = terms_add(remainder, divisor._terms, scale=-c, shift=shift)
        return Polynomial(self.ring, quotient)

    def map_coefficients(self, function: Callable[[FieldElement], FieldElement]) -> Polynomial:
        return Polynomial(self.ring, {m: function(c) for m, c in self._terms.items()})

    def evaluate(self, point: Sequence[Scalar]) -> FieldElement:
        values = [self.ring.field.coerce(v) for v in point]
        total = self.ring.field.zero()
        for m, c in self._terms.items():
            term = c
            for v, e in zip(values, m):
                if e:
                    term = term * v ** e
            total = total + term
        return total

    # Rendering in the input grammar, terms in decreasing order.

    def __str__(self) -> str:
        if not self._terms:
            return '0'
        parts = []
        for c, m in self.terms():
            monomial = self.ring.render_monomial(m)
            if not monomial:
                parts.append(str(c))
            elif c == 1:
                parts.append(monomial)
            elif c == -1:
                parts.append('-' + monomial)
            else:
                parts.append(_coefficient_text(c) + '*' + monomial)
        text = parts[0]
        for part in parts[1:]:
            text += part if part.startswith('-') else '+' + part
        return text

    def __repr__(self) -> str:
        return "Polynomial('{text}')".format(text=self)


@dataclasses.dataclass(frozen=True)
class FreeModule:
    """
    A graded free module R(-d_1) + ... + R(-d_r), described by its generator degrees.
    """
    degrees: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, 'degrees', tuple(self.degrees))

    @classmethod
    def of_rank(cls, rank: int, degree: int = 0) -> FreeModule:
        return cls((degree,) * rank)

    @property
    def rank(self) -> int:
        return len(self.degrees)

    def degree_labels(self) -> List[str]:
        return ['{{{d}}}'.format(d=d) for d in self.degrees]

    def __str__(self) -> str:
        return 'R^{rank}'.format(rank=self.rank)


class PolyMatrix:
    """
    A graded homomorphism `source -> target` of free modules. Entry (k, j) is zero or homogeneous of degree
    source.degrees[j] - target.degrees[k].
    """

    def __init__(self, ring: RingContext, target: FreeModule, source: FreeModule,
                 rows: Sequence[Sequence[Polynomial]]):
        self.ring = ring
        self.target = target
        self.source = source
        self.rows: Tuple[Tuple[Polynomial, ...], ...] = tuple(tuple(row) for row in rows)
        if len(self.rows) != target.rank or any(len(row) != source.rank for row in self.rows):
            raise UsageError(
                "Matrix shape does not match its free modules: expected {t}x{s}."
                .format(t=target.rank, s=source.rank)
            )
        self._check_homogeneous()

    def _check_homogeneous(self) -> None:
        for k, row in enumerate(self.rows):
            for j, entry in enumerate(row):
                if not entry:
                    continue
                expected = self.source.degrees[j] - self.target.degrees[k]
                if not entry.is_homogeneous() or entry.degree != expected:
                    raise GradingError(
                        "Entry ({k}, {j}) = {entry} is not homogeneous of degree {expected}."
                        .format(k=k, j=j, entry=entry, expected=expected)
                    )

    @classmethod
    def from_rows(cls, ring: RingContext, rows: Sequence[Sequence[Union[Polynomial, Scalar]]],
                  target_degrees: Optional[Sequence[int]] = None,
                  source_degrees: Optional[Sequence[int]] = None) -> PolyMatrix:
        """
        Build a matrix from its rows, inferring the source degrees from the first nonzero entry of each column.
        Zero columns get the degree of the target generators they sit over, i.e. zero when unspecified.
        """
        entries = [[x if isinstance(x, Polynomial) else ring.constant(x) for x in row] for row in rows]
        if target_degrees is None:
            target_degrees = [0] * len(entries)
        width = len(entries[0]) if entries else 0
        if source_degrees is None:
            source_degrees = []
            for j in range(width):
                degree = 0
                for k, row in enumerate(entries):
                    if row[j]:
                        degree = row[j].degree + target_degrees[k]
                        break
                source_degrees.append(degree)
        return cls(ring, FreeModule(tuple(target_degrees)), FreeModule(tuple(source_degrees)), entries)

    @classmethod
    def identity(cls, ring: RingContext, module: FreeModule) -> PolyMatrix:
        one, zero = ring.one(), ring.zero()
        return cls(ring, module, module, linalg.identity_matrix(module.rank, zero, one))

    @classmethod
    def zero(cls, ring: RingContext, target: FreeModule, source: FreeModule) -> PolyMatrix:
        zero = ring.zero()
        return cls(ring, target, source, [[zero] * source.rank for _ in range(target.rank)])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.target.rank, self.source.rank

    def __getitem__(self, index: Tuple[int, int]) -> Polynomial:
        k, j = index
        return self.rows[k][j]

    def column(self, j: int) -> List[Polynomial]:
        return [row[j] for row in self.rows]

    def columns(self) -> Iterator[List[Polynomial]]:
        return (self.column(j) for j in range(self.source.rank))

    def is_zero(self) -> bool:
        return not any(entry for row in self.rows for entry in row)

    def __mul__(self, other: PolyMatrix) -> PolyMatrix:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self.source.rank != other.target.rank:
            raise UsageError(
                "Cannot compose a {a} matrix with a {b} matrix.".format(a=self.shape, b=other.shape)
            )
        if self.source.degrees != other.target.degrees:
            raise GradingError('Matrix product of incompatibly graded maps.')
        rows = linalg.matrix_product(self.rows, other.rows, self.ring.zero())
        return PolyMatrix(self.ring, self.target, other.source, rows)

    def _same_shape(self, other: PolyMatrix) -> None:
        if self.target != other.target or self.source != other.source:
            raise UsageError('Matrices have different free modules.')

    def __add__(self, other: PolyMatrix) -> PolyMatrix:
        self._same_shape(other)
        rows = [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        return PolyMatrix(self.ring, self.target, self.source, rows)

    def __sub__(self, other: PolyMatrix) -> PolyMatrix:
        self._same_shape(other)
        rows = [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        return PolyMatrix(self.ring, self.target, self.source, rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.target == other.target and self.source == other.source and self.rows == other.rows

    __hash__ = None  # type: ignore

    def map_entries(self, function: Callable[[Polynomial], Polynomial]) -> PolyMatrix:
        rows = [[function(entry) for entry in row] for row in self.rows]
        return PolyMatrix(self.ring, self.target, self.source, rows)

    def submatrix(self, rows: Sequence[int], columns: Sequence[int]) -> PolyMatrix:
        target = FreeModule(tuple(self.target.degrees[k] for k in rows))
        source = FreeModule(tuple(self.source.degrees[j] for j in columns))
        return PolyMatrix(self.ring, target, source, [[self.rows[k][j] for j in columns] for k in rows])

    def constant_part(self) -> List[List[FieldElement]]:
        return [[entry.constant_term() for entry in row] for row in self.rows]

    def __str__(self) -> str:
        return 'matrix{{{rows}}}'.format(
            rows=', '.join('{' + ', '.join(str(entry) for entry in row) + '}' for row in self.rows)
        )

    def __repr__(self) -> str:
        return '<PolyMatrix {t}x{s}: {text}>'.format(t=self.target.rank, s=self.source.rank, text=self)


class LinearSubstitution:
    """
    The graded ring endomorphism sending the j-th variable to `images[j]`, a linear form.
    """

    def __init__(self, ring: RingContext, images: Sequence[Polynomial]):
        if len(images) != ring.nvars:
            raise UsageError(
                "A substitution needs {n} images, got {count}.".format(n=ring.nvars, count=len(images))
            )
        for j, image in enumerate(images):
            if any(sum(m) != 1 for m in image.term_dict):
                raise UsageError(
                    "Image of {var} is not a linear form: {image}.".format(var=ring.variables[j], image=image)
                )
        self.ring = ring
        self.images: Tuple[Polynomial, ...] = tuple(images)
        self._memo: Dict[Monomial, Terms] = {(0,) * ring.nvars: {(0,) * ring.nvars: ring.field.one()}}

    @classmethod
    def identity(cls, ring: RingContext) -> LinearSubstitution:
        return cls(ring, ring.gens())

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[Scalar]], ring: RingContext) -> LinearSubstitution:
        """
        The substitution whose j-th column holds the coordinates of the image of the j-th variable.
        """
        n = ring.nvars
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise UsageError("Expected a {n}x{n} matrix.".format(n=n))
        field = ring.field
        images = []
        for j in range(n):
            terms = {}
            for i in range(n):
                c = field.coerce(matrix[i][j])
                if c:
                    exponents = [0] * n
                    exponents[i] = 1
                    terms[tuple(exponents)] = c
            images.append(Polynomial(ring, terms))
        return cls(ring, images)

    @cached_property
    def matrix(self) -> List[List[FieldElement]]:
        n = self.ring.nvars
        unit = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
        return [[self.images[j].coefficient(unit[i]) for j in range(n)] for i in range(n)]

    def _monomial_image(self, monomial: Monomial) -> Terms:
        cached = self._memo.get(monomial)
        if cached is not None:
            return cached
        i = next(k for k, e in enumerate(monomial) if e)
        rest = monomial[:i] + (monomial[i] - 1,) + monomial[i + 1:]
        image = terms_mul(self.images[i].term_dict, self._monomial_image(rest))
        self._memo[monomial] = image
        return image

    def __call__(self, f: Polynomial) -> Polynomial:
        if f.ring.variables != self.ring.variables:
            raise UsageError('Substitution and polynomial belong to different rings.')
        result: Terms = {}
        for m, c in f.term_dict.items():
            result = terms_add(result, self._monomial_image(m), scale=c)
        return Polynomial(self.ring, result)

    def apply_matrix(self, matrix: PolyMatrix) -> PolyMatrix:
        return matrix.map_entries(self)

    def compose(self, other: LinearSubstitution) -> LinearSubstitution:
        """
        self after other: x_j -> self(other(x_j)).
        """
        return LinearSubstitution(self.ring, [self(image) for image in other.images])

    __matmul__ = compose

    def inverse(self) -> LinearSubstitution:
        n = self.ring.nvars
        field = self.ring.field
        augmented = [list(row) + [field.one() if i == k else field.zero() for k in range(n)]
                     for i, row in enumerate(self.matrix)]
        reduced, pivots = linalg.row_reduce(augmented)
        if pivots[:n] != list(range(n)) or len(reduced) < n:
            raise UsageError('Substitution is not invertible.')
        return LinearSubstitution.from_matrix([row[n:] for row in reduced], self.ring)

    def __pow__(self, exponent: int) -> LinearSubstitution:
        if exponent < 0:
            return self.inverse() ** -exponent
        result = LinearSubstitution.identity(self.ring)
        base = self
        while exponent:
            if exponent & 1:
                result = result.compose(base)
            base = base.compose(base)
            exponent >>= 1
        return result

    def is_identity(self) -> bool:
        return list(self.images) == self.ring.gens()

    @cached_property
    def permutation(self) -> Optional[Tuple[int, ...]]:
        """
        When every variable maps to a variable, the tuple p with x_j -> x_p[j]; None otherwise.
        """
        targets = []
        for image in self.images:
            if len(image) != 1:
                return None
            c, m = image.leading_term()
            if c != 1:
                return None
            targets.append(m.index(1))
        if len(set(targets)) != len(targets):
            return None
        return tuple(targets)

    @cached_property
    def cycle_type(self) -> Optional[Partition]:
        permutation = self.permutation
        if permutation is None:
            return None
        seen = set()
        lengths = []
        for start in range(len(permutation)):
            if start in seen:
                continue
            length, k = 0, start
            while k not in seen:
                seen.add(k)
                k = permutation[k]
                length += 1
            lengths.append(length)
        return tuple(sorted(lengths, reverse=True))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearSubstitution):
            return NotImplemented
        return self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __str__(self) -> str:
        return '| ' + ' '.join(str(image) for image in self.images) + ' |'

    def __repr__(self) -> str:
        return '<LinearSubstitution {text}>'.format(text=self)


# Operations in function form

def apply_substitution(substitution: LinearSubstitution, f: Polynomial) -> Polynomial:
    return substitution(f)


def substitution_from_matrix(matrix: Sequence[Sequence[Scalar]], ring: RingContext) -> LinearSubstitution:
    return LinearSubstitution.from_matrix(matrix, ring)


def jacobian(polynomials: Sequence[Polynomial]) -> PolyMatrix:
    """
    The n x m matrix of partial derivatives d f_j / d x_i.
    """
    if not polynomials:
        raise UsageError('jacobian() needs at least one polynomial.')
    ring = polynomials[0].ring
    for f in polynomials:
        if not f.is_homogeneous():
            raise GradingError("jacobian() needs homogeneous polynomials, got {f}.".format(f=f))
    rows = [[f.derivative(i) for f in polynomials] for i in range(ring.nvars)]
    source = tuple((f.degree if f else 1) - 1 for f in polynomials)
    return PolyMatrix(ring, FreeModule((0,) * ring.nvars), FreeModule(source), rows)


def hessian_det_scaled(f: Polynomial, scale: Scalar) -> Polynomial:
    """
    scale * det of the matrix of second partial derivatives of f.
    """
    if not f.is_homogeneous():
        raise GradingError("hessian_det_scaled() needs a homogeneous polynomial, got {f}.".format(f=f))
    ring = f.ring
    gradient = [f.derivative(i) for i in range(ring.nvars)]
    hessian = [[g.derivative(k) for k in range(ring.nvars)] for g in gradient]
    return linalg.determinant(hessian, ring.zero(), ring.one()).scale(scale)


def minors(k: int, matrix: PolyMatrix) -> List[Polynomial]:
    """
    The nonzero k x k minors, row subsets in the outer loop and column subsets in the inner loop, both in
    lexicographic order.
    """
    rows, columns = matrix.shape
    if not 1 <= k <= min(rows, columns):
        raise UsageError(
            "minors() needs 1 <= k <= {bound}, got {k}.".format(bound=min(rows, columns), k=k)
        )
    ring = matrix.ring
    result = []
    for row_subset in itertools.combinations(range(rows), k):
        for column_subset in itertools.combinations(range(columns), k):
            block = [[matrix.rows[r][c] for c in column_subset] for r in row_subset]
            determinant = linalg.determinant(block, ring.zero(), ring.one())
            if determinant:
                result.append(determinant)
    return result
