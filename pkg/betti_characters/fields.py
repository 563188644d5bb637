"""
Exact coefficient fields: the rationals, and number fields presented as Q[a]/(f(a)) for a monic f.

Elements are stored as a vector of integer numerators over a single positive denominator, which is the canonical
form of the rational coefficient vector of the reduced representative (lowest terms, positive denominator). All
arithmetic stays in integers until the final gcd normalization.
"""
from __future__ import annotations

import dataclasses
import functools
import math
import operator
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from django.utils.functional import cached_property

from betti_characters import linalg
from betti_characters.exceptions import (
    DivisionByZero, ReducibleMinimalPolynomial, UnsupportedConjugation, UsageError
)

Rational = Union[int, Fraction]

# Univariate helpers over Q. Coefficient lists are ordered from the constant term upwards and kept trimmed.


def _trim(p: List[Fraction]) -> List[Fraction]:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(p: Sequence[Fraction], q: Sequence[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    remainder = _trim([Fraction(c) for c in p])
    lead = q[-1]
    quotient = [Fraction(0)] * max(len(remainder) - len(q) + 1, 0)
    while len(remainder) >= len(q):
        shift = len(remainder) - len(q)
        c = remainder[-1] / lead
        quotient[shift] = c
        for k, qk in enumerate(q):
            remainder[shift + k] -= c * qk
        _trim(remainder)
    return _trim(quotient), remainder


def _poly_mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> List[Fraction]:
    if not p or not q:
        return []
    result = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                result[i + j] += a * b
    return _trim(result)


def _poly_sub(p: Sequence[Fraction], q: Sequence[Fraction]) -> List[Fraction]:
    length = max(len(p), len(q))
    return _trim([(p[k] if k < len(p) else 0) - (q[k] if k < len(q) else 0) for k in range(length)])


def _cyclotomic_polynomial(m: int) -> List[Fraction]:
    # x^m - 1 is the product of the cyclotomic polynomials of all divisors of m.
    result = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]
    for d in range(1, m):
        if m % d == 0:
            result, remainder = _poly_divmod(result, _cyclotomic_polynomial(d))
            assert not remainder
    return result


@dataclasses.dataclass(frozen=True)
class FieldSpec:
    """
    A coefficient field. With no generator this is Q; otherwise Q[generator]/(min_poly), with `min_poly` given by
    its coefficients from the constant term upwards.
    """
    generator: Optional[str] = None
    min_poly: Tuple[Fraction, ...] = ()
    cyclotomic_order: Optional[int] = None

    def __post_init__(self) -> None:
        if self.generator is None:
            if self.min_poly or self.cyclotomic_order is not None:
                raise UsageError('A minimal polynomial requires a generator name.')
            return

        coefficients = tuple(Fraction(c) for c in self.min_poly)
        object.__setattr__(self, 'min_poly', coefficients)
        if len(coefficients) < 2 or coefficients[-1] != 1:
            raise UsageError('The minimal polynomial must be monic of degree at least one.')

        if self.cyclotomic_order is not None:
            if self.cyclotomic_order < 1:
                raise UsageError('The cyclotomic order must be a positive integer.')
            unity = [Fraction(-1)] + [Fraction(0)] * (self.cyclotomic_order - 1) + [Fraction(1)]
            if _poly_divmod(unity, coefficients)[1]:
                raise UsageError(
                    "Minimal polynomial does not divide {generator}^{order} - 1."
                    .format(generator=self.generator, order=self.cyclotomic_order)
                )

    @classmethod
    def rational(cls) -> FieldSpec:
        return cls()

    @classmethod
    def extension(cls, generator: str, min_poly: Sequence[Rational],
                  cyclotomic_order: Optional[int] = None) -> FieldSpec:
        return cls(generator, tuple(Fraction(c) for c in min_poly), cyclotomic_order)

    @classmethod
    def cyclotomic(cls, order: int, generator: str = 'a') -> FieldSpec:
        if order < 1:
            raise UsageError('The cyclotomic order must be a positive integer.')
        return cls(generator, tuple(_cyclotomic_polynomial(order)), order)

    @property
    def kind(self) -> str:
        return 'rational' if self.generator is None else 'extension'

    @property
    def is_rational(self) -> bool:
        return self.generator is None

    @property
    def degree(self) -> int:
        return 1 if self.generator is None else len(self.min_poly) - 1

    # Element constructors

    def zero(self) -> FieldElement:
        return FieldElement(self, (0,) * self.degree, 1)

    def one(self) -> FieldElement:
        return self.from_rational(1)

    def from_rational(self, value: Rational) -> FieldElement:
        value = Fraction(value)
        return FieldElement(self, (value.numerator,) + (0,) * (self.degree - 1), value.denominator)

    def gen(self) -> FieldElement:
        if self.generator is None:
            raise UsageError('The rational field has no generator.')
        return self.element([0, 1])

    def element(self, coefficients: Sequence[Rational]) -> FieldElement:
        """
        Build the residue class of a polynomial in the generator, given by its coefficients from the constant
        term upwards.
        """
        values = _trim([Fraction(c) for c in coefficients])
        if self.generator is None:
            if len(values) > 1:
                raise UsageError('The rational field has no generator.')
        elif len(values) > self.degree:
            values = _poly_divmod(values, self.min_poly)[1]
        values += [Fraction(0)] * (self.degree - len(values))
        denominator = 1
        for v in values:
            denominator = denominator * v.denominator // math.gcd(denominator, v.denominator)
        return FieldElement(self, tuple(int(v * denominator) for v in values), denominator)

    def coerce(self, value: Union[Rational, FieldElement]) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise UsageError('Field element belongs to a different field.')
            return value
        if isinstance(value, (int, Fraction)):
            return self.from_rational(value)
        raise UsageError("Cannot interpret {value!r} as a field element.".format(value=value))

    # Arithmetic support

    @cached_property
    def _reduction(self) -> Tuple[int, Dict[int, Tuple[int, ...]]]:
        # Powers a^d .. a^(2d-2) reduced modulo the minimal polynomial, over one common denominator.
        d = self.degree
        rows: Dict[int, List[Fraction]] = {}
        current = [-c for c in self.min_poly[:-1]]
        for k in range(d, 2 * d - 1):
            rows[k] = current
            # multiply by the generator and reduce the overflow coefficient
            top = current[-1]
            current = [Fraction(0)] + current[:-1]
            current = [c - top * m for c, m in zip(current, self.min_poly[:-1])]
        denominator = 1
        for row in rows.values():
            for c in row:
                denominator = denominator * c.denominator // math.gcd(denominator, c.denominator)
        return denominator, {k: tuple(int(c * denominator) for c in row) for k, row in rows.items()}

    def _multiply(self, x: Tuple[int, ...], y: Tuple[int, ...]) -> Tuple[Tuple[int, ...], int]:
        d = self.degree
        if d == 1:
            return (x[0] * y[0],), 1
        product = [0] * (2 * d - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        product[i + j] += a * b
        if not any(product[d:]):
            return tuple(product[:d]), 1
        denominator, table = self._reduction
        low = [c * denominator for c in product[:d]]
        for k in range(d, 2 * d - 1):
            c = product[k]
            if c:
                row = table[k]
                for i in range(d):
                    low[i] += c * row[i]
        return tuple(low), denominator

    @cached_property
    def _conjugate_images(self) -> List[FieldElement]:
        # Images of 1, a, ..., a^(d-1) under a -> a^(m-1).
        m = self.cyclotomic_order
        assert m is not None
        generator = self.gen()
        return [generator ** ((k * (m - 1)) % m) for k in range(self.degree)]

    @cached_property
    def _powers_sum_to_zero(self) -> bool:
        # 1 + a + ... + a^d = 0, so a^d may appear in printed representatives.
        return self.degree >= 2 and all(c == 1 for c in self.min_poly)

    def __str__(self) -> str:
        if self.generator is None:
            return 'QQ'
        polynomial = render_univariate(self.min_poly, self.generator)
        return 'QQ[{generator}]/({polynomial})'.format(generator=self.generator, polynomial=polynomial)


class FieldElement:
    """
    Immutable element of a `FieldSpec`. Supports the arithmetic operators with other elements of the same field
    and with Python integers and fractions.
    """
    __slots__ = ('field', '_num', '_den')

    field: FieldSpec
    _num: Tuple[int, ...]
    _den: int

    def __init__(self, field: FieldSpec, numerators: Sequence[int], denominator: int = 1):
        if denominator == 0:
            raise DivisionByZero('Zero denominator.')
        g = functools.reduce(math.gcd, numerators, denominator)
        if denominator < 0:
            g = -g
        if g != 1:
            numerators = tuple(n // g for n in numerators)
            denominator //= g
        object.__setattr__(self, 'field', field)
        object.__setattr__(self, '_num', tuple(numerators))
        object.__setattr__(self, '_den', denominator)

    def __setattr__(self, key: str, value: object) -> None:
        raise AttributeError('FieldElement is immutable.')

    def _coerce(self, other: object) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise UsageError('Field elements belong to different fields.')
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented

    # Inspection

    @property
    def coefficients(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(n, self._den) for n in self._num)

    @property
    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise UsageError("Field element {value} is not rational.".format(value=self))
        return Fraction(self._num[0], self._den)

    def is_integer(self) -> bool:
        return self.is_rational and self._den == 1

    def __bool__(self) -> bool:
        return any(self._num)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement) and other.field != self.field:
            return False
        if isinstance(other, (int, Fraction, FieldElement)):
            coerced = self._coerce(other)
            return self._num == coerced._num and self._den == coerced._den
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational:
            return hash(Fraction(self._num[0], self._den))
        return hash((self._num, self._den))

    # Arithmetic

    def __add__(self, other: object) -> FieldElement:
        y = self._coerce(other)
        if y is NotImplemented:
            return NotImplemented
        if self._den == y._den:
            return FieldElement(self.field, tuple(map(operator.add, self._num, y._num)), self._den)
        return FieldElement(self.field,
                            tuple(a * y._den + b * self._den for a, b in zip(self._num, y._num)),
                            self._den * y._den)

    __radd__ = __add__

    def __neg__(self) -> FieldElement:
        return FieldElement(self.field, tuple(-n for n in self._num), self._den)

    def __sub__(self, other: object) -> FieldElement:
        y = self._coerce(other)
        if y is NotImplemented:
            return NotImplemented
        return self + (-y)

    def __rsub__(self, other: object) -> FieldElement:
        y = self._coerce(other)
        if y is NotImplemented:
            return NotImplemented
        return y + (-self)

    def __mul__(self, other: object) -> FieldElement:
        y = self._coerce(other)
        if y is NotImplemented:
            return NotImplemented
        numerators, denominator = self.field._multiply(self._num, y._num)
        return FieldElement(self.field, numerators, denominator * self._den * y._den)

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if not self:
            raise DivisionByZero('Division by zero in {field}.'.format(field=self.field))
        if self.field.degree == 1:
            return FieldElement(self.field, (self._den,), self._num[0])

        # Extended Euclid on (representative, minimal polynomial), tracking the cofactor of the representative.
        modulus = list(self.field.min_poly)
        r0, r1 = modulus, _trim(list(self.coefficients))
        s0: List[Fraction] = []
        s1 = [Fraction(1)]
        while r1:
            quotient, remainder = _poly_divmod(r0, r1)
            r0, r1 = r1, remainder
            s0, s1 = s1, _poly_sub(s0, _poly_mul(quotient, s1))
        if len(r0) != 1:
            raise ReducibleMinimalPolynomial(
                "Minimal polynomial of {field} is reducible: {value} is a zero divisor."
                .format(field=self.field, value=self)
            )
        return self.field.element([c / r0[0] for c in s0])

    def __truediv__(self, other: object) -> FieldElement:
        y = self._coerce(other)
        if y is NotImplemented:
            return NotImplemented
        return self * y.inverse()

    def __rtruediv__(self, other: object) -> FieldElement:
        y = self._coerce(other)
        if y is NotImplemented:
            return NotImplemented
        return y * self.inverse()

    def __pow__(self, exponent: int) -> FieldElement:
        if exponent < 0:
            return self.inverse() ** -exponent
        result = self.field.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> FieldElement:
        """
        Complex conjugation: the identity on Q, and a -> a^(m-1) on a field with a primitive m-th root of unity
        as generator.
        """
        if self.field.is_rational or self.is_rational:
            return self
        if self.field.cyclotomic_order is None:
            raise UnsupportedConjugation(
                "Conjugation needs a cyclotomic order for {field}.".format(field=self.field)
            )
        result = self.field.zero()
        for c, image in zip(self.coefficients, self.field._conjugate_images):
            if c:
                result = result + image * c
        return result

    # Rendering in the polynomial expression grammar, ascending powers of the generator.

    def __str__(self) -> str:
        if self.field.generator is None or self.is_rational:
            return _render_rational(self._num[0], self._den)
        numerators = list(self._num)
        if self.field._powers_sum_to_zero:
            numerators = _fewest_terms(numerators + [0])
        terms = [(k, n) for k, n in enumerate(numerators) if n]
        if len(terms) == 1:
            k, n = terms[0]
            return _render_term(Fraction(n, self._den), self.field.generator, k)
        numerator = render_univariate([Fraction(n) for n in numerators], self.field.generator)
        if self._den == 1:
            return numerator
        return '({numerator})/{den}'.format(numerator=numerator, den=self._den)

    def __repr__(self) -> str:
        return "FieldElement('{value}')".format(value=self)


def _fewest_terms(numerators: List[int]) -> List[int]:
    """
    Among the representatives obtained by adding a constant to every coefficient, the one with the fewest terms.
    Ties keep the reduced representative.
    """
    def cost(shift: int) -> tuple:
        return sum(1 for n in numerators if n + shift), shift != 0, abs(shift), shift < 0

    shift = min({0} | {-n for n in numerators}, key=cost)
    return [n + shift for n in numerators]


def _render_rational(numerator: int, denominator: int) -> str:
    if denominator == 1:
        return str(numerator)
    return '{num}/{den}'.format(num=numerator, den=denominator)


def _render_term(coefficient: Fraction, variable: str, power: int) -> str:
    if power == 0:
        return _render_rational(coefficient.numerator, coefficient.denominator)
    name = variable if power == 1 else '{var}^{power}'.format(var=variable, power=power)
    if coefficient == 1:
        return name
    if coefficient == -1:
        return '-' + name
    return '{c}*{name}'.format(c=_render_rational(coefficient.numerator, coefficient.denominator), name=name)


def render_univariate(coefficients: Sequence[Fraction], variable: str) -> str:
    parts = [_render_term(Fraction(c), variable, k) for k, c in enumerate(coefficients) if c]
    if not parts:
        return '0'
    text = parts[0]
    for part in parts[1:]:
        text += part if part.startswith('-') else '+' + part
    return text


class FieldPolynomial:
    """
    Dense univariate polynomial over a `FieldSpec`, coefficients from the constant term upwards. Only what the
    characteristic polynomial computations need.
    """

    def __init__(self, field: FieldSpec, coefficients: Sequence[FieldElement]):
        values = [field.coerce(c) for c in coefficients]
        while values and not values[-1]:
            values.pop()
        self.field = field
        self.coefficients = tuple(values)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, k: int) -> FieldElement:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else self.field.zero()

    def __bool__(self) -> bool:
        return bool(self.coefficients)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldPolynomial):
            return NotImplemented
        return self.field == other.field and self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __add__(self, other: FieldPolynomial) -> FieldPolynomial:
        length = max(len(self.coefficients), len(other.coefficients))
        return FieldPolynomial(self.field, [self[k] + other[k] for k in range(length)])

    def __sub__(self, other: FieldPolynomial) -> FieldPolynomial:
        length = max(len(self.coefficients), len(other.coefficients))
        return FieldPolynomial(self.field, [self[k] - other[k] for k in range(length)])

    def __neg__(self) -> FieldPolynomial:
        return FieldPolynomial(self.field, [-c for c in self.coefficients])

    def __mul__(self, other: FieldPolynomial) -> FieldPolynomial:
        if not self or not other:
            return FieldPolynomial(self.field, [])
        product = [self.field.zero()] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    if b:
                        product[i + j] = product[i + j] + a * b
        return FieldPolynomial(self.field, product)

    def truncate(self, bound: int) -> FieldPolynomial:
        return FieldPolynomial(self.field, self.coefficients[:bound + 1])

    def evaluate(self, value: FieldElement) -> FieldElement:
        result = self.field.zero()
        for c in reversed(self.coefficients):
            result = result * value + c
        return result

    def __str__(self) -> str:
        if not self.coefficients:
            return '0'
        parts = []
        for k, c in enumerate(self.coefficients):
            if not c:
                continue
            text = str(c)
            if k and any(ch in text[1:] for ch in '+-') and not text.startswith('('):
                text = '(' + text + ')'
            if k == 0:
                parts.append(text)
            else:
                power = 't' if k == 1 else 't^{k}'.format(k=k)
                parts.append(power if text == '1' else '-' + power if text == '-1' else text + '*' + power)
        result = parts[0]
        for part in parts[1:]:
            result += part if part.startswith('-') else '+' + part
        return result

    def __repr__(self) -> str:
        return 'FieldPolynomial({text})'.format(text=self)


# Operations in function form


def _same_field(x: FieldElement, y: FieldElement) -> None:
    if x.field != y.field:
        raise UsageError('Field elements belong to different fields: {a} and {b}.'.format(a=x.field, b=y.field))


def fe_add(x: FieldElement, y: FieldElement) -> FieldElement:
    _same_field(x, y)
    return x + y


def fe_sub(x: FieldElement, y: FieldElement) -> FieldElement:
    _same_field(x, y)
    return x - y


def fe_mul(x: FieldElement, y: FieldElement) -> FieldElement:
    _same_field(x, y)
    return x * y


def fe_inv(x: FieldElement) -> FieldElement:
    return x.inverse()


def fe_conjugate(x: FieldElement) -> FieldElement:
    return x.conjugate()


def reverse_char_poly(matrix: Sequence[Sequence[FieldElement]], field: Optional[FieldSpec] = None) -> FieldPolynomial:
    """
    det(Id - t*A) as a polynomial in t.
    """
    if field is None:
        if not matrix:
            raise UsageError('Cannot infer the field of an empty matrix.')
        field = matrix[0][0].field
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise UsageError('reverse_char_poly() needs a square matrix.')
    zero, one = field.zero(), field.one()
    entries = [[FieldPolynomial(field, [one if i == j else zero, -field.coerce(matrix[i][j])])
                for j in range(n)] for i in range(n)]
    return linalg.determinant(entries, FieldPolynomial(field, []), FieldPolynomial(field, [one]))
