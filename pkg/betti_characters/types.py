from __future__ import annotations

from typing import Any, Optional, Protocol, Sequence, Tuple, TypeVar

# Exponent vectors, and terms of free modules (generator position, exponent vector).
Monomial = Tuple[int, ...]
ModuleTerm = Tuple[int, Monomial]

# Partitions are weakly decreasing tuples of positive integers.
Partition = Tuple[int, ...]


# Exact linear algebra is written once against this protocol, and used with fractions, field elements,
# univariate polynomials over a field and multivariate polynomials alike.
class RingElement(Protocol):
    def __add__(self, other: Any) -> Any: ...

    def __sub__(self, other: Any) -> Any: ...

    def __mul__(self, other: Any) -> Any: ...

    def __neg__(self) -> Any: ...


# Anything that knows the sizes of the conjugacy classes it lists, and the group order.
class ClassData(Protocol):
    class_sizes: Optional[Sequence[int]]
    group_order: Optional[int]


R = TypeVar('R', bound=RingElement)
