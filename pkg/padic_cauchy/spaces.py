"""Q_p^n with the sup norm, disks, and the vector protocol the solvers share."""
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Protocol, Sequence, Tuple, Union

from .enums import Boundary
from .errors import (
    DimensionMismatchError,
    InvalidFieldValueError,
    PrecisionExhaustedError,
    PrimeMismatchError,
)
from .padic_arith import (
    PLUS_INFINITY,
    LogNorm,
    PadicNumber,
    Prime,
    Rational,
    agrees_with,
    as_prime,
    compact,
    divide_int,
    embed_rational,
    exact_zero,
    from_int,
    multiply_int,
    norm,
    norm_bound,
    parse_padic,
    power_of_p,
    render,
    with_absolute_precision,
)


class BanachVector(Protocol):
    """What the series solver needs from an element of the underlying Banach space."""

    prime: Prime

    def __add__(self, other): ...

    def __sub__(self, other): ...

    def scale(self, factor: PadicNumber): ...

    def multiply_int(self, k: int): ...

    def divide_int(self, k: int): ...

    def norm(self) -> LogNorm: ...

    def norm_bound(self) -> LogNorm: ...

    @property
    def is_exact_zero(self) -> bool: ...

    def with_absolute_precision(self, absolute_precision: int): ...

    def agrees_with(self, other) -> bool: ...


@dataclass(frozen=True)
class Vector:
    prime: Prime
    entries: Tuple[PadicNumber, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))
        if len(self.entries) == 0:
            raise InvalidFieldValueError(
                field_name="entries",
                reason="A vector needs at least one entry.",
                field_value=list(self.entries),
            )
        for entry in self.entries:
            if entry.prime != self.prime:
                raise PrimeMismatchError(self.prime.p, entry.p)

    @classmethod
    def of(cls, entries: Sequence[PadicNumber]) -> "Vector":
        if len(entries) == 0:
            raise InvalidFieldValueError(
                field_name="entries", reason="A vector needs at least one entry.", field_value=[]
            )
        return cls(entries[0].prime, tuple(entries))

    @classmethod
    def from_rationals(
        cls, values: Sequence[Rational], p: Union[int, Prime], precision: int
    ) -> "Vector":
        prime = as_prime(p)
        return cls(prime, tuple(embed_rational(value, prime, precision) for value in values))

    @classmethod
    def zero(cls, p: Union[int, Prime], dimension: int) -> "Vector":
        prime = as_prime(p)
        return cls(prime, tuple(exact_zero(prime) for _ in range(dimension)))

    @classmethod
    def basis(cls, p: Union[int, Prime], dimension: int, j: int) -> "Vector":
        """The exact standard basis vector e_j (0-based)."""
        prime = as_prime(p)
        return cls(
            prime,
            tuple(from_int(1, prime) if i == j else exact_zero(prime) for i in range(dimension)),
        )

    @property
    def dimension(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[PadicNumber]:
        return iter(self.entries)

    def __getitem__(self, index: int) -> PadicNumber:
        return self.entries[index]

    def _check(self, other: "Vector") -> None:
        if other.prime != self.prime:
            raise PrimeMismatchError(self.prime.p, other.prime.p)
        if other.dimension != self.dimension:
            raise DimensionMismatchError(self.dimension, other.dimension)

    def __add__(self, other: "Vector") -> "Vector":
        self._check(other)
        return Vector(self.prime, tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: "Vector") -> "Vector":
        self._check(other)
        return Vector(self.prime, tuple(x - y for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> "Vector":
        return Vector(self.prime, tuple(-x for x in self.entries))

    def scale(self, factor: PadicNumber) -> "Vector":
        return Vector(self.prime, tuple(factor * x for x in self.entries))

    def multiply_int(self, k: int) -> "Vector":
        return Vector(self.prime, tuple(multiply_int(x, k) for x in self.entries))

    def divide_int(self, k: int) -> "Vector":
        return Vector(self.prime, tuple(divide_int(x, k) for x in self.entries))

    def norm(self) -> LogNorm:
        return vector_norm(self)

    def norm_bound(self) -> LogNorm:
        return vector_norm_bound(self)

    @property
    def is_exact_zero(self) -> bool:
        return all(x.is_exact_zero for x in self.entries)

    @property
    def is_exact(self) -> bool:
        return all(x.is_exact for x in self.entries)

    def with_absolute_precision(self, absolute_precision: int) -> "Vector":
        return Vector(
            self.prime, tuple(with_absolute_precision(x, absolute_precision) for x in self.entries)
        )

    def agrees_with(self, other: "Vector") -> bool:
        self._check(other)
        return all(agrees_with(x, y) for x, y in zip(self.entries, other.entries))

    def precision_floor(self) -> LogNorm:
        return precision_floor(self.entries)

    def render(self) -> str:
        return "(" + ", ".join(render(x) for x in self.entries) + ")"

    def compact(self) -> List[str]:
        return [compact(x) for x in self.entries]

    def __str__(self) -> str:
        return self.render()


def vector_norm(x: Vector) -> LogNorm:
    """
    The sup norm max_i |x_i|_p.

    An entry known only as O(p^a) is harmless when its bound p^{-a} does not exceed the
    largest known entry norm; otherwise the norm is undetermined and PrecisionExhausted
    is raised.
    """
    known = [norm(e) for e in x.entries if not e.is_zero_at_precision]
    unknown = [norm_bound(e) for e in x.entries if e.is_zero_at_precision]
    largest = max(known, default=LogNorm.zero())
    if unknown and max(unknown) > largest:
        raise PrecisionExhaustedError(f"Sup norm of {x.render()} is undetermined")
    return largest


def precision_floor(values: Iterable[PadicNumber]) -> LogNorm:
    """p^{-a} for the smallest absolute precision a among the values; 0 when all are exact."""
    smallest = min((v.absolute_precision for v in values), default=PLUS_INFINITY)
    if smallest == PLUS_INFINITY:
        return LogNorm.zero()
    return LogNorm(-smallest)


def vector_norm_bound(x: Vector) -> LogNorm:
    """An upper bound for the sup norm that never raises."""
    return max(norm_bound(e) for e in x.entries)


@dataclass(frozen=True)
class Disk:
    radius: LogNorm
    boundary: Boundary = Boundary.OPEN

    @classmethod
    def open(cls, radius: LogNorm) -> "Disk":
        return cls(radius, Boundary.OPEN)

    @classmethod
    def closed(cls, radius: LogNorm) -> "Disk":
        return cls(radius, Boundary.CLOSED)

    @property
    def is_empty(self) -> bool:
        return self.radius.is_zero

    @property
    def is_everything(self) -> bool:
        return self.radius.is_unbounded

    def render(self, p=None) -> str:
        relation = "<" if self.boundary is Boundary.OPEN else "<="
        return f"|z| {relation} {self.radius.render(p)}"


def disk_contains(d: Disk, z: PadicNumber) -> bool:
    if d.is_empty:
        return False
    if d.is_everything:
        return True
    magnitude = norm_bound(z)
    inside = magnitude < d.radius if d.boundary is Boundary.OPEN else magnitude <= d.radius
    if z.is_zero_at_precision and not inside:
        raise PrecisionExhaustedError(f"Cannot place {render(z)} relative to {d.render()}")
    return inside


def shell_points(p: Union[int, Prime], m_from: int, count: int) -> List[PadicNumber]:
    """One exact point p^m per norm shell |z| = p^{-m}, for m = m_from, m_from + 1, ..."""
    prime = as_prime(p)
    return [power_of_p(m, prime) for m in range(m_from, m_from + count)]


def _split_top_level(text: str) -> Iterable[str]:
    depth, start = 0, 0
    for i, char in enumerate(text):
        if char == "[":
            depth += 1
        elif char == "]":
            depth -= 1
        elif char == "," and depth == 0:
            yield text[start:i]
            start = i + 1
    yield text[start:]


def parse_vector(text: str, p: Union[int, Prime], precision: int) -> Vector:
    """Comma-separated rationals or compact p-adic forms, optionally in parentheses."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    prime = as_prime(p)
    return Vector(
        prime, tuple(parse_padic(part.strip(), prime, precision) for part in _split_top_level(body))
    )
