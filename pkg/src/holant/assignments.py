"""Alphabets, edge sets, and the assignment calculus.

An assignment is a total map from an ordered set of edge labels into the
symbol indices of a finite alphabet.  Everything numeric in this package is
keyed by the *canonical enumeration order* of a configuration space:
assignments are ordered lexicographically with the FIRST edge most
significant and symbol indices ascending.  Dense tables, serialized files,
and transform matrices all share this layout, so the order is fixed here
once and nowhere else.

Assignments compare as functions (sets of label/value pairs); the stored
label order only determines table indexing, not identity.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import EnumerationCapError, ScopeError, ValidationError

DEFAULT_SPACE_CAP = 2**24
SPACE_CAP_ENV = "HOLANT_MAX_SPACE"


def space_cap() -> int:
    """Current enumeration cap; override with the HOLANT_MAX_SPACE env var."""
    raw = os.environ.get(SPACE_CAP_ENV)
    if raw is None:
        return DEFAULT_SPACE_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValidationError(f"{SPACE_CAP_ENV} must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise ValidationError(f"{SPACE_CAP_ENV} must be positive, got {cap}")
    return cap


def check_space(size: int) -> int:
    """Fail loudly (instead of hanging) when a space is too large to enumerate."""
    cap = space_cap()
    if size > cap:
        raise EnumerationCapError(
            f"configuration space has {size} points, which exceeds the cap of "
            f"{cap}; set {SPACE_CAP_ENV} to raise the limit"
        )
    return size


def _check_labels(labels: tuple[str, ...], what: str) -> None:
    if len(labels) == 0:
        raise ValidationError(f"{what} must be non-empty")
    for lbl in labels:
        if not isinstance(lbl, str):
            raise ValidationError(f"{what} entries must be strings, got {lbl!r}")
    if len(set(labels)) != len(labels):
        dupes = sorted({l for l in labels if labels.count(l) > 1})
        raise ValidationError(f"{what} entries must be distinct; repeated: {dupes}")


@dataclass(frozen=True)
class Alphabet:
    """An ordered finite set of symbols; position defines the symbol index."""

    symbols: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        _check_labels(self.symbols, "alphabet symbols")

    @property
    def size(self) -> int:
        return len(self.symbols)

    def index(self, symbol: str) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise ValidationError(f"symbol {symbol!r} is not in the alphabet") from None

    @classmethod
    def of_size(cls, size: int) -> "Alphabet":
        """Alphabet with symbols "0", "1", ..., str(size - 1)."""
        if size < 1:
            raise ValidationError(f"alphabet size must be >= 1, got {size}")
        return cls(tuple(str(i) for i in range(size)))


@dataclass(frozen=True)
class EdgeSet:
    """An ordered finite set of edge labels; position defines enumeration order."""

    edges: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        _check_labels(self.edges, "edge labels")

    @property
    def size(self) -> int:
        return len(self.edges)

    def position(self, label: str) -> int:
        try:
            return self.edges.index(label)
        except ValueError:
            raise ScopeError(f"edge {label!r} is not in the edge set") from None


@dataclass(frozen=True)
class Scope:
    """A non-empty subset of a parent edge set.

    Members are normalized to the parent's order at construction, so every
    scope induces a single table layout no matter how its labels were given.
    """

    parent: EdgeSet
    members: tuple[str, ...]
    positions: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        members = tuple(self.members)
        _check_labels(members, "scope members")
        member_set = set(members)
        missing = member_set - set(self.parent.edges)
        if missing:
            raise ScopeError(f"scope members {sorted(missing)} are not in the parent edge set")
        ordered = tuple(lbl for lbl in self.parent.edges if lbl in member_set)
        object.__setattr__(self, "members", ordered)
        object.__setattr__(
            self, "positions", tuple(self.parent.edges.index(lbl) for lbl in ordered)
        )

    @classmethod
    def full(cls, parent: EdgeSet) -> "Scope":
        return cls(parent, parent.edges)

    @property
    def size(self) -> int:
        return len(self.members)

    def project(self, values: Sequence[int]) -> tuple[int, ...]:
        """Restrict a full tuple of parent-ordered values to this scope."""
        return tuple(values[p] for p in self.positions)


@dataclass(frozen=True)
class Partition:
    """An ordered list of pairwise-disjoint scopes covering their parent edge set."""

    parts: tuple[Scope, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts:
            raise ValidationError("a partition needs at least one part")
        parent = parts[0].parent
        for part in parts:
            if part.parent != parent:
                raise ScopeError("all parts of a partition must share one parent edge set")
        total = sum(part.size for part in parts)
        covered = set().union(*(part.members for part in parts))
        if total != len(covered):
            raise ScopeError("partition parts overlap")
        if covered != set(parent.edges):
            missing = sorted(set(parent.edges) - covered)
            raise ScopeError(f"partition does not cover the edge set; missing {missing}")

    @property
    def parent(self) -> EdgeSet:
        return self.parts[0].parent

    def __iter__(self) -> Iterator[Scope]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)


@dataclass(frozen=True, eq=False)
class Assignment:
    """A total map from edge labels to symbol indices.

    The same type also carries assignments into a basis-element set (which
    has the alphabet's size), e.g. the summation variables of a transformed
    configuration space.  Two assignments are equal when they are equal as
    functions; label order does not matter for identity, only for indexing.
    """

    alphabet: Alphabet
    labels: tuple[str, ...]
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "values", tuple(self.values))
        _check_labels(self.labels, "assignment labels")
        if len(self.values) != len(self.labels):
            raise ValidationError(
                f"assignment has {len(self.labels)} labels but {len(self.values)} values"
            )
        k = self.alphabet.size
        for v in self.values:
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < k:
                raise ValidationError(f"assignment value {v!r} is not an index in [0, {k})")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Assignment):
            return NotImplemented
        return self.alphabet == other.alphabet and dict(self.items()) == dict(other.items())

    def __hash__(self) -> int:
        return hash((self.alphabet, frozenset(self.items())))

    def items(self) -> Iterator[tuple[str, int]]:
        return zip(self.labels, self.values)

    def value(self, label: str) -> int:
        try:
            return self.values[self.labels.index(label)]
        except ValueError:
            raise ScopeError(f"edge {label!r} is not in the assignment domain") from None

    @property
    def size(self) -> int:
        return len(self.labels)

    def restrict(self, scope: Scope) -> "Assignment":
        """Restriction to a scope; the result follows the scope's member order."""
        missing = set(scope.members) - set(self.labels)
        if missing:
            raise ScopeError(
                f"scope is not a subset of the assignment domain; missing {sorted(missing)}"
            )
        lookup = dict(self.items())
        return Assignment(self.alphabet, scope.members, tuple(lookup[m] for m in scope.members))

    def union(self, other: "Assignment") -> "Assignment":
        """Union of two assignments on disjoint domains."""
        if self.alphabet != other.alphabet:
            raise ScopeError("cannot union assignments over different alphabets")
        overlap = set(self.labels) & set(other.labels)
        if overlap:
            raise ScopeError(f"overlapping domains: {sorted(overlap)}")
        return Assignment(
            self.alphabet, self.labels + other.labels, self.values + other.values
        )

    def decompose(self, partition: Partition) -> list["Assignment"]:
        """Split along a partition of the domain; the union of the pieces is self."""
        if set(partition.parent.edges) != set(self.labels):
            raise ScopeError("partition parent does not match the assignment domain")
        return [self.restrict(part) for part in partition]

    def to_index(self) -> int:
        """Canonical index: first label most significant, radix = alphabet size."""
        k = self.alphabet.size
        idx = 0
        for v in self.values:
            idx = idx * k + v
        return idx

    @classmethod
    def from_index(cls, alphabet: Alphabet, domain: EdgeSet | Scope, index: int) -> "Assignment":
        labels = domain.edges if isinstance(domain, EdgeSet) else domain.members
        k = alphabet.size
        n = len(labels)
        if not 0 <= index < k**n:
            raise ValidationError(f"index {index} out of range for a space of {k**n} points")
        values = []
        for _ in range(n):
            index, digit = divmod(index, k)
            values.append(digit)
        return cls(alphabet, labels, tuple(reversed(values)))


def enumerate_assignments(alphabet: Alphabet, domain: EdgeSet | Scope) -> Iterator[Assignment]:
    """Yield every assignment on the domain exactly once, in canonical order."""
    labels = domain.edges if isinstance(domain, EdgeSet) else domain.members
    k = alphabet.size
    check_space(k ** len(labels))
    for combo in itertools.product(range(k), repeat=len(labels)):
        yield Assignment(alphabet, labels, combo)
