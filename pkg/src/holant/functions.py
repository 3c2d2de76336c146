"""Dense complex-valued functions on configuration spaces.

Two table types live here.  ``SymbolFn`` is a function from the alphabet
itself into the complex numbers (the raw material of bases).  ``FnTable``
is a function on a whole configuration space ``A^scope`` (or, after a
holographic transform, on the basis-indexed space ``B^scope``), stored as a
dense vector in canonical assignment order.

The c-tensor ``(f * g)(x) = f(x|E1) * g(x|E2)`` of functions on disjoint
scopes is commutative and associative as a mathematical operation, and this
module keeps it *exactly* so in floating point: a c-tensor result remembers
its leaf factors, and any further tensoring flattens the leaves and
rematerializes every entry as one product taken in a fixed canonical order
(leaves sorted by scope position, multiplied left to right).  Any
bracketing or operand order therefore produces bit-identical tables.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .assignments import Alphabet, Assignment, EdgeSet, Scope
from .errors import ScopeError, ValidationError

SPACE_SYMBOLS = "symbols"
SPACE_BASIS = "basis"


def _coerce_values(values, expected: int, what: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.complex128)
    if arr.shape != (expected,):
        raise ValidationError(f"{what}: expected {expected} entries, got shape {arr.shape}")
    if not (np.all(np.isfinite(arr.real)) and np.all(np.isfinite(arr.imag))):
        raise ValidationError(f"{what}: entries must be finite (no NaN or Inf)")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


class SymbolFn:
    """A function from alphabet symbols to complex numbers."""

    def __init__(self, alphabet: Alphabet, values):
        self.alphabet = alphabet
        self.values = _coerce_values(values, alphabet.size, "symbol function")

    def value(self, symbol_index: int) -> complex:
        return complex(self.values[symbol_index])

    def __add__(self, other: "SymbolFn") -> "SymbolFn":
        if not isinstance(other, SymbolFn):
            return NotImplemented
        if other.alphabet != self.alphabet:
            raise ScopeError("cannot add symbol functions over different alphabets")
        return SymbolFn(self.alphabet, self.values + other.values)

    def __mul__(self, scalar) -> "SymbolFn":
        return SymbolFn(self.alphabet, self.values * complex(scalar))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymbolFn):
            return NotImplemented
        return self.alphabet == other.alphabet and np.array_equal(self.values, other.values)

    def __repr__(self) -> str:
        return f"SymbolFn({list(self.values)})"


def delta_basis(alphabet: Alphabet) -> list[SymbolFn]:
    """The standard basis: the i-th function is the indicator of symbol i."""
    eye = np.eye(alphabet.size, dtype=np.complex128)
    return [SymbolFn(alphabet, eye[:, i]) for i in range(alphabet.size)]


def cumulative_basis(alphabet: Alphabet) -> list[SymbolFn]:
    """The i-th function is the indicator of the first i+1 symbols.

    Stacked as matrix columns this is upper triangular with unit diagonal,
    so it is a basis for every alphabet size.
    """
    k = alphabet.size
    mat = np.triu(np.ones((k, k), dtype=np.complex128))
    return [SymbolFn(alphabet, mat[:, i]) for i in range(k)]


class FnTable:
    """A dense function on ``A^scope``, laid out in canonical assignment order.

    ``space`` records whether the index space is the alphabet ("symbols") or
    a basis-element set ("basis", for transformed tables); mixing the two in
    one operation is rejected.  Tables are immutable after construction.
    """

    def __init__(self, alphabet: Alphabet, scope: Scope | EdgeSet, values, space: str = SPACE_SYMBOLS):
        if isinstance(scope, EdgeSet):
            scope = Scope.full(scope)
        if not isinstance(scope, Scope):
            raise ValidationError(f"scope must be a Scope or EdgeSet, got {type(scope).__name__}")
        if space not in (SPACE_SYMBOLS, SPACE_BASIS):
            raise ValidationError(f"unknown index space {space!r}")
        self.alphabet = alphabet
        self.scope = scope
        self.space = space
        self.values = _coerce_values(
            values, alphabet.size**scope.size, f"table on scope {scope.members}"
        )
        # Leaf factors for canonical c-tensor materialization; a fresh table
        # is its own single leaf.
        self._leaves: tuple[FnTable, ...] = (self,)

    @classmethod
    def zeros(cls, alphabet: Alphabet, scope: Scope | EdgeSet, space: str = SPACE_SYMBOLS) -> "FnTable":
        size = alphabet.size ** (scope.size if isinstance(scope, Scope) else scope.size)
        return cls(alphabet, scope, np.zeros(size, dtype=np.complex128), space)

    @property
    def size(self) -> int:
        return len(self.values)

    def value_at(self, x: Assignment) -> complex:
        if set(x.labels) != set(self.scope.members):
            raise ScopeError("assignment domain does not match the table scope")
        k = self.alphabet.size
        idx = 0
        for lbl in self.scope.members:
            idx = idx * k + x.value(lbl)
        return complex(self.values[idx])

    def _check_compatible(self, other: "FnTable", op: str) -> None:
        if self.alphabet != other.alphabet:
            raise ScopeError(f"{op}: tables use different alphabets")
        if self.space != other.space:
            raise ScopeError(f"{op}: cannot mix symbol-indexed and basis-indexed tables")
        if self.scope != other.scope:
            raise ScopeError(f"{op}: tables have different scopes")

    def add(self, other: "FnTable") -> "FnTable":
        self._check_compatible(other, "add")
        return FnTable(self.alphabet, self.scope, self.values + other.values, self.space)

    def scale(self, alpha) -> "FnTable":
        return FnTable(self.alphabet, self.scope, self.values * complex(alpha), self.space)

    def __add__(self, other):
        return self.add(other) if isinstance(other, FnTable) else NotImplemented

    def __mul__(self, scalar):
        return self.scale(scalar)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, FnTable):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.scope == other.scope
            and self.space == other.space
            and np.array_equal(self.values, other.values)
        )

    def __repr__(self) -> str:
        return f"FnTable(scope={self.scope.members}, space={self.space!r}, size={self.size})"


def _symmetric_products(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    # Entrywise complex product via explicit real arithmetic.  Each partial
    # product is rounded on its own (no FMA contraction), which makes the
    # result bitwise symmetric in the operands; numpy's fused complex
    # multiply is not.
    out = np.empty(u.shape, dtype=np.complex128)
    out.real = u.real * v.real - u.imag * v.imag
    out.imag = u.real * v.imag + u.imag * v.real
    return out


def pairing(f, g) -> complex:
    """The bilinear pairing: the sum of f(x) * g(x) over the shared index set.

    No complex conjugation is applied; the pairing is bilinear, not
    sesquilinear.  Entries are summed in canonical index order, and the
    result is exactly symmetric in the two arguments.
    """
    if isinstance(f, SymbolFn) and isinstance(g, SymbolFn):
        if f.alphabet != g.alphabet:
            raise ScopeError("pairing: functions use different alphabets")
    elif isinstance(f, FnTable) and isinstance(g, FnTable):
        f._check_compatible(g, "pairing")
    else:
        raise ScopeError("pairing needs two SymbolFn or two FnTable over the same index set")
    return complex(np.sum(_symmetric_products(f.values, g.values)))


def _flatten_leaves(tables: Sequence[FnTable]) -> list[FnTable]:
    leaves: list[FnTable] = []
    for t in tables:
        if not isinstance(t, FnTable):
            raise ValidationError(f"c-tensor operands must be FnTable, got {type(t).__name__}")
        leaves.extend(t._leaves)
    return leaves


def c_tensor_multi(tables: Iterable[FnTable]) -> FnTable:
    """The p-fold c-tensor of tables on pairwise-disjoint scopes.

    The result is independent of operand order and bracketing, bit for bit:
    entries are materialized as products over the flattened leaf factors in
    canonical scope order.
    """
    tables = list(tables)
    if not tables:
        raise ValidationError("c-tensor of zero tables is not defined")
    if len(tables) == 1:
        return tables[0]
    leaves = _flatten_leaves(tables)
    first = leaves[0]
    parent, alphabet, space = first.scope.parent, first.alphabet, first.space
    for leaf in leaves[1:]:
        if leaf.alphabet != alphabet:
            raise ScopeError("c-tensor: tables use different alphabets")
        if leaf.space != space:
            raise ScopeError("c-tensor: cannot mix symbol-indexed and basis-indexed tables")
        if leaf.scope.parent != parent:
            raise ScopeError("c-tensor: tables live over different parent edge sets")

    total = sum(leaf.scope.size for leaf in leaves)
    union_positions = sorted(p for leaf in leaves for p in leaf.scope.positions)
    if len(set(union_positions)) != total:
        dupes = sorted(
            {parent.edges[p] for p in union_positions if union_positions.count(p) > 1}
        )
        raise ScopeError(f"overlapping scopes: {dupes}")

    k = alphabet.size
    axis_of = {pos: ax for ax, pos in enumerate(union_positions)}
    full_shape = (k,) * total
    leaves = sorted(leaves, key=lambda leaf: leaf.scope.positions[0])

    def leaf_view(leaf: FnTable) -> np.ndarray:
        shape = [1] * total
        for pos in leaf.scope.positions:
            shape[axis_of[pos]] = k
        return leaf.values.reshape(shape)

    acc = np.empty(full_shape, dtype=np.complex128)
    acc[...] = leaf_view(leaves[0])
    for leaf in leaves[1:]:
        np.multiply(acc, leaf_view(leaf), out=acc)

    scope = Scope(parent, tuple(parent.edges[p] for p in union_positions))
    result = FnTable(alphabet, scope, acc.reshape(-1), space)
    result._leaves = tuple(leaves)
    return result


def c_tensor(f: FnTable, g: FnTable) -> FnTable:
    """The c-tensor of two tables on disjoint scopes of one parent edge set."""
    return c_tensor_multi([f, g])


def vectorize(f: FnTable) -> np.ndarray:
    """Coordinates of a table in canonical order (a writable copy)."""
    return f.values.copy()


def kron(u, v) -> np.ndarray:
    """Standard Kronecker product of two coordinate vectors."""
    return np.kron(np.asarray(u, dtype=np.complex128), np.asarray(v, dtype=np.complex128))
