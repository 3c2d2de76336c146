"""Bases of the alphabet function space and the holographic transforms.

A basis is a set of |A| linearly independent functions on the alphabet,
stored as the columns of an invertible |A| x |A| matrix T (row = symbol,
column = basis element).  Lifting each element to a single-edge table and
c-tensoring along an edge set produces the slice functions whose span is
the whole table space; the coordinates of a table f in that slice basis are
its hat transform, and the pairings of f against the slices are its check
transform.

Every transform has two implementations:

* ``method="fast"`` works edge by edge, applying T (or its inverse or
  transpose) along one tensor axis at a time, at cost ``|A|^|E| * |E| * |A|``.
* ``method="dense"`` follows the definitions directly: it tabulates the
  slice functions, assembles the full ``|A|^|E| x |A|^|E|`` matrix, and
  solves or pairs against it.  This path is the oracle the fast path is
  tested against, so the two stay independent.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .assignments import Alphabet, Assignment, EdgeSet, Scope, check_space, enumerate_assignments
from .errors import ScopeError, SingularBasisError, ValidationError
from .functions import (
    SPACE_BASIS,
    SPACE_SYMBOLS,
    FnTable,
    SymbolFn,
    c_tensor_multi,
    cumulative_basis,
    delta_basis,
    pairing,
)

DET_THRESHOLD_SCALE = 1e-12
COND_CAP = 1e12
_INVERSE_REFINE_TRIGGER = 1e-12
_INVERSE_RESIDUAL_LIMIT = 1e-10


class Basis:
    """|A| linearly independent functions on the alphabet, as matrix columns.

    Construction validates invertibility (determinant bounded away from zero
    relative to the column scale, condition number below a hard cap),
    computes the inverse once via partial-pivoting factorization, and
    applies one Newton refinement step if the inverse residual warrants it.
    """

    def __init__(self, alphabet: Alphabet, matrix):
        k = alphabet.size
        mat = np.asarray(matrix, dtype=np.complex128)
        if mat.shape != (k, k):
            raise ValidationError(f"basis matrix must be {k}x{k}, got shape {mat.shape}")
        if not (np.all(np.isfinite(mat.real)) and np.all(np.isfinite(mat.imag))):
            raise ValidationError("basis matrix entries must be finite")

        col_scale = float(np.max(np.linalg.norm(mat, axis=0)))
        det = np.linalg.det(mat)
        if col_scale == 0.0 or abs(det) <= DET_THRESHOLD_SCALE * col_scale**k:
            raise SingularBasisError(
                f"basis elements are not linearly independent (|det| = {abs(det):.3e})"
            )
        cond = float(np.linalg.cond(mat, 2))
        if not np.isfinite(cond) or cond > COND_CAP:
            raise SingularBasisError(
                f"basis matrix condition number {cond:.3e} exceeds the cap {COND_CAP:.1e}"
            )

        inv = np.linalg.inv(mat)
        eye = np.eye(k, dtype=np.complex128)
        residual = float(np.max(np.abs(mat @ inv - eye)))
        if residual > _INVERSE_REFINE_TRIGGER:
            inv = inv @ (2.0 * eye - mat @ inv)
            residual = float(np.max(np.abs(mat @ inv - eye)))
        if residual > _INVERSE_RESIDUAL_LIMIT:
            raise SingularBasisError(
                f"basis inverse residual {residual:.3e} exceeds {_INVERSE_RESIDUAL_LIMIT:.1e}"
            )

        mat = mat.copy()
        mat.flags.writeable = False
        inv = inv.copy()
        inv.flags.writeable = False
        self.alphabet = alphabet
        self.matrix = mat
        self.inverse = inv
        self.cond = cond
        self.is_standard = bool(np.array_equal(mat, eye))

    @classmethod
    def from_elements(cls, alphabet: Alphabet, elements: Sequence[SymbolFn]) -> "Basis":
        if len(elements) != alphabet.size:
            raise ValidationError(
                f"a basis needs exactly {alphabet.size} elements, got {len(elements)}"
            )
        for el in elements:
            if el.alphabet != alphabet:
                raise ValidationError("basis elements must share the basis alphabet")
        return cls(alphabet, np.column_stack([el.values for el in elements]))

    @classmethod
    def standard(cls, alphabet: Alphabet) -> "Basis":
        return cls.from_elements(alphabet, delta_basis(alphabet))

    @classmethod
    def cumulative(cls, alphabet: Alphabet) -> "Basis":
        return cls.from_elements(alphabet, cumulative_basis(alphabet))

    @property
    def size(self) -> int:
        return self.alphabet.size

    @property
    def elements(self) -> tuple[SymbolFn, ...]:
        return tuple(SymbolFn(self.alphabet, self.matrix[:, j]) for j in range(self.size))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Basis):
            return NotImplemented
        return self.alphabet == other.alphabet and np.array_equal(self.matrix, other.matrix)

    def __repr__(self) -> str:
        return f"Basis(size={self.size}, cond={self.cond:.3g})"


def tau_lift(beta: SymbolFn, parent: EdgeSet, edge: str) -> FnTable:
    """Lift a function on the alphabet to a table on the single-edge scope {edge}.

    The single-edge canonical order coincides with symbol order, so the
    lifted table carries the same values; the lift is a vector-space
    isomorphism and reading the table back recovers the function.
    """
    return FnTable(beta.alphabet, Scope(parent, (edge,)), beta.values)


def e_value(a: Assignment, b: Assignment, basis: Basis) -> complex:
    """Evaluate the slice map at (a, b): the product over edges of element b(e) at symbol a(e)."""
    if a.alphabet != basis.alphabet or b.alphabet != basis.alphabet:
        raise ScopeError("assignments must use the basis alphabet")
    if set(a.labels) != set(b.labels):
        raise ScopeError("the two assignments must share one edge set")
    mat = basis.matrix
    acc = complex(1.0)
    for lbl in a.labels:
        acc *= complex(mat[a.value(lbl), b.value(lbl)])
    return acc


def _slice_scope(x: Assignment, scope: Scope | None) -> Scope:
    if scope is None:
        return Scope.full(EdgeSet(x.labels))
    if set(x.labels) != set(scope.members):
        raise ScopeError("assignment domain does not match the slice scope")
    return scope


def e_slice_b(b: Assignment, basis: Basis, scope: Scope | None = None) -> FnTable:
    """Fix the basis-side argument: the table on A^E of the c-tensor of lifted elements."""
    scope = _slice_scope(b, scope)
    elements = basis.elements
    lifts = [
        tau_lift(elements[b.value(e)], scope.parent, e) for e in scope.members
    ]
    if len(lifts) == 1:
        return lifts[0]
    return c_tensor_multi(lifts)


def e_slice_a(a: Assignment, basis: Basis, scope: Scope | None = None) -> FnTable:
    """Fix the symbol-side argument: the dual table on B^E of per-edge matrix rows."""
    scope = _slice_scope(a, scope)
    rows = [
        FnTable(basis.alphabet, Scope(scope.parent, (e,)), basis.matrix[a.value(e), :], SPACE_BASIS)
        for e in scope.members
    ]
    if len(rows) == 1:
        return rows[0]
    return c_tensor_multi(rows)


def slice_matrix(basis: Basis, scope: Scope | EdgeSet) -> np.ndarray:
    """The dense change-of-coordinates matrix M, one vectorized slice per column.

    Columns follow the canonical order of basis-index assignments; M is the
    |E|-fold Kronecker power of the basis matrix, but it is assembled here
    definitionally (column by column) so it can serve as an oracle.
    """
    if isinstance(scope, EdgeSet):
        scope = Scope.full(scope)
    k = basis.alphabet.size
    n = k**scope.size
    check_space(n * n)
    mat = np.empty((n, n), dtype=np.complex128)
    for j, b in enumerate(enumerate_assignments(basis.alphabet, scope)):
        mat[:, j] = e_slice_b(b, basis, scope).values
    return mat


def _check_transform_args(f: FnTable, basis: Basis, method: str, expected_space: str) -> None:
    if f.alphabet != basis.alphabet:
        raise ScopeError("table and basis use different alphabets")
    if f.space != expected_space:
        raise ScopeError(
            f"transform expects a {expected_space}-indexed table, got {f.space}-indexed"
        )
    if method not in ("fast", "dense"):
        raise ValidationError(f"unknown transform method {method!r}")
    check_space(f.size)


def _apply_along_axes(mat: np.ndarray, values: np.ndarray, k: int, rank: int) -> np.ndarray:
    tensor = values.reshape((k,) * rank)
    for axis in range(rank):
        tensor = np.moveaxis(np.tensordot(mat, tensor, axes=(1, axis)), 0, axis)
    return tensor.reshape(-1)


def hat_transform(f: FnTable, basis: Basis, method: str = "fast") -> FnTable:
    """Coordinates of f in the slice basis: the unique fhat with M @ fhat = f.

    The fast path applies the inverse basis matrix along each edge axis; the
    dense path solves against the definitional slice matrix.
    """
    _check_transform_args(f, basis, method, SPACE_SYMBOLS)
    if method == "dense":
        mat = slice_matrix(basis, f.scope)
        out = np.linalg.solve(mat, f.values)
    elif basis.is_standard:
        out = f.values.copy()
    else:
        out = _apply_along_axes(basis.inverse, f.values, basis.size, f.scope.size)
    return FnTable(f.alphabet, f.scope, out, SPACE_BASIS)


def check_transform(f: FnTable, basis: Basis, method: str = "fast") -> FnTable:
    """Pairings of f against every slice: entry b is the pairing of f with slice b."""
    _check_transform_args(f, basis, method, SPACE_SYMBOLS)
    if method == "dense":
        out = np.array(
            [
                pairing(f, e_slice_b(b, basis, f.scope))
                for b in enumerate_assignments(basis.alphabet, f.scope)
            ],
            dtype=np.complex128,
        )
    elif basis.is_standard:
        out = f.values.copy()
    else:
        out = _apply_along_axes(basis.matrix.T, f.values, basis.size, f.scope.size)
    return FnTable(f.alphabet, f.scope, out, SPACE_BASIS)


def reconstruct(fhat: FnTable, basis: Basis, method: str = "fast") -> FnTable:
    """Invert the hat transform: rebuild f from its slice-basis coordinates."""
    _check_transform_args(fhat, basis, method, SPACE_BASIS)
    if method == "dense":
        out = np.array(
            [
                pairing(fhat, e_slice_a(a, basis, fhat.scope))
                for a in enumerate_assignments(basis.alphabet, fhat.scope)
            ],
            dtype=np.complex128,
        )
    elif basis.is_standard:
        out = fhat.values.copy()
    else:
        out = _apply_along_axes(basis.matrix, fhat.values, basis.size, fhat.scope.size)
    return FnTable(fhat.alphabet, fhat.scope, out, SPACE_SYMBOLS)


def factored_pairing_check(
    fs: Sequence[FnTable], b: Assignment, basis: Basis
) -> tuple[complex, complex]:
    """Pair a c-tensor against a slice, both whole and factor by factor.

    Returns the unfactored pairing of the full c-tensor with the slice at b,
    and the product over parts of each factor paired with its restricted
    slice.  The two agree up to roundoff; the caller asserts closeness.
    """
    fs = list(fs)
    if not fs:
        raise ValidationError("factored pairing needs at least one table")
    parent = fs[0].scope.parent
    covered: set[str] = set()
    total = 0
    for f in fs:
        if f.scope.parent != parent:
            raise ScopeError("tables live over different parent edge sets")
        covered |= set(f.scope.members)
        total += f.scope.size
    if total != len(covered) or covered != set(b.labels):
        raise ScopeError("table scopes must partition the assignment's edge set")

    union_scope = Scope(parent, tuple(covered))
    unfactored = pairing(c_tensor_multi(fs), e_slice_b(b, basis, union_scope))
    factored = complex(1.0)
    for f in fs:
        b_part = b.restrict(f.scope)
        factored *= pairing(f, e_slice_b(b_part, basis, f.scope))
    return unfactored, factored
