"""Holant instances, brute-force evaluation, and identity certification.

A Holant instance is a shared edge set carrying two partitions, with a
generator table on every part of the first and a recognizer table on every
part of the second.  Its value is the sum over all assignments of the
product of every local table at the restricted assignment.

The engine evaluates that sum three ways: a definitional pure-Python loop
(`holant_value`), a c-tensor/pairing reduction (`pairing_form`), and the
same brute-force loop in the transformed space (`holant_value_transformed`).
`verify_holant` runs all of them, cross-checks the independent paths, and
certifies that the original and transformed sums agree within a tolerance
derived from the basis conditioning.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .assignments import Alphabet, EdgeSet, Partition, Scope, check_space
from .basis import Basis, check_transform, hat_transform
from .errors import HolantError, ScopeError, ValidationError
from .functions import SPACE_SYMBOLS, FnTable, c_tensor_multi, pairing

# Floor for relative-error denominators; only relevant when both sides are
# essentially zero, where the error is reported as zero rather than 0/0.
REL_ERROR_FLOOR = 1e-30

# Two evaluations of the same sum (brute force vs pairing reduction) must
# agree to this relative tolerance or the engine refuses to report.
CONSISTENCY_RTOL = 1e-12


def relative_error(lhs: complex, rhs: complex) -> float:
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), REL_ERROR_FLOOR)


def recommended_tolerance(basis: Basis, edge_count: int) -> float:
    """Certified bound on float error: transforms amplify like cond(T)^|E|."""
    return max(1e-9, basis.cond**edge_count * 1e-13)


@dataclass(frozen=True, eq=False)
class HolantInstance:
    """An edge set, two partitions of it, and local tables on every part."""

    alphabet: Alphabet
    edges: EdgeSet
    generators: tuple[FnTable, ...]
    recognizers: tuple[FnTable, ...]
    basis_ref: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "recognizers", tuple(self.recognizers))
        if not self.generators or not self.recognizers:
            raise ValidationError(
                "an instance needs at least one generator and one recognizer; "
                "represent a missing side with a constant-one table"
            )
        for side, tables in (("generator", self.generators), ("recognizer", self.recognizers)):
            for i, t in enumerate(tables):
                if t.alphabet != self.alphabet:
                    raise ValidationError(f"{side} {i} does not use the instance alphabet")
                if t.scope.parent != self.edges:
                    raise ValidationError(f"{side} {i} is not scoped over the instance edge set")
                if t.space != SPACE_SYMBOLS:
                    raise ValidationError(f"{side} {i} must be a symbol-indexed table")
        # Partition invariants (disjoint, covering) are enforced here.
        Partition(tuple(t.scope for t in self.generators))
        Partition(tuple(t.scope for t in self.recognizers))

    @property
    def generator_partition(self) -> Partition:
        return Partition(tuple(t.scope for t in self.generators))

    @property
    def recognizer_partition(self) -> Partition:
        return Partition(tuple(t.scope for t in self.recognizers))

    @property
    def space_size(self) -> int:
        return self.alphabet.size**self.edges.size

    def digest(self) -> str:
        from . import io as _io

        return _io.instance_digest(self)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one Holant identity check."""

    lhs: complex
    rhs: complex
    abs_error: float
    rel_error: float
    tolerance: float
    passed: bool
    instance_digest: str
    basis_digest: str
    elapsed_seconds: float
    lhs_pairing_rel: float
    rhs_pairing_rel: float
    fault: str | None = None


def _sum_over_space(k: int, n: int, lookups, chunks: int = 1) -> complex:
    """Sum the product of local-table lookups over all k^n assignments.

    Accumulation is sequential in canonical index order.  With chunks > 1
    the index range is split into contiguous chunks, each summed
    sequentially, and the chunk sums are combined in chunk order; that mode
    is tolerance-equivalent to the sequential one, not bit-equivalent.
    """
    if chunks < 1:
        raise ValidationError(f"chunks must be >= 1, got {chunks}")
    size = check_space(k**n)
    assignments = itertools.product(range(k), repeat=n)
    chunk_size = -(-size // chunks)
    total = 0j
    for start in range(0, size, chunk_size):
        part = 0j
        for combo in itertools.islice(assignments, min(chunk_size, size - start)):
            term = 1 + 0j
            for positions, values in lookups:
                idx = 0
                for p in positions:
                    idx = idx * k + combo[p]
                term *= values[idx]
            part += term
        total += part
    return total


def _lookups(tables: Sequence[FnTable]):
    # Restriction of an assignment tuple to a part is projection onto the
    # part's parent positions; the radix index over those digits is the
    # part-local canonical index.
    return [(t.scope.positions, t.values.tolist()) for t in tables]


def holant_value(inst: HolantInstance, *, chunks: int = 1) -> complex:
    """Brute-force Holant sum over the original configuration space."""
    return _sum_over_space(
        inst.alphabet.size,
        inst.edges.size,
        _lookups(inst.generators + inst.recognizers),
        chunks,
    )


def pairing_form(inst: HolantInstance) -> complex:
    """The same sum as the pairing of the two c-tensored sides.

    This is an independent evaluation path (vectorized tensor products and a
    reduction) used to cross-check `holant_value`.
    """
    check_space(inst.space_size)
    return pairing(c_tensor_multi(inst.generators), c_tensor_multi(inst.recognizers))


def transform_instance_tables(
    inst: HolantInstance, basis: Basis, method: str = "fast"
) -> tuple[tuple[FnTable, ...], tuple[FnTable, ...]]:
    """Hat-transform every generator and check-transform every recognizer."""
    gens = tuple(hat_transform(g, basis, method) for g in inst.generators)
    recs = tuple(check_transform(h, basis, method) for h in inst.recognizers)
    return gens, recs


def holant_value_transformed(inst: HolantInstance, basis: Basis, *, chunks: int = 1) -> complex:
    """Brute-force Holant sum over the transformed (basis-indexed) space."""
    gens, recs = transform_instance_tables(inst, basis)
    return _sum_over_space(
        inst.alphabet.size, inst.edges.size, _lookups(gens + recs), chunks
    )


def verify_holant(
    inst: HolantInstance,
    basis: Basis,
    tol: float | None = None,
    *,
    fault_seed: int | None = None,
    chunks: int = 1,
) -> VerificationReport:
    """Certify the Holant identity on one instance under one basis.

    Computes the brute-force sum on both sides of the identity, cross-checks
    each against its pairing form, and returns a report; a failing report is
    a normal return, not an exception.  `fault_seed` deliberately corrupts
    one transformed generator entry (a negative control: the report must
    then fail).
    """
    if basis.alphabet != inst.alphabet:
        raise ScopeError("instance and basis use different alphabets")
    if tol is None:
        tol = recommended_tolerance(basis, inst.edges.size)
    if tol <= 0:
        raise ValidationError(f"tolerance must be positive, got {tol}")

    start = time.perf_counter()
    k, n = inst.alphabet.size, inst.edges.size

    lhs = holant_value(inst, chunks=chunks)
    lhs_pairing_rel = relative_error(lhs, pairing_form(inst))
    if lhs_pairing_rel > CONSISTENCY_RTOL:
        raise HolantError(
            "internal inconsistency: brute-force sum and pairing form disagree "
            f"(relative error {lhs_pairing_rel:.3e})"
        )

    gens, recs = transform_instance_tables(inst, basis)
    rhs_pairing = pairing(c_tensor_multi(gens), c_tensor_multi(recs))

    fault = None
    if fault_seed is not None:
        gens, fault = _corrupt_generator(inst, basis, gens, recs, fault_seed, tol)

    rhs = _sum_over_space(k, n, _lookups(gens + recs), chunks)
    rhs_pairing_rel = relative_error(rhs, rhs_pairing)
    if fault is None and rhs_pairing_rel > max(CONSISTENCY_RTOL, tol):
        raise HolantError(
            "internal inconsistency: transformed sum and transformed pairing "
            f"disagree (relative error {rhs_pairing_rel:.3e})"
        )

    abs_error = abs(lhs - rhs)
    rel_error = relative_error(lhs, rhs)
    elapsed = time.perf_counter() - start

    from . import io as _io

    return VerificationReport(
        lhs=lhs,
        rhs=rhs,
        abs_error=abs_error,
        rel_error=rel_error,
        tolerance=tol,
        passed=rel_error <= tol,
        instance_digest=_io.instance_digest(inst),
        basis_digest=_io.basis_digest(basis),
        elapsed_seconds=elapsed,
        lhs_pairing_rel=lhs_pairing_rel,
        rhs_pairing_rel=rhs_pairing_rel,
        fault=fault,
    )


def _corrupt_generator(
    inst: HolantInstance,
    basis: Basis,
    gens: tuple[FnTable, ...],
    recs: tuple[FnTable, ...],
    fault_seed: int,
    tol: float,
) -> tuple[tuple[FnTable, ...], str]:
    """Perturb one transformed-generator entry by ~10*tol at output scale.

    The entry's output sensitivity (the partial sum of all other factors
    over assignments that hit it) calibrates the perturbation, so the
    corrupted sum is guaranteed to miss the true value by about 10*tol
    relative.
    """
    rng = np.random.default_rng(fault_seed)
    target = int(rng.integers(len(gens)))
    k, n = inst.alphabet.size, inst.edges.size

    other_lookups = _lookups(
        tuple(g for i, g in enumerate(gens) if i != target) + recs
    )
    target_scope = gens[target].scope
    sensitivity = np.zeros(k**target_scope.size, dtype=np.complex128)
    for combo in itertools.product(range(k), repeat=n):
        term = 1 + 0j
        for positions, values in other_lookups:
            idx = 0
            for p in positions:
                idx = idx * k + combo[p]
            term *= values[idx]
        t_idx = 0
        for p in target_scope.positions:
            t_idx = t_idx * k + combo[p]
        sensitivity[t_idx] += term

    entry = int(np.argmax(np.abs(sensitivity)))
    s = sensitivity[entry]
    if s == 0:
        raise HolantError(
            "fault injection has no effect: every entry of the chosen table "
            "is annihilated by the rest of the instance"
        )
    lhs_scale = max(abs(holant_value(inst)), REL_ERROR_FLOOR)
    delta = 10.0 * tol * lhs_scale / abs(s)

    corrupted = gens[target].values.copy()
    corrupted[entry] += delta
    new_table = FnTable(inst.alphabet, target_scope, corrupted, gens[target].space)
    new_gens = tuple(
        new_table if i == target else g for i, g in enumerate(gens)
    )
    fault = (
        f"transformed generator {target}, entry {entry}, perturbed by {delta:.6e}"
    )
    return new_gens, fault


def random_instance(
    seed: int,
    alphabet_size: int,
    edge_count: int,
    gen_parts: int,
    rec_parts: int,
    magnitude: float = 1.0,
) -> HolantInstance:
    """Deterministic random instance: balanced random partitions, disc-uniform entries."""
    if alphabet_size < 1 or edge_count < 1:
        raise ValidationError("alphabet and edge set must be non-empty")
    for name, parts in (("gen_parts", gen_parts), ("rec_parts", rec_parts)):
        if not 1 <= parts <= edge_count:
            raise ValidationError(
                f"infeasible partition: {name}={parts} with {edge_count} edges"
            )
    if magnitude <= 0:
        raise ValidationError(f"magnitude must be positive, got {magnitude}")

    rng = np.random.default_rng(seed)
    alphabet = Alphabet.of_size(alphabet_size)
    edges = EdgeSet(tuple(f"e{i + 1}" for i in range(edge_count)))

    def draw_partition(part_count: int) -> list[Scope]:
        order = [edges.edges[i] for i in rng.permutation(edge_count)]
        base, extra = divmod(edge_count, part_count)
        scopes, at = [], 0
        for i in range(part_count):
            size = base + (1 if i < extra else 0)
            scopes.append(Scope(edges, tuple(order[at : at + size])))
            at += size
        return scopes

    def draw_table(scope: Scope) -> FnTable:
        size = alphabet_size**scope.size
        radius = magnitude * np.sqrt(rng.random(size))
        angle = 2.0 * np.pi * rng.random(size)
        return FnTable(alphabet, scope, radius * np.exp(1j * angle))

    generators = tuple(draw_table(s) for s in draw_partition(gen_parts))
    recognizers = tuple(draw_table(s) for s in draw_partition(rec_parts))
    return HolantInstance(alphabet, edges, generators, recognizers)


def random_basis(
    seed: int,
    alphabet_size: int,
    cond_bound: float = 100.0,
    max_tries: int = 1000,
) -> Basis:
    """Deterministic random basis, resampled until the condition bound holds."""
    if cond_bound < 1.0:
        raise ValidationError(f"cond_bound must be >= 1, got {cond_bound}")
    rng = np.random.default_rng(seed)
    alphabet = Alphabet.of_size(alphabet_size)
    for _ in range(max_tries):
        mat = (
            rng.standard_normal((alphabet_size, alphabet_size))
            + 1j * rng.standard_normal((alphabet_size, alphabet_size))
        ) / np.sqrt(2.0)
        if np.linalg.cond(mat, 2) <= cond_bound:
            return Basis(alphabet, mat)
    raise HolantError(
        f"no basis with condition number <= {cond_bound} found in {max_tries} draws"
    )
