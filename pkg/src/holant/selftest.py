"""Built-in worked examples and reduced-size property sweeps.

Exercised by the `holant selftest` command; every check prints one line.
Failures here mean the installation is broken, not that some input is bad.
"""

from __future__ import annotations

import sys
import tempfile
from pathlib import Path

import numpy as np

from .assignments import Alphabet, EdgeSet, Scope
from .basis import (
    Basis,
    check_transform,
    factored_pairing_check,
    hat_transform,
    reconstruct,
)
from .engine import (
    HolantInstance,
    holant_value,
    holant_value_transformed,
    pairing_form,
    random_basis,
    random_instance,
    verify_holant,
)
from .functions import FnTable, c_tensor, c_tensor_multi
from .io import instance_digest, load_instance, save_instance


def _fixture31() -> tuple[HolantInstance, Basis]:
    alphabet = Alphabet(("0", "1"))
    edges = EdgeSet(("e",))
    inst = HolantInstance(
        alphabet,
        edges,
        (FnTable(alphabet, edges, [2, 3]),),
        (FnTable(alphabet, edges, [5, 7]),),
    )
    return inst, Basis.cumulative(alphabet)


def _check_worked_fixture() -> bool:
    inst, cumulative = _fixture31()
    ghat = hat_transform(inst.generators[0], cumulative)
    hcheck = check_transform(inst.recognizers[0], cumulative)
    report = verify_holant(inst, cumulative)
    return (
        holant_value(inst) == 31 + 0j
        and np.allclose(ghat.values, [-1, 3])
        and np.allclose(hcheck.values, [5, 12])
        and report.passed
        and abs(report.rhs - 31) < 1e-9
    )


def _check_standard_fixed_point() -> bool:
    for seed in range(5):
        inst = random_instance(seed, 2 + seed % 2, 3 + seed % 3, 2, 1 + seed % 2)
        standard = Basis.standard(inst.alphabet)
        if holant_value_transformed(inst, standard) != holant_value(inst):
            return False
    return True


def _random_table(rng, alphabet: Alphabet, scope) -> FnTable:
    size = alphabet.size ** scope.size
    return FnTable(alphabet, scope, rng.standard_normal(size) + 1j * rng.standard_normal(size))


def _check_transform_round_trip() -> bool:
    rng = np.random.default_rng(11)
    for seed in range(8):
        k = 2 + seed % 3
        alphabet = Alphabet.of_size(k)
        edges = EdgeSet(tuple(f"e{i}" for i in range(1 + seed % 3)))
        f = _random_table(rng, alphabet, Scope.full(edges))
        basis = random_basis(seed, k, cond_bound=8.0)
        back = reconstruct(hat_transform(f, basis), basis)
        if not np.allclose(back.values, f.values, rtol=1e-10, atol=1e-12):
            return False
        dense = hat_transform(f, basis, method="dense")
        fast = hat_transform(f, basis)
        if not np.allclose(dense.values, fast.values, rtol=1e-10, atol=1e-12):
            return False
    return True


def _check_c_tensor_laws() -> bool:
    rng = np.random.default_rng(23)
    alphabet = Alphabet.of_size(2)
    edges = EdgeSet(("a", "b", "c", "d"))
    for _ in range(8):
        f = _random_table(rng, alphabet, Scope(edges, ("a",)))
        g = _random_table(rng, alphabet, Scope(edges, ("b", "d")))
        h = _random_table(rng, alphabet, Scope(edges, ("c",)))
        left = c_tensor(c_tensor(f, g), h)
        right = c_tensor(f, c_tensor(g, h))
        swapped = c_tensor_multi([h, f, g])
        if not (np.array_equal(left.values, right.values) and left == swapped):
            return False
    return True


def _check_pairing_factorization() -> bool:
    rng = np.random.default_rng(37)
    alphabet = Alphabet.of_size(2)
    edges = EdgeSet(tuple(f"e{i}" for i in range(4)))
    from .assignments import enumerate_assignments

    for seed in range(8):
        basis = random_basis(100 + seed, 2, cond_bound=20.0)
        parts = [Scope(edges, ("e0", "e2")), Scope(edges, ("e1", "e3"))]
        fs = [_random_table(rng, alphabet, s) for s in parts]
        b = list(enumerate_assignments(alphabet, edges))[seed % 16]
        whole, factored = factored_pairing_check(fs, b, basis)
        if abs(whole - factored) > 1e-12 * max(abs(whole), abs(factored), 1e-30):
            return False
    return True


def _check_dual_paths() -> bool:
    for seed in range(10):
        n = 1 + seed % 5
        inst = random_instance(500 + seed, 2 + seed % 2, n, min(1 + seed % 2, n), 1)
        lhs, rhs = holant_value(inst), pairing_form(inst)
        if abs(lhs - rhs) > 1e-12 * max(abs(lhs), abs(rhs), 1e-30):
            return False
    return True


def _check_invariance_sweep() -> bool:
    for seed in range(20):
        n = 1 + seed % 5
        inst = random_instance(1000 + seed, 2 + seed % 2, n, 1 + seed % n, 1 + (seed // 2) % n)
        basis = random_basis(2000 + seed, inst.alphabet.size, cond_bound=50.0)
        if not verify_holant(inst, basis).passed:
            return False
    return True


def _check_negative_control() -> bool:
    for seed in range(3):
        inst = random_instance(3000 + seed, 2, 3, 2, 2)
        basis = random_basis(4000 + seed, 2, cond_bound=50.0)
        if verify_holant(inst, basis, fault_seed=seed).passed:
            return False
    return True


def _check_serialization() -> bool:
    with tempfile.TemporaryDirectory() as tmp:
        for seed in range(3):
            inst = random_instance(5000 + seed, 2, 4, 2, 3)
            path = Path(tmp) / f"inst{seed}.json"
            save_instance(inst, path)
            if instance_digest(load_instance(path)) != instance_digest(inst):
                return False
    return True


CHECKS = [
    ("worked-fixture-31", _check_worked_fixture),
    ("standard-basis-fixed-point", _check_standard_fixed_point),
    ("transform-round-trip-and-oracle", _check_transform_round_trip),
    ("c-tensor-laws", _check_c_tensor_laws),
    ("pairing-factorization", _check_pairing_factorization),
    ("dual-evaluation-paths", _check_dual_paths),
    ("holant-invariance-sweep", _check_invariance_sweep),
    ("negative-control", _check_negative_control),
    ("serialization-round-trip", _check_serialization),
]


def run_selftest(stream=None) -> bool:
    stream = stream or sys.stdout
    all_ok = True
    for name, check in CHECKS:
        try:
            ok = check()
            detail = ""
        except Exception as exc:  # a crash is a failure, not an abort
            ok = False
            detail = f" ({type(exc).__name__}: {exc})"
        all_ok &= ok
        print(f"[{'ok' if ok else 'FAIL'}] {name}{detail}", file=stream)
    print(f"selftest: {'all checks passed' if all_ok else 'FAILURES detected'}", file=stream)
    return all_ok
