"""Assignment calculus, c-tensor algebra, holographic basis transforms, and
brute-force certification of the Holant identity on finite-alphabet instances."""

__version__ = "0.1.0"

from .assignments import (
    Alphabet,
    Assignment,
    EdgeSet,
    Partition,
    Scope,
    check_space,
    enumerate_assignments,
    space_cap,
)
from .basis import (
    Basis,
    check_transform,
    e_slice_a,
    e_slice_b,
    e_value,
    factored_pairing_check,
    hat_transform,
    reconstruct,
    slice_matrix,
    tau_lift,
)
from .engine import (
    HolantInstance,
    VerificationReport,
    holant_value,
    holant_value_transformed,
    pairing_form,
    random_basis,
    random_instance,
    recommended_tolerance,
    transform_instance_tables,
    verify_holant,
)
from .errors import (
    EnumerationCapError,
    HolantError,
    ParseError,
    ScopeError,
    SingularBasisError,
    ValidationError,
)
from .functions import (
    FnTable,
    SymbolFn,
    c_tensor,
    c_tensor_multi,
    cumulative_basis,
    delta_basis,
    kron,
    pairing,
    vectorize,
)
from .io import (
    basis_digest,
    instance_digest,
    load_basis,
    load_instance,
    save_basis,
    save_instance,
    save_report,
)

__all__ = [
    "Alphabet",
    "Assignment",
    "Basis",
    "EdgeSet",
    "EnumerationCapError",
    "FnTable",
    "HolantError",
    "HolantInstance",
    "ParseError",
    "Partition",
    "Scope",
    "ScopeError",
    "SingularBasisError",
    "SymbolFn",
    "ValidationError",
    "VerificationReport",
    "basis_digest",
    "c_tensor",
    "c_tensor_multi",
    "check_space",
    "check_transform",
    "cumulative_basis",
    "delta_basis",
    "e_slice_a",
    "e_slice_b",
    "e_value",
    "enumerate_assignments",
    "factored_pairing_check",
    "hat_transform",
    "holant_value",
    "holant_value_transformed",
    "instance_digest",
    "kron",
    "load_basis",
    "load_instance",
    "pairing",
    "pairing_form",
    "random_basis",
    "random_instance",
    "recommended_tolerance",
    "reconstruct",
    "save_basis",
    "save_instance",
    "save_report",
    "slice_matrix",
    "space_cap",
    "tau_lift",
    "transform_instance_tables",
    "vectorize",
    "verify_holant",
]
