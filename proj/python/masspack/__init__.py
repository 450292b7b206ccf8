"""Python bindings for the masspack C++ core."""

from ._core import (
    CellField,
    Gauge,
    check_membership,
    demo_weight,
    duality_ratio,
    dyadic_min_cut,
    pack,
    run_demo,
    semicover_value,
    verify_splitting,
)

__all__ = [
    "CellField",
    "Gauge",
    "check_membership",
    "demo_weight",
    "duality_ratio",
    "dyadic_min_cut",
    "pack",
    "run_demo",
    "semicover_value",
    "verify_splitting",
]
