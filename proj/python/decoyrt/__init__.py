"""Decoy placement on temporal attack graphs."""

from ._core import (
    CapExceeded,
    GraphError,
    Instance,
    attack,
    earliest_arrival,
    export_lp,
    fixture,
    generate_synthetic,
    is_cut,
    load_instance,
    min_cut,
    parse_instance,
    solve,
    with_budget_factor,
)

__all__ = [
    "CapExceeded",
    "GraphError",
    "Instance",
    "attack",
    "earliest_arrival",
    "export_lp",
    "fixture",
    "generate_synthetic",
    "is_cut",
    "load_instance",
    "min_cut",
    "parse_instance",
    "solve",
    "with_budget_factor",
]
