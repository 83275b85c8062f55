"""Counts and classification of totally ramified extensions of p-adic fields."""

from ._core import (
    BudgetExceeded,
    InfeasiblePolygon,
    InvalidArgument,
    InvalidTuple,
    OreViolation,
    RamcountError,
    count_by_discriminant,
    count_by_polygon,
    invariants,
    polygons,
    ram_polygon_of,
    residual_tuple_of,
    run,
    valid_discriminants,
)

__all__ = [
    "BudgetExceeded",
    "InfeasiblePolygon",
    "InvalidArgument",
    "InvalidTuple",
    "OreViolation",
    "RamcountError",
    "count_by_discriminant",
    "count_by_polygon",
    "invariants",
    "polygons",
    "ram_polygon_of",
    "residual_tuple_of",
    "run",
    "valid_discriminants",
]
