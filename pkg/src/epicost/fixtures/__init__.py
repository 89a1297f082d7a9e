"""Bundled scenario fixtures and reference curve sets.

JSON scenarios live next to this module and are addressable by stem name;
``bundled_curve_sets`` returns the three reference curve families used by
the trajectory-cost checks.
"""

from importlib import resources
from math import inf
from pathlib import Path

from ..costs import BorderCost, CostCurveSet, OutbreakCost, TransmissionCost

SCENARIOS = (
    "one_region_quadratic",
    "boundary_trio",
    "two_region_symmetric",
    "two_region_virus_free",
    "two_region_asymmetric",
    "import_dist_small",
)


def fixture_path(name: str) -> Path:
    """Filesystem path of a bundled scenario JSON (stem or filename)."""
    stem = name[:-5] if name.endswith(".json") else name
    if stem not in SCENARIOS:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(SCENARIOS)}")
    return Path(resources.files(__package__) / f"{stem}.json")


def quadratic_set() -> CostCurveSet:
    """Smooth quadratic suppression cost over a linear border curve."""
    return CostCurveSet(
        TransmissionCost(c0=1.0, tti_slope=0.0, tti_capacity=0.0,
                         breakdown_jump=0.0, wide_slope=1.0, wide_exponent=2.0),
        BorderCost(b0=2.0, i_free=4.0, curvature=1.0),
        OutbreakCost(per_case=0.5, exponent=1.0),
        import_multiplier=1.0)


def tti_breakdown_set() -> CostCurveSet:
    """Per-case control up to capacity 50, then a jump into wide measures."""
    return CostCurveSet(
        TransmissionCost(c0=1.0, tti_slope=0.3, tti_capacity=50.0,
                         breakdown_jump=5.0, wide_slope=0.6, wide_exponent=1.5),
        BorderCost(b0=3.0, i_free=5.0, curvature=2.0),
        OutbreakCost(per_case=1.0, exponent=1.0),
        import_multiplier=2.0)


def linear_set() -> CostCurveSet:
    """Linear suppression cost that never leaves the per-case regime."""
    return CostCurveSet(
        TransmissionCost(c0=2.0, tti_slope=0.8, tti_capacity=inf),
        BorderCost(b0=3.0, i_free=5.0, curvature=2.0),
        OutbreakCost(per_case=1.0, exponent=1.0),
        import_multiplier=1.5)


def bundled_curve_sets() -> dict[str, CostCurveSet]:
    return {
        "quadratic": quadratic_set(),
        "tti_breakdown": tti_breakdown_set(),
        "linear": linear_set(),
    }
