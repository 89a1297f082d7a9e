"""Parametric cost curves: suppression, border control, and outbreak burden.

Shapes follow the qualitative constraints of the cost-of-policy model:
transmission-suppression cost starts at a positive readiness baseline and
rises with daily cases, cheap per case while test-trace-isolate capacity
holds and steeper (locally convex) past its breakdown point; border cost
falls from a full-closure maximum to zero at the free-travel import level,
convex because the last travelers are the most essential; outbreak burden
starts at zero and grows with cases.

All curves are immutable and evaluations are pure, so concurrent use is
safe. Array evaluation goes through the compiled kernels.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import DomainError, KinkAmbiguityError

_EPS_REL = 1e-6


def _require(cond: bool, msg: str):
    if not cond:
        raise DomainError(msg)


def _finite(v: float, name: str, allow_inf: bool = False):
    if math.isnan(v) or (not allow_inf and math.isinf(v)):
        raise DomainError(f"{name} must be finite, got {v}")


@dataclass(frozen=True)
class TransmissionCost:
    """Daily cost of holding domestic transmission at x new cases per day.

    Linear at slope ``tti_slope`` up to ``tti_capacity`` (per-case control),
    then jumps by ``breakdown_jump`` and grows as
    ``wide_slope * (x - tti_capacity) ** wide_exponent`` (society-wide
    measures). ``tti_capacity`` may be 0 (wide regime from the start) or
    ``inf`` (per-case control never breaks down).
    """

    c0: float
    tti_slope: float = 0.0
    tti_capacity: float = math.inf
    breakdown_jump: float = 0.0
    wide_slope: float = 0.0
    wide_exponent: float = 1.0

    def __post_init__(self):
        _finite(self.c0, "c0")
        _finite(self.tti_slope, "tti_slope")
        _finite(self.tti_capacity, "tti_capacity", allow_inf=True)
        _finite(self.breakdown_jump, "breakdown_jump")
        _finite(self.wide_slope, "wide_slope")
        _finite(self.wide_exponent, "wide_exponent")
        _require(self.c0 >= 0, f"c0 must be >= 0, got {self.c0}")
        _require(self.tti_slope >= 0, f"tti_slope must be >= 0, got {self.tti_slope}")
        _require(self.tti_capacity >= 0, f"tti_capacity must be >= 0, got {self.tti_capacity}")
        _require(self.breakdown_jump >= 0, f"breakdown_jump must be >= 0, got {self.breakdown_jump}")
        _require(self.wide_slope >= 0, f"wide_slope must be >= 0, got {self.wide_slope}")
        _require(self.wide_exponent >= 1, f"wide_exponent must be >= 1, got {self.wide_exponent}")

    @property
    def params(self) -> tuple:
        return (self.c0, self.tti_slope, self.tti_capacity,
                self.breakdown_jump, self.wide_slope, self.wide_exponent)

    def cost(self, x: float) -> float:
        if x < 0:
            raise DomainError(f"case level must be >= 0, got {x}")
        if x <= self.tti_capacity:
            return self.c0 + self.tti_slope * x
        return (self.c0 + self.tti_slope * self.tti_capacity + self.breakdown_jump
                + self.wide_slope * (x - self.tti_capacity) ** self.wide_exponent)

    def cost_arr(self, x: np.ndarray) -> np.ndarray:
        return _kernels.transmission_cost_arr(np.asarray(x, dtype=np.float64), *self.params)

    def marginal(self, x: float, side: str | None = None) -> float:
        """One-sided derivative; at the breakdown kink a side must be chosen.

        With a positive breakdown jump the right derivative at the kink is
        +inf (the cost level jumps); otherwise it is the wide-branch slope
        limit.
        """
        if x < 0:
            raise DomainError(f"case level must be >= 0, got {x}")
        cap = self.tti_capacity

        def wide(z):
            return self.wide_slope * self.wide_exponent * z ** (self.wide_exponent - 1.0)

        if x == cap and math.isfinite(cap):
            if cap > 0:
                if side is None:
                    raise KinkAmbiguityError(
                        f"derivative at the breakdown point x={cap} needs "
                        f"side='left' or 'right'")
                if side == "left":
                    return self.tti_slope
            # right side (the only side when cap == 0)
            return math.inf if self.breakdown_jump > 0 else wide(0.0)
        if x < cap:
            return self.tti_slope
        return wide(x - cap)

    def __call__(self, x: float) -> float:
        return self.cost(x)


@dataclass(frozen=True)
class BorderCost:
    """Daily cost of holding imports at level I, zero at the free-travel level.

    ``b0 * (1 - I / i_free) ** curvature`` on [0, i_free]; curvature >= 1
    makes removing the last imports the most expensive.
    """

    b0: float
    i_free: float
    curvature: float = 1.0

    def __post_init__(self):
        _finite(self.b0, "b0")
        _finite(self.i_free, "i_free")
        _finite(self.curvature, "curvature")
        _require(self.b0 >= 0, f"b0 must be >= 0, got {self.b0}")
        _require(self.i_free > 0, f"i_free must be > 0, got {self.i_free}")
        _require(self.curvature >= 1, f"curvature must be >= 1, got {self.curvature}")

    @property
    def params(self) -> tuple:
        return (self.b0, self.i_free, self.curvature)

    def cost(self, imports: float) -> float:
        if not 0 <= imports <= self.i_free:
            raise DomainError(
                f"import level must lie in [0, {self.i_free}], got {imports}")
        return self.b0 * (1.0 - imports / self.i_free) ** self.curvature

    def cost_arr(self, imports: np.ndarray) -> np.ndarray:
        return _kernels.border_cost_arr(np.asarray(imports, dtype=np.float64), *self.params)

    def marginal(self, imports: float, side: str | None = None) -> float:
        if not 0 <= imports <= self.i_free:
            raise DomainError(
                f"import level must lie in [0, {self.i_free}], got {imports}")
        slack = 1.0 - imports / self.i_free
        return -self.b0 * self.curvature / self.i_free * slack ** (self.curvature - 1.0)

    def rescaled(self, i_free: float) -> "BorderCost":
        """Same closure cost and curvature with the zero point moved to i_free."""
        return BorderCost(self.b0, i_free, self.curvature)

    def __call__(self, imports: float) -> float:
        return self.cost(imports)


@dataclass(frozen=True)
class OutbreakCost:
    """Realized daily outbreak burden ``per_case * x ** exponent``; zero at zero cases."""

    per_case: float = 0.0
    exponent: float = 1.0

    def __post_init__(self):
        _finite(self.per_case, "per_case")
        _finite(self.exponent, "exponent")
        _require(self.per_case >= 0, f"per_case must be >= 0, got {self.per_case}")
        _require(self.exponent >= 1, f"exponent must be >= 1, got {self.exponent}")

    @property
    def params(self) -> tuple:
        return (self.per_case, self.exponent)

    def cost(self, x: float) -> float:
        if x < 0:
            raise DomainError(f"case level must be >= 0, got {x}")
        return self.per_case * x**self.exponent

    def cost_arr(self, x: np.ndarray) -> np.ndarray:
        return _kernels.outbreak_cost_arr(np.asarray(x, dtype=np.float64), *self.params)

    def marginal(self, x: float, side: str | None = None) -> float:
        if x < 0:
            raise DomainError(f"case level must be >= 0, got {x}")
        return self.per_case * self.exponent * x ** (self.exponent - 1.0)

    def __call__(self, x: float) -> float:
        return self.cost(x)


@dataclass(frozen=True)
class CostCurveSet:
    """One region's three cost curves plus the import case multiplier.

    ``import_multiplier`` converts imported cases into total resulting cases
    (the imports plus their onward transmission).
    """

    transmission: TransmissionCost
    border: BorderCost
    outbreak: OutbreakCost = field(default_factory=OutbreakCost)
    import_multiplier: float = 1.0

    def __post_init__(self):
        _finite(self.import_multiplier, "import_multiplier")
        _require(self.import_multiplier >= 1,
                 f"import_multiplier must be >= 1, got {self.import_multiplier}")


@dataclass(frozen=True)
class ShapeCheck:
    name: str
    passed: bool
    detail: str
    field_path: str | None = None


@dataclass(frozen=True)
class ShapeReport:
    checks: tuple[ShapeCheck, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[ShapeCheck]:
        return [c for c in self.checks if not c.passed]


def _strictly_monotone(values: np.ndarray, increasing: bool) -> bool:
    diffs = np.diff(values)
    return bool(np.all(diffs > 0) if increasing else np.all(diffs < 0))


def validate_curve_set(curves: CostCurveSet, grid_points: int = 1000) -> ShapeReport:
    """Sample every curve on a grid and report pass/fail per shape invariant."""
    ct, cb, co = curves.transmission, curves.border, curves.outbreak
    checks = []

    def add(name, passed, detail, field_path=None):
        checks.append(ShapeCheck(name, bool(passed), detail, field_path))

    horizon = max(1.0, curves.import_multiplier * cb.i_free)
    if 0 < ct.tti_capacity < math.inf:
        horizon = max(horizon, 2.0 * ct.tti_capacity)

    xs = np.linspace(0.0, horizon, grid_points)
    ct_vals = ct.cost_arr(xs)
    add("transmission.baseline_positive", ct.c0 > 0,
        f"cost at zero cases is {ct.c0}", "transmission.c0")
    add("transmission.strictly_increasing", _strictly_monotone(ct_vals, True),
        f"sampled on [0, {horizon:g}] with {grid_points} points", "transmission")

    cap = ct.tti_capacity
    if 0 < cap < math.inf:
        eps = _EPS_REL * max(1.0, cap)
        rise = (ct.cost(cap + eps) - ct.cost(cap)) / eps
        add("transmission.breakdown_convex", rise > ct.tti_slope,
            f"marginal just past capacity {rise:g} vs slope before {ct.tti_slope:g}",
            "transmission.wide_slope")
    else:
        add("transmission.breakdown_convex", True,
            "no interior breakdown point (capacity 0 or infinite)")

    ys = np.linspace(0.0, cb.i_free, grid_points)
    cb_vals = cb.cost_arr(ys)
    add("border.closure_cost_positive", cb.b0 > 0,
        f"cost at zero imports is {cb.b0}", "border.b0")
    add("border.strictly_decreasing", _strictly_monotone(cb_vals, False),
        f"sampled on [0, {cb.i_free:g}]", "border")
    add("border.open_zero", abs(cb_vals[-1]) <= 1e-12,
        f"cost at free-travel level is {cb_vals[-1]:g}", "border.i_free")
    second = np.diff(cb_vals, 2)
    add("border.convex", bool(np.all(second >= -1e-9 * max(1.0, cb.b0))),
        "second differences nonnegative on a uniform grid", "border.curvature")

    co_vals = co.cost_arr(xs)
    add("outbreak.zero_at_zero", co_vals[0] == 0.0,
        f"burden at zero cases is {co_vals[0]:g}", "outbreak.per_case")
    add("outbreak.nondecreasing", bool(np.all(np.diff(co_vals) >= 0)),
        f"sampled on [0, {horizon:g}]", "outbreak")

    return ShapeReport(tuple(checks))
