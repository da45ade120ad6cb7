"""Actuator sizing for the two shoulder joints.

Torque convention: every torque here is a mass moment in kg.cm, exactly the
unit the servo datasheet stall figures use (gravity is implicit and never
multiplied in). Do not convert to N.m anywhere in this module.

The model: link masses grow linearly with length (sheet stock), the two
shoulder torques follow from summing mass moments along the outstretched
arm, and the link budget L1 + L2 is fixed so the sweep redistributes one
scalar. Feasibility is the strict comparison against the worst-case motor
limits; the -10 sentinel exists only in the plot-oriented export, never in
stored torques.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .chain import ArmSpec, SheetSpec
from .errors import InfeasibleDesignError, InvalidParameterError

# Nominal feasible band and chosen point quoted in the design notes that
# accompany the default constants. The computed interval is narrower; the
# sweep report states both rather than forcing agreement.
NOMINAL_FEASIBLE_INTERVAL = (16.0, 24.0)
NOMINAL_L1 = 20.0


@dataclass(frozen=True)
class MotorSpec:
    """Shoulder servo parameters. beta = efficiency / safety_factor scales
    stall torque into the usable worst-case limit."""

    stall_torque: float = 35.0
    efficiency: float = 0.7
    safety_factor: float = 1.75
    shoulder_motor_count: int = 2

    def __post_init__(self):
        if not (math.isfinite(self.stall_torque) and self.stall_torque > 0):
            raise InvalidParameterError("stall_torque must be positive")
        if not (0.0 < self.efficiency <= 1.0):
            raise InvalidParameterError("efficiency must be in (0, 1]")
        if self.safety_factor < 1.0:
            raise InvalidParameterError("safety_factor must be >= 1")
        if self.shoulder_motor_count < 1:
            raise InvalidParameterError("shoulder_motor_count must be >= 1")

    @property
    def beta(self) -> float:
        return self.efficiency / self.safety_factor


@dataclass(frozen=True)
class TorqueReport:
    """One sweep grid point: true torques plus the strict feasibility flag."""

    L1: float
    L2: float
    T1: float
    T2: float
    feasible: bool


@dataclass(frozen=True)
class SweepTable:
    rows: Tuple[TorqueReport, ...]
    limits: Tuple[float, float]
    sentinel_value: float = -10.0

    def feasible_rows(self) -> List[TorqueReport]:
        return [r for r in self.rows if r.feasible]

    def largest_feasible_interval(self) -> Optional[Tuple[float, float]]:
        """(L1_lo, L1_hi) of the longest contiguous feasible run, or None."""
        best = None
        start = None
        rows = self.rows
        for i, r in enumerate(rows):
            if r.feasible and start is None:
                start = i
            if (not r.feasible or i == len(rows) - 1) and start is not None:
                end = i if r.feasible else i - 1
                if best is None or rows[end].L1 - rows[start].L1 > best[1] - best[0]:
                    best = (rows[start].L1, rows[end].L1)
                start = None
        return best

    def to_csv(self) -> str:
        lines = ["L1,T1,T2,feasible"]
        for r in self.rows:
            lines.append(f"{r.L1:g},{r.T1:.9g},{r.T2:.9g},{str(r.feasible).lower()}")
        return "\n".join(lines) + "\n"

    def to_plot_csv(self) -> str:
        """Plot-oriented export: infeasible points carry the sentinel in both
        torque columns so they fall off the chart."""
        lines = ["L1,T1_plot,T2_plot"]
        s = self.sentinel_value
        for r in self.rows:
            if r.feasible:
                lines.append(f"{r.L1:g},{r.T1:.9g},{r.T2:.9g}")
            else:
                lines.append(f"{r.L1:g},{s:g},{s:g}")
        return "\n".join(lines) + "\n"

    def report(self, nominal_interval: Tuple[float, float] = NOMINAL_FEASIBLE_INTERVAL) -> str:
        """Human-readable sweep summary including the feasibility interval note."""
        t1wc, t2wc = self.limits
        lines = [
            f"sweep: {len(self.rows)} grid points, limits T1 < {t1wc:g}, T2 < {t2wc:g} kg.cm",
        ]
        interval = self.largest_feasible_interval()
        if interval is None:
            lines.append("no feasible grid points under the worst-case limits")
        else:
            lines.append(
                f"computed feasible interval: L1 in [{interval[0]:.2f}, {interval[1]:.2f}] cm"
            )
            lo, hi = nominal_interval
            if interval[0] > lo or interval[1] < hi:
                lines.append(
                    f"note: the nominal feasible band of {lo:g} to {hi:g} cm quoted for this "
                    f"design is wider than what the torque model itself yields; the computed "
                    f"interval above follows the model and is the one reported here. The "
                    f"nominal choice L1 = {NOMINAL_L1:g} cm lies inside both."
                )
        return "\n".join(lines)


def link_mass(L: float, sheet: SheetSpec) -> float:
    """Mass of a length-L link cut from the sheet stock: K * L."""
    if not (math.isfinite(L) and L >= 0):
        raise InvalidParameterError(f"link length must be >= 0, got {L!r}")
    return sheet.K * L


def shoulder_torques_general(L1: float, L2: float, spec: ArmSpec) -> Tuple[float, float]:
    """Shoulder torques for explicit link lengths, summing mass moments.

    T1 loads: both link masses at their centers, the elbow motor at L1, the
    three wrist motors at the arm end, and the payload at full reach.
    T2 sees only the forearm side.
    """
    if not (math.isfinite(L1) and L1 >= 0 and math.isfinite(L2) and L2 >= 0):
        raise InvalidParameterError("link lengths must be >= 0")
    m, m_p, le = spec.m, spec.m_p, spec.l_eff
    m_l1 = link_mass(L1, spec.sheet)
    m_l2 = link_mass(L2, spec.sheet)
    t1 = (m_l1 * (L1 / 2.0) + m * L1 + m_l2 * (L1 + L2 / 2.0)
          + 3.0 * m * (L1 + L2) + m_p * (L1 + L2 + le))
    t2 = m_l2 * (L2 / 2.0) + 3.0 * m * L2 + m_p * (L2 + le)
    return t1, t2


def shoulder_torques_collapsed(L1: float, spec: ArmSpec,
                               budget: Optional[float] = None) -> Tuple[float, float]:
    """Shoulder torques with L2 eliminated via L2 = budget - L1.

    Algebraically identical to the general form on the budget line; the
    cross terms collapse to K * budget^2 / 2.
    """
    b = spec.link_budget if budget is None else float(budget)
    if not (0.0 <= L1 <= b):
        raise InvalidParameterError(f"L1 must lie in [0, {b:g}], got {L1!r}")
    k, m, m_p, le = spec.sheet.K, spec.m, spec.m_p, spec.l_eff
    t1 = m * L1 + k * b * b / 2.0 + 3.0 * m * b + m_p * (b + le)
    rem = b - L1
    t2 = k * rem * rem / 2.0 + 3.0 * m * rem + m_p * (rem + le)
    return t1, t2


def worst_case_limits(motor: MotorSpec) -> Tuple[float, float]:
    """(T1wc, T2wc): usable torque limits after derating by beta.

    The first shoulder joint gangs shoulder_motor_count servos, the second
    has one.
    """
    # group as (stall * eff) / sf so the default constants stay exact in floats
    per_motor = motor.stall_torque * motor.efficiency / motor.safety_factor
    return motor.shoulder_motor_count * per_motor, per_motor


def sweep_link_lengths(spec: ArmSpec, motor: MotorSpec,
                       L1_min: float = 0.0, L1_max: Optional[float] = None,
                       step: float = 1.0) -> SweepTable:
    """Evaluate the collapsed torques over an L1 grid and flag feasibility.

    Stored torques are always the true values; the sentinel only appears in
    the plot export. Feasibility is the strict inequality pair against the
    worst-case limits.
    """
    budget = spec.link_budget
    if L1_max is None:
        L1_max = budget
    if not (0.0 <= L1_min < L1_max <= budget):
        raise InvalidParameterError(
            f"need 0 <= L1_min < L1_max <= {budget:g}, got [{L1_min!r}, {L1_max!r}]")
    if not (math.isfinite(step) and step > 0):
        raise InvalidParameterError("step must be positive")
    t1wc, t2wc = worst_case_limits(motor)
    rows = []
    n = int(math.floor((L1_max - L1_min) / step + 1e-9))
    for i in range(n + 1):
        l1 = min(L1_min + i * step, L1_max)
        t1, t2 = shoulder_torques_collapsed(l1, spec, budget)
        rows.append(TorqueReport(l1, budget - l1, t1, t2, t1 < t1wc and t2 < t2wc))
    if not rows:
        raise InvalidParameterError("empty sweep grid")
    return SweepTable(tuple(rows), (t1wc, t2wc))


def select_lengths(table: SweepTable, policy: str = "nearest_nominal",
                   nominal: float = NOMINAL_L1) -> Tuple[float, float]:
    """Pick (L1, L2) from a sweep.

    nearest_nominal: the feasible grid point closest to the nominal length
    (ties to the shorter link). interval_midpoint: the midpoint of the
    largest contiguous feasible interval.
    """
    if not table.rows:
        raise InvalidParameterError("sweep table is empty")
    budget = table.rows[0].L1 + table.rows[0].L2
    feasible = table.feasible_rows()
    if not feasible:
        raise InfeasibleDesignError("no feasible link lengths under the worst-case limits")
    if policy == "nearest_nominal":
        best = min(feasible, key=lambda r: (abs(r.L1 - nominal), r.L1))
        return best.L1, budget - best.L1
    if policy == "interval_midpoint":
        lo, hi = table.largest_feasible_interval()
        mid = (lo + hi) / 2.0
        return mid, budget - mid
    raise InvalidParameterError(f"unknown selection policy {policy!r}")
