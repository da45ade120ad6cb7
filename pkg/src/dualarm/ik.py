"""Two-stage inverse kinematics.

Stage one drives the first three joints with a damped pseudo-inverse
Jacobian iteration on the position model; stage two extracts the three
wrist angles in closed form from the target rotation. The full solve
targets the wrist-center point (tool tip minus l_eff along the target
approach axis) so that bent-wrist poses round-trip exactly through FK.

Iteration details beyond the core scheme theta <- theta + gamma J+ dX:
residual-increasing steps are halved (up to ``halvings`` times) so the
recorded residual trace is always non-increasing, each step is clamped to
``step_clamp`` radians per joint as a safety default, and failed attempts
restart from uniform random in-limit joints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .chain import ArmSpec, JointVector, Pose, arm_fk, arm_frames, _lumped_position
from .errors import InvalidParameterError
from .transforms import wrap_angle

# Frobenius tolerance on the reconstructed rotation in solve_full
ROTATION_FRO_TOL = 1e-6

# sin(theta4) below this is treated as a wrist singularity
WRIST_SINGULAR_TOL = 1e-9

DEFAULT_INIT = (0.0, math.pi / 4, math.pi / 2)


@dataclass(frozen=True)
class IKParams:
    """Solver knobs. gamma is the step size, damping the pseudo-inverse
    regularizer lambda; restarts is the total number of initialization
    attempts (the first uses the caller's init, the rest are random)."""

    gamma: float = 0.5
    tol: float = 1e-6
    max_iter: int = 200
    damping: float = 1e-3
    restarts: int = 5
    step_clamp: float = 0.5
    halvings: int = 10
    seed: int = 0

    def __post_init__(self):
        if not (0.0 < self.gamma <= 2.0):
            raise InvalidParameterError(f"gamma must be in (0, 2], got {self.gamma!r}")
        if not (self.tol > 0.0):
            raise InvalidParameterError("tol must be positive")
        if self.max_iter < 1:
            raise InvalidParameterError("max_iter must be >= 1")
        if self.damping < 0.0:
            raise InvalidParameterError("damping must be >= 0")
        if self.restarts < 1:
            raise InvalidParameterError("restarts must be >= 1")


@dataclass(frozen=True)
class IKResult:
    joints: JointVector
    converged: bool
    iterations: int
    residual: float
    trace: Tuple[float, ...]
    singular_wrist: bool = False
    message: str = ""


def _lumped_jacobian(l1: float, lb: float, t0: float, t1: float, t2: float) -> np.ndarray:
    s0, c0 = math.sin(t0), math.cos(t0)
    s1, c1 = math.sin(t1), math.cos(t1)
    s12, c12 = math.sin(t1 + t2), math.cos(t1 + t2)
    b = l1 * s1 + lb * s12
    d = l1 * c1 + lb * c12
    return np.array([
        [b * c0, d * s0, lb * c12 * s0],
        [-b * s0, d * c0, lb * c12 * c0],
        [0.0, -b, -lb * s12],
    ])


def position_jacobian(spec: ArmSpec, theta0: float, theta1: float, theta2: float) -> np.ndarray:
    """Analytic 3x3 Jacobian of the closed-form position, columns in theta order."""
    for v in (theta0, theta1, theta2):
        if not math.isfinite(v):
            raise InvalidParameterError("jacobian angles must be finite")
    return _lumped_jacobian(spec.L1, spec.L2 + spec.l_eff, theta0, theta1, theta2)


def pseudo_inverse(J: np.ndarray, damping: float = 0.0) -> np.ndarray:
    """Damped pseudo-inverse J^T (J J^T + lambda^2 I)^-1.

    With damping 0 this falls back to the Moore-Penrose pseudo-inverse so
    rank-deficient Jacobians stay well-defined.
    """
    if damping < 0.0:
        raise InvalidParameterError("damping must be >= 0")
    J = np.asarray(J, dtype=float)
    if damping == 0.0:
        return np.linalg.pinv(J)
    n = J.shape[0]
    return J.T @ np.linalg.inv(J @ J.T + damping * damping * np.eye(n))


def _clamp_to_limits(theta: np.ndarray, limits) -> np.ndarray:
    out = np.array([wrap_angle(v) for v in theta])
    for i, (lo, hi) in enumerate(limits):
        out[i] = min(max(out[i], lo), hi)
    return out


def _elbow_seeds(l1: float, lb: float, l0: float, target: np.ndarray) -> list:
    """Elbow-up/elbow-down starting guesses from two-link geometry.

    Used only to initialize restarts near hard targets (folded arm, pan
    axis); the damped iteration always remains the solver of record.
    """
    x, y, z = target
    rho = math.hypot(x, y)
    zeta = z - l0
    if l1 <= 0.0 or lb <= 0.0:
        return []
    t0 = math.atan2(x, y)
    c2 = (rho * rho + zeta * zeta - l1 * l1 - lb * lb) / (2.0 * l1 * lb)
    c2 = min(1.0, max(-1.0, c2))
    seeds = []
    for t2 in (math.acos(c2), -math.acos(c2)):
        t1 = math.atan2(rho, zeta) - math.atan2(lb * math.sin(t2), l1 + lb * math.cos(t2))
        seeds.append((t0, wrap_angle(t1), t2))
    return seeds


def _solve_lumped(l1: float, lb: float, l0: float, target: np.ndarray,
                  init: Sequence[float], params: IKParams, limits,
                  seeds: Sequence[Sequence[float]] = ()) -> tuple:
    """Damped pseudo-inverse iteration on the lumped position model.

    Returns (theta, converged, iterations, residual, trace) for the best
    attempt seen. The trace holds accepted residuals only, so it is
    non-increasing within the returned attempt. Attempt 0 starts from the
    caller's init, following attempts use the provided seeds and then
    uniform random in-limit joints.
    """

    def pos(th):
        return _lumped_position(l1, lb, l0, th[0], th[1], th[2])

    rng = np.random.default_rng(params.seed)
    best = None  # (residual, theta, trace)
    total_iters = 0

    for attempt in range(params.restarts):
        if attempt == 0:
            theta = _clamp_to_limits(np.asarray(init, dtype=float), limits)
        elif attempt - 1 < len(seeds):
            theta = _clamp_to_limits(np.asarray(seeds[attempt - 1], dtype=float), limits)
        else:
            theta = np.array([rng.uniform(lo, hi) for lo, hi in limits])
        err = target - pos(theta)
        res = float(np.linalg.norm(err))
        trace = [res]

        while res > params.tol and total_iters < params.max_iter * params.restarts:
            if len(trace) - 1 >= params.max_iter:
                break
            total_iters += 1
            J = _lumped_jacobian(l1, lb, theta[0], theta[1], theta[2])
            step = params.gamma * (pseudo_inverse(J, params.damping) @ err)
            peak = float(np.abs(step).max())
            if peak > params.step_clamp:
                step = step * (params.step_clamp / peak)
            accepted = False
            for h in range(params.halvings + 1):
                cand = _clamp_to_limits(theta + step * (0.5 ** h), limits)
                cand_err = target - pos(cand)
                cand_res = float(np.linalg.norm(cand_err))
                if cand_res <= res:
                    theta, err, res = cand, cand_err, cand_res
                    trace.append(res)
                    accepted = True
                    break
            if not accepted:
                break  # stalled attempt; do not record an increasing residual

        if best is None or res < best[0]:
            best = (res, theta, trace)
        if res <= params.tol:
            break

    res, theta, trace = best
    return theta, res <= params.tol, total_iters, res, tuple(trace)


def solve_position(spec: ArmSpec, target: Sequence[float],
                   init: Sequence[float] = DEFAULT_INIT,
                   params: Optional[IKParams] = None) -> IKResult:
    """Solve the closed-form position model for (theta0, theta1, theta2).

    The wrist angles in the returned joint vector are zero. converged=False
    (never an exception) signals that every restart exhausted its budget.
    """
    params = params or IKParams()
    target = np.asarray(target, dtype=float).reshape(3)
    if not np.all(np.isfinite(target)):
        raise InvalidParameterError("IK target must be finite")
    limits = spec.joint_limits[:3]
    theta, converged, iters, res, trace = _solve_lumped(
        spec.L1, spec.L2 + spec.l_eff, spec.L0, target, init, params, limits)
    joints = JointVector((theta[0], theta[1], theta[2], 0.0, 0.0, 0.0), "arm")
    return IKResult(joints, converged, iters, res, trace)


@dataclass(frozen=True)
class WristSolution:
    theta3: float
    theta4: float
    theta5: float
    singular: bool

    @property
    def angles(self) -> Tuple[float, float, float]:
        return (self.theta3, self.theta4, self.theta5)


def _arm_rotation_upto3(theta0: float, theta1: float, theta2: float) -> np.ndarray:
    """Rotation of the first three arm DH rows, in shoulder axes.

    Link lengths only shift origins, so any spec gives the same rotation;
    a default-spec chain is used for the product.
    """
    spec = ArmSpec()
    frames = arm_frames(spec, JointVector((theta0, theta1, theta2, 0.0, 0.0, 0.0), "arm"))
    return frames[3].rotation


def wrist_rotation(theta3: float, theta4: float, theta5: float) -> np.ndarray:
    """Rotation of arm DH rows 4..6: the spherical wrist block."""
    c3, s3 = math.cos(theta3), math.sin(theta3)
    c4, s4 = math.cos(theta4), math.sin(theta4)
    c5, s5 = math.cos(theta5), math.sin(theta5)
    return np.array([
        [c3 * c4 * c5 - s3 * s5, -c3 * c4 * s5 - s3 * c5, -c3 * s4],
        [s3 * c4 * c5 + c3 * s5, -s3 * c4 * s5 + c3 * c5, -s3 * s4],
        [s4 * c5, -s4 * s5, c4],
    ])


def solve_wrist(target_R06: np.ndarray, theta0: float, theta1: float, theta2: float) -> WristSolution:
    """Extract (theta3, theta4, theta5) from the target end rotation.

    Computes R36 = R03^-1 @ R06 and inverts the wrist rotation block.
    At the wrist singularity (|sin theta4| < 1e-9) theta3 and theta5 are
    only jointly determined; the tie-break fixes theta3 = 0 and lets
    theta5 carry the full angle.
    """
    R06 = np.asarray(target_R06, dtype=float)
    if R06.shape != (3, 3) or np.abs(R06.T @ R06 - np.eye(3)).max() > 1e-8 \
            or abs(np.linalg.det(R06) - 1.0) > 1e-8:
        raise InvalidParameterError("target rotation must be orthonormal with det +1")
    R03 = _arm_rotation_upto3(theta0, theta1, theta2)
    R36 = R03.T @ R06

    s4 = math.hypot(R36[0, 2], R36[1, 2])
    if s4 < WRIST_SINGULAR_TOL:
        if R36[2, 2] > 0.0:  # theta4 = 0: R36 reduces to a rotation by theta3+theta5
            return WristSolution(0.0, 0.0, math.atan2(R36[1, 0], R36[0, 0]), True)
        return WristSolution(0.0, math.pi, math.atan2(R36[1, 0], R36[1, 1]), True)
    theta4 = math.atan2(s4, R36[2, 2])
    theta3 = math.atan2(-R36[1, 2], -R36[0, 2])
    theta5 = math.atan2(-R36[2, 1], R36[2, 0])
    return WristSolution(wrap_angle(theta3), wrap_angle(theta4), wrap_angle(theta5), False)


def solve_full(spec: ArmSpec, target: Pose, params: Optional[IKParams] = None,
               init: Sequence[float] = DEFAULT_INIT) -> IKResult:
    """Full six-joint solve: position stage on the wrist center, then wrist.

    The wrist center W = p - l_eff * R @ ez is invariant to the wrist
    angles, so the position stage runs on the lumped model with distal
    length L2 and the tool pose is recovered exactly by the wrist stage.
    The result is verified through FK before converged is set.
    """
    params = params or IKParams()
    p = target.position
    R = target.rotation
    if not np.all(np.isfinite(p)):
        raise InvalidParameterError("IK target must be finite")
    wrist_center = p - spec.l_eff * (R @ np.array([0.0, 0.0, 1.0]))

    limits = spec.joint_limits[:3]
    seeds = _elbow_seeds(spec.L1, spec.L2, spec.L0, wrist_center)
    theta, pos_ok, iters, res, trace = _solve_lumped(
        spec.L1, spec.L2, spec.L0, wrist_center, init, params, limits, seeds)
    if not pos_ok:
        joints = JointVector((theta[0], theta[1], theta[2], 0.0, 0.0, 0.0), "arm")
        return IKResult(joints, False, iters, res, trace,
                        message="position stage did not converge")

    wrist = solve_wrist(R, theta[0], theta[1], theta[2])
    full = JointVector(
        tuple(wrap_angle(v) for v in (theta[0], theta[1], theta[2], *wrist.angles)), "arm")
    pose = arm_fk(spec, full)
    pos_err = float(np.linalg.norm(pose.position - p))
    rot_err = float(np.linalg.norm(pose.rotation - R))
    if pos_err <= params.tol and rot_err <= ROTATION_FRO_TOL:
        return IKResult(full, True, iters, pos_err, trace, wrist.singular)
    return IKResult(full, False, iters, max(res, pos_err), trace, wrist.singular,
                    message=f"FK verification failed: pos {pos_err:.3e} rot {rot_err:.3e}")
