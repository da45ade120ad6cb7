import math

import numpy as np
import pytest

from dualarm.chain import ArmSpec, JointVector, Pose, arm_fk, arm_frames, position_closed_form
from dualarm.errors import InvalidParameterError
from dualarm.ik import (
    IKParams,
    position_jacobian,
    pseudo_inverse,
    solve_full,
    solve_position,
    solve_wrist,
    wrist_rotation,
)

from oracles import central_difference_jacobian, random_rotation


def rel_err(a, b):
    return np.abs(a - b) / np.maximum.reduce([np.abs(a), np.abs(b), np.ones_like(a)])


class TestJacobian:
    def test_pan_column_vanishes_with_folded_arm(self, spec, rng):
        for _ in range(20):
            t0 = rng.uniform(-math.pi, math.pi)
            J = position_jacobian(spec, t0, 0.0, 0.0)
            np.testing.assert_allclose(J[:, 0], np.zeros(3), atol=1e-12)

    def test_matches_finite_differences(self, spec, rng):
        for _ in range(300):
            t = rng.uniform(-math.pi, math.pi, 3)
            J = position_jacobian(spec, *t)
            J_fd = central_difference_jacobian(
                lambda x: position_closed_form(spec, *x), t, h=1e-6)
            assert rel_err(J, J_fd).max() < 1e-5

    def test_singular_at_full_extension(self, spec, rng):
        for _ in range(20):
            t0, t1 = rng.uniform(-math.pi, math.pi, 2)
            J = position_jacobian(spec, t0, t1, 0.0)
            assert abs(np.linalg.det(J)) < 1e-9


class TestPseudoInverse:
    def test_identity_undamped(self):
        np.testing.assert_allclose(pseudo_inverse(np.eye(3), 0.0), np.eye(3))

    def test_rank_deficient_diagonal(self):
        got = pseudo_inverse(np.diag([2.0, 1.0, 0.0]), 0.0)
        # SVD oracle
        ref = np.linalg.pinv(np.diag([2.0, 1.0, 0.0]))
        np.testing.assert_allclose(got, ref, atol=1e-12)
        np.testing.assert_allclose(got, np.diag([0.5, 1.0, 0.0]), atol=1e-12)

    def test_damped_diagonal_closed_form(self):
        lam = 0.1
        got = pseudo_inverse(np.diag([2.0, 1.0, 0.0]), lam)
        ref = np.diag([2.0 / (4.0 + lam ** 2), 1.0 / (1.0 + lam ** 2), 0.0])
        np.testing.assert_allclose(got, ref, atol=1e-12)

    def test_moore_penrose_identities(self, rng):
        for _ in range(50):
            J = rng.normal(size=(3, 3))
            Jp = pseudo_inverse(J, 0.0)
            np.testing.assert_allclose(J @ Jp @ J, J, atol=1e-9)
            np.testing.assert_allclose(Jp @ J @ Jp, Jp, atol=1e-9)
        for _ in range(50):
            # rank-2 matrices: outer product structure
            a = rng.normal(size=(3, 2))
            b = rng.normal(size=(2, 3))
            J = a @ b
            Jp = pseudo_inverse(J, 0.0)
            np.testing.assert_allclose(J @ Jp @ J, J, atol=1e-9)
            np.testing.assert_allclose(Jp @ J @ Jp, Jp, atol=1e-9)

    def test_rejects_negative_damping(self):
        with pytest.raises(InvalidParameterError):
            pseudo_inverse(np.eye(3), -1.0)


class TestSolvePosition:
    def test_already_at_target(self, spec):
        init = (0.3, 0.8, 1.1)
        target = position_closed_form(spec, *init)
        res = solve_position(spec, target, init=init)
        assert res.converged
        assert res.iterations == 0
        assert res.residual == 0.0

    def test_round_trip_interior_target(self, spec):
        res = solve_position(spec, (0.0, 30.0, 20.0))
        assert res.converged
        got = position_closed_form(spec, *res.joints.values[:3])
        assert np.linalg.norm(got - np.array([0.0, 30.0, 20.0])) <= 1e-6

    def test_unreachable_target(self, spec):
        res = solve_position(spec, (0.0, 0.0, 80.0))
        assert not res.converged
        assert res.residual >= 30.0 - 1e-6

    def test_rejects_non_finite(self, spec):
        with pytest.raises(InvalidParameterError):
            solve_position(spec, (math.nan, 0.0, 0.0))

    def test_trace_non_increasing(self, spec, rng):
        for _ in range(25):
            target = rng.uniform(-1, 1, 3) * np.array([30, 30, 30])
            res = solve_position(spec, target)
            trace = np.array(res.trace)
            assert np.all(np.diff(trace) <= 1e-12)

    def test_iteration_budget(self, spec):
        params = IKParams(max_iter=50, restarts=3)
        res = solve_position(spec, (0.0, 0.0, 80.0), params=params)
        assert res.iterations <= params.max_iter * params.restarts

    def test_converged_implies_residual_within_tol(self, spec, rng):
        params = IKParams()
        for _ in range(50):
            t = rng.uniform(-math.pi, math.pi, 3)
            target = position_closed_form(spec, *t)
            res = solve_position(spec, target, params=params)
            if res.converged:
                got = position_closed_form(spec, *res.joints.values[:3])
                assert np.linalg.norm(got - target) <= params.tol

    def test_params_validation(self):
        with pytest.raises(InvalidParameterError):
            IKParams(gamma=0.0)
        with pytest.raises(InvalidParameterError):
            IKParams(gamma=2.5)
        with pytest.raises(InvalidParameterError):
            IKParams(tol=0.0)
        with pytest.raises(InvalidParameterError):
            IKParams(restarts=0)


class TestSolveWrist:
    def test_zero_wrist(self, rng):
        spec = ArmSpec()
        for _ in range(20):
            t = rng.uniform(-math.pi, math.pi, 3)
            frames = arm_frames(spec, JointVector((*t, 0.0, 0.0, 0.0), "arm"))
            sol = solve_wrist(frames[3].rotation, *t)
            np.testing.assert_allclose(sol.angles, (0.0, 0.0, 0.0), atol=1e-9)
            assert sol.singular  # theta4 = 0 leaves theta3+theta5 shared

    def test_final_axis_rotation(self, rng):
        # a pure rotation about the final joint axis: theta5 carries it all
        spec = ArmSpec()
        for phi in (-2.0, -0.4, 0.7, 2.9):
            t = rng.uniform(-math.pi, math.pi, 3)
            R03 = arm_frames(spec, JointVector((*t, 0, 0, 0), "arm"))[3].rotation
            target = R03 @ wrist_rotation(0.0, 0.0, phi)
            sol = solve_wrist(target, *t)
            assert sol.singular
            np.testing.assert_allclose(sol.angles, (0.0, 0.0, phi), atol=1e-9)

    def test_reconstruction_non_singular(self, rng):
        spec = ArmSpec()
        count = 0
        while count < 300:
            t = rng.uniform(-math.pi, math.pi, 3)
            R06 = random_rotation(rng)
            R03 = arm_frames(spec, JointVector((*t, 0, 0, 0), "arm"))[3].rotation
            sol = solve_wrist(R06, *t)
            if sol.singular:
                continue
            count += 1
            rebuilt = R03 @ wrist_rotation(*sol.angles)
            assert np.linalg.norm(rebuilt - R06) < 1e-9

    def test_singular_tie_break_deterministic(self):
        t = (0.2, -0.5, 1.0)
        spec = ArmSpec()
        R03 = arm_frames(spec, JointVector((*t, 0, 0, 0), "arm"))[3].rotation
        target = R03 @ wrist_rotation(0.7, 0.0, 0.5)  # theta4 = 0: underdetermined
        sol = solve_wrist(target, *t)
        assert sol.singular
        assert sol.theta3 == 0.0
        assert sol.theta5 == pytest.approx(1.2, abs=1e-9)  # carries theta3+theta5

    def test_rejects_invalid_rotation(self):
        with pytest.raises(InvalidParameterError):
            solve_wrist(np.eye(3) * 1.1, 0.0, 0.0, 0.0)


class TestSolveFull:
    def test_round_trip_random_poses(self, spec, rng):
        for _ in range(300):
            th = rng.uniform(-math.pi, math.pi, 6)
            target = arm_fk(spec, JointVector(tuple(th), "arm"))
            res = solve_full(spec, target)
            assert res.converged
            pose = arm_fk(spec, res.joints)
            assert np.linalg.norm(pose.position - target.position) < 1e-6
            assert np.linalg.norm(pose.rotation - target.rotation) < 1e-6

    def test_zero_pose_reachable(self, spec):
        target = arm_fk(spec, JointVector((0.0,) * 6, "arm"))
        res = solve_full(spec, target)
        assert res.converged

    def test_unreachable_pose(self, spec):
        target = Pose(arm_fk(spec, JointVector((0.0,) * 6, "arm")).transform)
        far = Pose(target.transform.__class__(
            target.rotation, np.array([0.0, 0.0, 80.0])))
        res = solve_full(spec, far)
        assert not res.converged

    def test_solution_angles_are_wrapped(self, spec, rng):
        for _ in range(50):
            th = rng.uniform(-math.pi, math.pi, 6)
            res = solve_full(spec, arm_fk(spec, JointVector(tuple(th), "arm")))
            for v in res.joints.values:
                assert -math.pi < v <= math.pi + 1e-12
