import numpy as np
import pytest

from dualarm.config import RobotConfig
from dualarm.errors import ConfigError


class TestDefaults:
    def test_paper_constants(self, config):
        assert config.arm.L1 == 20.0 and config.arm.L2 == 22.0
        assert config.arm.l_eff == 8.0
        assert config.body.neck_length == 46.0
        assert config.body.shoulder_spacing == 76.0
        assert config.motor.stall_torque == 35.0
        assert config.board.width == 42.0 and config.board.height == 29.7
        assert config.ik.gamma == 0.5

    def test_empty_document_is_valid(self):
        cfg = RobotConfig.from_yaml("")
        assert cfg.arm.L1 == 20.0

    def test_workspace_helper(self, config):
        ws = config.workspace()
        assert ws.reach == 50.0
        np.testing.assert_allclose(ws.left.translation, [0.0, 38.0, -46.0])


class TestYamlLoading:
    def test_nested_overrides(self):
        cfg = RobotConfig.from_yaml("""
arm:
  L1: 18.0
  L2: 24.0
  sheet:
    density: 2.0e-3
motor:
  stall_torque: 40.0
ik:
  tol: 1.0e-8
camera:
  fx: 525.0
  fy: 525.0
  cx: 319.5
  cy: 239.5
  head_joints: [0.1, -0.2]
""")
        assert cfg.arm.L1 == 18.0 and cfg.arm.L2 == 24.0
        assert cfg.arm.sheet.density == 2.0e-3
        assert cfg.arm.sheet.breadth == 12.0  # untouched default
        assert cfg.motor.stall_torque == 40.0
        assert cfg.ik.tol == 1e-8
        assert cfg.camera.fx == 525.0
        assert cfg.camera.head_joints == (0.1, -0.2)

    def test_field_names_match_domain_types(self):
        # the documented configuration surface for the kinematic specs
        cfg = RobotConfig.from_yaml("""
arm: {L0: 1.0, L1: 20.0, L2: 22.0, l_eff: 8.0, m: 0.064, m_p: 0.2}
body: {neck_length: 46.0, shoulder_spacing: 76.0, L_H0: 5.0, L_H1: 3.4}
""")
        assert cfg.arm.L0 == 1.0
        assert cfg.body.L_H1 == 3.4

    def test_unknown_top_level_key(self):
        with pytest.raises(ConfigError, match="wheels"):
            RobotConfig.from_yaml("wheels: 4")

    def test_unknown_nested_key(self):
        with pytest.raises(ConfigError, match="colour"):
            RobotConfig.from_yaml("arm: {colour: red}")
        with pytest.raises(ConfigError, match="iso"):
            RobotConfig.from_yaml("camera: {iso: 200}")

    def test_invalid_yaml(self):
        with pytest.raises(ConfigError):
            RobotConfig.from_yaml("arm: [unclosed")

    def test_invalid_values_propagate(self):
        with pytest.raises(Exception):
            RobotConfig.from_yaml("arm: {L1: -5.0}")

    def test_board_pose(self):
        cfg = RobotConfig.from_yaml("""
board:
  pose:
    translation: [1.0, 2.0, 3.0]
""")
        np.testing.assert_allclose(cfg.board.board_pose.translation, [1.0, 2.0, 3.0])

    def test_joint_limits_override(self):
        cfg = RobotConfig.from_yaml("""
arm:
  joint_limits: [[-1, 1], [-1, 1], [-1, 1], [-1, 1], [-1, 1], [-1, 1]]
""")
        assert cfg.arm.joint_limits[0] == (-1.0, 1.0)


class TestRoundTrip:
    def test_to_dict_reloads_identically(self, config):
        dumped = config.to_dict()
        assert dumped["schema_version"] == 1
        reloaded = RobotConfig.from_dict(dumped)
        assert reloaded.to_dict() == dumped

    def test_file_loading(self, tmp_path, config):
        import yaml

        path = tmp_path / "robot.yaml"
        path.write_text(yaml.safe_dump(config.to_dict()))
        loaded = RobotConfig.from_file(path)
        assert loaded.to_dict() == config.to_dict()
