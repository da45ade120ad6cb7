import json

import numpy as np
import pytest
from click.testing import CliRunner

from dualarm.chain import position_closed_form
from dualarm.cli import main
from dualarm.config import RobotConfig


@pytest.fixture
def runner():
    return CliRunner()


def run(runner, *args, **kwargs):
    return runner.invoke(main, list(args), catch_exceptions=False, **kwargs)


class TestDesignCommands:
    def test_sweep_table(self, runner):
        result = run(runner, "design", "sweep", "--min", "0", "--max", "42", "--step", "1")
        assert result.exit_code == 0
        rows = [l for l in result.output.splitlines() if l.strip() and l.split()[0][0].isdigit()]
        assert len(rows) == 43
        row20 = next(l for l in rows if l.split()[0] == "20")
        assert row20.endswith("yes")
        row10 = next(l for l in rows if l.split()[0] == "10")
        assert row10.endswith("no")
        assert "nominal" in result.output

    def test_sweep_json(self, runner):
        result = run(runner, "--json", "design", "sweep")
        assert result.exit_code == 0
        body = json.loads(result.output)
        assert len(body["rows"]) == 43
        assert body["limits"] == {"T1wc": 28.0, "T2wc": 14.0}

    def test_sweep_csv_exports(self, runner, tmp_path):
        csv = tmp_path / "true.csv"
        plot = tmp_path / "plot.csv"
        result = run(runner, "design", "sweep", "--csv", str(csv),
                     "--plot-csv", str(plot))
        assert result.exit_code == 0
        true_lines = csv.read_text().strip().splitlines()
        assert true_lines[0] == "L1,T1,T2,feasible"
        assert "-10" not in csv.read_text()
        plot_lines = plot.read_text().strip().splitlines()
        assert plot_lines[0] == "L1,T1_plot,T2_plot"
        assert any(l == "10,-10,-10" for l in plot_lines)

    def test_select_default_policy(self, runner):
        result = run(runner, "--json", "design", "select")
        body = json.loads(result.output)
        assert (body["L1"], body["L2"]) == (20.0, 22.0)

    def test_select_infeasible_design_exit_code(self, runner, tmp_path):
        cfg = tmp_path / "weak.yaml"
        cfg.write_text("motor: {stall_torque: 5.0}\n")
        result = runner.invoke(main, ["--config", str(cfg), "design", "select"])
        assert result.exit_code == 1
        assert "infeasible_design" in result.output


class TestFKCommand:
    def test_zero_joints(self, runner):
        result = run(runner, "fk", "--arm", "right", "--joints", "0,0,0,0,0,0")
        assert result.exit_code == 0
        assert "(0.000000, 0.000000, 50.000000)" in result.output.replace("-0.000000", "0.000000")

    def test_json_output(self, runner):
        result = run(runner, "--json", "fk", "--arm", "right", "--joints", "0,0,0,0,0,0")
        body = json.loads(result.output)
        np.testing.assert_allclose(body["pose"]["translation"], [0, 0, 50], atol=1e-9)

    def test_degrees(self, runner):
        result = run(runner, "--json", "fk", "--arm", "right", "--degrees",
                     "--joints", "0,90,0,0,0,0")
        body = json.loads(result.output)
        np.testing.assert_allclose(body["pose"]["translation"], [0, 50, 0], atol=1e-9)

    def test_head_arity(self, runner):
        result = runner.invoke(main, ["fk", "--arm", "head", "--joints", "0,0,0"])
        assert result.exit_code == 2

    def test_limit_violation_is_domain_error(self, runner, tmp_path):
        cfg = tmp_path / "tight.yaml"
        cfg.write_text(
            "arm: {joint_limits: [[-1,1],[-1,1],[-1,1],[-1,1],[-1,1],[-1,1]]}\n")
        result = runner.invoke(main, ["--config", str(cfg), "fk", "--arm", "right",
                                      "--joints", "2,0,0,0,0,0"])
        assert result.exit_code == 1
        assert "joint_limit" in result.output


class TestIKCommand:
    def test_position_round_trip(self, runner):
        result = run(runner, "--json", "ik", "--target", "0,30,20")
        assert result.exit_code == 0
        body = json.loads(result.output)
        assert body["converged"]
        got = position_closed_form(RobotConfig().arm, *body["joints"][:3])
        assert np.linalg.norm(got - np.array([0.0, 30.0, 20.0])) <= 1e-6

    def test_unreachable_exits_one(self, runner):
        result = runner.invoke(main, ["--json", "ik", "--target", "0,0,80"])
        assert result.exit_code == 1
        body = json.loads(result.output)
        assert body["converged"] is False

    def test_requires_one_target(self, runner):
        result = runner.invoke(main, ["ik"])
        assert result.exit_code == 2

    def test_unknown_flag_is_usage_error(self, runner):
        result = runner.invoke(main, ["ik", "--target", "0,0,10", "--warp", "9"])
        assert result.exit_code == 2


class TestLocalizeCommand:
    def test_localizes_detections(self, runner, tmp_path):
        det = tmp_path / "detections.yaml"
        det.write_text(
            "- class_label: ball\n  bbox: [-0.5, -0.5, 0.5, 0.5]\n  confidence: 0.9\n"
            "- class_label: cup\n  bbox: [0.5, 0.5, 1.5, 1.5]\n  confidence: 0.8\n")
        depth = tmp_path / "depth.txt"
        depth.write_text("3 3\n100 100 100\n100 100 100\n100 100 0\n")
        result = run(runner, "--json", "localize", "--detections", str(det),
                     "--depth", str(depth))
        assert result.exit_code == 0
        body = json.loads(result.output)
        np.testing.assert_allclose(body[0]["point"], [3.4, -100.0, 5.0], atol=1e-9)
        # centroid (1, 1) reads depth 100 at pixel (1, 1)
        assert body[1]["point"] is not None
        text = run(runner, "localize", "--detections", str(det), "--depth", str(depth))
        assert "ball:" in text.output

    def test_no_depth_marker(self, runner, tmp_path):
        det = tmp_path / "d.yaml"
        det.write_text("- class_label: ball\n  bbox: [-0.5, -0.5, 0.5, 0.5]\n")
        depth = tmp_path / "z.txt"
        depth.write_text("1 1\n0\n")
        result = run(runner, "--json", "localize", "--detections", str(det),
                     "--depth", str(depth))
        body = json.loads(result.output)
        assert body[0]["point"] is None


class TestPlanCommand:
    def test_handover_plan(self, runner):
        result = run(runner, "--json", "plan", "--object", "20,30,-60",
                     "--goal", "20,-30,-60")
        body = json.loads(result.output)
        assert body["handover"] is True
        assert body["core_action_count"] == 8

    def test_unreachable_exits_one(self, runner):
        result = runner.invoke(main, ["plan", "--object", "0,0,200", "--goal", "0,-30,-55"])
        assert result.exit_code == 1
        assert "unreachable_task" in result.output

    def test_text_summary(self, runner):
        result = run(runner, "plan", "--object", "20,-30,-60", "--goal", "10,-30,-55")
        assert result.exit_code == 0
        assert "handover: false" in result.output
        assert "grip" in result.output


class TestPlayCommand:
    def test_scripted_draw_like_session(self, runner):
        # a couple of moves, then EOF: clean exit
        result = runner.invoke(main, ["play"], input="0\n1\n")
        assert result.exit_code == 0
        assert "robot plays X" in result.output
        assert "bye" in result.output

    def test_occupied_cell_reprompts(self, runner):
        result = runner.invoke(main, ["play"], input="0\n0\nq\n")
        assert result.exit_code == 0
        assert "illegal" in result.output

    def test_non_numeric_input_reprompts(self, runner):
        result = runner.invoke(main, ["play"], input="banana\nq\n")
        assert result.exit_code == 0
        assert "please enter a cell index" in result.output

    def test_full_game_announces_result(self, runner):
        # O: 0, 1, 3 walks into the robot's forced diagonal win
        result = runner.invoke(main, ["play"], input="0\n1\n3\n")
        assert result.exit_code == 0
        assert "robot wins." in result.output


@pytest.fixture(scope="module")
def live_server():
    import socket
    import threading
    import time

    import uvicorn

    from dualarm.service.app import create_app

    sock = socket.socket()
    sock.bind(("127.0.0.1", 0))
    port = sock.getsockname()[1]
    sock.close()
    server = uvicorn.Server(uvicorn.Config(
        create_app(RobotConfig()), host="127.0.0.1", port=port, log_level="warning"))
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    deadline = time.time() + 10.0
    while not server.started and time.time() < deadline:
        time.sleep(0.02)
    assert server.started, "service did not come up"
    yield f"http://127.0.0.1:{port}"
    server.should_exit = True
    thread.join(timeout=5)


class TestServerMode:
    def test_thin_client_against_live_service(self, runner, live_server):
        result = run(runner, "--server", live_server, "--json",
                     "fk", "--arm", "right", "--joints", "0,0,0,0,0,0")
        assert result.exit_code == 0
        body = json.loads(result.output)
        np.testing.assert_allclose(body["pose"]["translation"], [0, 0, 50], atol=1e-9)

    def test_remote_domain_error_exit_code(self, runner, live_server):
        result = runner.invoke(main, ["--server", live_server, "plan",
                                      "--object", "0,0,200", "--goal", "0,-30,-55"])
        assert result.exit_code == 1
        assert "unreachable_task" in result.output

    def test_play_against_live_service(self, runner, live_server):
        result = runner.invoke(main, ["--server", live_server, "play"], input="0\nq\n")
        assert result.exit_code == 0
        assert "robot plays X at cell 4" in result.output
