"""Command-line entry points.

The CLI is a thin client: it parses arguments into the same request
schemas the JSON service uses and delegates either to an in-process
service core (default) or to a running server via --server. Exit codes:
0 success, 1 domain error, 2 usage error. Angles are radians unless
--degrees is given.
"""

from __future__ import annotations

import json
import sys
from typing import List, Optional

import click
import yaml

from .config import RobotConfig
from .design import select_lengths, sweep_link_lengths
from .errors import DomainError
from .perception import DepthImage, Detection, localize_detections
from .service.client import HttpClient, LocalClient


def _load_config(path: Optional[str]) -> RobotConfig:
    if path is None:
        return RobotConfig()
    return RobotConfig.from_file(path)


def _parse_floats(text: str, expected: Optional[int] = None, what: str = "value") -> List[float]:
    try:
        values = [float(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise click.UsageError(f"could not parse {what} {text!r} as comma-separated numbers")
    if expected is not None and len(values) != expected:
        raise click.UsageError(f"{what} needs {expected} numbers, got {len(values)}")
    return values


def _emit_json(payload) -> None:
    click.echo(json.dumps(payload, indent=2, sort_keys=True))


class Ctx:
    def __init__(self, config: RobotConfig, server: Optional[str], as_json: bool):
        self.config = config
        self.server = server
        self.as_json = as_json
        self.client = HttpClient(server) if server else LocalClient(config)


def _domain_guard(fn):
    """Print domain errors uniformly and exit 1."""
    import functools

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except DomainError as e:
            click.echo(f"error [{e.code}]: {e}", err=True)
            sys.exit(1)
    return wrapper


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None,
              help="YAML robot configuration; defaults are the shipped constants.")
@click.option("--server", default=None, metavar="URL",
              help="Talk to a running service instead of solving in-process.")
@click.option("--json", "as_json", is_flag=True, help="Structured output.")
@click.pass_context
def main(ctx, config_path, server, as_json):
    """Dual-arm manipulator toolkit."""
    try:
        config = _load_config(config_path)
    except DomainError as e:
        click.echo(f"error [{e.code}]: {e}", err=True)
        sys.exit(1)
    ctx.obj = Ctx(config, server, as_json)


@main.group()
def design():
    """Link-length sizing against the shoulder torque limits."""


@design.command("sweep")
@click.option("--min", "l1_min", type=float, default=0.0, show_default=True)
@click.option("--max", "l1_max", type=float, default=None, help="Defaults to the link budget.")
@click.option("--step", type=float, default=1.0, show_default=True)
@click.option("--csv", "csv_path", type=click.Path(), default=None,
              help="Write the true-torque table (L1,T1,T2,feasible).")
@click.option("--plot-csv", "plot_csv_path", type=click.Path(), default=None,
              help="Write the plot export with the -10 sentinel on infeasible rows.")
@click.pass_obj
@_domain_guard
def design_sweep(obj: Ctx, l1_min, l1_max, step, csv_path, plot_csv_path):
    """Evaluate torques over an L1 grid and report feasibility."""
    payload = obj.client.sweep(l1_min, l1_max, step)
    if csv_path or plot_csv_path:
        table = sweep_link_lengths(obj.config.arm, obj.config.motor, l1_min, l1_max, step)
        if csv_path:
            with open(csv_path, "w") as f:
                f.write(table.to_csv())
        if plot_csv_path:
            with open(plot_csv_path, "w") as f:
                f.write(table.to_plot_csv())
    if obj.as_json:
        _emit_json(payload)
        return
    click.echo(f"{'L1':>6} {'T1':>10} {'T2':>10}  feasible")
    for row in payload["rows"]:
        click.echo(f"{row['L1']:>6g} {row['T1']:>10.5f} {row['T2']:>10.5f}  "
                   f"{'yes' if row['feasible'] else 'no'}")
    click.echo(payload["note"])


@design.command("select")
@click.option("--policy", type=click.Choice(["nearest_nominal", "interval_midpoint"]),
              default="nearest_nominal", show_default=True)
@click.option("--min", "l1_min", type=float, default=0.0)
@click.option("--max", "l1_max", type=float, default=None)
@click.option("--step", type=float, default=1.0)
@click.pass_obj
@_domain_guard
def design_select(obj: Ctx, policy, l1_min, l1_max, step):
    """Pick (L1, L2) from the sweep under the given policy."""
    table = sweep_link_lengths(obj.config.arm, obj.config.motor, l1_min, l1_max, step)
    l1, l2 = select_lengths(table, policy)
    if obj.as_json:
        _emit_json({"policy": policy, "L1": l1, "L2": l2, "note": table.report()})
    else:
        click.echo(f"policy {policy}: L1 = {l1:g} cm, L2 = {l2:g} cm")
        click.echo(table.report())


@main.command()
@click.option("--arm", type=click.Choice(["left", "right", "head"]), required=True)
@click.option("--joints", required=True, metavar="A,B,...",
              help="6 angles for an arm, 2 for the head.")
@click.option("--degrees", is_flag=True, help="Joints are given in degrees.")
@click.pass_obj
@_domain_guard
def fk(obj: Ctx, arm, joints, degrees):
    """Forward kinematics: end pose plus all joint origins in the neck frame."""
    expected = 2 if arm == "head" else 6
    values = _parse_floats(joints, expected, "--joints")
    payload = obj.client.fk(arm, values, units="deg" if degrees else "rad")
    if obj.as_json:
        _emit_json(payload)
        return
    t = payload["pose"]["translation"]
    r = payload["pose"]["rotation"]
    click.echo(f"{arm} position: ({t[0]:.6f}, {t[1]:.6f}, {t[2]:.6f}) cm")
    for i in range(3):
        click.echo("rotation:  [% .6f % .6f % .6f]" % tuple(r[3 * i:3 * i + 3]))


@main.command()
@click.option("--target", default=None, metavar="X,Y,Z",
              help="Position target in the shoulder frame (cm).")
@click.option("--pose", "pose_json", default=None,
              help='Full pose target as JSON {"translation": [...], "rotation": [9]}.')
@click.option("--init", "init_text", default=None, metavar="T0,T1,T2",
              help="Initial guess for the position stage.")
@click.option("--degrees", is_flag=True, help="Angle I/O in degrees.")
@click.pass_obj
@_domain_guard
def ik(obj: Ctx, target, pose_json, init_text, degrees):
    """Inverse kinematics for one arm (position stage, or full pose)."""
    if (target is None) == (pose_json is None):
        raise click.UsageError("provide exactly one of --target or --pose")
    units = "deg" if degrees else "rad"
    init = _parse_floats(init_text, 3, "--init") if init_text else None
    if target is not None:
        payload = obj.client.ik(position=_parse_floats(target, 3, "--target"),
                                init=init, units=units)
    else:
        try:
            pose = json.loads(pose_json)
        except json.JSONDecodeError as e:
            raise click.UsageError(f"--pose is not valid JSON: {e}")
        payload = obj.client.ik(pose=pose, init=init, units=units)
    if obj.as_json:
        _emit_json(payload)
    else:
        state = "converged" if payload["converged"] else "NOT converged"
        click.echo(f"{state} in {payload['iterations']} iterations, "
                   f"residual {payload['residual']:.3e} cm")
        click.echo("joints: " + ", ".join(f"{v:.6f}" for v in payload["joints"]))
    if not payload["converged"]:
        sys.exit(1)


@main.command()
@click.option("--detections", "det_path", type=click.Path(exists=True), required=True,
              help="YAML list of {class_label, bbox, confidence} records.")
@click.option("--depth", "depth_path", type=click.Path(exists=True), required=True,
              help="Depth grid: 'width height' header then row-major cm values.")
@click.pass_obj
@_domain_guard
def localize(obj: Ctx, det_path, depth_path):
    """Back-project detection centroids into the neck frame."""
    with open(det_path) as f:
        records = yaml.safe_load(f) or []
    detections = [Detection(str(r["class_label"]), tuple(r["bbox"]),
                            float(r.get("confidence", 1.0))) for r in records]
    with open(depth_path) as f:
        depth = DepthImage.from_text(f.read())
    cam = obj.config.camera_model()
    results = localize_detections(cam, detections, depth)
    if obj.as_json:
        _emit_json([{"class_label": r.class_label,
                     "point": None if r.point is None else r.point.tolist()}
                    for r in results])
        return
    for r in results:
        if r.point is None:
            click.echo(f"{r.class_label}: no depth at centroid")
        else:
            click.echo(f"{r.class_label}: ({r.point[0]:.3f}, {r.point[1]:.3f}, "
                       f"{r.point[2]:.3f}) cm")


def _plan_summary(payload) -> str:
    lines = [f"handover: {str(payload['handover']).lower()} "
             f"({payload['core_action_count']} core actions, "
             f"{len(payload['actions'])} total)"]
    for i, a in enumerate(payload["actions"]):
        desc = f"{i:3d} {a['kind']:<7} {a['arm']:<5} {a['tag'] or '-':<8}"
        if a["pose"] is not None:
            t = a["pose"]["translation"]
            desc += f" ({t[0]:7.2f}, {t[1]:7.2f}, {t[2]:7.2f})"
        lines.append(desc)
    return "\n".join(lines)


@main.command()
@click.option("--object", "object_text", required=True, metavar="X,Y,Z",
              help="Object position in the neck frame (cm).")
@click.option("--goal", "goal_text", required=True, metavar="X,Y,Z")
@click.pass_obj
@_domain_guard
def plan(obj: Ctx, object_text, goal_text):
    """Plan a pick-place, handing over between arms when needed."""
    payload = obj.client.plan(_parse_floats(object_text, 3, "--object"),
                              _parse_floats(goal_text, 3, "--goal"))
    if obj.as_json:
        _emit_json(payload)
    else:
        click.echo(_plan_summary(payload))


@main.command()
@click.pass_obj
@_domain_guard
def play(obj: Ctx):
    """Play against the robot in the terminal (you are O, it replies as X)."""
    session = obj.client.game_new()
    board = session["board"]
    click.echo("cells are numbered 0-8, row-major; you open.")
    while True:
        click.echo(_render_board(board))
        try:
            line = input("your O move (0-8): ")
        except EOFError:
            click.echo("bye")
            return
        line = line.strip()
        if not line:
            continue
        if line.lower() in ("q", "quit", "exit"):
            click.echo("bye")
            return
        try:
            cell = int(line)
        except ValueError:
            click.echo("please enter a cell index 0-8")
            continue
        try:
            payload = obj.client.game_move(session["session"], cell)
        except DomainError as e:
            click.echo(f"illegal: {e}")
            continue
        board = payload["board"]
        if payload["reply_cell"] is not None:
            click.echo(f"robot plays X at cell {payload['reply_cell']}")
            click.echo(_plan_summary(payload["plan"]))
        if payload["status"] != "in_progress":
            click.echo(_render_board(board))
            click.echo({"X_wins": "robot wins.", "O_wins": "you win!",
                        "draw": "draw."}[payload["status"]])
            return


def _render_board(board: str) -> str:
    rows = []
    for r in range(3):
        rows.append(" " + " | ".join(board[3 * r + c] for c in range(3)) + " ")
        if r < 2:
            rows.append("---+---+---")
    return "\n".join(rows)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.pass_obj
def serve(obj: Ctx, host, port):
    """Run the JSON service."""
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(obj.config), host=host, port=port)


if __name__ == "__main__":
    main()
