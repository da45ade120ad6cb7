"""Exception hierarchy shared by every module.

Each error carries a stable snake_case ``code`` used verbatim by the JSON
service and the CLI, so callers can dispatch on it without parsing messages.
"""


class DomainError(Exception):
    """Base class for all recoverable domain errors."""

    code = "domain_error"


class InvalidParameterError(DomainError):
    code = "invalid_parameter"


class JointLimitError(DomainError):
    code = "joint_limit"


class InfeasibleDesignError(DomainError):
    code = "infeasible_design"


class NoDepthError(DomainError):
    code = "no_depth"


class InvalidCameraError(DomainError):
    code = "invalid_camera"


class BehindCameraError(DomainError):
    code = "behind_camera"


class DegenerateQuadError(DomainError):
    code = "degenerate_quad"


class UnreachableTaskError(DomainError):
    code = "unreachable_task"


class PlanningFailureError(DomainError):
    code = "planning_failure"


class NoHandoverRegionError(DomainError):
    code = "no_handover_region"


class IllegalMoveError(DomainError):
    code = "illegal_move"


class TurnOrderError(DomainError):
    code = "turn_order"


class GameOverError(DomainError):
    code = "game_over"


class OffBoardError(DomainError):
    code = "off_board"


class CellConflictError(DomainError):
    code = "cell_conflict"


class InconsistentBoardError(DomainError):
    code = "inconsistent_board"


class ConfigError(DomainError):
    code = "config_error"


class UnknownSessionError(DomainError):
    code = "unknown_session"
