import numpy as np

from adapters.infrastructure.control.nmpc_solve import InputLimits, nmpc_solve
from adapters.infrastructure.geometry.unicycle import wrap_angle
from configuration import pipeline_logger
from domain.ControlInput import ControlInput
from domain.NmpcConfig import NmpcConfig
from domain.NmpcSolution import NmpcSolution
from domain.RobotState import RobotState
from domain.TrajectoryCandidate import TrajectoryCandidate
from domain.errors import NonFiniteCost


def resample_candidate(candidate: TrajectoryCandidate, config: NmpcConfig, elapsed: float = 0.0) -> np.ndarray:
    """H + 1 reference states at dt_ctrl from `elapsed` seconds into the candidate.

    Positions are linear, yaw follows the shortest arc, and the last state is held past the end of the rollout.
    """
    if len(candidate.states) < 2:
        raise ValueError("A tracked candidate needs at least two states")
    source_times = np.arange(len(candidate.states)) * candidate.dt
    times = elapsed + np.arange(config.horizon_steps + 1) * config.dt_ctrl
    yaws = np.unwrap(candidate.states[:, 2])
    return np.column_stack(
        [
            np.interp(times, source_times, candidate.states[:, 0]),
            np.interp(times, source_times, candidate.states[:, 1]),
            wrap_angle(np.interp(times, source_times, yaws)),
        ]
    )


def braking_input(state: RobotState, config: NmpcConfig) -> ControlInput:
    """Decelerate at braking_deceleration toward a straight stop, within the same bounds and rate limits as the NMPC."""
    target = np.array([[max(0.0, state.v - config.braking_deceleration * config.dt_ctrl), 0.0]])
    v, omega = InputLimits(config, ControlInput(state.v, state.omega)).project(target)[0]
    return ControlInput(float(v), float(omega))


def track_step(
    state: RobotState,
    selected: TrajectoryCandidate,
    prev_solution: np.ndarray | None = None,
    config: NmpcConfig = NmpcConfig(),
    elapsed: float = 0.0,
) -> tuple[ControlInput, np.ndarray | None, NmpcSolution | None]:
    """Receding-horizon step: (first input, warm start for the next cycle, full solution or None on braking).

    elapsed is the time since the candidate was planned; the reference starts that far along it.
    """
    reference = resample_candidate(selected, config, elapsed)
    try:
        solution = nmpc_solve(
            (state.x, state.y, state.yaw),
            reference,
            prev_solution,
            config,
            previous_input=ControlInput(state.v, state.omega),
        )
    except NonFiniteCost as error:
        pipeline_logger.warning(f"NMPC failed, braking: {error}")
        return braking_input(state, config), None, None
    return solution.first_input, solution.inputs, solution
