import numpy as np

from adapters.infrastructure.planning.admissible import admissible_mask, trajectory_clearances
from adapters.infrastructure.planning.dynamic_window import dynamic_window
from adapters.infrastructure.planning.rollout import braking_rollout, rollout_batch
from adapters.infrastructure.planning.score_candidate import objective_batch, weighted_scores
from domain.DwaConfig import DwaConfig
from domain.OccupancyGrid import OccupancyGrid
from domain.ReferenceTrajectory import ReferenceTrajectory
from domain.RobotState import RobotState
from domain.TrajectoryCandidate import TrajectoryCandidate
from domain.VelocityCommand import VelocityCommand


def lattice(state: RobotState, config: DwaConfig) -> list[VelocityCommand]:
    v_lo, v_hi, omega_lo, omega_hi = dynamic_window(state, config)
    velocities = np.linspace(v_lo, v_hi, config.samples_v)
    omegas = np.linspace(omega_lo, omega_hi, config.samples_omega)
    omegas[np.abs(omegas) < 1e-12] = 0.0
    return [VelocityCommand(float(v), float(omega)) for v in velocities for omega in omegas]


def evaluate_lattice(
    state: RobotState, grid: OccupancyGrid, reference: ReferenceTrajectory, config: DwaConfig
) -> list[TrajectoryCandidate]:
    """Every lattice candidate, with admissibility and (for admissible ones) the objective score.

    Rollouts, clearances and objective terms are computed for the whole lattice at once.
    """
    commands = lattice(state, config)
    velocities = np.array([command.v for command in commands])
    omegas = np.array([command.omega for command in commands])
    states = rollout_batch((state.x, state.y, state.yaw), velocities, omegas, config.dt_plan, config.horizon)

    min_clearances = trajectory_clearances(states[:, :, :2], grid)
    admissible = admissible_mask(velocities, min_clearances, config, config.robot_radius)
    scores = np.full(len(commands), np.nan)
    if admissible.any():
        terms = objective_batch(
            states[admissible, -1], velocities[admissible], min_clearances[admissible], reference, config
        )
        scores[admissible] = weighted_scores(terms, config)

    return [
        TrajectoryCandidate(
            command, states[i], float(scores[i]) if admissible[i] else None, bool(admissible[i]), config.dt_plan
        )
        for i, command in enumerate(commands)
    ]


def selection_key(candidate: TrajectoryCandidate):
    command = candidate.command
    return -candidate.score, abs(command.omega), command.v, command.omega


def braking_candidate(state: RobotState, config: DwaConfig) -> TrajectoryCandidate:
    v = max(0.0, state.v - config.a_v * config.dt_plan)
    states = braking_rollout((state.x, state.y, state.yaw), state.v, config.a_v, config.dt_plan, config.horizon)
    return TrajectoryCandidate(VelocityCommand(v, 0.0), states, None, False, config.dt_plan)


def select(candidates: list[TrajectoryCandidate]) -> TrajectoryCandidate | None:
    admissible_candidates = [candidate for candidate in candidates if candidate.admissible]
    if not admissible_candidates:
        return None
    return min(admissible_candidates, key=selection_key)


def plan(
    state: RobotState, grid: OccupancyGrid, reference: ReferenceTrajectory, config: DwaConfig = DwaConfig()
) -> TrajectoryCandidate:
    """Best-scoring admissible lattice candidate, or the braking fallback flagged inadmissible."""
    best = select(evaluate_lattice(state, grid, reference, config))
    return best if best is not None else braking_candidate(state, config)
