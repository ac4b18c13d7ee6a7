import numpy as np

from adapters.infrastructure.geometry.unicycle import wrap_angle
from adapters.infrastructure.planning.admissible import trajectory_clearances
from domain.DwaConfig import DwaConfig
from domain.OccupancyGrid import OccupancyGrid
from domain.ReferenceTrajectory import ReferenceTrajectory
from domain.RobotState import RobotState
from domain.TrajectoryCandidate import TrajectoryCandidate
from domain.errors import NotAdmissible


def objective_batch(
    endpoints: np.ndarray,
    speeds: np.ndarray,
    min_clearances: np.ndarray,
    reference: ReferenceTrajectory,
    config: DwaConfig,
) -> np.ndarray:
    """(N, 3) heading, clearance and velocity terms, each in [0, 1].

    Heading compares each endpoint yaw with the bearing from that endpoint to a target lookahead meters
    past its projection onto the route, along the route.
    """
    endpoints = np.asarray(endpoints, dtype=float).reshape(-1, 3)
    targets = reference.carrot_points(endpoints[:, :2], config.lookahead)
    bearings = np.arctan2(targets[:, 1] - endpoints[:, 1], targets[:, 0] - endpoints[:, 0])
    heading = 1.0 - np.abs(wrap_angle(endpoints[:, 2] - bearings)) / np.pi
    clearance = np.minimum(min_clearances, config.clearance_radius) / config.clearance_radius
    velocity = np.clip(np.asarray(speeds, dtype=float) / config.v_max, 0.0, 1.0)
    return np.column_stack([heading, clearance, velocity])


def weighted_scores(terms: np.ndarray, config: DwaConfig) -> np.ndarray:
    return terms @ np.array([config.heading_weight, config.clearance_weight, config.velocity_weight])


def objective_terms(
    candidate: TrajectoryCandidate,
    grid: OccupancyGrid,
    reference: ReferenceTrajectory,
    state: RobotState,
    config: DwaConfig,
) -> tuple[float, float, float]:
    """(heading, clearance, velocity) of one candidate, as objective_batch computes them."""
    min_clearance = trajectory_clearances(candidate.positions[None], grid, config.clearance_radius)
    if min_clearance[0] == -np.inf:
        raise NotAdmissible(f"Candidate {candidate.command} leaves the grid")
    terms = objective_batch(candidate.endpoint[None], [candidate.command.v], min_clearance, reference, config)[0]
    return float(terms[0]), float(terms[1]), float(terms[2])


def score_candidate(
    candidate: TrajectoryCandidate,
    grid: OccupancyGrid,
    reference: ReferenceTrajectory,
    state: RobotState,
    config: DwaConfig,
) -> float:
    if not candidate.admissible:
        raise NotAdmissible(f"Candidate {candidate.command} is not admissible")
    terms = np.array(objective_terms(candidate, grid, reference, state, config))
    return float(weighted_scores(terms[None], config)[0])
