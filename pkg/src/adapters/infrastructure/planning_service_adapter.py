from adapters.infrastructure.planning.plan import braking_candidate, evaluate_lattice, select
from configuration import pipeline_logger
from domain.DwaConfig import DwaConfig
from domain.OccupancyGrid import OccupancyGrid
from domain.ReferenceTrajectory import ReferenceTrajectory
from domain.RobotState import RobotState
from domain.TrajectoryCandidate import TrajectoryCandidate
from ports.services.planning_service import PlanningService


class PlanningServiceAdapter(PlanningService):
    def __init__(self, config: DwaConfig = DwaConfig()):
        self.config = config

    def plan(
        self, state: RobotState, grid: OccupancyGrid, route: ReferenceTrajectory
    ) -> tuple[TrajectoryCandidate, list[TrajectoryCandidate]]:
        candidates = evaluate_lattice(state, grid, route, self.config)
        selected = select(candidates)
        if selected is None:
            pipeline_logger.info(f"No admissible trajectory at {state.timestamp:.2f} s, braking")
            selected = braking_candidate(state, self.config)
        return selected, candidates
