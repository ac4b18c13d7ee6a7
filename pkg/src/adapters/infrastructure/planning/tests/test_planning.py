import math
from unittest import TestCase

import numpy as np

from adapters.infrastructure.geometry.unicycle import unicycle_step
from adapters.infrastructure.planning.admissible import admissible
from adapters.infrastructure.planning.dynamic_window import dynamic_window
from adapters.infrastructure.planning.plan import evaluate_lattice, plan
from adapters.infrastructure.planning.rollout import rollout, rollout_batch
from adapters.infrastructure.planning.score_candidate import objective_terms, score_candidate
from domain.DwaConfig import DwaConfig
from domain.OccupancyGrid import OccupancyGrid
from domain.ReferenceTrajectory import ReferenceTrajectory
from domain.RobotState import RobotState
from domain.Pose3 import Pose3
from domain.TrajectoryCandidate import TrajectoryCandidate
from domain.VelocityCommand import VelocityCommand
from domain.errors import NotAdmissible


def grid_with_occupied(cells, size: int = 400, origin_offset=(0.0, 0.0)) -> OccupancyGrid:
    grid = OccupancyGrid.centered_on(origin_offset[0], origin_offset[1], 0.1, size, size)
    occupied = np.zeros((size, size), dtype=np.uint8)
    for ix, iy in cells:
        occupied[iy, ix] = 2
    return grid.with_counts(grid.free_counts, occupied)


def straight_route(length: int = 20) -> ReferenceTrajectory:
    return ReferenceTrajectory([(float(x), 0.0) for x in range(length + 1)])


def circle_route(radius: float, count: int) -> ReferenceTrajectory:
    angles = np.linspace(0.0, 2 * math.pi, count, endpoint=False)
    return ReferenceTrajectory(np.column_stack([radius * np.cos(angles), radius * np.sin(angles)]), closed=True)


def arc_endpoint(v: float, omega: float, duration: float) -> tuple[float, float, float]:
    """Closed-form end of a constant command from the origin facing +x."""
    if omega == 0.0:
        return v * duration, 0.0, 0.0
    radius = v / omega
    turned = omega * duration
    return radius * math.sin(turned), radius * (1.0 - math.cos(turned)), turned


def moving_state(x=0.0, y=0.0, yaw=0.0, v=0.0, omega=0.0) -> RobotState:
    return RobotState(Pose3.planar(x, y, yaw), v, omega)


def assert_collision_free(test: TestCase, candidate: TrajectoryCandidate, grid: OccupancyGrid, radius: float):
    if not candidate.admissible:
        return
    occupied = grid.cell_centers(grid.occupied_cells())
    if len(occupied) == 0:
        return
    for position in candidate.positions:
        test.assertGreaterEqual(np.min(np.linalg.norm(occupied - position, axis=1)), radius)


class TestReferenceTrajectory(TestCase):
    def test_needs_two_distinct_waypoints(self):
        with self.assertRaises(ValueError):
            ReferenceTrajectory([(0.0, 0.0)])
        with self.assertRaises(ValueError):
            ReferenceTrajectory([(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)])

    def test_projection_and_lookahead(self):
        route = straight_route()
        self.assertAlmostEqual(3.4, route.project((3.4, -1.0)))
        np.testing.assert_allclose([6.0, 0.0], route.lookahead_point((3.4, 0.5), 2.0))
        np.testing.assert_allclose([20.0, 0.0], route.lookahead_point((19.5, 0.0), 2.0))

    def test_closed_route_wraps(self):
        square = ReferenceTrajectory([(0.0, 0.0), (4.0, 0.0), (4.0, 4.0), (0.0, 4.0)], closed=True)
        self.assertAlmostEqual(16.0, square.length)
        np.testing.assert_allclose([0.0, 0.0], square.lookahead_point((0.0, 3.0), 2.0))

    def test_carrot_points_follow_the_route_direction(self):
        route = straight_route()
        targets = route.carrot_points([(3.4, 0.5), (7.0, -1.0), (19.0, 0.2)], 2.0)
        np.testing.assert_allclose([[5.4, 0.0], [9.0, 0.0], [20.0, 0.0]], targets, atol=1e-12)

    def test_carrot_points_on_a_circle_lie_on_the_tangent(self):
        route = circle_route(5.0, 128)
        for angle in np.linspace(0.1, 6.0, 7):
            on_route = route.nearest([5.0 * math.cos(angle), 5.0 * math.sin(angle)])[0][0]
            target = route.carrot_points([on_route], 2.0)[0]
            direction = target - on_route
            self.assertAlmostEqual(2.0, np.linalg.norm(direction))
            self.assertAlmostEqual(0.0, np.dot(direction, on_route) / np.linalg.norm(on_route), delta=0.01)
            self.assertGreater(on_route[0] * direction[1] - on_route[1] * direction[0], 0.0)


class TestDynamicWindow(TestCase):
    config = DwaConfig()

    def test_at_rest(self):
        v_lo, v_hi, omega_lo, omega_hi = dynamic_window(RobotState.at_rest(), self.config)
        self.assertEqual(0.0, v_lo)
        self.assertAlmostEqual(0.05, v_hi)
        self.assertAlmostEqual(-0.1, omega_lo)
        self.assertAlmostEqual(0.1, omega_hi)

    def test_saturates_at_v_max(self):
        _, v_hi, _, _ = dynamic_window(moving_state(v=1.5), self.config)
        self.assertEqual(1.5, v_hi)

    def test_hand_arithmetic(self):
        v_lo, v_hi, _, _ = dynamic_window(moving_state(v=1.0), self.config)
        self.assertAlmostEqual(0.95, v_lo)
        self.assertAlmostEqual(1.05, v_hi)


class TestRollout(TestCase):
    def test_rest(self):
        states = rollout((1.0, 2.0, 0.3), VelocityCommand(0.0, 0.0), 0.1, 3.0)
        self.assertEqual((31, 3), states.shape)
        np.testing.assert_allclose(np.tile([1.0, 2.0, 0.3], (31, 1)), states)

    def test_straight_line(self):
        states = rollout((0.0, 0.0, 0.0), VelocityCommand(1.0, 0.0), 0.1, 3.0)
        np.testing.assert_allclose([3.0, 0.0, 0.0], states[-1], atol=1e-12)

    def test_arc_matches_circle(self):
        states = rollout((0.0, 0.0, 0.0), VelocityCommand(1.0, math.pi / 3), 0.1, 3.0)
        radius = 3.0 / math.pi
        np.testing.assert_allclose([0.0, 2.0 * radius, math.pi], states[-1], atol=1e-9)
        distances = np.linalg.norm(states[:, :2] - np.array([0.0, radius]), axis=1)
        np.testing.assert_allclose(radius, distances, atol=1e-9)

    def test_batch_matches_stepwise_integration(self):
        velocities = [0.0, 0.5, 1.5, 1.0]
        omegas = [0.0, -0.7, 1.0, 5e-7]
        batch = rollout_batch((1.0, -2.0, 0.4), velocities, omegas, 0.1, 3.0)
        self.assertEqual((4, 31, 3), batch.shape)
        for states, v, omega in zip(batch, velocities, omegas):
            x, y, yaw = 1.0, -2.0, 0.4
            for k in range(1, 31):
                x, y, yaw = unicycle_step(x, y, yaw, v, omega, 0.1)
                np.testing.assert_allclose([x, y, yaw], states[k], atol=1e-9)


class TestAdmissible(TestCase):
    config = DwaConfig()

    @staticmethod
    def parked(v: float, position=(0.05, 0.05)) -> TrajectoryCandidate:
        return TrajectoryCandidate(VelocityCommand(v, 0.0), np.tile([position[0], position[1], 0.0], (31, 1)))

    def test_empty_grid(self):
        grid = grid_with_occupied([])
        rng = np.random.default_rng(3)
        for _ in range(20):
            command = VelocityCommand(rng.uniform(0, 1.5), rng.uniform(-1, 1))
            candidate = TrajectoryCandidate(command, rollout((0, 0, rng.uniform(-3, 3)), command, 0.1, 3.0))
            self.assertTrue(admissible(candidate, grid, self.config))

    def test_stopping_distance(self):
        grid = grid_with_occupied([(205, 200)])
        self.assertFalse(admissible(self.parked(1.5), grid, self.config, robot_radius=0.3))
        self.assertTrue(admissible(self.parked(0.3), grid, self.config, robot_radius=0.3))

    def test_collision(self):
        grid = grid_with_occupied([(205, 200)])
        self.assertFalse(admissible(self.parked(0.0), grid, self.config, robot_radius=0.6))

    def test_leaving_grid_counts_as_collision(self):
        grid = grid_with_occupied([])
        self.assertFalse(admissible(self.parked(0.0, position=(25.0, 0.0)), grid, self.config))


class TestScoreCandidate(TestCase):
    config = DwaConfig()
    grid = grid_with_occupied([])

    def scored(self, command: VelocityCommand, state: RobotState | None = None) -> float:
        state = state or RobotState.at_rest()
        candidate = TrajectoryCandidate(command, rollout((state.x, state.y, state.yaw), command, 0.1, 3.0))
        candidate.admissible = True
        return score_candidate(candidate, self.grid, straight_route(), state, self.config)

    def test_perfect_candidate(self):
        self.assertAlmostEqual(2.5, self.scored(VelocityCommand(1.5, 0.0)))

    def test_opposite_heading(self):
        candidate = TrajectoryCandidate(VelocityCommand(0.0, 0.0), [[0.0, 0.0, 0.0], [0.0, 0.0, math.pi]], None, True)
        heading, _, _ = objective_terms(candidate, self.grid, straight_route(), RobotState.at_rest(), self.config)
        self.assertAlmostEqual(0.0, heading)

    def test_inadmissible_candidate(self):
        candidate = TrajectoryCandidate(VelocityCommand(0.0, 0.0), [[0.0, 0.0, 0.0]], None, False)
        with self.assertRaises(NotAdmissible):
            score_candidate(candidate, self.grid, straight_route(), RobotState.at_rest(), self.config)

    def test_hand_evaluated_ranking(self):
        # Targets sit 2 m past each endpoint's projection onto the x axis.
        def heading(v: float, omega: float) -> float:
            x, y, yaw = arc_endpoint(v, omega, 3.0)
            return 1.0 - abs(yaw - math.atan2(-y, 2.0)) / math.pi

        expected = {
            VelocityCommand(1.0, 0.0): 1.0 + 1.0 + 0.5 * (1.0 / 1.5),
            VelocityCommand(0.5, -0.2): heading(0.5, -0.2) + 1.0 + 0.5 * (0.5 / 1.5),
            VelocityCommand(1.5, 0.5): heading(1.5, 0.5) + 1.0 + 0.5,
        }
        scores = {command: self.scored(command) for command in expected}
        for command, value in expected.items():
            self.assertAlmostEqual(value, scores[command], places=9)
        self.assertAlmostEqual(1.9073, scores[VelocityCommand(0.5, -0.2)], places=3)
        self.assertAlmostEqual(1.7207, scores[VelocityCommand(1.5, 0.5)], places=3)
        self.assertEqual(list(expected), sorted(scores, key=scores.get, reverse=True))

    def test_endpoint_on_a_circular_route_facing_along_it_scores_full_heading(self):
        route = circle_route(5.0, 128)
        angle = 0.7
        endpoint = [5.0 * math.cos(angle), 5.0 * math.sin(angle), angle + math.pi / 2]
        candidate = TrajectoryCandidate(VelocityCommand(1.0, 0.2), [[5.0, 0.0, math.pi / 2], endpoint], None, True)
        heading, _, _ = objective_terms(candidate, self.grid, route, RobotState.at_rest(5.0, 0.0), self.config)
        self.assertAlmostEqual(1.0, heading, delta=1e-3)

    def test_endpoint_off_the_route_is_pulled_back(self):
        candidate = TrajectoryCandidate(VelocityCommand(1.0, 0.0), [[0.0, 0.5, 0.0], [3.0, 0.5, 0.0]], None, True)
        heading, _, _ = objective_terms(candidate, self.grid, straight_route(), RobotState.at_rest(), self.config)
        self.assertAlmostEqual(1.0 - math.atan2(0.5, 2.0) / math.pi, heading)


def oracle_target(route: ReferenceTrajectory, x: float, y: float, lookahead: float) -> np.ndarray:
    """Lookahead target for an open route, segment by segment."""
    waypoints = route.waypoints
    units = [(b - a) / np.linalg.norm(b - a) for a, b in zip(waypoints[:-1], waypoints[1:])]
    tangents = [units[0]]
    for incoming, outgoing in zip(units[:-1], units[1:]):
        tangents.append((incoming + outgoing) / np.linalg.norm(incoming + outgoing))
    tangents.append(units[-1])

    best = None
    travelled = 0.0
    for index, (a, b) in enumerate(zip(waypoints[:-1], waypoints[1:])):
        length = np.linalg.norm(b - a)
        fraction = min(1.0, max(0.0, float(np.dot([x, y] - a, b - a)) / length**2))
        point = a + fraction * (b - a)
        distance = math.hypot(point[0] - x, point[1] - y)
        if best is None or distance < best[0]:
            best = (distance, point, index, fraction, travelled + fraction * length)
        travelled += length

    _, point, index, fraction, arc = best
    if arc + lookahead >= travelled:
        return waypoints[-1]
    direction = (1 - fraction) * tangents[index] + fraction * tangents[index + 1]
    return point + lookahead * direction / np.linalg.norm(direction)


def oracle_plan(state: RobotState, grid: OccupancyGrid, route: ReferenceTrajectory, config: DwaConfig):
    """Independent lattice evaluation: closed-form arcs and a brute-force obstacle scan."""
    occupied = grid.cell_centers(grid.occupied_cells())
    times = np.arange(0, 31) * config.dt_plan
    step = config.dt_plan
    scored = []
    for v in np.linspace(max(0.0, state.v - config.a_v * step), min(config.v_max, state.v + config.a_v * step), 11):
        omega_lo = max(-config.omega_max, state.omega - config.a_omega * step)
        omega_hi = min(config.omega_max, state.omega + config.a_omega * step)
        for omega in np.linspace(omega_lo, omega_hi, 21):
            yaws = state.yaw + omega * times
            if abs(omega) < 1e-6:
                xs = state.x + v * times * np.cos(state.yaw)
                ys = state.y + v * times * np.sin(state.yaw)
            else:
                xs = state.x + v / omega * (np.sin(yaws) - np.sin(state.yaw))
                ys = state.y - v / omega * (np.cos(yaws) - np.cos(state.yaw))
            if len(occupied):
                clearance = min(np.min(np.hypot(occupied[:, 0] - x, occupied[:, 1] - y)) for x, y in zip(xs, ys))
            else:
                clearance = math.inf
            if clearance < config.robot_radius or v**2 > 2 * config.a_v * (clearance - config.robot_radius):
                continue
            target = oracle_target(route, xs[-1], ys[-1], config.lookahead)
            bearing = math.atan2(target[1] - ys[-1], target[0] - xs[-1])
            difference = (yaws[-1] - bearing + math.pi) % (2 * math.pi) - math.pi
            score = (
                config.heading_weight * (1 - abs(difference) / math.pi)
                + config.clearance_weight * min(clearance, config.clearance_radius) / config.clearance_radius
                + config.velocity_weight * v / config.v_max
            )
            scored.append((score, v, omega))
    scored.sort(key=lambda item: (-item[0], abs(item[2]), item[1], item[2]))
    return scored


class TestPlan(TestCase):
    config = DwaConfig()

    def test_free_straight_route(self):
        grid = grid_with_occupied([])
        for v, expected in [(0.0, 0.05), (1.0, 1.05), (1.5, 1.5)]:
            selected = plan(moving_state(v=v), grid, straight_route(), self.config)
            self.assertTrue(selected.admissible)
            self.assertAlmostEqual(0.0, selected.command.omega)
            self.assertAlmostEqual(expected, selected.command.v)
            self.assertEqual((31, 3), selected.states.shape)

    def test_matches_brute_force_lattice(self):
        rng = np.random.default_rng(17)
        route = ReferenceTrajectory([(0.0, 0.0), (4.0, 1.0), (8.0, 4.0), (12.0, 9.0)])
        for _ in range(100):
            cells = [(int(ix), int(iy)) for ix, iy in rng.integers(205, 260, size=(15, 2))]
            grid = grid_with_occupied(cells)
            state = moving_state(0.0, 0.0, rng.uniform(-0.3, 0.6), rng.uniform(0.2, 1.2), rng.uniform(-0.5, 0.5))
            selected = plan(state, grid, route, self.config)
            assert_collision_free(self, selected, grid, self.config.robot_radius)

            expected = oracle_plan(state, grid, route, self.config)
            if not expected:
                self.assertFalse(selected.admissible)
                continue
            self.assertTrue(selected.admissible)
            self.assertGreaterEqual(selected.score, expected[0][0] - 1e-9)
            if len(expected) == 1 or expected[0][0] - expected[1][0] > 1e-9:
                self.assertAlmostEqual(expected[0][1], selected.command.v, places=12)
                self.assertAlmostEqual(expected[0][2], selected.command.omega, places=12)

    def test_random_scenarios_stay_collision_free_and_stoppable(self):
        rng = np.random.default_rng(29)
        route = ReferenceTrajectory([(0.0, 0.0), (3.0, 2.0), (6.0, 2.0), (9.0, -1.0)])
        for _ in range(1000):
            cells = [(int(ix), int(iy)) for ix, iy in rng.integers(85, 145, size=(rng.integers(1, 40), 2))]
            grid = grid_with_occupied(cells, size=200)
            occupied = grid.cell_centers(grid.occupied_cells())
            state = moving_state(
                0.0, 0.0, rng.uniform(-math.pi, math.pi), rng.uniform(0.0, 1.5), rng.uniform(-1.0, 1.0)
            )
            selected = plan(state, grid, route, self.config)
            if not selected.admissible:
                self.assertAlmostEqual(max(0.0, state.v - 0.05), selected.command.v)
                self.assertEqual(0.0, selected.command.omega)
                continue
            distances = np.linalg.norm(selected.positions[:, None, :] - occupied[None], axis=2)
            clearance = float(distances.min())
            self.assertGreaterEqual(clearance, self.config.robot_radius)
            margin = 2 * self.config.a_v * (clearance - self.config.robot_radius)
            self.assertLessEqual(selected.command.v**2, margin + 1e-9)

    def test_blocked_falls_back_to_braking(self):
        wall = [(210, iy) for iy in range(170, 231)]
        grid = grid_with_occupied(wall)
        selected = plan(moving_state(v=1.0), grid, straight_route(), self.config)
        self.assertFalse(selected.admissible)
        self.assertIsNone(selected.score)
        self.assertAlmostEqual(0.95, selected.command.v)
        self.assertEqual(0.0, selected.command.omega)
        self.assertTrue(np.all(np.diff(selected.states[:, 0]) >= 0))
        self.assertAlmostEqual(1.0**2 / (2 * 0.5), selected.states[-1, 0], delta=0.1)

    def test_every_admissible_candidate_is_collision_free(self):
        wall = [(212, iy) for iy in range(190, 215)]
        grid = grid_with_occupied(wall)
        state = moving_state(v=0.6, omega=0.2)
        for candidate in evaluate_lattice(state, grid, straight_route(), self.config):
            assert_collision_free(self, candidate, grid, self.config.robot_radius)
            if candidate.admissible:
                for term in objective_terms(candidate, grid, straight_route(), state, self.config):
                    self.assertGreaterEqual(term, 0.0)
                    self.assertLessEqual(term, 1.0)

    def test_translation_invariance(self):
        cells = [(225, 195), (226, 195), (226, 196), (240, 215)]
        route = ReferenceTrajectory([(0.0, 0.0), (5.0, 1.0), (10.0, 3.0)])
        state = moving_state(0.0, 0.0, 0.1, 0.7, 0.1)
        selected = plan(state, grid_with_occupied(cells), route, self.config)

        offset = (3.0, -2.0)
        moved = plan(
            moving_state(offset[0], offset[1], 0.1, 0.7, 0.1),
            grid_with_occupied(cells, origin_offset=offset),
            route.translated(offset),
            self.config,
        )
        self.assertEqual(selected.command, moved.command)
        np.testing.assert_allclose(selected.states + [offset[0], offset[1], 0.0], moved.states, atol=1e-9)

    def test_velocity_weight_is_monotone(self):
        grid = grid_with_occupied([])
        selected_v = []
        for weight in [0.1, 0.5, 1.0, 2.0, 5.0]:
            config = self.config.model_copy(update={"velocity_weight": weight})
            selected_v.append(plan(moving_state(v=0.8), grid, straight_route(), config).command.v)
        self.assertTrue(all(b >= a for a, b in zip(selected_v, selected_v[1:])))

    def test_lattice_size(self):
        candidates = evaluate_lattice(moving_state(v=0.5), grid_with_occupied([]), straight_route(), self.config)
        self.assertEqual(11 * 21, len(candidates))
        self.assertTrue(all(candidate.admissible for candidate in candidates))
