import numpy as np
from scipy.optimize import lsq_linear

from adapters.infrastructure.geometry.unicycle import unicycle_jacobians, unicycle_step, wrap_angle
from domain.ControlInput import ControlInput
from domain.NmpcConfig import NmpcConfig
from domain.NmpcSolution import NmpcSolution
from domain.errors import NonFiniteCost, ReferenceLengthMismatch

STEP_FRACTIONS = [0.5**i for i in range(11)]


def simulate(start: np.ndarray, inputs: np.ndarray, dt: float) -> np.ndarray:
    states = np.empty((len(inputs) + 1, 3))
    states[0] = start
    for k, (v, omega) in enumerate(inputs):
        states[k + 1] = unicycle_step(*states[k], v, omega, dt)
    return states


def feedforward_inputs(reference: np.ndarray, dt: float) -> np.ndarray:
    """Inputs that move between consecutive reference states: along-heading displacement and yaw change."""
    deltas = np.diff(reference, axis=0)
    yaws = reference[:-1, 2]
    v = (deltas[:, 0] * np.cos(yaws) + deltas[:, 1] * np.sin(yaws)) / dt
    omega = wrap_angle(deltas[:, 2]) / dt
    return np.column_stack([v, np.atleast_1d(omega)])


class InputLimits:
    def __init__(self, config: NmpcConfig, previous_input: ControlInput | None):
        self.box = np.array([config.v_bound, config.omega_bound])
        self.rate = np.array([config.v_rate, config.omega_rate])
        self.previous = None
        if previous_input is not None:
            self.previous = np.clip(previous_input.as_array(), -self.box, self.box)

    def envelope(self, steps: int) -> tuple[np.ndarray, np.ndarray]:
        """Per-input box bounds, tightened by how far the rate limits can carry the previous input."""
        lower = np.tile(-self.box, (steps, 1))
        upper = np.tile(self.box, (steps, 1))
        if self.previous is not None:
            reach = np.arange(1, steps + 1)[:, None] * self.rate
            lower = np.maximum(lower, self.previous - reach)
            upper = np.minimum(upper, self.previous + reach)
        return lower, upper

    def project(self, inputs: np.ndarray) -> np.ndarray:
        projected = np.empty_like(inputs)
        last = self.previous
        for k, control in enumerate(inputs):
            lower, upper = -self.box, self.box
            if last is not None:
                lower = np.maximum(lower, last - self.rate)
                upper = np.minimum(upper, last + self.rate)
            projected[k] = np.clip(control, lower, upper)
            last = projected[k]
        return projected


class TrackingProblem:
    def __init__(self, start, reference: np.ndarray, config: NmpcConfig):
        self.start = np.asarray(start, dtype=float)
        self.reference = reference
        self.dt = config.dt_ctrl
        self.state_weights = np.sqrt([config.q_x, config.q_y, config.q_yaw])
        self.input_weights = np.sqrt([config.r_v, config.r_omega])
        horizon = len(reference) - 1
        if config.feedforward_input_cost:
            self.input_reference = feedforward_inputs(reference, self.dt)
        else:
            self.input_reference = np.zeros((horizon, 2))

    def residuals(self, inputs: np.ndarray, states: np.ndarray) -> np.ndarray:
        errors = states[1:] - self.reference[1:]
        errors[:, 2] = wrap_angle(errors[:, 2])
        tracking = errors * self.state_weights
        effort = (inputs - self.input_reference) * self.input_weights
        return np.concatenate([tracking.ravel(), effort.ravel()])

    def cost(self, inputs: np.ndarray) -> float:
        residuals = self.residuals(inputs, simulate(self.start, inputs, self.dt))
        return float(residuals @ residuals)

    def jacobian(self, inputs: np.ndarray, states: np.ndarray) -> np.ndarray:
        """Derivative of the residual vector with respect to the flattened input sequence."""
        horizon = len(inputs)
        sensitivity = np.zeros((horizon, 3, 2 * horizon))
        block = np.zeros((3, 2 * horizon))
        for k in range(horizon):
            a_matrix, b_matrix = unicycle_jacobians(*states[k], *inputs[k], self.dt)
            block = a_matrix @ block
            block[:, 2 * k : 2 * k + 2] = b_matrix
            sensitivity[k] = block
        tracking = (sensitivity * self.state_weights[None, :, None]).reshape(3 * horizon, 2 * horizon)
        effort = np.diag(np.tile(self.input_weights, horizon))
        return np.vstack([tracking, effort])


def shifted(warm_start: np.ndarray, horizon: int) -> np.ndarray:
    warm_start = np.asarray(warm_start, dtype=float).reshape(-1, 2)
    sequence = np.vstack([warm_start[1:], warm_start[-1:]]) if len(warm_start) > 1 else warm_start
    if len(sequence) < horizon:
        sequence = np.vstack([sequence, np.repeat(sequence[-1:], horizon - len(sequence), axis=0)])
    return sequence[:horizon]


def nmpc_solve(
    state,
    reference,
    warm_start: np.ndarray | None = None,
    config: NmpcConfig = NmpcConfig(),
    previous_input: ControlInput | None = None,
) -> NmpcSolution:
    """Iterated linearization with box-constrained least-squares steps and a projected line search.

    warm_start is the previous cycle's solution and is shifted by one step here. previous_input anchors the rate
    limit of the first input; without it only the box bounds apply to the first input.
    """
    horizon = config.horizon_steps
    reference = np.asarray(reference, dtype=float).reshape(-1, 3)
    if len(reference) != horizon + 1:
        raise ReferenceLengthMismatch(f"Expected {horizon + 1} reference states, got {len(reference)}")

    problem = TrackingProblem(state, reference, config)
    limits = InputLimits(config, previous_input)
    initial = shifted(warm_start, horizon) if warm_start is not None else problem.input_reference
    inputs = limits.project(initial)
    cost = problem.cost(inputs)
    if not np.isfinite(cost):
        raise NonFiniteCost(f"Initial tracking cost is {cost}")

    history = [cost]
    iterations = 0
    lower, upper = limits.envelope(horizon)
    while iterations < config.max_iterations and cost > 0.0:
        iterations += 1
        states = simulate(problem.start, inputs, problem.dt)
        residuals = problem.residuals(inputs, states)
        jacobian = problem.jacobian(inputs, states)
        if not np.isfinite(jacobian).all():
            raise NonFiniteCost("Linearization produced a non-finite Jacobian")

        step_lower = (lower - inputs).ravel()
        step_upper = np.maximum((upper - inputs).ravel(), step_lower + 1e-12)
        step = lsq_linear(jacobian, -residuals, bounds=(step_lower, step_upper), method="bvls").x.reshape(-1, 2)
        if not np.isfinite(step).all():
            raise NonFiniteCost("Linearized step is not finite")

        accepted = None
        for fraction in STEP_FRACTIONS:
            trial = limits.project(inputs + fraction * step)
            trial_cost = problem.cost(trial)
            if np.isfinite(trial_cost) and trial_cost < cost:
                accepted = trial, trial_cost
                break
        if accepted is None:
            break

        decrease = cost - accepted[1]
        inputs, cost = accepted
        history.append(cost)
        if decrease < config.tolerance:
            break

    return NmpcSolution(inputs, simulate(problem.start, inputs, problem.dt), cost, iterations, history)
