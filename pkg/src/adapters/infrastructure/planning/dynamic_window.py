from domain.DwaConfig import DwaConfig
from domain.RobotState import RobotState


def dynamic_window(state: RobotState, config: DwaConfig) -> tuple[float, float, float, float]:
    """Velocities reachable within one planning step; reverse motion is excluded."""
    v_step = config.a_v * config.dt_plan
    omega_step = config.a_omega * config.dt_plan
    v_lo = max(0.0, state.v - v_step)
    v_hi = min(config.v_max, state.v + v_step)
    omega_lo = max(-config.omega_max, state.omega - omega_step)
    omega_hi = min(config.omega_max, state.omega + omega_step)
    return v_lo, max(v_lo, v_hi), omega_lo, max(omega_lo, omega_hi)
