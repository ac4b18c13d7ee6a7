from adapters.infrastructure.geometry.unicycle import unicycle_step
from adapters.infrastructure.simworld.noise_streams import NoiseStream, substream
from domain.ControlInput import ControlInput
from domain.SimState import SimState


def step_dynamics(
    sim: SimState, control: ControlInput, dt: float, sigma_v: float = 0.01, sigma_omega: float = 0.01
) -> SimState:
    """Skid-steer truth: slip scales the commanded velocities, seeded noise perturbs them, then one arc step."""
    if dt <= 0:
        raise ValueError(f"Simulation step must be positive, got {dt}")
    v = control.v_cmd * (1.0 - sim.slip_long)
    omega = control.omega_cmd * (1.0 - sim.slip_lat)
    if sigma_v > 0 or sigma_omega > 0:
        noise = substream(sim.seed, NoiseStream.DYNAMICS, sim.step).standard_normal(2)
        v += sigma_v * noise[0]
        omega += sigma_omega * noise[1]

    x, y, yaw = unicycle_step(sim.x, sim.y, sim.yaw, v, omega, dt)
    return SimState(x, y, yaw, v, omega, sim.timestamp + dt, sim.slip_long, sim.slip_lat, sim.seed, sim.step + 1)
