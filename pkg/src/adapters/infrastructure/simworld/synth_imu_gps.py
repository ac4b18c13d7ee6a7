import math

import numpy as np

from adapters.infrastructure.simworld.noise_streams import NoiseStream, substream
from domain.GpsFix import GpsFix
from domain.ImuSample import ImuSample
from domain.SimState import SimState

EPOCH_TOLERANCE = 1e-9


def gps_epoch(timestamp: float, gps_period: float) -> int:
    return math.floor(timestamp / gps_period + EPOCH_TOLERANCE)


def gps_fix(state: SimState, sigma_p: float, noisy: bool = True) -> GpsFix:
    offset = substream(state.seed, NoiseStream.GPS, state.step).standard_normal(2) * sigma_p if noisy else np.zeros(2)
    return GpsFix((state.x + float(offset[0]), state.y + float(offset[1])), sigma_p, state.timestamp)


def synth_imu_gps(
    prev_state: SimState,
    next_state: SimState,
    dt: float,
    sigma_a: float = 0.05,
    sigma_g: float = 0.005,
    sigma_p: float = 0.5,
    gps_period: float = 1.0,
    noisy: bool = True,
) -> tuple[ImuSample, GpsFix | None]:
    """Gravity-compensated body-frame IMU over one step, plus a GPS fix when the step crosses a GPS epoch.

    The fix at t = 0 is not produced here; recorders take it with gps_fix on the initial state.
    """
    if dt <= 0:
        raise ValueError(f"IMU step must be positive, got {dt}")
    forward = (next_state.v - prev_state.v) / dt
    lateral = next_state.v * next_state.omega
    gyro = next_state.omega
    if noisy:
        noise = substream(next_state.seed, NoiseStream.IMU, next_state.step).standard_normal(3)
        forward += sigma_a * noise[0]
        lateral += sigma_a * noise[1]
        gyro += sigma_g * noise[2]
    imu = ImuSample((forward, lateral, 0.0), (0.0, 0.0, gyro), next_state.timestamp)

    crossed = gps_epoch(next_state.timestamp, gps_period) > gps_epoch(prev_state.timestamp, gps_period)
    return imu, gps_fix(next_state, sigma_p, noisy) if crossed else None
