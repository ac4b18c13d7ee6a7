from adapters.infrastructure.geometry.unicycle import unicycle_jacobians, unicycle_step
from domain.ControlInput import ControlInput


def predict_model(state, control: ControlInput, dt: float) -> tuple[float, float, float]:
    if dt <= 0:
        raise ValueError(f"Prediction step must be positive, got {dt}")
    x, y, yaw = state
    return unicycle_step(x, y, yaw, control.v_cmd, control.omega_cmd, dt)


def model_jacobians(state, control: ControlInput, dt: float):
    x, y, yaw = state
    return unicycle_jacobians(x, y, yaw, control.v_cmd, control.omega_cmd, dt)
