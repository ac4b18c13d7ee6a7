from pydantic import BaseModel, Field


class NmpcConfig(BaseModel):
    horizon_steps: int = Field(20, ge=2)
    dt_ctrl: float = Field(0.05, gt=0)
    q_x: float = Field(10.0, ge=0)
    q_y: float = Field(10.0, ge=0)
    q_yaw: float = Field(1.0, ge=0)
    r_v: float = Field(0.1, ge=0)
    r_omega: float = Field(0.1, ge=0)
    v_bound: float = Field(1.5, gt=0)
    omega_bound: float = Field(1.0, gt=0)
    v_rate: float = Field(0.1, gt=0)
    omega_rate: float = Field(0.2, gt=0)
    max_iterations: int = Field(30, ge=1)
    tolerance: float = Field(1e-6, gt=0)
    track_width: float = Field(0.6, gt=0)
    braking_deceleration: float = Field(0.5, gt=0)
    feedforward_input_cost: bool = True
