from pydantic import BaseModel, Field


class DwaConfig(BaseModel):
    v_max: float = Field(1.5, gt=0)
    omega_max: float = Field(1.0, gt=0)
    a_v: float = Field(0.5, gt=0)
    a_omega: float = Field(1.0, gt=0)
    dt_plan: float = Field(0.1, gt=0)
    horizon: float = Field(3.0, gt=0)
    samples_v: int = Field(11, ge=3)
    samples_omega: int = Field(21, ge=3)
    heading_weight: float = Field(1.0, gt=0)
    clearance_weight: float = Field(1.0, gt=0)
    velocity_weight: float = Field(0.5, gt=0)
    robot_radius: float = Field(0.5, gt=0)
    clearance_radius: float = Field(3.0, gt=0)
    lookahead: float = Field(2.0, gt=0)
