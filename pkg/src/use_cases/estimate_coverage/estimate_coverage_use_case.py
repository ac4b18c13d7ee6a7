from pydantic import BaseModel

from configuration import pipeline_logger
from domain.errors import NonPositiveInput

SECONDS_PER_HOUR = 3600.0
METERS_PER_KM = 1000.0


def check_positive(**values: float):
    for name, value in values.items():
        if not value > 0:
            raise NonPositiveInput(f"{name} must be positive, got {value}")


def estimate_coverage(v_max: float, endurance_h: float) -> float:
    """Distance in km covered at v_max (m/s) over one charge of endurance_h hours."""
    check_positive(v_max=v_max, endurance_h=endurance_h)
    return v_max * endurance_h * SECONDS_PER_HOUR / METERS_PER_KM


def required_endurance(route_km: float, v_max: float) -> float:
    """Hours of endurance needed to drive route_km at v_max (m/s)."""
    check_positive(route_km=route_km, v_max=v_max)
    return route_km * METERS_PER_KM / (v_max * SECONDS_PER_HOUR)


class CoverageEstimate(BaseModel):
    v_max: float
    endurance_h: float
    coverage_km: float
    route_km: float | None = None
    required_endurance_h: float | None = None


class EstimateCoverageUseCase:
    def execute(self, v_max: float, endurance_h: float, route_km: float | None = None) -> CoverageEstimate:
        estimate = CoverageEstimate(
            v_max=v_max, endurance_h=endurance_h, coverage_km=estimate_coverage(v_max, endurance_h)
        )
        if route_km is not None:
            estimate.route_km = route_km
            estimate.required_endurance_h = required_endurance(route_km, v_max)
        pipeline_logger.info(f"{v_max} m/s for {endurance_h} h covers {estimate.coverage_km:.1f} km")
        return estimate
