import numpy as np

from adapters.infrastructure.simworld.noise_streams import NoiseStream, substream
from domain.GroundPlane import GroundPlane
from domain.Obstacle import Obstacle
from domain.ReferenceTrajectory import ReferenceTrajectory
from domain.Scene import BACKGROUND_INTENSITY, Scene


def procedural_scene(
    seed: int,
    route: ReferenceTrajectory | None = None,
    obstacles: list[Obstacle] = (),
    dot_density: float = 1.5,
    margin: float = 15.0,
    landmarks: np.ndarray | None = None,
    background: float = BACKGROUND_INTENSITY,
) -> Scene:
    """Scene whose ground texture (random dots around the route) is fully determined by the seed."""
    ground = GroundPlane()
    if route is not None:
        low = route.waypoints.min(axis=0) - margin
        high = route.waypoints.max(axis=0) + margin
    else:
        low, high = np.array([-margin, -margin]), np.array([margin, margin])

    rng = substream(seed, NoiseStream.TEXTURE)
    count = int(round(dot_density * float(np.prod(high - low))))
    xy = rng.uniform(low, high, size=(count, 2))
    dots = np.column_stack([xy, np.full(count, ground.offset)])
    intensities = rng.uniform(60.0, 180.0, size=count)
    return Scene(obstacles, route, ground, dots, intensities, landmarks, background=background, seed=seed)
