import numpy as np


class ReferenceTrajectory:
    """Global route: ordered (x, y) waypoints in world meters, optional per-waypoint target speeds."""

    def __init__(self, waypoints, target_speeds=None, closed: bool = False):
        waypoints = np.array(waypoints, dtype=float).reshape(-1, 2)
        if len(waypoints) < 2:
            raise ValueError("A reference route needs at least two waypoints")
        if not np.isfinite(waypoints).all():
            raise ValueError("Reference waypoints must be finite")
        if (np.linalg.norm(np.diff(waypoints, axis=0), axis=1) == 0).any():
            raise ValueError("Consecutive reference waypoints must be distinct")
        if target_speeds is not None:
            target_speeds = np.array(target_speeds, dtype=float)
            if target_speeds.shape != (len(waypoints),):
                raise ValueError(f"Expected {len(waypoints)} target speeds, got {target_speeds.shape}")
            target_speeds.setflags(write=False)
        waypoints.setflags(write=False)
        self.waypoints = waypoints
        self.target_speeds = target_speeds
        self.closed = closed

    def __len__(self):
        return len(self.waypoints)

    @property
    def segments(self) -> tuple[np.ndarray, np.ndarray]:
        starts = self.waypoints
        ends = np.roll(self.waypoints, -1, axis=0)
        if not self.closed:
            starts, ends = starts[:-1], ends[:-1]
        return starts, ends

    @property
    def arc_lengths(self) -> np.ndarray:
        """Cumulative route length at every waypoint; a closed route gets the loop length appended."""
        starts, ends = self.segments
        return np.concatenate([[0.0], np.cumsum(np.linalg.norm(ends - starts, axis=1))])

    @property
    def length(self) -> float:
        return float(self.arc_lengths[-1])

    def nearest(self, positions) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """For N positions: (N×2 closest route points, segment indices, fractions along them, distances).

        Ties go to the earliest segment.
        """
        points = np.asarray(positions, dtype=float).reshape(-1, 2)
        starts, ends = self.segments
        directions = ends - starts
        squared = np.einsum("ij,ij->i", directions, directions)
        offsets = points[:, None, :] - starts[None]
        fractions = np.clip(np.einsum("nsj,sj->ns", offsets, directions) / squared, 0.0, 1.0)
        closest = starts[None] + fractions[..., None] * directions[None]
        distances = np.linalg.norm(closest - points[:, None, :], axis=2)
        best = np.argmin(distances, axis=1)
        rows = np.arange(len(points))
        return closest[rows, best], best, fractions[rows, best], distances[rows, best]

    def closest(self, position) -> tuple[float, float]:
        """(arc length, distance) of the closest point on the route."""
        _, segment, fraction, distance = self.nearest(position)
        starts, ends = self.segments
        segment_length = np.linalg.norm(ends[segment[0]] - starts[segment[0]])
        return float(self.arc_lengths[segment[0]] + fraction[0] * segment_length), float(distance[0])

    def project(self, position) -> float:
        """Arc length of the closest point on the route."""
        return self.closest(position)[0]

    def cross_track_error(self, position) -> float:
        return self.closest(position)[1]

    def lookahead_point(self, position, distance: float = 2.0) -> np.ndarray:
        """First waypoint at least `distance` meters of route past the projection of position."""
        target = self.project(position) + distance
        arc_lengths = self.arc_lengths[: len(self.waypoints)]
        if self.closed:
            loop = self.length
            ahead = np.mod(arc_lengths - target, loop)
            return self.waypoints[int(np.argmin(ahead))]
        candidates = np.nonzero(arc_lengths >= target)[0]
        return self.waypoints[candidates[0]] if len(candidates) else self.waypoints[-1]

    @property
    def vertex_tangents(self) -> np.ndarray:
        """Unit route direction at every segment end point: the bisector of the two adjacent segments."""
        starts, ends = self.segments
        units = (ends - starts) / np.linalg.norm(ends - starts, axis=1, keepdims=True)
        if self.closed:
            incoming, outgoing = np.roll(units, 1, axis=0), units
        else:
            incoming, outgoing = np.vstack([units[:1], units]), np.vstack([units, units[-1:]])
        bisectors = incoming + outgoing
        norms = np.linalg.norm(bisectors, axis=1, keepdims=True)
        return np.where(norms > 1e-9, bisectors / np.maximum(norms, 1e-12), outgoing)

    def carrot_points(self, positions, distance: float = 2.0) -> np.ndarray:
        """Targets `distance` meters past the projection of each position, along the local route direction.

        The direction blends the vertex tangents linearly along each segment. On an open route, positions whose
        projection lies within `distance` of the end get the final waypoint instead.
        """
        points, segments, fractions, _ = self.nearest(positions)
        tangents = self.vertex_tangents
        starts, ends = self.segments
        blended = (1.0 - fractions)[:, None] * tangents[segments] + fractions[:, None] * tangents[
            (segments + 1) % len(tangents)
        ]
        norms = np.linalg.norm(blended, axis=1, keepdims=True)
        units = (ends - starts)[segments] / np.linalg.norm((ends - starts)[segments], axis=1, keepdims=True)
        directions = np.where(norms > 1e-9, blended / np.maximum(norms, 1e-12), units)
        targets = points + distance * directions
        if not self.closed:
            segment_lengths = np.linalg.norm(ends - starts, axis=1)
            arc = self.arc_lengths[segments] + fractions * segment_lengths[segments]
            targets[arc + distance >= self.length] = self.waypoints[-1]
        return targets

    def translated(self, offset) -> "ReferenceTrajectory":
        offset = np.asarray(offset, dtype=float)[:2]
        return ReferenceTrajectory(self.waypoints + offset, self.target_speeds, self.closed)
