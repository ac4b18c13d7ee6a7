class AmtuError(Exception):
    pass


class InputError(AmtuError):
    pass


class GeometryError(AmtuError):
    pass


class InvalidPose(GeometryError):
    pass


class BehindCamera(GeometryError):
    pass


class NoIntersection(GeometryError):
    pass


class CameraBelowGround(GeometryError):
    pass


class FeatureError(AmtuError):
    pass


class ImageTooSmall(FeatureError):
    pass


class TooManyLevels(FeatureError):
    pass


class PyramidMismatch(FeatureError):
    pass


class OdometryError(AmtuError):
    pass


class DegenerateBaseline(OdometryError):
    pass


class LandmarkRejected(OdometryError):
    pass


class InsufficientCorrespondences(OdometryError):
    pass


class DivergedSolve(OdometryError):
    pass


class NonPositiveDt(OdometryError):
    pass


class StaleMeasurement(OdometryError):
    pass


class PerceptsError(AmtuError):
    pass


class DimensionMismatch(PerceptsError):
    pass


class ShapeMismatch(PerceptsError):
    pass


class LabelOutOfRange(PerceptsError):
    pass


class MappingError(AmtuError):
    pass


class OutOfGrid(MappingError):
    pass


class PlanningError(AmtuError):
    pass


class NotAdmissible(PlanningError):
    pass


class ControlError(AmtuError):
    pass


class NonFiniteCost(ControlError):
    pass


class ReferenceLengthMismatch(ControlError):
    pass


class SimulationError(AmtuError):
    pass


class IoFailure(InputError):
    pass


class MissingPair(InputError):
    pass


class NonPositiveInput(InputError):
    pass
