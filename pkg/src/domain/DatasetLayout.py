from pathlib import Path


class DatasetLayout:
    """File names and CSV headers of a recorded dataset and of a pipeline run directory."""

    CALIBRATION = "calib.json"
    MANIFEST = "manifest.json"
    FRAMES_INDEX = "frames.csv"
    SWEEPS_INDEX = Path("lidar", "sweeps.csv")
    IMU = "imu.csv"
    GPS = "gps.csv"
    ROUTE = "route.csv"
    TRUTH = "truth.csv"

    FRAMES_INDEX_COLUMNS = ["timestamp_s", "camera_index", "path"]
    SWEEPS_INDEX_COLUMNS = ["timestamp_s", "path"]
    IMU_COLUMNS = ["timestamp_s", "ax", "ay", "az", "gx", "gy", "gz"]
    GPS_COLUMNS = ["timestamp_s", "x_m", "y_m", "acc_m"]
    ROUTE_COLUMNS = ["x_m", "y_m", "v_target_mps"]
    POSE_COLUMNS = ["timestamp_s", "x", "y", "yaw_rad", "v", "omega"]
    SWEEP_COLUMNS = ["x", "y", "z"]

    POSE_LOG = "pose_log.csv"
    TRUTH_LOG = "truth_log.csv"
    CONTROL_LOG = "control_log.csv"
    CONTROL_COLUMNS = ["timestamp_s", "x", "y", "yaw", "v_cmd", "omega_cmd", "cost", "solve_iterations"]
    TIMING_COLUMN = "solve_time_ms"
    PLANNER_COLUMNS = ["v", "omega", "admissible", "score"]
    BOXES_3D = "boxes3d.csv"
    BOXES_3D_COLUMNS = ["frame", "camera", "instance", "class", "cx", "cy", "cz", "ex", "ey", "ez", "yaw"]
    BOXES_2D = "boxes.csv"
    BOXES_2D_COLUMNS = ["frame", "x1", "y1", "x2", "y2", "class", "instance", "confidence"]
    SUMMARY_TEXT = "summary.txt"
    SUMMARY_JSON = "summary.json"
    EVALUATION_REPORT = "evaluation.json"
    SEMANTIC_SUFFIX = "_sem.png"
    INSTANCE_SUFFIX = "_inst.png"

    @staticmethod
    def frame_path(camera_index: int, frame_index: int) -> Path:
        return Path("frames", f"cam{camera_index}", f"frame_{frame_index:06d}.png")

    @staticmethod
    def label_paths(camera_index: int, frame_index: int) -> tuple[Path, Path]:
        directory = Path("labels", f"cam{camera_index}")
        return directory / f"frame_{frame_index:06d}_sem.png", directory / f"frame_{frame_index:06d}_inst.png"

    @staticmethod
    def sweep_path(sweep_index: int) -> Path:
        return Path("lidar", f"sweep_{sweep_index:06d}.csv")

    @staticmethod
    def planner_dump_path(frame_index: int) -> Path:
        return Path("planner", f"cycle_{frame_index:06d}.csv")

    @staticmethod
    def grid_snapshot_path(frame_index: int) -> Path:
        return Path("grids", f"grid_{frame_index:06d}.png")

    @staticmethod
    def overlay_path(frame_index: int) -> Path:
        return Path("overlays", f"frame_{frame_index:06d}.png")

    @staticmethod
    def world_model_path(frame_index: int) -> Path:
        return Path("grids", f"world_{frame_index:06d}.png")
