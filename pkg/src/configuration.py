import logging
import os
from pathlib import Path


SRC_PATH = Path(__file__).parent.absolute()
ROOT_PATH = Path(__file__).parent.parent.absolute()

LOG_LEVEL = os.environ.get("LOG_LEVEL", "INFO").upper().strip()

handlers = [logging.StreamHandler()]
logging.root.handlers = []
logging.basicConfig(level=LOG_LEVEL, format="%(asctime)s [%(levelname)s] %(message)s", handlers=handlers)
pipeline_logger = logging.getLogger(__name__)

OUTPUT_PATH = Path(os.environ.get("AMTU_OUTPUT_PATH", str(Path(ROOT_PATH, "outputs"))).strip())
RUN_SLOW_TESTS = os.environ.get("AMTU_RUN_SLOW_TESTS", "false").lower().strip() == "true"

DEFAULT_CONFIG_PATH = Path(ROOT_PATH, "config", "default_config.json")
DEFAULT_CALIBRATION_PATH = Path(ROOT_PATH, "config", "calib.json")

NUM_CLASSES = 37

GROUND_CLASS_ID = 1
PEDESTRIAN_CLASS_ID = 2
VEGETATION_CLASS_ID = 3
SKY_CLASS_ID = NUM_CLASSES

SYNTHETIC_CLASS_BY_ID = {
    GROUND_CLASS_ID: "Ground",
    PEDESTRIAN_CLASS_ID: "Pedestrian",
    VEGETATION_CLASS_ID: "Vegetation",
    SKY_CLASS_ID: "Sky",
}

STAGE_BUDGET_MS = 100.0
