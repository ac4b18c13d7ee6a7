import tempfile
from pathlib import Path
from unittest import TestCase

from pydantic import ValidationError

from adapters.storage.config_loader import apply_override, load_pipeline_config, load_scene_config
from configuration import DEFAULT_CONFIG_PATH, ROOT_PATH
from domain.Obstacle import ObstacleShape
from domain.StateFeedback import StateFeedback
from domain.errors import InputError


class TestConfigLoader(TestCase):
    def test_defaults_without_a_file(self):
        config = load_pipeline_config()
        self.assertEqual([1], config.mapping.traversable_classes)
        self.assertEqual(0.05, config.simulation.dt)

    def test_shipped_defaults(self):
        config = load_pipeline_config(DEFAULT_CONFIG_PATH)
        self.assertEqual(4, config.rig.camera_count)
        self.assertEqual(400, config.mapping.width)
        self.assertEqual(1.5, config.dwa.v_max)

    def test_overrides(self):
        config = load_pipeline_config(
            None,
            [
                "simulation.duration=2.5",
                "simulation.feedback=truth",
                "mapping.traversable_classes=[1, 4]",
                "dwa.v_max=1",
            ],
        )
        self.assertEqual(2.5, config.simulation.duration)
        self.assertEqual(StateFeedback.TRUTH, config.simulation.feedback)
        self.assertEqual([1, 4], config.mapping.traversable_classes)
        self.assertEqual(1.0, config.dwa.v_max)

    def test_malformed_override(self):
        with self.assertRaises(InputError):
            apply_override({}, "simulation.duration")
        with self.assertRaises(InputError):
            apply_override({"simulation": 3}, "simulation.duration=1")

    def test_invalid_value(self):
        with self.assertRaises(ValidationError):
            load_pipeline_config(None, ["simulation.dt=-1"])

    def test_toml(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory, "pipeline.toml")
            path.write_text('[simulation]\nseed = 7\ngps_enabled = false\n\n[output]\ntiming_column = true\n')
            config = load_pipeline_config(path, ["simulation.seed=8"])
        self.assertEqual(8, config.simulation.seed)
        self.assertFalse(config.simulation.gps_enabled)
        self.assertTrue(config.output.timing_column)

    def test_missing_and_unparsable_files(self):
        with self.assertRaises(InputError):
            load_pipeline_config(Path("/nonexistent/pipeline.json"))
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory, "broken.json")
            path.write_text("{")
            with self.assertRaises(InputError):
                load_pipeline_config(path)

    def test_scene_example(self):
        scene = load_scene_config(Path(ROOT_PATH, "config", "scene_example.json"))
        self.assertEqual(11, len(scene.route))
        self.assertEqual([ObstacleShape.CYLINDER, ObstacleShape.BOX], [obstacle.shape for obstacle in scene.obstacles])
        self.assertEqual((0.0, 0.0, 0.0), scene.start_pose())
        self.assertEqual(50.0, scene.reference().length)
