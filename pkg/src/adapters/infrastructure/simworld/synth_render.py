import numpy as np

from adapters.infrastructure.geometry.camera_projection import project_camera_points, unproject_rays
from adapters.infrastructure.simworld.ray_casting import cast_rays
from configuration import GROUND_CLASS_ID, NUM_CLASSES, SKY_CLASS_ID
from domain.CameraIntrinsics import CameraIntrinsics
from domain.GrayImage import GrayImage
from domain.InstanceMap import InstanceMap
from domain.Pose3 import Pose3
from domain.Scene import Scene
from domain.SemanticMap import SemanticMap
from domain.errors import CameraBelowGround

SPLAT_SIGMA_PX = 0.8
SPLAT_OFFSETS = np.array([(dx, dy) for dy in (-1, 0, 1) for dx in (-1, 0, 1)])
NEAR_PLANE_M = 0.1
OCCLUSION_TOLERANCE_M = 1e-6


def pixel_rays(intrinsics: CameraIntrinsics) -> np.ndarray:
    columns, rows = np.meshgrid(np.arange(intrinsics.width), np.arange(intrinsics.height))
    return unproject_rays(intrinsics, np.stack([columns, rows], axis=-1).astype(float))


def splat(image: np.ndarray, pixels: np.ndarray, amplitudes: np.ndarray):
    """Adds a 3×3 Gaussian around each sub-pixel position, in place."""
    centers = np.rint(pixels).astype(np.int64)
    height, width = image.shape
    for offset in SPLAT_OFFSETS:
        targets = centers + offset
        inside = (targets[:, 0] >= 0) & (targets[:, 0] < width) & (targets[:, 1] >= 0) & (targets[:, 1] < height)
        squared = np.sum((targets - pixels) ** 2, axis=1)
        weights = amplitudes * np.exp(-squared / (2.0 * SPLAT_SIGMA_PX**2))
        np.add.at(image, (targets[inside, 1], targets[inside, 0]), weights[inside])


def synth_render(scene: Scene, camera: tuple[CameraIntrinsics, Pose3]) -> tuple[GrayImage, SemanticMap, InstanceMap]:
    """Analytic ray casting for labels and obstacle shading, splats for ground dots and landmarks."""
    intrinsics, world_from_camera = camera
    origin = world_from_camera.translation
    if scene.ground.signed_height(origin) <= 0:
        raise CameraBelowGround(f"Camera at height {scene.ground.signed_height(origin):.3f} m")

    rays = pixel_rays(intrinsics)
    shape = rays.shape[:2]
    directions = rays.reshape(-1, 3) @ world_from_camera.rotation.T
    ground, obstacle_distance, obstacle_index = cast_rays(scene, origin, directions)

    on_obstacle = obstacle_distance < ground
    classes = np.full(len(directions), SKY_CLASS_ID, dtype=np.int32)
    classes[np.isfinite(ground)] = GROUND_CLASS_ID
    instances = np.zeros(len(directions), dtype=np.int64)
    intensity = np.full(len(directions), scene.background)
    for position, obstacle in enumerate(scene.obstacles):
        pixels = on_obstacle & (obstacle_index == position)
        classes[pixels] = obstacle.class_id
        instances[pixels] = obstacle.instance_id
        intensity[pixels] = obstacle.intensity

    image = intensity.reshape(shape)
    depth_buffer = np.where(on_obstacle, obstacle_distance, np.inf).reshape(shape)
    points = np.vstack([scene.dots, scene.landmarks])
    amplitudes = np.concatenate([scene.dot_intensities, scene.landmark_intensities])
    if len(points):
        points_camera = world_from_camera.inverse().transform(points)
        pixels, in_front = project_camera_points(intrinsics, points_camera)
        visible = in_front & (points_camera[:, 2] > NEAR_PLANE_M)
        visible &= (pixels[:, 0] > -1.5) & (pixels[:, 0] < intrinsics.width + 0.5)
        visible &= (pixels[:, 1] > -1.5) & (pixels[:, 1] < intrinsics.height + 0.5)
        centers = np.rint(pixels[visible]).astype(np.int64)
        columns = np.clip(centers[:, 0], 0, intrinsics.width - 1)
        rows = np.clip(centers[:, 1], 0, intrinsics.height - 1)
        ranges = np.linalg.norm(points_camera[visible], axis=1)
        unoccluded = ranges <= depth_buffer[rows, columns] + OCCLUSION_TOLERANCE_M
        splat(image, pixels[visible][unoccluded], amplitudes[visible][unoccluded])

    gray = GrayImage(np.clip(np.rint(image), 0, 255).astype(np.uint8))
    return gray, SemanticMap(classes.reshape(shape), NUM_CLASSES), InstanceMap(instances.reshape(shape))
