from pathlib import Path
from typing import Annotated, Optional

import typer

from adapters.storage.config_loader import load_pipeline_config, load_scene_config
from catch_exceptions import catch_exceptions
from configuration import NUM_CLASSES, OUTPUT_PATH
from domain.DatasetLayout import DatasetLayout
from domain.SceneConfig import SceneConfig
from domain.errors import InputError
from drivers.cli.dependency_injection import setup_dependencies

app = typer.Typer(add_completion=False, help="AMTU vision-dynamics batch tools")

ConfigOption = Annotated[Optional[Path], typer.Option("--config", help="Pipeline config (.json or .toml)")]
OverrideOption = Annotated[Optional[list[str]], typer.Option("--set", help="Override as section.key=value")]
SceneOption = Annotated[Optional[Path], typer.Option("--scene", help="Scene config (.json or .toml)")]
DurationOption = Annotated[Optional[float], typer.Option("--duration", help="Simulated seconds")]


def pipeline_config(config_path: Path | None, overrides: list[str] | None, duration: float | None):
    overrides = list(overrides or [])
    if duration is not None:
        overrides.append(f"simulation.duration={duration}")
    return load_pipeline_config(config_path, overrides)


def scene_with_route(scene_config: SceneConfig, route) -> SceneConfig:
    speeds = None if route.target_speeds is None else [float(speed) for speed in route.target_speeds]
    waypoints = [(float(x), float(y)) for x, y in route.waypoints]
    return scene_config.model_copy(update={"route": waypoints, "target_speeds": speeds, "closed_route": route.closed})


@app.command()
@catch_exceptions
def run(
    dataset_dir: Annotated[Optional[Path], typer.Argument(help="Recorded dataset directory")] = None,
    sim: Annotated[bool, typer.Option("--sim", help="Close the loop in the simulated world")] = False,
    scene: SceneOption = None,
    route: Annotated[Optional[Path], typer.Option("--route", help="Route CSV (x_m, y_m[, v_target_mps])")] = None,
    config: ConfigOption = None,
    overrides: OverrideOption = None,
    output_dir: Annotated[Path, typer.Option("--output-dir", "--output")] = Path(OUTPUT_PATH, "run"),
    duration: DurationOption = None,
):
    """Runs the full pipeline on a recorded dataset or in closed loop on the simulated world."""
    if sim == (dataset_dir is not None):
        raise InputError("Give either a dataset directory or --sim")
    pipeline = pipeline_config(config, overrides, duration)
    dependencies = setup_dependencies(pipeline)
    reference = dependencies.dataset_repository.load_route(route) if route is not None else None

    if sim:
        scene_config = load_scene_config(scene)
        if reference is not None:
            scene_config = scene_with_route(scene_config, reference)
        summary = dependencies.run_pipeline_use_case.execute_sim(scene_config, pipeline, dependencies.rig, output_dir)
    else:
        summary = dependencies.run_pipeline_use_case.execute_dataset(
            dataset_dir, pipeline, dependencies.rig, output_dir, reference
        )

    typer.echo(summary.report(), nl=False)
    for artifact in summary.artifacts:
        typer.echo(artifact)


@app.command()
@catch_exceptions
def evaluate(
    pred_dir: Annotated[Path, typer.Argument(help="Predicted *_sem.png / *_inst.png maps")],
    gt_dir: Annotated[Path, typer.Argument(help="Ground-truth maps with the same relative names")],
    classes: Annotated[int, typer.Option("--classes", min=1)] = NUM_CLASSES,
    half_size: Annotated[bool, typer.Option("--half-size", help="Score at half resolution")] = False,
    output_dir: Annotated[Optional[Path], typer.Option("--output-dir", "--output")] = None,
    config: ConfigOption = None,
    overrides: OverrideOption = None,
):
    """Scores predicted segmentation maps against ground truth: OA, mIoU and box AP."""
    pipeline = load_pipeline_config(config, list(overrides or []) + [f"segmentation.num_classes={classes}"])
    dependencies = setup_dependencies(pipeline)
    report = dependencies.evaluate_segmentation_use_case.execute(pred_dir, gt_dir, classes, half_size, output_dir)
    typer.echo(report.aggregate.summary())
    if report.missing:
        typer.echo(f"missing pairs: {', '.join(report.missing)}")
    if output_dir is not None:
        typer.echo(str(Path(output_dir, DatasetLayout.EVALUATION_REPORT)))


@app.command()
@catch_exceptions
def simgen(
    output_dir: Annotated[Path, typer.Option("--output-dir", "--output")] = Path(OUTPUT_PATH, "sim_dataset"),
    scene: SceneOption = None,
    config: ConfigOption = None,
    overrides: OverrideOption = None,
    duration: DurationOption = None,
):
    """Records a synthetic dataset while a pure-pursuit driver follows the scene route."""
    pipeline = pipeline_config(config, overrides, duration)
    dependencies = setup_dependencies(pipeline)
    scene_config = load_scene_config(scene)
    script = dependencies.route_following_script(scene_config, pipeline.simulation.script_speed)
    dataset = dependencies.record_dataset_use_case.execute(
        scene_config, pipeline.simulation, dependencies.rig, script, output_dir
    )
    typer.echo(f"{dataset.frame_count} camera cycles, {dataset.manifest.total_frames} frames")
    typer.echo(str(dataset.root))


@app.command()
@catch_exceptions
def coverage(
    v_max: Annotated[float, typer.Argument(help="Maximum velocity in m/s")],
    endurance_h: Annotated[float, typer.Argument(help="Hours per charge")],
    route_km: Annotated[Optional[float], typer.Option("--route-km", help="Route to report endurance for")] = None,
):
    """Distance covered on one charge."""
    estimate = setup_dependencies().estimate_coverage_use_case.execute(v_max, endurance_h, route_km)
    typer.echo(f"{estimate.coverage_km:.1f} km")
    if estimate.required_endurance_h is not None:
        typer.echo(f"{estimate.route_km} km needs {estimate.required_endurance_h:.2f} h")


if __name__ == "__main__":
    app()
