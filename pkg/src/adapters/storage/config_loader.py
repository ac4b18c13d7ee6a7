import json
import tomllib
from pathlib import Path

from pydantic import BaseModel

from domain.PipelineConfig import PipelineConfig
from domain.SceneConfig import SceneConfig
from domain.errors import InputError


def read_document(path: Path) -> dict:
    path = Path(path)
    if not path.exists():
        raise InputError(f"Missing configuration file {path}")
    try:
        if path.suffix.lower() == ".toml":
            return tomllib.loads(path.read_text())
        return json.loads(path.read_text())
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as error:
        raise InputError(f"Could not parse {path}: {error}") from error


def parse_value(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def apply_override(document: dict, assignment: str) -> dict:
    """Applies one `section.key=value` assignment; the value is read as JSON when it parses, else as a string."""
    key_path, separator, value = assignment.partition("=")
    if not separator or not key_path.strip():
        raise InputError(f"Override {assignment!r} is not of the form section.key=value")
    keys = [key.strip() for key in key_path.split(".")]
    target = document
    for key in keys[:-1]:
        target = target.setdefault(key, {})
        if not isinstance(target, dict):
            raise InputError(f"Override {assignment!r} descends into the non-section {key!r}")
    target[keys[-1]] = parse_value(value.strip())
    return document


def load_model(model: type[BaseModel], path: Path | None, overrides: list[str] | None = None):
    document = read_document(path) if path is not None else {}
    for assignment in overrides or []:
        apply_override(document, assignment)
    return model.model_validate(document)


def load_pipeline_config(path: Path | None = None, overrides: list[str] | None = None) -> PipelineConfig:
    return load_model(PipelineConfig, path, overrides)


def load_scene_config(path: Path | None = None) -> SceneConfig:
    return load_model(SceneConfig, path)
