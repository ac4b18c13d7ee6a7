from functools import wraps

import typer
from pydantic import ValidationError

from configuration import pipeline_logger
from domain.errors import InputError

INPUT_ERROR_EXIT_CODE = 1
INTERNAL_ERROR_EXIT_CODE = 2


def one_line(error: Exception) -> str:
    return "; ".join(line.strip() for line in str(error).splitlines() if line.strip())


def catch_exceptions(func):
    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            pipeline_logger.info(f"Running command: {func.__name__}")
            return func(*args, **kwargs)
        except typer.Exit:
            raise
        except (InputError, ValidationError, FileNotFoundError) as error:
            pipeline_logger.error(f"{func.__name__}: {type(error).__name__}: {one_line(error)}")
            raise typer.Exit(code=INPUT_ERROR_EXIT_CODE)
        except Exception:
            pipeline_logger.error(f"Error running command: {func.__name__}", exc_info=1)
            raise typer.Exit(code=INTERNAL_ERROR_EXIT_CODE)

    return wrapper
