"""
Settings read from the environment (and an optional .env file)
"""
import os
from dotenv import load_dotenv
from pydantic import BaseModel, ValidationError, field_validator

from belyi.errors import InvalidInput

load_dotenv(override=True)

DEFAULT_PRECISION = 128
DEFAULT_CLUSTER_TOL = 1e-9
DEFAULT_PATH_STEPS = 64
DEFAULT_WORKERS = 4
DEFAULT_CATALOG_DIR = "data"


def env_int(name: str, default: int) -> int:
    value = os.getenv(name)
    return int(value) if value else default


def env_float(name: str, default: float) -> float:
    value = os.getenv(name)
    return float(value) if value else default


def catalog_dir() -> str:
    return os.getenv("BELYI_CATALOG_DIR", DEFAULT_CATALOG_DIR)


def workers() -> int:
    return env_int("BELYI_WORKERS", DEFAULT_WORKERS)


class NumericSettings(BaseModel):
    """
    Knobs for the floating-point oracle: working precision in bits, relative clustering tolerance,
    initial steps per path piece, base point of the loops and the root index used to embed the field
    """

    precision: int = DEFAULT_PRECISION
    cluster_tol: float = DEFAULT_CLUSTER_TOL
    path_steps: int = DEFAULT_PATH_STEPS
    base_point: complex = complex(0.5, 0.25)
    embedding: int = 0

    @field_validator("precision")
    @classmethod
    def check_precision(cls, value: int) -> int:
        if value < 53:
            raise ValueError("precision must be at least 53 bits")
        return value

    @field_validator("cluster_tol")
    @classmethod
    def check_tol(cls, value: float) -> float:
        if value <= 0:
            raise ValueError("cluster_tol must be positive")
        return value

    @field_validator("path_steps")
    @classmethod
    def check_steps(cls, value: int) -> int:
        if value < 16:
            raise ValueError("path_steps must be at least 16")
        return value

    @classmethod
    def from_env(cls, **overrides) -> "NumericSettings":
        try:
            values = {
                "precision": env_int("BELYI_PRECISION", DEFAULT_PRECISION),
                "cluster_tol": env_float("BELYI_CLUSTER_TOL", DEFAULT_CLUSTER_TOL),
                "path_steps": env_int("BELYI_PATH_STEPS", DEFAULT_PATH_STEPS),
            }
            values.update({key: value for key, value in overrides.items() if value is not None})
            return cls(**values)
        except ValidationError as exc:
            raise InvalidInput("; ".join(error["msg"] for error in exc.errors())) from exc
        except ValueError as exc:
            raise InvalidInput(f"bad numeric setting in the environment: {exc}") from exc
