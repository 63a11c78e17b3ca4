import os
from dataclasses import dataclass
from typing import Callable, Optional, TypeVar

from dotenv import load_dotenv

from src.errors import ConfigError

load_dotenv()

ENV_PREFIX = "ORTHORANK_"

T = TypeVar("T")


def _read(name: str, parse: Callable[[str], T], default: T) -> T:
    raw = os.getenv(ENV_PREFIX + name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return parse(raw.strip())
    except ValueError as e:
        raise ConfigError(f"{ENV_PREFIX}{name}={raw!r} is not valid: {e}") from e


def _optional_float(raw: str) -> Optional[float]:
    value = float(raw)
    if value <= 0:
        raise ValueError("must be positive")
    return value


@dataclass(frozen=True)
class Settings:
    """
    Runtime defaults, read from ORTHORANK_* environment variables (or a .env file).

    Command-line flags override these values.
    """

    seed: int = 0
    tol_zero: Optional[float] = None
    restarts: int = 32
    max_iters: int = 2000
    max_n_exact: int = 20
    coloring_budget: int = 2_000_000
    workers: int = 4
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls) -> "Settings":
        return cls(
            seed=_read("SEED", int, cls.seed),
            tol_zero=_read("TOL_ZERO", _optional_float, cls.tol_zero),
            restarts=_read("RESTARTS", int, cls.restarts),
            max_iters=_read("MAX_ITERS", int, cls.max_iters),
            max_n_exact=_read("MAX_N_EXACT", int, cls.max_n_exact),
            coloring_budget=_read("COLORING_BUDGET", int, cls.coloring_budget),
            workers=_read("WORKERS", int, cls.workers),
            log_level=_read("LOG_LEVEL", str.upper, cls.log_level),
        )
