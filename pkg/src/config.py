import os
from functools import lru_cache

import dotenv
from pydantic import BaseModel, Field

ENV_PREFIX = "GRAPHIC_REGIONS_"


class Settings(BaseModel):
    """Guards and runtime knobs, read from the environment (and an optional .env file)."""
    enum_guard: int = Field(default=8, gt=0)
    count_limit: int = Field(default=16, gt=0)
    region_guard: int = Field(default=12, gt=0)
    tv_guard: int = Field(default=8, gt=0)
    workers: int = Field(default=1, gt=0)
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls) -> "Settings":
        values = {}
        for name in cls.model_fields:
            raw = os.environ.get(f"{ENV_PREFIX}{name.upper()}")
            if raw is not None and raw.strip():
                values[name] = raw.strip()
        return cls(**values)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    dotenv.load_dotenv(".env")
    return Settings.from_env()
