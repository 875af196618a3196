"""Application configuration."""

from contextlib import contextmanager
from contextvars import ContextVar
from typing import Iterator, Optional

from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings."""

    # Basic settings
    PROJECT_NAME: str = "atomspec"
    VERSION: str = "0.1.0"
    ENVIRONMENT: str = "development"

    # Logging settings
    LOG_LEVEL: str = "WARNING"
    LOG_JSON: bool = True

    # Cap settings
    MAX_ORDER: int = 4096
    MAX_LATTICE: int = 2**20
    MAX_ATOMS: int = 20
    MAX_UNIVERSE_ORDER: int = 64
    MAX_UNIVERSE_MEMBERS: int = 2048

    # Property battery settings
    CROSSCHECK_ORDER: int = 16
    CALCULUS_SAMPLES: int = 100
    ORACLE_SAMPLES: int = 20
    RANDOM_SEED: int = 0

    # Worker pool size for per-ideal checks; 1 disables the pool
    MAX_WORKERS: int = 1

    model_config = SettingsConfigDict(
        env_prefix="ATOMSPEC_",
        env_file=".env",
        case_sensitive=True,
        extra="ignore",
    )


# Create settings instance
settings = Settings()


class Caps(BaseModel):
    """Size limits in force for the current computation."""

    max_order: int = Field(settings.MAX_ORDER, ge=1)
    max_lattice: int = Field(settings.MAX_LATTICE, ge=1)
    max_atoms: int = Field(settings.MAX_ATOMS, ge=0)
    max_universe_order: int = Field(settings.MAX_UNIVERSE_ORDER, ge=1)
    max_universe_members: int = Field(settings.MAX_UNIVERSE_MEMBERS, ge=1)

    model_config = {"frozen": True}


_caps: ContextVar[Optional[Caps]] = ContextVar("atomspec_caps", default=None)


def get_caps() -> Caps:
    """Get the caps in force."""
    caps = _caps.get()
    return caps if caps is not None else Caps()


@contextmanager
def override_caps(**overrides: Optional[int]) -> Iterator[Caps]:
    """Temporarily override caps; ``None`` values keep the current limit."""
    current = get_caps()
    updates = {key: value for key, value in overrides.items() if value is not None}
    caps = Caps(**{**current.model_dump(), **updates})
    token = _caps.set(caps)
    try:
        yield caps
    finally:
        _caps.reset(token)
