"""Application configuration settings module."""

from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict

DEFAULT_GENERATORS = Path(__file__).resolve().parent.parent / "data" / "generators.txt"


class Settings(BaseSettings):
    """Application settings.

    This class uses Pydantic's BaseSettings which loads environment variables
    prefixed with 'NV_'.
    """

    # Load from a .env file as well, using the "NV_" prefix so that the
    # generator file can be selected with NV_GENERATORS.
    model_config = SettingsConfigDict(
        env_file=".env", env_file_encoding="utf-8", env_prefix="NV_"
    )

    # API settings
    API_V1_STR: str = "/api/v1"
    PROJECT_NAME: str = "nv-thompson"
    DEBUG: bool = False
    LOG_FILE: str | None = None

    # Generating set
    GENERATORS: Path = DEFAULT_GENERATORS

    # Search budgets
    BFS_NODE_CAP: int = 5_000_000
    BFS_MAX_RADIUS: int = 2
    MINIMAL_PAIR_BUDGET: int = 10
    NORMAL_FORM_CACHE_SIZE: int = 65536

    # Path construction
    DIVERGENCE_M: int = 100
    DIVERGENCE_Q: int = 4800
    ENDPOINT_EXPONENT_CAP: int = 6
    EVIDENCE_WORD_LIMIT: int = 4000

    # Randomized suites
    SEED: int = 0


# Create settings instance
settings = Settings()
