from pathlib import Path

from pydantic import Field, BaseSettings, validator


DEFAULT_OMEGA_CAP = 6
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Config(BaseSettings):
    default_bound: int = Field(12, env="CKAH_BOUND")
    max_language_size: int = Field(200_000, env="CKAH_MAX_LANGUAGE_SIZE")
    max_leaf_count: int = Field(24, env="CKAH_MAX_LEAF_COUNT")
    max_iterations: int = Field(2_000_000, env="CKAH_MAX_ITERATIONS")

    omega_cap: int = Field(DEFAULT_OMEGA_CAP, env="CKAH_OMEGA_CAP")
    oracle_limit: int = Field(12, env="CKAH_ORACLE_LIMIT")
    star_slack: int = Field(4, env="CKAH_STAR_SLACK")

    log_level: str = Field("WARNING", env="CKAH_LOG_LEVEL")

    project_name = "ckah"
    version = "0.1.0"

    @validator("log_level")
    def validate_log_level(cls, value: str):
        if value.upper() not in LOG_LEVELS:
            raise ValueError(f"log level must be one of {', '.join(LOG_LEVELS)}")
        return value.upper()

    class Config:
        env_prefix = ""
        case_sensitive = True
        # Walk up from the working directory until a .env file or the root is found
        current_dir = Path.cwd().resolve()
        while (
            not (current_dir / ".env").exists()
            and current_dir != current_dir.parent
        ):
            current_dir = current_dir.parent
        env_file = f"{current_dir}/.env"
        env_file_encoding = "utf-8"


config = Config()
