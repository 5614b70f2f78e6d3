from __future__ import annotations

import os
from functools import lru_cache
from pathlib import Path
from typing import Tuple, Type

from pydantic import Field
from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
    YamlConfigSettingsSource,
)

CONFIG_ENV_VAR = "ORBISYMP_CONFIG"


class OrbisympSettings(BaseSettings):
    """Numerical tolerances and runtime knobs shared by every module."""

    model_config = SettingsConfigDict(env_prefix="ORBISYMP_", case_sensitive=False, extra="ignore")

    threads: int = Field(1, ge=1, description="Upper bound on worker threads (ORBISYMP_THREADS).")
    rank_tol: float = Field(1e-8, gt=0, description="Singular values below rank_tol * s_max count as zero.")
    residual_tol: float = Field(1e-10, gt=0, description="Accepted relation residual of a representation.")
    eigen_gap_tol: float = Field(1e-8, gt=0, description="Minimum relative eigenvalue gap for Hyp+.")
    parabolic_tol: float = Field(1e-8, gt=0, description="Relative residual allowed when solving for X_i.")
    torsion_tol: float = Field(1e-9, gt=0, description="Relative residual allowed when solving for T_i.")
    newton_tol: float = Field(1e-13, gt=0, description="Residual at which Gauss-Newton stops early.")
    newton_accept_tol: float = Field(
        1e-10,
        gt=0,
        description="Residual accepted once Gauss-Newton stops improving at the rounding floor.",
    )
    newton_max_iter: int = Field(50, ge=1)
    newton_stall_limit: int = Field(4, ge=1, description="Slow iterations in a row before Gauss-Newton stops.")
    newton_max_step: float = Field(1.0, gt=0, description="Largest Lie algebra step per generator in one iteration.")
    newton_backtrack_limit: int = Field(30, ge=1, description="Step halvings tried before a line search gives up.")
    newton_floor_factor: float = Field(
        32.0,
        gt=0,
        description="Multiple of the estimated rounding floor of the relator also accepted as converged.",
    )

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        sources: list[PydanticBaseSettingsSource] = [init_settings, env_settings, dotenv_settings]
        config_path = _config_path()
        if config_path is not None:
            sources.append(YamlConfigSettingsSource(settings_cls, yaml_file=config_path))
        sources.append(file_secret_settings)
        return tuple(sources)


def _config_path() -> Path | None:
    raw = os.getenv(CONFIG_ENV_VAR)
    if not raw:
        return None
    path = Path(raw).expanduser()
    return path if path.exists() else None


@lru_cache()
def get_settings() -> OrbisympSettings:
    return OrbisympSettings()


def reset_settings_cache() -> None:
    """Forget the cached settings so the next get_settings() re-reads the environment."""

    get_settings.cache_clear()
