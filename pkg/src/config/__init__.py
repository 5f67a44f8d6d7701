"""Configuration management for polypart."""

from src.config.settings import CheckConfig, RunConfig, Settings

__all__ = ["CheckConfig", "RunConfig", "Settings"]
