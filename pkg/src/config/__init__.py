"""Configuration module for the cascade-invariants pipeline."""

from .settings import get_config, AppConfig, Config, GuardConfig, SamplingConfig, VerificationConfig

__all__ = ["get_config", "AppConfig", "Config", "GuardConfig", "SamplingConfig", "VerificationConfig"]
