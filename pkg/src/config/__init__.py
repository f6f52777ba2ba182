"""Configuration module for msr-curves"""

from .settings import Settings, get_settings

__all__ = ["Settings", "get_settings"]
