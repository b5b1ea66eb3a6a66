"""Optional HTTP surface; needs the ``api`` extra."""

from .app import create_app
from .dependencies import ApiSettingsDep, SettingsDep, check_api_enabled
from .router import router

__all__ = [
    "ApiSettingsDep",
    "SettingsDep",
    "check_api_enabled",
    "create_app",
    "router",
]
