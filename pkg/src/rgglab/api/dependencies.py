"""Dependencies shared by the API routes."""

from typing import Annotated

from fastapi import Depends, HTTPException

from ..core.settings import ApiSettings, Settings, get_settings

SettingsDep = Annotated[Settings, Depends(get_settings)]


def check_api_enabled(settings: SettingsDep) -> None:
    """Check if the HTTP surface is enabled."""
    if not settings.is_api_enabled():
        raise HTTPException(
            status_code=404,
            detail="rgglab API is not enabled",
        )


def get_api_settings(settings: SettingsDep) -> ApiSettings:
    return settings.api or ApiSettings()


ApiSettingsDep = Annotated[ApiSettings, Depends(get_api_settings)]
