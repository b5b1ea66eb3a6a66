"""Application factory for ``rgglab serve``."""

from fastapi import FastAPI

from .. import __version__
from ..core.settings import ApiSettings, Settings, get_settings
from .router import router


def create_app(settings: Settings | None = None) -> FastAPI:
    """Build an app with the API router enabled.

    ``settings`` defaults to the global settings with an ``api`` section added.
    """
    if settings is None:
        settings = get_settings().model_copy(update={"api": ApiSettings()})
    app = FastAPI(title="rgglab", version=__version__)
    app.dependency_overrides[get_settings] = lambda: settings
    app.include_router(router)
    return app
