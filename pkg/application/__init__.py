import logging
from logging.config import dictConfig

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .config.config import Config
from .config.log_config import LogConfig
from .exception.application_error import ApplicationError

dictConfig(LogConfig().model_dump())
logging.captureWarnings(True)

app = FastAPI(title=Config.APP_NAME, version=Config.VERSION, docs_url="/swagger")


@app.exception_handler(ApplicationError)
async def application_error_handler(request: Request, ae: ApplicationError):
    return JSONResponse(
        status_code=ae.status_code,
        content={"status": "error", "error_message": ae.to_dict()},
    )


def create_app() -> FastAPI:
    """Construct the core application."""

    from .api import (
        dynamics,
        effective,
        estimate,
        exact,
        geometry,
        group,
        health,
        thermo,
        wkb,
    )

    routers = [
        health,
        geometry,
        effective,
        group,
        exact,
        wkb,
        thermo,
        dynamics,
        estimate,
    ]

    for router in routers:
        app.include_router(router.router)

    return app
