from fastapi import APIRouter

from application.config.config import Config
from application.utils.general import success_response

router = APIRouter()


@router.get("/health")
def health():
    return success_response({"name": Config.APP_NAME, "version": Config.VERSION})
