from fastapi import HTTPException, status

from application.exception.application_error import ApplicationError
from application.utils.logger import log


def handle_application_error(error: ApplicationError) -> HTTPException:
    log.warning(f"{error.error_code}: {error.message}")
    return HTTPException(status_code=error.status_code, detail=error.to_dict())


def handle_unexpected_error(error: Exception, error_code: str) -> HTTPException:
    log.error(f"Unexpected error: {str(error)}", exc_info=True)
    return HTTPException(
        status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
        detail={
            "error_code": error_code,
            "error": "Unexpected Error",
            "message": f"An unexpected error occurred: {str(error)}",
        },
    )
