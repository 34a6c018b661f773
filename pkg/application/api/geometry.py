from fastapi import APIRouter

from application.api.errors import handle_application_error, handle_unexpected_error
from application.exception.application_error import ApplicationError
from application.model.compute_input import ConfigInput
from application.service.run_service import RunService
from application.utils.general import success_response
from application.utils.output import to_plain

router = APIRouter()
run_service = RunService()


@router.post("/geometry/dump")
def geometry_dump(data: ConfigInput):
    try:
        report = run_service.geometry_dump(data)
        return success_response(to_plain(report.to_dict()))
    except ApplicationError as e:
        raise handle_application_error(e)
    except Exception as e:
        raise handle_unexpected_error(e, "GEO_500") from e
