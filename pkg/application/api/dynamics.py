from fastapi import APIRouter

from application.api.errors import handle_application_error, handle_unexpected_error
from application.exception.application_error import ApplicationError
from application.model.compute_input import OscillationInput
from application.service.run_service import RunService
from application.utils.general import success_response
from application.utils.output import to_plain

router = APIRouter()
run_service = RunService()


@router.post("/dynamics/oscillate")
def dynamics_oscillate(data: OscillationInput):
    try:
        report = run_service.dynamics_oscillate(data)
        return success_response(to_plain(report.to_dict()))
    except ApplicationError as e:
        raise handle_application_error(e)
    except Exception as e:
        raise handle_unexpected_error(e, "DYNAMICS_500") from e
