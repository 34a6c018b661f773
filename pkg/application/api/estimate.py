from fastapi import APIRouter

from application.api.errors import handle_application_error, handle_unexpected_error
from application.exception.application_error import ApplicationError
from application.model.compute_input import DipolarInput, TauInput
from application.service.run_service import RunService
from application.utils.general import success_response
from application.utils.output import to_plain

router = APIRouter()
run_service = RunService()


@router.post("/estimate/tau")
def estimate_tau(data: TauInput):
    try:
        report = run_service.estimate_tau(data)
        return success_response(to_plain(report.to_dict()))
    except ApplicationError as e:
        raise handle_application_error(e)
    except Exception as e:
        raise handle_unexpected_error(e, "ESTIMATE_500") from e


@router.post("/estimate/dipolar")
def estimate_dipolar(data: DipolarInput):
    try:
        report = run_service.estimate_dipolar(data)
        return success_response(to_plain(report.to_dict()))
    except ApplicationError as e:
        raise handle_application_error(e)
    except Exception as e:
        raise handle_unexpected_error(e, "ESTIMATE_501") from e
