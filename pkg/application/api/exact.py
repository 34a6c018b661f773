from fastapi import APIRouter

from application.api.errors import handle_application_error, handle_unexpected_error
from application.exception.application_error import ApplicationError
from application.model.compute_input import ExactSpectrumInput, ExactSweepInput
from application.service.run_service import RunService
from application.utils.general import success_response
from application.utils.output import to_plain

router = APIRouter()
run_service = RunService()


@router.post("/exact/spectrum")
def exact_spectrum(data: ExactSpectrumInput):
    try:
        report = run_service.exact_spectrum(data)
        return success_response(to_plain(report.to_dict()))
    except ApplicationError as e:
        raise handle_application_error(e)
    except Exception as e:
        raise handle_unexpected_error(e, "EXACT_500") from e


# sync: TaskManager.run_all starts its own event loop
@router.post("/exact/sweep")
def exact_sweep(data: ExactSweepInput):
    try:
        report = run_service.exact_sweep(data)
        return success_response(to_plain(report.to_dict()))
    except ApplicationError as e:
        raise handle_application_error(e)
    except Exception as e:
        raise handle_unexpected_error(e, "EXACT_501") from e
