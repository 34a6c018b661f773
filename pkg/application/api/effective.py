from fastapi import APIRouter

from application.api.errors import handle_application_error, handle_unexpected_error
from application.exception.application_error import ApplicationError
from application.model.compute_input import EffectiveSpectrumInput, EffectiveSweepInput
from application.service.run_service import RunService
from application.utils.general import success_response
from application.utils.output import to_plain

router = APIRouter()
run_service = RunService()


@router.post("/effective/spectrum")
def effective_spectrum(data: EffectiveSpectrumInput):
    try:
        report = run_service.effective_spectrum(data)
        return success_response(to_plain(report.to_dict()))
    except ApplicationError as e:
        raise handle_application_error(e)
    except Exception as e:
        raise handle_unexpected_error(e, "EFFECTIVE_500") from e


@router.post("/effective/sweep")
def effective_sweep(data: EffectiveSweepInput):
    try:
        report = run_service.effective_sweep(data)
        return success_response(to_plain(report.to_dict()))
    except ApplicationError as e:
        raise handle_application_error(e)
    except Exception as e:
        raise handle_unexpected_error(e, "EFFECTIVE_501") from e
