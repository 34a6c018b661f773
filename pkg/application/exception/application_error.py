from fastapi import status


class ApplicationError(Exception):
    status_code = 200
    error_code = "A0000"
    exit_code = 3

    def __init__(self, payload=None, error_code=None, status_code=None):
        super().__init__(payload)
        self.payload = payload or {}
        if error_code is not None:
            self.error_code = error_code
        if status_code is not None:
            self.status_code = status_code

    @property
    def message(self) -> str:
        if isinstance(self.payload, dict):
            return str(self.payload.get("message", self.payload))
        return str(self.payload)

    def to_dict(self):
        return dict(self.payload, error_code=self.error_code)


class InvalidArgumentError(ApplicationError):
    status_code = status.HTTP_400_BAD_REQUEST
    error_code = "ARG_001"
    exit_code = 2


class UnsupportedClosedFormError(ApplicationError):
    status_code = status.HTTP_400_BAD_REQUEST
    error_code = "CLOSED_FORM_001"
    exit_code = 2


class DomainError(ApplicationError):
    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY
    error_code = "DOMAIN_001"
    exit_code = 2


class RegionError(ApplicationError):
    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY
    error_code = "REGION_001"
    exit_code = 2


class GeometryError(ApplicationError):
    status_code = status.HTTP_500_INTERNAL_SERVER_ERROR
    error_code = "GEO_001"


class GaugeError(ApplicationError):
    status_code = status.HTTP_500_INTERNAL_SERVER_ERROR
    error_code = "GAUGE_001"


class GroupTheoryError(ApplicationError):
    status_code = status.HTTP_500_INTERNAL_SERVER_ERROR
    error_code = "GROUP_001"


class NumericalError(ApplicationError):
    status_code = status.HTTP_500_INTERNAL_SERVER_ERROR
    error_code = "NUM_001"
