import asyncio
from datetime import datetime
from enum import Enum
from typing import Any, Callable, Optional

from application.exception.application_error import ApplicationError
from application.utils.logger import log


class TaskStatus(Enum):
    NOT_STARTED = "not_started"
    IN_PROGRESS = "in_progress"
    COMPLETED = "completed"
    FAILED = "failed"


class Task:
    """One grid point of a sweep: a callable plus its arguments and outcome."""

    def __init__(
        self,
        task_id: str,
        name: str,
        description: str,
        func: Callable,
        *args: Any,
        **kwargs: Any,
    ):
        self.task_id = task_id
        self.name = name
        self.description = description
        self.func = func
        self.args = args
        self.kwargs = kwargs
        self.status = TaskStatus.NOT_STARTED
        self.result: Any = None
        self.error_message: Optional[str] = None
        self.error_code: Optional[str] = None
        self.start_time: Optional[datetime] = None
        self.end_time: Optional[datetime] = None

    async def run(self):
        self.status = TaskStatus.IN_PROGRESS
        self.start_time = datetime.utcnow()
        try:
            if asyncio.iscoroutinefunction(self.func):
                self.result = await self.func(*self.args, **self.kwargs)
            else:
                self.result = await asyncio.to_thread(self.func, *self.args, **self.kwargs)
            self.status = TaskStatus.COMPLETED
        except ApplicationError as e:
            log.warning(f"Task {self.name} failed: {e.message}")
            self.status = TaskStatus.FAILED
            self.error_message = e.message
            self.error_code = e.error_code
        except Exception as e:
            log.error(f"Error in task {self.name}: {str(e)}", exc_info=True)
            self.status = TaskStatus.FAILED
            self.error_message = str(e)
        finally:
            self.end_time = datetime.utcnow()

    def to_dict(self) -> dict:
        return {
            "id": self.task_id,
            "name": self.name,
            "description": self.description,
            "status": self.status.value,
            "error_message": self.error_message,
        }
