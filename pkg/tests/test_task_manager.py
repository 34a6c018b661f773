import pytest

from application.exception.application_error import DomainError
from application.model.task import Task, TaskStatus
from application.service.task_manager import TaskManager


def _square(value):
    return value * value


def _reject(value):
    raise DomainError(payload={"error": "Outside", "message": f"{value} is out of range"})


def test_results_keep_submission_order():
    tasks = [Task(f"t-{k}", f"point {k}", "square", _square, k) for k in range(10)]
    finished = TaskManager(workers=3).run_all("squares", tasks)
    assert [task.result for task in finished] == [k * k for k in range(10)]
    assert all(task.status == TaskStatus.COMPLETED for task in finished)


def test_failed_point_does_not_stop_the_sweep():
    tasks = [
        Task("a", "first", "square", _square, 2),
        Task("b", "second", "reject", _reject, 7),
        Task("c", "third", "square", _square, 3),
    ]
    manager = TaskManager(workers=2)
    manager.run_all("mixed", tasks)
    assert [task.status for task in tasks] == [TaskStatus.COMPLETED, TaskStatus.FAILED, TaskStatus.COMPLETED]
    assert tasks[1].error_code == "DOMAIN_001"
    assert "out of range" in tasks[1].error_message

    status = manager.get_action_status("mixed-0")
    assert status["status"] == "failed"
    assert [task["status"] for task in status["tasks"]] == ["completed", "failed", "completed"]


def test_unexpected_exceptions_are_recorded():
    task = Task("z", "zero", "divide", lambda: 1 / 0)
    TaskManager(workers=1).run_all("divide", [task])
    assert task.status == TaskStatus.FAILED
    assert "division" in task.error_message


def test_duplicate_and_missing_actions():
    manager = TaskManager()
    manager.create_action("sweep", "sweep", [])
    with pytest.raises(ValueError):
        manager.create_action("sweep", "sweep", [])
    with pytest.raises(ValueError):
        manager.get_action_status("missing")
