import asyncio
from datetime import datetime
from typing import Any, Dict, List

from application.config.config import Config
from application.model.task import Task, TaskStatus
from application.utils.logger import log


class TaskManager:
    """Runs the points of a sweep concurrently and keeps their results in submission order."""

    def __init__(self, workers: int = Config.SWEEP_WORKERS):
        self.workers = max(1, workers)
        self.actions: Dict[str, Dict[str, Any]] = {}

    def create_action(self, action_id: str, action_name: str, tasks: List[Task]) -> None:
        """
        Register a sweep under action_id.
        """
        if action_id in self.actions:
            raise ValueError(f"Action {action_id} already exists")
        self.actions[action_id] = {
            "name": action_name,
            "tasks": list(tasks),
            "status": TaskStatus.NOT_STARTED,
            "start_time": None,
            "end_time": None,
        }

    async def run_action(self, action_id: str) -> List[Task]:
        """
        Run every task of the action; a failed task never stops the others.
        """
        action = self.actions.get(action_id)
        if not action:
            raise ValueError(f"Action {action_id} not found")

        action["start_time"] = datetime.utcnow()
        action["status"] = TaskStatus.IN_PROGRESS
        semaphore = asyncio.Semaphore(self.workers)

        async def bounded(task: Task) -> None:
            async with semaphore:
                await task.run()

        await asyncio.gather(*(bounded(task) for task in action["tasks"]))

        failed = [task for task in action["tasks"] if task.status == TaskStatus.FAILED]
        action["status"] = TaskStatus.FAILED if failed else TaskStatus.COMPLETED
        action["end_time"] = datetime.utcnow()
        if failed:
            log.warning(f"{action['name']}: {len(failed)} of {len(action['tasks'])} points failed")
        else:
            log.debug(f"{action['name']}: {len(action['tasks'])} points completed")
        return action["tasks"]

    def run_all(self, action_name: str, tasks: List[Task]) -> List[Task]:
        """Synchronous entry point used outside an event loop."""
        action_id = f"{action_name}-{len(self.actions)}"
        self.create_action(action_id, action_name, tasks)
        return asyncio.run(self.run_action(action_id))

    def get_action_status(self, action_id: str) -> Dict[str, Any]:
        """
        Get the status of an action and its tasks.
        """
        action = self.actions.get(action_id)
        if not action:
            raise ValueError(f"Action {action_id} not found")
        return {
            "id": action_id,
            "name": action["name"],
            "status": action["status"].value,
            "start_time": action["start_time"],
            "end_time": action["end_time"],
            "tasks": [task.to_dict() for task in action["tasks"]],
        }
