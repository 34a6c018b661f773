from typing import Any, Dict, List

from pydantic import BaseModel


class Report(BaseModel):
    """Tabular result of one command plus its scalar metadata."""

    command: str
    parameters: Dict[str, Any]
    rows: List[Dict[str, Any]]
    meta: Dict[str, Any] = {}
    rows_key: str = "rows"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "parameters": self.parameters,
            **self.meta,
            self.rows_key: self.rows,
        }


class RunManifest(BaseModel):
    command: str
    parameters: Dict[str, Any]
    versions: Dict[str, str]
    outputs: Dict[str, str] = {}
