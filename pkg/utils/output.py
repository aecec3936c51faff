"""
Output Module
JSON records written by the command-line interface
"""

import json
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np

from config.config import OUTPUT_CONFIG


@dataclass
class OutputRecord:
    """One JSON object per invocation"""

    command: str
    params: Dict[str, Any]
    payload: Any
    warnings: List[str] = field(default_factory=list)
    schema_version: str = OUTPUT_CONFIG["schema_version"]

    def to_dict(self) -> Dict[str, Any]:
        warnings = list(self.warnings)
        params = sanitize(self.params, warnings, "params")
        payload = sanitize(self.payload, warnings, "payload")
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "params": params,
            "payload": payload,
            "warnings": warnings,
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())


def sanitize(value: Any, warnings: List[str], path: str = "") -> Any:
    """
    Convert numpy scalars and arrays to plain Python, non-finite floats to None

    Each replaced non-finite value appends a warning naming its path.
    """
    if isinstance(value, dict):
        return {str(k): sanitize(v, warnings, f"{path}.{k}") for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [sanitize(v, warnings, f"{path}[{i}]") for i, v in enumerate(value)]
    if isinstance(value, np.ndarray):
        return sanitize(value.tolist(), warnings, path)
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        warnings.append(f"{path} is {value!r}; written as null")
        return None
    return value


def dumps(data: Any) -> str:
    """Compact, key-ordered JSON; floats use the shortest round-trip repr"""
    return json.dumps(data, sort_keys=True, allow_nan=False)


def error_payload(code: str, detail: str) -> str:
    return dumps({"error": code, "detail": detail})
