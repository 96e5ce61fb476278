"""Run manifest embedded in every report, and canonical JSON output."""

import json
import os
from datetime import UTC, datetime
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from toral_kms import __version__

SCHEMA_VERSION = "1.0"
FLOAT_FORMAT = "%.12g"

ParameterValue = str | int | float | bool | None


class RunManifest(BaseModel):
    """Provenance of one report."""

    model_config = ConfigDict(frozen=True)

    schema_version: str = SCHEMA_VERSION
    tool_version: str
    subcommand: str
    parameters: dict[str, ParameterValue] = Field(default_factory=dict)
    field_spec: str | None = None
    timestamp: str = Field(description="UTC time, or SOURCE_DATE_EPOCH when set")
    unit_provenance: str | None = None
    finite_index_caveat: bool = False


def report_timestamp() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    moment = datetime.fromtimestamp(int(epoch), UTC) if epoch else datetime.now(UTC)
    return moment.strftime("%Y-%m-%dT%H:%M:%SZ")


def build_manifest(
    subcommand: str,
    parameters: dict[str, ParameterValue],
    field_spec: str | None = None,
    unit_provenance: str | None = None,
    finite_index_caveat: bool = False,
) -> RunManifest:
    return RunManifest(
        tool_version=__version__,
        subcommand=subcommand,
        parameters=parameters,
        field_spec=field_spec,
        timestamp=report_timestamp(),
        unit_provenance=unit_provenance,
        finite_index_caveat=finite_index_caveat,
    )


def _round_floats(value: Any) -> Any:
    if isinstance(value, float):
        return float(FLOAT_FORMAT % value)
    if isinstance(value, dict):
        return {key: _round_floats(item) for key, item in value.items()}  # pyright: ignore
    if isinstance(value, list | tuple):
        return [_round_floats(item) for item in value]  # pyright: ignore
    return value


def canonical_json(report: BaseModel) -> str:
    """Sorted keys, two-space indentation and floats rounded through %.12g."""
    data = _round_floats(report.model_dump(mode="json"))
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
