"""Result tables and their CSV/JSON rendering.

Every file starts with a comment block naming the artifact version and the
fully resolved experiment spec, followed by the header row. Nothing time
dependent is written, so reruns of the same spec are byte-identical.
"""

import io
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import pandas as pd

from app.config import config
from app.models import ExperimentSpec, OutputFormat

logger = logging.getLogger(__name__)


@dataclass
class ExperimentResult:
    """Rows produced by one experiment.

    Attributes:
        columns: Column order of the table
        rows: One dict per row, values already formatted for output
        failures: Rows that hit numerical non-convergence
        extra: Additional JSON-only content (frame export, per-beam counts)
    """

    columns: list[str]
    rows: list[dict[str, Any]] = field(default_factory=list)
    failures: int = 0
    extra: dict[str, Any] = field(default_factory=dict)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=self.columns).fillna("")


def resolved_spec(spec: ExperimentSpec) -> dict[str, Any]:
    return spec.model_dump(mode="json")


def render_csv(result: ExperimentResult, spec: ExperimentSpec) -> str:
    buffer = io.StringIO()
    buffer.write(f"# {config.artifact_name} {config.artifact_version}\n")
    buffer.write(f"# spec: {json.dumps(resolved_spec(spec), sort_keys=True)}\n")
    result.to_frame().to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def render_json(result: ExperimentResult, spec: ExperimentSpec) -> str:
    document = {
        "artifact": {"name": config.artifact_name, "version": config.artifact_version},
        "spec": resolved_spec(spec),
        "columns": result.columns,
        "rows": result.to_frame().to_dict(orient="records"),
        **result.extra,
    }
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def render(result: ExperimentResult, spec: ExperimentSpec) -> str:
    if spec.output.format == OutputFormat.JSON:
        return render_json(result, spec)
    return render_csv(result, spec)


def write_result(result: ExperimentResult, spec: ExperimentSpec) -> Path | None:
    """Write to the spec's output path, or stdout when none is given."""
    text = render(result, spec)
    path = spec.output.path
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return None

    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info(f"Wrote {len(result.rows)} rows to {path}")
    return path
