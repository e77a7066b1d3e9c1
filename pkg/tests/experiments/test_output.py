"""Tests for CSV/JSON rendering of experiment results."""

import io
import json

import pandas as pd

from app.experiments.output import ExperimentResult, render, render_csv, render_json, write_result
from app.models import ExperimentKind, ExperimentSpec, OutputFormat, OutputSpec, Table1Params


def _result() -> ExperimentResult:
    return ExperimentResult(
        columns=["K", "value", "error"],
        rows=[{"K": 8, "value": "0.14", "error": ""}, {"K": 16, "value": "", "error": "failed"}],
        extra={"note": "extra"},
    )


def _spec(**output) -> ExperimentSpec:
    return ExperimentSpec(kind=ExperimentKind.TABLE1, parameters=Table1Params(), output=OutputSpec(**output))


class TestRenderCsv:
    """Tests for the CSV form."""

    def test_header_block(self):
        """Two comment lines carry the artifact version and the resolved spec."""
        lines = render_csv(_result(), _spec()).splitlines()
        assert lines[0] == "# obsim 0.1.0"
        assert lines[1].startswith("# spec: ")
        spec = json.loads(lines[1][len("# spec: ") :])
        assert spec["kind"] == "table1"
        assert lines[2] == "K,value,error"

    def test_rows_parse_back(self):
        """The table below the header parses with pandas."""
        text = render_csv(_result(), _spec())
        frame = pd.read_csv(io.StringIO(text), comment="#", keep_default_na=False, dtype=str)
        assert frame["K"].tolist() == ["8", "16"]
        assert frame["error"].tolist() == ["", "failed"]

    def test_deterministic(self):
        """Rendering twice gives identical bytes."""
        assert render_csv(_result(), _spec()) == render_csv(_result(), _spec())


class TestRenderJson:
    """Tests for the JSON form."""

    def test_document(self):
        """JSON carries spec, columns, rows and extra content."""
        document = json.loads(render_json(_result(), _spec()))
        assert document["artifact"]["version"] == "0.1.0"
        assert document["columns"] == ["K", "value", "error"]
        assert document["rows"][0]["K"] == 8
        assert document["note"] == "extra"

    def test_render_dispatch(self):
        """render picks the format from the spec."""
        assert render(_result(), _spec(format=OutputFormat.JSON)).startswith("{")
        assert render(_result(), _spec()).startswith("#")


class TestWriteResult:
    """Tests for write_result."""

    def test_stdout(self, capsys):
        """No path writes to stdout."""
        assert write_result(_result(), _spec()) is None
        assert capsys.readouterr().out.startswith("# obsim")

    def test_file(self, tmp_path):
        """A path writes the file, creating parent directories."""
        path = tmp_path / "out" / "table.csv"
        assert write_result(_result(), _spec(path=path)) == path
        assert path.read_text(encoding="utf-8").startswith("# obsim")
