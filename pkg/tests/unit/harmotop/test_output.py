import io
import json
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from harmotop import output
from harmotop.commands import CommandResult
from harmotop.config import ExperimentConfig


@pytest.fixture
def result() -> CommandResult:
    return CommandResult(
        table=pd.DataFrame({"lambda": [0.01, 0.001], "n_plus": [5, 9]}),
        columns={"lambda": "threshold", "n_plus": "eigenvalues above lambda"},
        summary={"total": np.int64(14), "trace": np.float64(0.1)},
        equations=["n_+(lambda) = sum of multiplicities"],
    )


@pytest.fixture
def config() -> ExperimentConfig:
    return ExperimentConfig(
        command="counting", symbol="step:b=1,c=0.5", lambdas=(0.01, 0.001)
    )


def test_write_csv(result: CommandResult, config: ExperimentConfig):
    stream = io.StringIO()
    output.write_csv(result, config, stream)
    lines = stream.getvalue().splitlines()
    assert lines[0] == "# harmotop counting"
    assert lines[1] == "# symbol: step:b=1,c=0.5 (d=2)"
    assert "# n_plus: eigenvalues above lambda" in lines
    assert "# trace = 0.1" in lines
    body = [line for line in lines if not line.startswith("#")]
    assert body == ["lambda,n_plus", "0.01,5", "0.001,9"]


def test_write_json(result: CommandResult, config: ExperimentConfig):
    stream = io.StringIO()
    output.write_json(result, config, stream)
    document = json.loads(stream.getvalue())
    assert document["config"]["lambdas"] == [0.01, 0.001]
    assert document["results"]["summary"] == {"total": 14, "trace": 0.1}
    assert document["results"]["rows"][0] == {"lambda": 0.01, "n_plus": 5}
    assert document["provenance"]["equations"] == result.equations
    assert "version" in document["provenance"]


def test_write_result_file(result: CommandResult, tmp_path: Path):
    path = tmp_path / "out" / "counting.json"
    config = ExperimentConfig(
        command="counting",
        symbol="step:b=1,c=0.5",
        lambdas=(0.01, 0.001),
        output=str(path),
        format="json",
    )
    output.write_result(result, config)
    assert json.loads(path.read_text())["config"] == config.to_dict()
    assert ExperimentConfig.load(path) == config


def test_write_result_stdout(
    result: CommandResult, config: ExperimentConfig, capsys: pytest.CaptureFixture
):
    output.write_result(result, config)
    assert capsys.readouterr().out.startswith("# harmotop counting")
