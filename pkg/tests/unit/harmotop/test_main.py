import json
from pathlib import Path
from unittest.mock import patch

import pytest

from harmotop import __main__ as entrypoint
from harmotop.config import ExperimentConfig


def _exit_code(argv: list[str]) -> int:
    with patch("sys.argv", ["harmotop", *argv]):
        with pytest.raises(SystemExit) as exc_info:
            entrypoint.main()
    return exc_info.value.code


def test_counting_csv(capsys: pytest.CaptureFixture):
    code = _exit_code(["counting", "--symbol", "step:b=1,c=0.5", "--lambda", "1e-2"])
    assert code == entrypoint.EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    body = [line for line in lines if not line.startswith("#")]
    assert body == ["lambda,n_plus,nu", "0.01,5,3"]


def test_json_output_file(tmp_path: Path):
    path = tmp_path / "spectrum.json"
    code = _exit_code(
        [
            "spectrum",
            "--symbol",
            "power:a=1,gamma=1",
            "--K",
            "3",
            "--format",
            "json",
            "--output",
            str(path),
        ]
    )
    assert code == entrypoint.EXIT_OK
    document = json.loads(path.read_text())
    assert len(document["results"]["rows"]) == 4
    assert ExperimentConfig.load(path).K == 3


def test_descriptor_error():
    code = _exit_code(["spectrum", "--symbol", "step:b=1,c=x"])
    assert code == entrypoint.EXIT_CONFIG


def test_invalid_option():
    assert _exit_code(["krein", "--symbol", "step:b=1,c=0.5", "--eps", "3"]) == 2


def test_failed_check(tmp_path: Path):
    path = tmp_path / "suites.yaml"
    path.write_text("suites:\n  multiplicities:\n    unknown: 1\n")
    code = _exit_code(["selftest", "--suites", str(path)])
    assert code == entrypoint.EXIT_CERTIFICATION


def test_run_returns_code():
    config = ExperimentConfig(command="spectrum", symbol="step:b=1,c=0.5", K=2)
    assert entrypoint.run(config) == entrypoint.EXIT_OK


@pytest.mark.parametrize("flags,level", [([], "WARNING"), (["--verbose"], "INFO")])
def test_logging_level(flags: list[str], level: str):
    argv = ["counting", "--symbol", "step:b=1,c=0.5", "--lambda", "1e-2", *flags]
    with patch("harmotop.__main__.setup_logging") as mock_setup:
        assert _exit_code(argv) == entrypoint.EXIT_OK
    mock_setup.assert_called_once_with(level)
