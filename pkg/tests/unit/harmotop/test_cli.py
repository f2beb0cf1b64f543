from argparse import ArgumentTypeError
from pathlib import Path
from unittest.mock import patch

import pytest

from harmotop import cli
from harmotop.config import ExperimentConfig


@pytest.fixture
def parser() -> cli.HarmotopArgumentParser:
    return cli.HarmotopArgumentParser()


class TestGrids:
    def test_ln_grid(self):
        grid = cli.ln_grid("-12:-4:5")
        assert grid == (-12.0, -10.0, -8.0, -6.0, -4.0)

    def test_ln_grid_default_count(self):
        assert len(cli.ln_grid("-12:-4")) == 50

    def test_energy_grid(self):
        grid = cli.energy_grid("10:1000:3")
        assert grid == pytest.approx((10.0, 100.0, 1000.0))

    @pytest.mark.parametrize(
        "fn,spec",
        [
            (cli.ln_grid, "-12"),
            (cli.ln_grid, "a:b"),
            (cli.ln_grid, "-4:-4:3"),
            (cli.energy_grid, "10:1000"),
            (cli.energy_grid, "-10:1000:3"),
            (cli.float_list, "0.1,x"),
        ],
    )
    def test_invalid(self, fn, spec: str):
        with pytest.raises(ArgumentTypeError):
            fn(spec)


class TestParser:
    def test_counting(self, parser: cli.HarmotopArgumentParser):
        with patch(
            "sys.argv",
            ["harmotop", "counting", "--symbol", "step:b=1,c=0.5", "--lambda", "1e-2"],
        ):
            args = parser.parse_args()
        config = parser.to_config(args)
        assert config.command == "counting"
        assert config.lambdas == (1e-2,)
        assert config.sign == 1

    def test_negative_grid_value(self, parser: cli.HarmotopArgumentParser):
        args = parser.parse_args(
            ["asymptotics", "--symbol", "power:a=1,gamma=1", "--lnlambda", "-12:-4:9"]
        )
        assert args.ln_lambdas[0] == -12.0
        assert len(args.ln_lambdas) == 9

    def test_repeated_lambda(self, parser: cli.HarmotopArgumentParser):
        args = parser.parse_args(
            ["counting", "--symbol", "x", "--lambda", "1e-2", "--lambda", "1e-3"]
        )
        assert parser.to_config(args).lambdas == (1e-2, 1e-3)

    def test_negative_flag(self, parser: cli.HarmotopArgumentParser):
        args = parser.parse_args(["counting", "--symbol", "x", "--negative"])
        assert parser.to_config(args).sign == -1

    def test_missing_command(self, parser: cli.HarmotopArgumentParser):
        with pytest.raises(SystemExit) as exc_info:
            parser.parse_args([])
        assert exc_info.value.code == 2

    def test_unknown_command(self, parser: cli.HarmotopArgumentParser):
        with pytest.raises(SystemExit) as exc_info:
            parser.parse_args(["wave"])
        assert exc_info.value.code == 2

    def test_exclusive_thresholds(self, parser: cli.HarmotopArgumentParser):
        with pytest.raises(SystemExit):
            parser.parse_args(
                ["counting", "--lambda", "1e-2", "--lnlambda", "-12:-4"]
            )

    def test_invalid_config_exits(self, parser: cli.HarmotopArgumentParser):
        args = parser.parse_args(["krein", "--symbol", "x", "--eps", "2"])
        with pytest.raises(SystemExit) as exc_info:
            parser.to_config(args)
        assert exc_info.value.code == 2

    def test_config_file(self, parser: cli.HarmotopArgumentParser, tmp_path: Path):
        expected = ExperimentConfig(command="spectrum", symbol="step:b=1,c=0.5", K=6)
        path = tmp_path / "spectrum.json"
        expected.save(path)
        args = parser.parse_args(["--config", str(path)])
        assert parser.to_config(args) == expected

    def test_config_file_command_mismatch(
        self, parser: cli.HarmotopArgumentParser, tmp_path: Path
    ):
        path = tmp_path / "spectrum.json"
        ExperimentConfig(command="spectrum", symbol="step:b=1,c=0.5").save(path)
        args = parser.parse_args(["counting", "--config", str(path)])
        with pytest.raises(SystemExit):
            parser.to_config(args)
