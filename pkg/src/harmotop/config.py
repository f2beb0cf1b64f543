"""Experiment configuration shared by the command line and JSON experiment files."""

import json
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Literal

import numpy as np

from harmospec.grid import TruncationSpec
from harmospec.typing import StrPath

COMMANDS = (
    "spectrum",
    "counting",
    "asymptotics",
    "berezin",
    "schatten",
    "boundary",
    "krein",
    "selftest",
)

# Truncation degree when --K is omitted
DEFAULT_K = 16

Format = Literal["csv", "json"]


class ConfigError(ValueError):
    """Invalid experiment configuration."""


def _check_grid(name: str, grid: tuple[float, ...] | None) -> None:
    if grid is None:
        return
    if len(grid) == 0:
        raise ConfigError(f"Expected nonempty {name} grid")
    steps = np.diff(grid)
    if not (np.all(steps > 0) or np.all(steps < 0)):
        raise ConfigError(f"Expected strictly monotone {name} grid; got {grid}")


@dataclass(frozen=True)
class ExperimentConfig:
    """One harmotop experiment.

    Attributes:
        command: experiment to run
        d: dimension of the ball
        symbol: symbol descriptor
        K: truncation degree (default `DEFAULT_K`)
        n_r: radial quadrature order
        n_ang: angular quadrature order
        lambdas: explicit thresholds lambda
        ln_lambdas: thresholds given by their natural logarithms
        energies: energy grid for the buckling counts
        radii: sample radii along e_1
        model: growth model of asymptotic fits
        p: Schatten exponent
        weak: use weak Schatten norms
        eps: splitting parameter of the Krein sandwich
        sign: +1 to count positive, -1 to count negative eigenvalues
        lambda1: lowest eigenvalue of L used by the Krein remainder
        matrix: path where the section matrix is written
        suites: self-test suite file
        output: output path (stdout if omitted)
        format: output format
        threads: worker processes; -1 uses all available cores
    """

    command: str
    d: int = 2
    symbol: str | None = None
    K: int | None = None
    n_r: int | None = None
    n_ang: int | None = None
    lambdas: tuple[float, ...] | None = None
    ln_lambdas: tuple[float, ...] | None = None
    energies: tuple[float, ...] | None = None
    radii: tuple[float, ...] | None = None
    model: Literal["power", "log-power"] = "power"
    p: float = 2.0
    weak: bool = False
    eps: float = 0.1
    sign: int = 1
    lambda1: float | None = None
    matrix: str | None = None
    suites: str | None = None
    output: str | None = None
    format: Format = "csv"
    threads: int = 1

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(
                f"Expected command in [{', '.join(COMMANDS)}]; got {self.command}"
            )
        if self.d < 2:
            raise ConfigError(f"Expected dimension d >= 2; got {self.d}")
        if self.command != "selftest" and not self.symbol:
            raise ConfigError(f"Expected a symbol descriptor for '{self.command}'")
        if self.lambdas is not None and self.ln_lambdas is not None:
            raise ConfigError("Expected at most one of lambdas and ln_lambdas")
        for name in ("lambdas", "ln_lambdas", "energies", "radii"):
            _check_grid(name, getattr(self, name))
        if self.lambdas is not None and min(self.lambdas) <= 0:
            raise ConfigError(f"Expected positive thresholds; got {self.lambdas}")
        if self.energies is not None and min(self.energies) <= 0:
            raise ConfigError(f"Expected positive energies; got {self.energies}")
        if self.radii is not None and not all(0 <= r < 1 for r in self.radii):
            raise ConfigError(f"Expected radii in [0, 1); got {self.radii}")
        if self.model not in ("power", "log-power"):
            raise ConfigError(f"Expected model power or log-power; got {self.model}")
        if self.p < 1 or (self.weak and self.p <= 1):
            raise ConfigError(f"Expected p >= 1 (p > 1 for weak norms); got {self.p}")
        if not 0.0 < self.eps < 1.0:
            raise ConfigError(f"Expected eps in (0, 1); got {self.eps}")
        if self.sign not in (1, -1):
            raise ConfigError(f"Expected sign +1 or -1; got {self.sign}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"Expected format csv or json; got {self.format}")
        if self.threads == 0 or self.threads < -1:
            raise ConfigError(f"Invalid threads {self.threads}; expected -1 or > 0")
        if self.K is not None:
            try:
                self.truncation()
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc

    @property
    def degree(self) -> int:
        """Truncation degree, `DEFAULT_K` unless given."""
        return self.K if self.K is not None else DEFAULT_K

    def truncation(self) -> TruncationSpec:
        """Truncation spec of the configured degree and quadrature orders."""
        return TruncationSpec.default(self.degree, self.n_r, self.n_ang)

    def thresholds(self) -> np.ndarray | None:
        """Natural log of every configured threshold, in the given order."""
        if self.lambdas is not None:
            return np.log(np.asarray(self.lambdas))
        if self.ln_lambdas is not None:
            return np.asarray(self.ln_lambdas)
        return None

    def to_dict(self) -> dict[str, Any]:
        """JSON form, with tuples as lists."""
        doc = asdict(self)
        return {
            key: list(value) if isinstance(value, tuple) else value
            for key, value in doc.items()
        }

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "ExperimentConfig":
        """Build a config from its JSON form, rejecting unknown keys."""
        known = {f.name for f in fields(cls)}
        unknown = set(doc) - known
        if unknown:
            raise ConfigError(f"Unknown configuration keys {sorted(unknown)}")
        if "command" not in doc:
            raise ConfigError("Expected 'command' in configuration")
        values = {
            key: tuple(float(v) for v in value) if isinstance(value, list) else value
            for key, value in doc.items()
        }
        try:
            return cls(**values)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def load(cls, path: StrPath) -> "ExperimentConfig":
        """Read a config from a JSON file (bare or inside an output envelope)."""
        with open(path) as f:
            try:
                doc = json.load(f)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"Invalid JSON in {path}: {exc}") from exc
        if isinstance(doc, dict) and "config" in doc:
            doc = doc["config"]
        if not isinstance(doc, dict):
            raise ConfigError(f"Expected a JSON object in {path}")
        return cls.from_dict(doc)

    def save(self, path: StrPath) -> None:
        """Write the JSON form to path."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as f:
            json.dump(self.to_dict(), f, indent=2)
