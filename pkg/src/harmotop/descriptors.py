"""Parsing of symbol descriptors given on the command line.

Grammar::

    step:b=<f>,c=<f>
    power:a=<f>,gamma=<f>
    sampled:@<path.csv>
    sum:[<desc>; <desc> ...]
    general:@<path.json>

Descriptors may also be JSON objects with a `kind` key and the same fields,
e.g. `{"kind": "sum", "terms": [{"kind": "step", "b": 1, "c": 0.5}]}`.
"""

import json
from collections.abc import Callable
from pathlib import Path
from typing import Any, TypeVar

from harmospec.io import load_general_symbol, load_sampled_profile
from harmospec.symbols import GeneralSymbol, Power, RadialSymbol, Step, Sum, Symbol

ParserFn = Callable[["_Cursor", str, int, Path], Symbol]
T = TypeVar("T", bound=ParserFn)

parser_registry: dict[str, ParserFn] = {}


class DescriptorError(ValueError):
    """Grammar violation in a symbol descriptor, located by character position."""

    def __init__(self, message: str, descriptor: str, position: int) -> None:
        super().__init__(message)
        self.message = message
        self.descriptor = descriptor
        self.position = position

    def __str__(self) -> str:
        return (
            f"{self.message} at position {self.position}:\n"
            f"  {self.descriptor}\n"
            f"  {' ' * self.position}^"
        )


def register(kind: str) -> Callable[[T], T]:
    """Register a parser for descriptors of the given kind."""

    def decorator(fn: T) -> T:
        parser_registry[kind] = fn
        return fn

    return decorator


class _Cursor:
    """Full descriptor text, used to locate errors in nested fragments."""

    def __init__(self, full: str) -> None:
        self.full = full

    def error(self, message: str, position: int) -> DescriptorError:
        return DescriptorError(message, self.full, position)


def _split_top_level(text: str, sep: str, offset: int) -> list[tuple[str, int]]:
    """Split on `sep` outside brackets; returns (fragment, start offset) pairs."""
    parts, depth, start = [], 0, 0
    for ii, char in enumerate(text):
        if char == "[":
            depth += 1
        elif char == "]":
            depth -= 1
        elif char == sep and depth == 0:
            parts.append((text[start:ii], offset + start))
            start = ii + 1
    parts.append((text[start:], offset + start))
    return parts


def _strip(fragment: str, offset: int) -> tuple[str, int]:
    lead = len(fragment) - len(fragment.lstrip())
    return fragment.strip(), offset + lead


def _parse_fields(
    cursor: _Cursor, body: str, offset: int, keys: tuple[str, ...]
) -> dict[str, float]:
    """Parse `key=<float>,...` with exactly the given keys."""
    fields: dict[str, float] = {}
    for fragment, start in _split_top_level(body, ",", offset):
        fragment, start = _strip(fragment, start)
        key, eq, value = fragment.partition("=")
        key = key.strip()
        if not eq:
            raise cursor.error(f"Expected key=value; got '{fragment}'", start)
        if key not in keys:
            raise cursor.error(f"Expected one of {', '.join(keys)}; got '{key}'", start)
        if key in fields:
            raise cursor.error(f"Duplicate field '{key}'", start)
        try:
            fields[key] = float(value)
        except ValueError:
            raise cursor.error(
                f"Expected a number for '{key}'; got '{value.strip()}'",
                start + len(key) + 1,
            ) from None
    missing = [key for key in keys if key not in fields]
    if missing:
        raise cursor.error(f"Missing field(s) {', '.join(missing)}", offset + len(body))
    return fields


def _construct(cursor: _Cursor, position: int, factory: Callable[[], Symbol]) -> Symbol:
    """Build a symbol, reporting range errors at the descriptor position."""
    try:
        return factory()
    except ValueError as exc:
        raise cursor.error(str(exc), position) from exc


def _file_argument(cursor: _Cursor, body: str, offset: int, base_dir: Path) -> Path:
    if not body.startswith("@") or len(body) == 1:
        raise cursor.error("Expected '@<path>'", offset)
    path = Path(body[1:])
    path = path if path.is_absolute() else base_dir / path
    if not path.exists():
        raise cursor.error(f"File not found: {path}", offset + 1)
    return path


def _parse(cursor: _Cursor, text: str, offset: int, base_dir: Path) -> Symbol:
    text, offset = _strip(text, offset)
    kind, colon, body = text.partition(":")
    if not colon:
        raise cursor.error("Expected '<kind>:' prefix", offset + len(text))
    if kind not in parser_registry:
        raise cursor.error(
            f"Expected kind in [{', '.join(sorted(parser_registry))}]; got '{kind}'",
            offset,
        )
    return parser_registry[kind](cursor, body, offset + len(kind) + 1, base_dir)


@register("step")
def _parse_step(cursor: _Cursor, body: str, offset: int, base_dir: Path) -> Symbol:
    fields = _parse_fields(cursor, body, offset, ("b", "c"))
    return _construct(cursor, offset, lambda: Step(**fields))


@register("power")
def _parse_power(cursor: _Cursor, body: str, offset: int, base_dir: Path) -> Symbol:
    fields = _parse_fields(cursor, body, offset, ("a", "gamma"))
    return _construct(cursor, offset, lambda: Power(**fields))


@register("sampled")
def _parse_sampled(cursor: _Cursor, body: str, offset: int, base_dir: Path) -> Symbol:
    path = _file_argument(cursor, body.strip(), offset, base_dir)
    return _construct(cursor, offset + 1, lambda: load_sampled_profile(path))


@register("general")
def _parse_general(cursor: _Cursor, body: str, offset: int, base_dir: Path) -> Symbol:
    path = _file_argument(cursor, body.strip(), offset, base_dir)
    return _construct(cursor, offset + 1, lambda: load_general_symbol(path))


@register("sum")
def _parse_sum(cursor: _Cursor, body: str, offset: int, base_dir: Path) -> Symbol:
    stripped, start = _strip(body, offset)
    if not stripped.startswith("["):
        raise cursor.error("Expected '[' after 'sum:'", start)
    if not stripped.endswith("]"):
        raise cursor.error("Expected closing ']'", start + len(stripped))
    inner = stripped[1:-1]
    terms = []
    for fragment, position in _split_top_level(inner, ";", start + 1):
        if not fragment.strip():
            raise cursor.error("Empty term in sum", position)
        term = _parse(cursor, fragment, position, base_dir)
        if not isinstance(term, RadialSymbol):
            raise cursor.error("Expected radial terms in a sum", position)
        terms.append(term)
    return Sum(tuple(terms))


def _check_brackets(cursor: _Cursor, text: str) -> None:
    depth = 0
    for ii, char in enumerate(text):
        depth += {"[": 1, "]": -1}.get(char, 0)
        if depth < 0:
            raise cursor.error("Unbalanced ']'", ii)
    if depth > 0:
        raise cursor.error("Unclosed '['", len(text))


def symbol_from_dict(doc: dict[str, Any], base_dir: Path | None = None) -> Symbol:
    """Build a symbol from its JSON form."""
    base_dir = base_dir or Path.cwd()
    doc = dict(doc)
    kind = doc.pop("kind", None)
    match kind:
        case "step":
            return Step(b=float(doc["b"]), c=float(doc["c"]))
        case "power":
            return Power(a=float(doc["a"]), gamma=float(doc["gamma"]))
        case "sum":
            terms = [symbol_from_dict(term, base_dir) for term in doc["terms"]]
            if not all(isinstance(term, RadialSymbol) for term in terms):
                raise ValueError("Expected radial terms in a sum")
            return Sum(tuple(terms))  # type: ignore[arg-type]
        case "sampled" | "general":
            path = Path(doc["path"])
            path = path if path.is_absolute() else base_dir / path
            if kind == "sampled":
                return load_sampled_profile(path)
            return load_general_symbol(path)
        case _:
            raise ValueError(
                f"Expected kind in [{', '.join(sorted(parser_registry))}]; got {kind}"
            )


def parse_symbol(
    descriptor: str, d: int | None = None, base_dir: Path | None = None
) -> Symbol:
    """Parse a descriptor string (or its JSON form) into a symbol.

    Args:
        descriptor: descriptor following the module grammar, or a JSON object
        d: dimension the symbol is used in; checked against general symbols
        base_dir: directory that relative '@' paths are resolved against

    Raises:
        DescriptorError: on grammar violations or out-of-range fields
    """
    base_dir = base_dir or Path.cwd()
    cursor = _Cursor(descriptor)
    if descriptor.lstrip().startswith("{"):
        try:
            symbol = symbol_from_dict(json.loads(descriptor), base_dir)
        except json.JSONDecodeError as exc:
            raise cursor.error(f"Invalid JSON: {exc.msg}", exc.pos) from exc
        except (KeyError, ValueError) as exc:
            raise cursor.error(f"Invalid symbol object: {exc}", 0) from exc
    else:
        _check_brackets(cursor, descriptor)
        symbol = _parse(cursor, descriptor, 0, base_dir)

    if isinstance(symbol, GeneralSymbol) and d is not None and symbol.d != d:
        raise cursor.error(f"Expected symbol of dimension {d}; got {symbol.d}", 0)
    return symbol


def describe(symbol: RadialSymbol) -> str:
    """Descriptor string of a step, power or sum symbol."""
    match symbol:
        case Step(b=b, c=c):
            return f"step:b={b!r},c={c!r}"
        case Power(a=a, gamma=gamma):
            return f"power:a={a!r},gamma={gamma!r}"
        case Sum(terms=terms):
            return "sum:[" + "; ".join(describe(term) for term in terms) + "]"
        case _:
            raise ValueError(f"Expected step, power or sum symbol; got {symbol}")
