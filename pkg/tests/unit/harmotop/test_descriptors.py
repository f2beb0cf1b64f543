import json
from pathlib import Path

import pytest

from harmospec.symbols import GeneralSymbol, Power, Sampled, Step, Sum
from harmotop import descriptors


class TestParseSymbol:
    def test_step(self):
        assert descriptors.parse_symbol("step:b=1,c=0.5") == Step(b=1.0, c=0.5)

    def test_power_any_field_order(self):
        assert descriptors.parse_symbol("power:gamma=2, a=3") == Power(a=3.0, gamma=2.0)

    def test_sum(self):
        symbol = descriptors.parse_symbol(
            "sum:[step:b=1,c=0.5; power:a=1,gamma=1]"
        )
        assert symbol == Sum((Step(1.0, 0.5), Power(1.0, 1.0)))

    def test_nested_sum(self):
        symbol = descriptors.parse_symbol("sum:[sum:[step:b=1,c=0.5]; step:b=2,c=0.3]")
        assert isinstance(symbol, Sum)
        assert isinstance(symbol.terms[0], Sum)

    def test_sampled(self, profile_csv: Path):
        symbol = descriptors.parse_symbol(
            f"sampled:@{profile_csv.name}", base_dir=profile_csv.parent
        )
        assert isinstance(symbol, Sampled)
        assert symbol.radii == (0.0, 0.3, 0.6)

    def test_general(self, general_json: Path):
        symbol = descriptors.parse_symbol(f"general:@{general_json}", d=2)
        assert isinstance(symbol, GeneralSymbol)

    def test_general_dimension_mismatch(self, general_json: Path):
        with pytest.raises(descriptors.DescriptorError, match=".*dimension 3.*"):
            descriptors.parse_symbol(f"general:@{general_json}", d=3)

    def test_json_form(self):
        doc = {"kind": "sum", "terms": [{"kind": "step", "b": 1, "c": 0.5}]}
        symbol = descriptors.parse_symbol(json.dumps(doc))
        assert symbol == Sum((Step(1.0, 0.5),))


class TestDescriptorErrors:
    @pytest.mark.parametrize(
        "descriptor,position,message",
        [
            ("step:b=1,c=x", 11, "Expected a number for 'c'"),
            ("step:b=1", 8, "Missing field"),
            ("step:b=1,b=2,c=0.5", 9, "Duplicate field"),
            ("wave:k=1", 0, "Expected kind"),
            ("power:a=1,beta=2", 10, "Expected one of a, gamma"),
            ("step:b=1,c=1.5", 5, "c in (0, 1)"),
            ("sum:[step:b=1,c=0.5", 19, "Unclosed '['"),
            ("step:b=1,c=0.5]", 14, "Unbalanced ']'"),
            ("sum:[step:b=1,c=0.5;]", 20, "Empty term"),
            ("sampled:profile.csv", 8, "Expected '@<path>'"),
            ("step", 4, "Expected '<kind>:' prefix"),
        ],
    )
    def test_position(self, descriptor: str, position: int, message: str):
        with pytest.raises(descriptors.DescriptorError) as exc_info:
            descriptors.parse_symbol(descriptor)
        assert exc_info.value.position == position
        assert message in exc_info.value.message

    def test_caret(self):
        with pytest.raises(descriptors.DescriptorError) as exc_info:
            descriptors.parse_symbol("step:b=1,c=x")
        lines = str(exc_info.value).splitlines()
        assert lines[1] == "  step:b=1,c=x"
        assert lines[2] == "  " + " " * 11 + "^"

    def test_missing_file(self, tmp_path: Path):
        with pytest.raises(descriptors.DescriptorError, match="File not found.*"):
            descriptors.parse_symbol("sampled:@missing.csv", base_dir=tmp_path)

    def test_invalid_json(self):
        with pytest.raises(descriptors.DescriptorError, match="Invalid JSON.*"):
            descriptors.parse_symbol('{"kind": "step",')

    def test_is_value_error(self):
        assert issubclass(descriptors.DescriptorError, ValueError)


class TestDescribe:
    @pytest.mark.parametrize(
        "descriptor",
        [
            ("step:b=1.0,c=0.5"),
            ("power:a=2.0,gamma=0.5"),
            ("sum:[step:b=1.0,c=0.5; power:a=1.0,gamma=1.0]"),
        ],
    )
    def test_inverse(self, descriptor: str):
        assert descriptors.describe(descriptors.parse_symbol(descriptor)) == descriptor

    def test_sampled_not_described(self, profile_csv: Path):
        symbol = descriptors.parse_symbol(f"sampled:@{profile_csv}")
        with pytest.raises(ValueError, match="Expected step, power or sum.*"):
            descriptors.describe(symbol)


def test_registry():
    assert set(descriptors.parser_registry) == {
        "step",
        "power",
        "sampled",
        "general",
        "sum",
    }
