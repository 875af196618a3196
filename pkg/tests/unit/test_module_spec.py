"""Test the module spec mini-language."""

import pytest

from atomspec.cli.module_spec import parse_module_spec
from atomspec.core.errors import ModuleSpecError, NotSubmoduleError
from atomspec.services import module_service as ms
from atomspec.services.ring_service import zmod

pytestmark = pytest.mark.unit


def test_regular(zmod12):
    assert parse_module_spec(zmod12, "regular") is ms.regular_module(zmod12)


def test_quotient(zmod12):
    module = parse_module_spec(zmod12, "quot:0,6")
    assert module.order == 6
    assert module.provenance == "R/[0, 6]"


def test_quotient_by_non_ideal(zmod12):
    with pytest.raises(NotSubmoduleError) as exc:
        parse_module_spec(zmod12, "quot:0,5")
    assert exc.value.reason == "not closed under action"


def test_out_of_range(zmod12):
    with pytest.raises(NotSubmoduleError) as exc:
        parse_module_spec(zmod12, "sub:0,13")
    assert exc.value.reason == "out of range"


def test_cyclic_and_sub(zmod12):
    cyclic = parse_module_spec(zmod12, "cyclic:3")
    assert cyclic.order == 4
    assert cyclic.provenance == "cyclic:3"
    assert parse_module_spec(zmod12, "sub:0,4,8").order == 3


def test_direct_sum(zmod12):
    module = parse_module_spec(zmod12, "sum:quot:0,2,4,6,8,10+quot:0,3,6,9+regular")
    assert module.order == 2 * 3 * 12


def test_file(tmp_path, zmod12):
    path = tmp_path / "z4.json"
    path.write_bytes(ms.serialize_module(ms.cyclic_quotient(zmod12, 1 | 1 << 4 | 1 << 8)))
    module = parse_module_spec(zmod12, f"file:{path}")
    assert module.order == 4
    assert module.ring is zmod12


@pytest.mark.parametrize("text", ["", "regular:1", "quot:", "quot:a,b", "cyclic:1,2", "sum:regular", "tensor:1"])
def test_malformed(text):
    with pytest.raises(ModuleSpecError):
        parse_module_spec(zmod(4), text)


def test_missing_file(tmp_path):
    with pytest.raises(ModuleSpecError):
        parse_module_spec(zmod(4), f"file:{tmp_path / 'absent.json'}")
