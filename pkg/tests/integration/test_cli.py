"""Test the command-line surface end to end."""

import json

import pytest

from atomspec.main import execute, render, run
from atomspec.schemas.common import PropertyResult, Report
from atomspec.services.ring_service import serialize_ring, zmod

pytestmark = pytest.mark.integration


def test_spectrum_tri2():
    """Two atoms and four comonoform ideals."""
    status, report = run(["spectrum", "--ring", "tri2:2"])
    assert status == 0
    assert report.success
    assert report.ring.order == 8
    assert len(report.data["atoms"]) == 2
    assert report.data["comonoform_ideals"] == [[0, 1, 2, 3], [0, 2, 4, 6], [0, 4], [0, 6]]
    assert report.data["atoms"][0]["members"] == [[0, 1, 2, 3], [0, 4], [0, 6]]
    assert report.data["discrete"]
    assert report.data["simple_classes"] == 2


def test_monoform_regular_zmod4():
    status, report = run(["monoform", "--ring", "zmod:4", "--module", "regular"])
    assert status == 0
    assert report.data["monoform"] is False
    assert report.data["uniform"] is True
    assert report.data["max_monoform_submodule"] == [0, 2]


def test_serre_graph():
    status, report, ctx = execute(["serre", "--ring", "zmod:12", "--format", "graph"])
    assert status == 0
    dot = render(report, ctx, "graph")
    assert dot.startswith('digraph "serre" {')
    assert dot.count("[label=") == 4
    assert dot.count("->") == 4
    assert '"0" -> "1";' in dot


def test_ideals_graph():
    status, report, ctx = execute(["ideals", "--ring", "tri2:2", "--format", "graph"])
    assert status == 0
    assert report.data["count"] == 7
    assert report.data["covers"] == [[0, 1], [0, 2], [0, 3], [1, 4], [1, 5], [2, 5], [3, 5], [4, 6], [5, 6]]
    dot = render(report, ctx, "graph")
    assert '[label="{0,4}"]' in dot


def test_ideal_flags():
    status, report = run(["ideals", "--ring", "tri2:2"])
    rows = {tuple(row["ids"]): row for row in report.data["ideals"]}
    assert rows[(0, 2)]["comonoform"] is False
    assert rows[(0, 2)]["two_sided"] is True
    assert rows[(0, 4)]["comonoform"] is True
    assert rows[(0, 1, 2, 3)]["maximal"] is True
    assert rows[tuple(range(8))]["comonoform"] is False


def test_support_and_ass():
    _, support = run(["support", "--ring", "zmod:12", "--module", "quot:0,4,8"])
    _, ass = run(["ass", "--ring", "zmod:12", "--module", "regular"])
    assert support.data["atoms"] == [0]
    assert ass.data["atoms"] == [0, 1]


def test_filtration():
    status, report = run(["filtration", "--ring", "zmod:12"])
    assert status == 0
    assert report.data["chain"][1] == [0, 4, 8]
    assert report.data["labels"][0] == [0, 3, 6, 9]
    assert report.data["label_atoms"] == [1, 0, 0]
    assert report.data["problems"] == []


def test_validate_with_module():
    status, report = run(["validate", "--ring", "zmod:12", "--module", "quot:0,6"])
    assert status == 0
    assert report.data["order"] == 12
    assert report.data["module"]["order"] == 6


def test_ring_file(tmp_path):
    path = tmp_path / "z6.json"
    path.write_bytes(serialize_ring(zmod(6)))
    status, report = run(["spectrum", "--ring", str(path)])
    assert status == 0
    assert len(report.data["atoms"]) == 2


class TestErrors:
    def test_invalid_ring_file(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"order": 2, "one": 1, "add": [[0, 1], [1, 0]], "mul": [[0, 0], [0, 0]]}))
        status, report = run(["validate", "--ring", str(path)])
        assert status == 1
        assert not report.success
        assert report.data is None
        assert report.error.code == "ring_axiom"
        assert report.error.detail["axiom"] == "one is not identity"

    def test_cap_exceeded(self):
        status, report = run(["spectrum", "--ring", "zmod:12", "--max-order", "8"])
        assert status == 1
        assert report.error.code == "cap_exceeded"
        assert report.data is None

    def test_not_an_ideal(self):
        status, report = run(["monoform", "--ring", "zmod:12", "--module", "quot:0,5"])
        assert status == 1
        assert report.error.detail["reason"] == "not closed under action"
        assert report.ring.order == 12

    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["explode", "--ring", "zmod:4"],
            ["spectrum"],
            ["spectrum", "--ring", "zmod:4", "--max-order", "0"],
            ["spectrum", "--ring", "zmod:4", "--format", "yaml"],
            ["monoform", "--ring", "zmod:4", "--format", "graph"],
        ],
    )
    def test_usage_errors(self, argv):
        status, report = run(argv)
        assert status == 2
        assert report.error.code == "usage"
        assert report.data is None


class TestReports:
    def test_structured_output_is_deterministic(self):
        first = render(run(["serre", "--ring", "tri2:2", "--format", "json"])[1], None, "json")
        second = render(run(["serre", "--ring", "tri2:2", "--format", "json"])[1], None, "json")
        assert first == second
        parsed = Report.model_validate_json(first)
        assert parsed.data["count"] == 4
        assert parsed.timing_ms is None

    def test_timing_only_on_request(self):
        _, report = run(["validate", "--ring", "zmod:4", "--timing"])
        assert report.timing_ms is not None

    def test_text_output(self):
        status, report, ctx = execute(["spectrum", "--ring", "zmod:12"])
        text = render(report, ctx, "text")
        assert "spectrum" in text
        assert "atoms" in text

    def test_failing_battery(self, mocker):
        mocker.patch(
            "atomspec.cli.commands.check.check_suite",
            return_value=[PropertyResult(name="always fails", passed=False, instances=1, witness={"x": 1})],
        )
        status, report = run(["check", "--ring", "zmod:4"])
        assert status == 1
        assert not report.success
        assert report.data["failed"] == ["always fails"]

    def test_check_zero_ring(self):
        status, report = run(["check", "--ring", "zmod:1"])
        assert status == 0
        assert report.success
        assert report.data["failed"] == []
        assert report.data["atoms"] == 0
