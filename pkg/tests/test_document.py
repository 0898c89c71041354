"""空间描述文档与集合表达式解析测试。"""

from __future__ import annotations

import json

import pytest

from cli.document import family_from_labels, parse_set_expression, parse_space
from core.errors import (
    DocumentFormatError,
    DocumentSyntaxError,
    DuplicateLabelError,
    EmptyUniverseError,
    UniverseTooLargeError,
    UnknownLabelError,
)


def doc(**fields) -> str:
    base = {"universe": ["a", "b", "c"], "relation": [["a", "b"]]}
    base.update(fields)
    return json.dumps(base)


class TestParseSpace:
    def test_four_points(self, four_points_doc):
        assert four_points_doc.name == "four-points"
        assert four_points_doc.universe.labels == ("u1", "u2", "u3", "u4")
        assert len(four_points_doc.relation) == 5

    def test_to_dict_is_stable(self, four_points_doc):
        again = parse_space(json.dumps(four_points_doc.to_dict()))
        assert again == four_points_doc

    def test_duplicate_pairs_are_merged(self):
        parsed = parse_space(doc(relation=[["a", "b"], ["a", "b"], ["c", "c"]]))
        assert len(parsed.relation) == 2

    def test_unknown_keys_are_ignored(self):
        parsed = parse_space(doc(comment="hello"))
        assert parsed.name is None

    def test_syntax_error_has_position(self):
        with pytest.raises(DocumentSyntaxError) as info:
            parse_space('{"universe": ["a"],\n "relation": [}')
        assert info.value.line == 2
        assert info.value.exit_code == 2

    @pytest.mark.parametrize(
        "text",
        [
            "[]",
            json.dumps({"universe": ["a"]}),
            json.dumps({"relation": []}),
            doc(universe="abc"),
            doc(universe=["a", 1]),
            doc(relation={"a": "b"}),
            doc(relation=[["a", "b", "c"]]),
            doc(relation=[["a", 2]]),
            doc(name=3),
        ],
    )
    def test_format_errors(self, text):
        with pytest.raises(DocumentFormatError):
            parse_space(text)

    def test_unknown_label(self):
        with pytest.raises(UnknownLabelError) as info:
            parse_space(doc(relation=[["a", "z"]]))
        assert info.value.label == "z"

    def test_universe_checks(self):
        with pytest.raises(EmptyUniverseError):
            parse_space(doc(universe=[], relation=[]))
        with pytest.raises(DuplicateLabelError):
            parse_space(doc(universe=["a", "a"], relation=[]))
        with pytest.raises(UniverseTooLargeError):
            parse_space(doc(), max_width=2)


class TestSetExpression:
    @pytest.fixture
    def universe(self, four_points_doc):
        return four_points_doc.universe

    @pytest.mark.parametrize(
        "expr, labels",
        [
            ("{u1,u3}", ["u1", "u3"]),
            ("u1, u3", ["u1", "u3"]),
            (" { u4 } ", ["u4"]),
            ("{u2,u2}", ["u2"]),
            ("all", ["u1", "u2", "u3", "u4"]),
            ("ALL", ["u1", "u2", "u3", "u4"]),
            ("empty", []),
            ("∅", []),
            ("{}", []),
            ("{ }", []),
        ],
    )
    def test_accepted(self, universe, expr, labels):
        assert parse_set_expression(universe, expr) == universe.subset(labels)

    @pytest.mark.parametrize("expr", ["{u1", "u1}", "{u1,,u2}", "u1,", ""])
    def test_malformed(self, universe, expr):
        with pytest.raises(DocumentFormatError):
            parse_set_expression(universe, expr)

    def test_unknown_label(self, universe):
        with pytest.raises(UnknownLabelError):
            parse_set_expression(universe, "{u1,u9}")


def test_family_from_labels(four_points):
    u = four_points.universe
    rebuilt = family_from_labels(u, [[u.labels[i] for i in s] for s in four_points.topology.opens])
    assert rebuilt == four_points.topology.opens
