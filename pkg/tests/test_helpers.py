"""文件与 JSON 工具测试。"""

from __future__ import annotations

import io

from utils.helpers import atomic_write, canonical_json, read_text, write_json_lines


def test_canonical_json_sorts_keys_and_keeps_unicode():
    assert canonical_json({"b": 1, "a": ["∅"]}) == '{\n  "a": [\n    "∅"\n  ],\n  "b": 1\n}'
    assert canonical_json({"b": 1, "a": 2}, indent=None) == '{"a":2,"b":1}'


def test_atomic_write_replaces_and_leaves_no_temp(tmp_path):
    target = tmp_path / "sub" / "out.txt"
    atomic_write(target, "first\n")
    atomic_write(target, "second\n")
    assert target.read_bytes() == b"second\n"
    assert [p.name for p in target.parent.iterdir()] == ["out.txt"]


def test_write_json_lines(tmp_path):
    target = tmp_path / "records.jsonl"
    count = write_json_lines(target, [{"z": 1, "a": "ℙ"}, {"k": None}])
    assert count == 2
    assert target.read_text(encoding="utf-8") == '{"a":"ℙ","z":1}\n{"k":null}\n'


def test_read_text(tmp_path):
    path = tmp_path / "in.json"
    path.write_text("{}", encoding="utf-8")
    assert read_text(path) == "{}"
    assert read_text(None, stdin=io.StringIO("from stdin")) == "from stdin"
    assert read_text("-", stdin=io.StringIO("dash")) == "dash"

