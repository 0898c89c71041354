"""命令行测试：输出格式、退出码与标准输入。"""

from __future__ import annotations

import json

import pytest
from click.testing import CliRunner

import core.approximation
from cli import cli, family_from_labels
from cli.render import dump_json, family_to_json

UP_TO_TRIPLES = """\
S          | α_τ | α_ℙ | α_δℙ
-----------------------------
{u1}       | 0   | 0   | 1
{u2}       | 0   | 0   | 1
{u3}       | 1/3 | 1/3 | 1
{u4}       | 1   | 1   | 1
{u1,u2}    | 0   | 0   | 1
{u1,u3}    | 1/3 | 2/3 | 1
{u1,u4}    | 1/3 | 1/2 | 1
{u2,u3}    | 1/3 | 2/3 | 1
{u2,u4}    | 1/3 | 1/2 | 1
{u3,u4}    | 1/2 | 1/2 | 1
{u1,u2,u3} | 1   | 1   | 1
{u1,u2,u4} | 1/3 | 1/3 | 1
{u1,u3,u4} | 1/2 | 3/4 | 1
{u2,u3,u4} | 1/2 | 3/4 | 1
"""

NON_CLOPEN = json.dumps({"universe": ["a", "b", "c"], "relation": [["a", "a"], ["b", "b"]]})


@pytest.fixture
def runner() -> CliRunner:
    # click 8.2 起 stdout 与 stderr 总是分开捕获
    try:
        return CliRunner(mix_stderr=False)
    except TypeError:
        return CliRunner()


@pytest.fixture
def run(runner, four_points_path):
    def invoke(*args, input=None, space=True):
        prefix = ["--space", str(four_points_path)] if space else []
        return runner.invoke(cli, [*prefix, *args], input=input)

    return invoke


class TestTables:
    def test_table_up_to_triples_is_byte_exact(self, run):
        result = run("accuracy-table", "--max-size", "3")
        assert result.exit_code == 0, result.output
        assert result.stdout == UP_TO_TRIPLES

    def test_paper_rows_is_byte_exact(self, run):
        result = run("accuracy-table", "--paper-rows")
        assert result.exit_code == 0, result.output
        assert result.stdout == UP_TO_TRIPLES

    def test_paper_rows_stop_at_triples(self, run):
        text = json.dumps({"universe": ["a", "b", "c", "d", "e"], "relation": [["a", "b"]]})
        rows = json.loads(run("--format", "json", "accuracy-table", "--paper-rows", input=text, space=False).stdout)["rows"]
        assert len(rows) == 5 + 10 + 10
        assert max(len(r["set"]) for r in rows) == 3
        full = json.loads(run("--format", "json", "accuracy-table", input=text, space=False).stdout)["rows"]
        assert len(full) == 30

    def test_paper_rows_with_smaller_max_size(self, run):
        rows = json.loads(run("--format", "json", "accuracy-table", "--paper-rows", "--max-size", "2").stdout)["rows"]
        assert len(rows) == 4 + 6

    def test_full_table_has_all_proper_subsets(self, run):
        result = run("--format", "json", "accuracy-table")
        rows = json.loads(result.stdout)["rows"]
        assert len(rows) == 14
        assert rows[5] == {"set": ["u1", "u3"], "tau": "1/3", "p": "2/3", "dp": "1"}

    def test_max_size_limits_rows(self, run):
        rows = json.loads(run("--format", "json", "accuracy-table", "--max-size", "1").stdout)["rows"]
        assert [r["set"] for r in rows] == [["u1"], ["u2"], ["u3"], ["u4"]]
        assert len(json.loads(run("--format", "json", "accuracy-table", "--max-size", "9").stdout)["rows"]) == 14

    def test_output_is_repeatable(self, run):
        assert run("topology").stdout == run("topology").stdout

    def test_families_listing(self, run):
        result = run("families", "--kind", "pre")
        assert result.exit_code == 0
        assert result.stdout.startswith("ℙO (10)\n  ∅\n")
        assert "\n\nℙC (10)\n" in result.stdout

    def test_approx_table(self, run):
        result = run("approx", "--set", "{u2,u4}", "--tier", "p")
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[0] == "S = {u2,u4}"
        assert lines[2].split(" | ")[0].strip() == "tier"
        assert lines[4].split(" | ")[:4] == ["ℙ   ", "{u4} ", "{u2,u4}", "{u2}"]


class TestJson:
    def test_topology_round_trip(self, run, four_points):
        result = run("--format", "json", "topology")
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        u = four_points.universe
        opens = family_from_labels(u, data["open"])
        assert opens == four_points.topology.opens
        assert data["counts"]["open"] == 6
        assert data["neighbourhoods"]["u1"] == ["u1", "u2", "u3"]
        assert dump_json(family_to_json(u, opens)) == dump_json(data["open"])

    def test_families_counts(self, run):
        data = json.loads(run("--format", "json", "families", "--kind", "delta").stdout)
        assert data["counts"] == {"delta": 4}

    def test_empty_set_accuracy_is_null(self, run):
        data = json.loads(run("--format", "json", "approx", "--set", "empty").stdout)
        assert [t["accuracy"] for t in data["tiers"]] == [None, None, None]

    def test_regions(self, run):
        data = json.loads(run("--format", "json", "regions", "--set", "{u2,u4}").stdout)
        assert len(data["regions"]) == 24
        by_key = {r["key"]: r["area"] for r in data["regions"]}
        assert by_key["p_boundary"] == ["u2"]
        assert by_key["exterior"] == ["u3"]

    def test_classify_with_element(self, run):
        result = run("--format", "json", "classify", "--set", "{u1,u3}", "--element", "u1")
        tiers = json.loads(result.stdout)["tiers"]
        assert [t["element"]["strong"] for t in tiers] == [False, True, True]

    def test_include(self, run):
        result = run("--format", "json", "include", "--set", "{u1,u2,u3}", "--in", "{u1,u3}", "--tier", "tau")
        tier = json.loads(result.stdout)["tiers"][0]
        assert tier == {"tier": "tau", "bottom": False, "top": True, "full": False}

    def test_partition(self, run):
        data = json.loads(run("--format", "json", "partition").stdout)
        assert data["blocks"] == [["u1"], ["u2"], ["u3"], ["u4"]]


class TestInput:
    def test_reads_stdin(self, run, four_points_path):
        text = four_points_path.read_text(encoding="utf-8")
        result = run("accuracy-table", "--max-size", "3", input=text, space=False)
        assert result.exit_code == 0
        assert result.stdout == UP_TO_TRIPLES

    def test_dash_means_stdin(self, runner, four_points_path):
        text = four_points_path.read_text(encoding="utf-8")
        result = runner.invoke(cli, ["--space", "-", "--format", "json", "topology"], input=text)
        assert json.loads(result.stdout)["name"] == "four-points"


class TestExitCodes:
    @pytest.mark.parametrize(
        "text",
        ["{not json", json.dumps({"universe": ["a"]}), json.dumps({"universe": ["a"], "relation": [["a", "b"]]})],
    )
    def test_bad_document(self, run, text):
        result = run("topology", input=text, space=False)
        assert result.exit_code == 2
        assert result.stdout == ""

    @pytest.mark.parametrize("expr", ["{u1,u9}", "{u1", "{u1,,u2}"])
    def test_bad_set_expression(self, run, expr):
        assert run("approx", "--set", expr).exit_code == 2

    def test_unknown_element(self, run):
        assert run("classify", "--set", "{u1}", "--element", "u9").exit_code == 2

    def test_missing_file(self, runner, tmp_path):
        result = runner.invoke(cli, ["--space", str(tmp_path / "none.json"), "topology"])
        assert result.exit_code == 2

    def test_enumeration_cap(self, run):
        result = run("--max-enum", "2", "topology")
        assert result.exit_code == 3
        assert result.stdout == ""

    def test_partition_precondition(self, run):
        assert run("partition", input=NON_CLOPEN, space=False).exit_code == 2

    def test_conflicting_modes(self, run, tmp_path):
        result = run("verify", "--exhaustive", "2", "--sample", "--findings", str(tmp_path / "f.jsonl"), space=False)
        assert result.exit_code == 2

    def test_min_n_above_n(self, run, tmp_path):
        result = run("verify", "--n", "3", "--min-n", "4", "--findings", str(tmp_path / "f.jsonl"), space=False)
        assert result.exit_code == 2


class TestVerify:
    def test_exhaustive_passes(self, run, tmp_path):
        findings = tmp_path / "findings.jsonl"
        result = run("verify", "--exhaustive", "2", "--findings", str(findings), space=False)
        assert result.exit_code == 0, result.output
        assert "ok" in result.stdout
        assert findings.exists()

    def test_summary_json(self, run, tmp_path):
        findings = tmp_path / "findings.jsonl"
        result = run(
            "--format", "json", "verify", "--seed", "3", "--count", "5", "--n", "3",
            "--findings", str(findings), space=False,
        )
        data = json.loads(result.stdout)
        assert data["ok"] is True
        assert data["spaces_checked"] == 5
        assert data["mode"] == {"kind": "sample", "seed": 3, "count": 5, "n": 3}

    def test_law_filter(self, run, tmp_path):
        result = run(
            "--format", "json", "verify", "--exhaustive", "1", "--law", "tier_chain",
            "--findings", str(tmp_path / "f.jsonl"), space=False,
        )
        assert json.loads(result.stdout)["instances_checked"] == 2 * 2

    def test_exhaustive_n4_needs_flag(self, run, tmp_path):
        result = run("verify", "--exhaustive", "4", "--findings", str(tmp_path / "f.jsonl"), space=False)
        assert result.exit_code == 3

    @pytest.mark.parametrize("max_n, n", [(4, 4), (2, 3)])
    def test_configured_exhaustive_limit(self, run, tmp_path, max_n, n):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"audit": {"exhaustive_max_n": max_n}}), encoding="utf-8")
        result = run(
            "--config", str(config), "verify", "--exhaustive", str(n),
            "--findings", str(tmp_path / "f.jsonl"), space=False,
        )
        assert result.exit_code == 3

    def test_broken_fast_path_exits_one(self, run, tmp_path, monkeypatch):
        monkeypatch.setattr(core.approximation, "pre_interior", lambda top, s: top.element_set(0))
        result = run("verify", "--exhaustive", "2", "--findings", str(tmp_path / "f.jsonl"), space=False)
        assert result.exit_code == 1
        assert "tier_chain" in result.stderr
