"""测试公共夹具。"""

from __future__ import annotations

import os
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

# 与 main.py 相同：项目根目录加入搜索路径
_ROOT = Path(__file__).resolve().parent.parent
if str(_ROOT) not in sys.path:
    sys.path.insert(0, str(_ROOT))

from cli.document import SpaceDocument, parse_space  # noqa: E402
from core.approximation import ApproximationSpace  # noqa: E402
from core.sets import make_universe  # noqa: E402
from core.topology import BinaryRelation  # noqa: E402

settings.register_profile(
    "dev",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
if "CI" in os.environ:
    settings.register_profile(
        "ci",
        max_examples=300,
        deadline=None,
        suppress_health_check=[HealthCheck.too_slow],
    )
    settings.load_profile("ci")
else:
    settings.load_profile("dev")


FOUR_POINTS_PATH = _ROOT / "fixtures" / "four_points.json"


@pytest.fixture(scope="session")
def four_points_path() -> Path:
    return FOUR_POINTS_PATH


@pytest.fixture(scope="session")
def four_points_doc() -> SpaceDocument:
    return parse_space(FOUR_POINTS_PATH.read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def four_points(four_points_doc: SpaceDocument) -> ApproximationSpace:
    return four_points_doc.build()


@pytest.fixture(scope="session")
def four_points_scan(four_points_doc: SpaceDocument) -> ApproximationSpace:
    """同一空间，ℙ / δℙ 走族扫描而不是闭式。"""
    return four_points_doc.build(use_closed_forms=False)


@pytest.fixture
def non_clopen() -> ApproximationSpace:
    """δℙ-开集不全是 δℙ-闭集的空间。"""
    universe = make_universe(["a", "b", "c"])
    relation = BinaryRelation.from_labels(universe, [("a", "a"), ("b", "b")])
    return ApproximationSpace.from_relation(universe, relation)
