"""
命令行命令模块。

子命令:
    topology        子基、基、开集族、闭集族与最小邻域
    families        τ / ℙ / δℙ（及 δ）开闭集族
    approx          三粒度上下近似、边界、负域、精度与类别
    accuracy-table  全部非空真子集的三粒度精度表
    regions         24 个区域
    classify        可定义性类别与强 / 弱隶属
    include         粗糙包含
    partition       δℙ 点闭包划分
    verify          在关系语料上审计定律

数据只写 stdout，日志与错误信息写 stderr。退出码：0 成功，1 保证性定律
被违反，2 用法或输入错误，3 超出枚举上限。
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import click

from config import CONFIG, AppConfig, get_project_root, setup_logging
from core import __version__
from core.approximation import REGION_LABELS, ApproximationSpace, Membership
from core.audit import AuditReport, audit, exhaustive_spaces, sampled_spaces, write_findings
from core.errors import InvariantViolationError, RoughSetError
from core.families import Tier
from core.oracle import LAWS
from core.sets import ElementSet, SetFamily, subsets_by_size
from utils.helpers import read_text

from . import render
from .document import SpaceDocument, parse_set_expression, parse_space

__all__ = ["cli", "CliState"]

logger = logging.getLogger("RoughApprox.CLI")

# -v 次数 -> 日志级别
_VERBOSITY = {1: "INFO", 2: "DEBUG"}

_TIER_CHOICES = ["tau", "p", "dp", "all"]


# =============================================================================
# 共享状态
# =============================================================================

@dataclass
class CliState:
    """
    一次命令调用的共享状态，空间文档按需读取并只构建一次。

    Attributes
    ----------
    config : AppConfig
        生效的配置
    space_path : str, optional
        空间描述文件，None 或 "-" 表示标准输入
    output_format : str
        ``table`` 或 ``json``
    max_enum : int
        枚举上限
    """

    config: AppConfig
    space_path: Optional[str]
    output_format: str
    max_enum: int
    _document: Optional[SpaceDocument] = field(default=None, repr=False)
    _space: Optional[ApproximationSpace] = field(default=None, repr=False)

    def document(self) -> SpaceDocument:
        if self._document is None:
            text = read_text(self.space_path, stdin=click.get_text_stream("stdin"))
            self._document = parse_space(text, self.config.max_width)
        return self._document

    def space(self) -> ApproximationSpace:
        if self._space is None:
            self._space = self.document().build(
                cap=self.max_enum,
                workers=self.config.workers,
                use_closed_forms=self.config.use_closed_forms,
                cache_size=self.config.cache_size,
            )
        return self._space

    def subset(self, expr: str) -> ElementSet:
        return parse_set_expression(self.document().universe, expr)

    def log_cache_stats(self) -> None:
        if self._space is not None:
            logger.debug("缓存统计: %s", self._space.topology.cache.stats())

    def emit(self, table: str, data: Any) -> None:
        if self.output_format == "json":
            click.echo(render.dump_json(data))
        else:
            click.echo(table)


def handle_errors(func: Callable) -> Callable:
    """把 RoughSetError 转换为错误信息与对应退出码。"""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except RoughSetError as e:
            logger.debug("命令失败: %s", e, exc_info=True)
            click.echo(f"错误: {e}", err=True)
            click.get_current_context().exit(e.exit_code)

    return wrapper


def _tiers(choice: str) -> List[Tier]:
    return list(Tier) if choice == "all" else [Tier.from_key(choice)]


def _resolve_output(path: str, from_config: bool) -> Path:
    """配置中的相对路径相对项目根目录，命令行给出的相对路径相对当前目录。"""
    p = Path(path)
    if from_config and not p.is_absolute():
        return get_project_root() / p
    return p


# =============================================================================
# 命令组
# =============================================================================

@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="rough-approx")
@click.option(
    "--space", "space_path",
    type=click.Path(exists=True, dir_okay=False, allow_dash=True),
    default=None,
    help="空间描述文件（JSON），缺省或 - 时读标准输入。",
)
@click.option(
    "--format", "output_format",
    type=click.Choice(["table", "json"]),
    default=None,
    help="输出格式，默认取配置（table）。",
)
@click.option(
    "--max-enum",
    type=click.IntRange(1, 64),
    default=None,
    help="幂集枚举上限，默认取配置（20）。",
)
@click.option(
    "--config", "config_path",
    type=click.Path(dir_okay=False),
    default=None,
    help="配置文件路径。",
)
@click.option("--verbose", "-v", count=True, help="提高日志详细程度（可重复）。")
@click.pass_context
def cli(
    ctx: click.Context,
    space_path: Optional[str],
    output_format: Optional[str],
    max_enum: Optional[int],
    config_path: Optional[str],
    verbose: int,
) -> None:
    """
    rough-approx: 关系诱导拓扑上的 τ / ℙ / δℙ 三粒度粗糙近似。
    """
    config = AppConfig.load(config_path) if config_path else CONFIG
    setup_logging(_VERBOSITY.get(min(verbose, 2), config.log_level), config.log_to_file)
    logger.info("rough-approx %s", __version__)

    ctx.obj = CliState(
        config=config,
        space_path=space_path,
        output_format=output_format or config.output_format,
        max_enum=max_enum or config.max_enum,
    )
    ctx.call_on_close(ctx.obj.log_cache_stats)


# =============================================================================
# 拓扑与集合族
# =============================================================================

@cli.command()
@click.pass_obj
@handle_errors
def topology(state: CliState) -> None:
    """列出子基、基、τ、τ 的闭集族与各点最小开邻域。"""
    space = state.space()
    u = space.universe
    top = space.topology
    listing: Tuple[Tuple[str, str, SetFamily], ...] = (
        ("subbase", "subbase", top.subbase),
        ("base", "base", top.base),
        ("open", "τ", top.opens),
        ("closed", "τᶜ", top.closeds),
    )
    neighbourhoods = [(u.labels[x], top.element_set(m)) for x, m in enumerate(top.neighbourhoods)]

    data: Dict[str, Any] = {key: render.family_to_json(u, fam) for key, _, fam in listing}
    data["name"] = state.document().name
    data["universe"] = list(u.labels)
    data["neighbourhoods"] = {label: u.names(m) for label, m in neighbourhoods}
    data["counts"] = {key: len(fam) for key, _, fam in listing}

    parts = [render.render_family(u, title, fam) for _, title, fam in listing]
    parts.append(
        render.render_table(
            [{"x": label, "U": u.format(m)} for label, m in neighbourhoods],
            ["x", "U"],
            {"U": "U_x"},
        )
    )
    state.emit(render.sections(parts), data)


# kind -> (开集族标题, 闭集族标题, 取族函数)
_KINDS: Dict[str, Tuple[str, str, Callable[[Any], SetFamily]]] = {
    "tau": ("τ", "τᶜ", lambda f: f.tau_open),
    "pre": ("ℙO", "ℙC", lambda f: f.preopen),
    "deltap": ("δℙO", "δℙC", lambda f: f.deltap_open),
    "delta": ("δO", "δC", lambda f: f.delta_open),
}


@cli.command()
@click.option(
    "--kind",
    type=click.Choice(list(_KINDS)),
    default=None,
    help="只列出某一族；缺省列出 tau / pre / deltap。",
)
@click.pass_obj
@handle_errors
def families(state: CliState, kind: Optional[str]) -> None:
    """列出广义开集族及其闭集族。"""
    space = state.space()
    u = space.universe
    kinds = [kind] if kind else ["tau", "pre", "deltap"]

    data: Dict[str, Any] = {"families": {}, "counts": {}}
    parts = []
    for k in kinds:
        open_title, closed_title, pick = _KINDS[k]
        opens = pick(space.families)
        closeds = opens.complements()
        data["families"][k] = {
            "open": render.family_to_json(u, opens),
            "closed": render.family_to_json(u, closeds),
        }
        data["counts"][k] = len(opens)
        parts.append(render.render_family(u, open_title, opens))
        parts.append(render.render_family(u, closed_title, closeds))
    state.emit(render.sections(parts), data)


# =============================================================================
# 近似
# =============================================================================

@cli.command()
@click.option("--set", "set_expr", required=True, help="集合表达式，如 {u1,u3}、all、empty。")
@click.option("--tier", type=click.Choice(_TIER_CHOICES), default="all", show_default=True)
@click.pass_obj
@handle_errors
def approx(state: CliState, set_expr: str, tier: str) -> None:
    """各粒度的下 / 上近似、边界域、负域、精度与类别。"""
    space = state.space()
    u = space.universe
    s = state.subset(set_expr)
    if s.is_empty:
        logger.info("空集的精度无定义，精度列标记为 %s", render.UNDEFINED)

    rows, items = [], []
    for t in _tiers(tier):
        a = space.approximate(s, t)
        regions = space.pos_neg_boundary(s, t)
        c = space.classify(s, t)
        items.append({
            "tier": t.key,
            "lower": u.names(a.lower),
            "upper": u.names(a.upper),
            "boundary": u.names(regions.boundary),
            "negative": u.names(regions.negative),
            "accuracy": None if a.accuracy is None else render.format_fraction(a.accuracy),
            "class": c.cls.value,
            "exact": c.exact,
        })
        rows.append({
            "tier": t.label,
            "lower": u.format(a.lower),
            "upper": u.format(a.upper),
            "boundary": u.format(regions.boundary),
            "negative": u.format(regions.negative),
            "accuracy": render.format_fraction(a.accuracy),
            "class": c.cls.value,
            "exact": render.format_flag(c.exact),
        })

    table = render.render_table(
        rows,
        ["tier", "lower", "upper", "boundary", "negative", "accuracy", "class", "exact"],
        {"boundary": "BN", "negative": "NEG", "accuracy": "α"},
    )
    state.emit(f"S = {u.format(s)}\n\n{table}", {"subject": u.names(s), "tiers": items})


# --paper-rows 列出的最大基数：单点集到三元子集
PAPER_ROWS_MAX_SIZE = 3


@cli.command("accuracy-table")
@click.option(
    "--paper-rows",
    is_flag=True,
    help=f"只列出单点集到 {PAPER_ROWS_MAX_SIZE} 元子集（四点空间上即 14 行）。",
)
@click.option(
    "--max-size",
    type=click.IntRange(min=1),
    default=None,
    help="只列出基数不超过该值的子集，缺省为 n - 1。",
)
@click.pass_obj
@handle_errors
def accuracy_table(state: CliState, paper_rows: bool, max_size: Optional[int]) -> None:
    """非空真子集的三粒度精度，按基数再按下标字典序排列。

    两个过滤选项同时给出时取较小的上限。
    """
    space = state.space()
    u = space.universe
    n = u.size
    top = n - 1
    if paper_rows:
        top = min(top, PAPER_ROWS_MAX_SIZE)
    if max_size is not None:
        top = min(top, max_size)

    rows, items = [], []
    for s in subsets_by_size(n, 1, top, state.max_enum):
        values = {t.key: render.format_fraction(space.accuracy(s, t)) for t in Tier}
        rows.append({"S": u.format(s), **values})
        items.append({"set": u.names(s), **values})

    table = render.render_table(
        rows,
        ["S", "tau", "p", "dp"],
        {"tau": "α_τ", "p": "α_ℙ", "dp": "α_δℙ"},
    )
    state.emit(table, {"rows": items})


@cli.command()
@click.option("--set", "set_expr", required=True, help="集合表达式。")
@click.pass_obj
@handle_errors
def regions(state: CliState, set_expr: str) -> None:
    """24 个区域（含空区域），按编号排列。"""
    space = state.space()
    u = space.universe
    report = space.regions(state.subset(set_expr))

    rows, items = [], []
    for i, (key, area) in enumerate(report, start=1):
        rows.append({"index": str(i), "key": key, "label": REGION_LABELS[key], "area": u.format(area)})
        items.append({"index": i, "key": key, "label": REGION_LABELS[key], "area": u.names(area)})

    table = render.render_table(rows, ["index", "key", "label", "area"], {"index": "#"})
    state.emit(
        f"S = {u.format(report.subject)}\n\n{table}",
        {"subject": u.names(report.subject), "regions": items},
    )


@cli.command()
@click.option("--set", "set_expr", required=True, help="集合表达式。")
@click.option("--element", default=None, help="同时给出该元素在各粒度的强 / 弱隶属。")
@click.pass_obj
@handle_errors
def classify(state: CliState, set_expr: str, element: Optional[str]) -> None:
    """各粒度的可定义性类别（RD / IUD / EUD / TUD）与精确性。"""
    space = state.space()
    u = space.universe
    s = state.subset(set_expr)
    x = u.index(element) if element is not None else None

    fields = ["tier", "class", "exact", "strong", "weak"]
    rows, items = [], []
    for t in Tier:
        c = space.classify(s, t)
        row = {
            "tier": t.label,
            "class": c.cls.value,
            "exact": render.format_flag(c.exact),
            "strong": u.format(space.lower(s, t)),
            "weak": u.format(space.upper(s, t)),
        }
        item: Dict[str, Any] = {
            "tier": t.key,
            "class": c.cls.value,
            "exact": c.exact,
            "strong_members": u.names(space.lower(s, t)),
            "weak_members": u.names(space.upper(s, t)),
        }
        if x is not None:
            strong = space.membership(x, s, t, Membership.STRONG)
            weak = space.membership(x, s, t, Membership.WEAK)
            row["x_strong"] = render.format_flag(strong)
            row["x_weak"] = render.format_flag(weak)
            item["element"] = {"label": element, "strong": strong, "weak": weak}
        rows.append(row)
        items.append(item)

    if x is not None:
        fields += ["x_strong", "x_weak"]
    table = render.render_table(
        rows,
        fields,
        {"strong": "strong members", "weak": "weak members",
         "x_strong": f"{element} strong", "x_weak": f"{element} weak"},
    )
    state.emit(f"S = {u.format(s)}\n\n{table}", {"subject": u.names(s), "tiers": items})


@cli.command()
@click.option("--set", "set_expr", required=True, help="被包含的集合 S。")
@click.option("--in", "in_expr", required=True, help="包含集合 N。")
@click.option("--tier", type=click.Choice(_TIER_CHOICES), default="all", show_default=True)
@click.pass_obj
@handle_errors
def include(state: CliState, set_expr: str, in_expr: str, tier: str) -> None:
    """粗糙包含：下包含、上包含与完全包含。"""
    space = state.space()
    u = space.universe
    s = state.subset(set_expr)
    n = state.subset(in_expr)

    rows, items = [], []
    for t in _tiers(tier):
        inc = space.rough_inclusion(s, n, t)
        rows.append({
            "tier": t.label,
            "bottom": render.format_flag(inc.bottom),
            "top": render.format_flag(inc.top),
            "full": render.format_flag(inc.full),
        })
        items.append({"tier": t.key, "bottom": inc.bottom, "top": inc.top, "full": inc.full})

    table = render.render_table(rows, ["tier", "bottom", "top", "full"])
    state.emit(
        f"S = {u.format(s)}, N = {u.format(n)}\n\n{table}",
        {"subject": u.names(s), "container": u.names(n), "tiers": items},
    )


@cli.command()
@click.pass_obj
@handle_errors
def partition(state: CliState) -> None:
    """δℙ-开集皆为 δℙ-闭集时，以各点的 δℙ-上近似划分论域。"""
    space = state.space()
    u = space.universe
    blocks = space.point_closure_partition()
    state.emit(
        render.render_family(u, "blocks", blocks),
        {"blocks": render.family_to_json(u, blocks)},
    )


# =============================================================================
# 审计
# =============================================================================

def _summary_rows(report: AuditReport, mode: Dict[str, Any]) -> List[Dict[str, str]]:
    summary = report.summary()
    rows = [{"item": f"mode.{k}", "value": str(v)} for k, v in mode.items()]
    for key in ("spaces_checked", "instances_checked", "clopen_spaces", "failures", "findings"):
        rows.append({"item": key, "value": str(summary[key])})
    for law_id, count in summary["findings_by_law"].items():
        rows.append({"item": f"findings.{law_id}", "value": str(count)})
    rows.append({"item": "ok", "value": render.format_flag(report.ok)})
    return rows


@cli.command()
@click.option("--exhaustive", type=click.IntRange(min=1), default=None, help="穷举 n 元论域上的全部关系。")
@click.option("--sample", is_flag=True, help="固定种子的随机关系语料（默认模式）。")
@click.option("--seed", type=int, default=None, help="随机种子，默认取配置（7）。")
@click.option("--count", type=click.IntRange(min=1), default=None, help="抽样空间数，默认取配置（100）。")
@click.option("--n", "size", type=click.IntRange(1, 8), default=None, help="论域大小，默认取配置（6）。")
@click.option("--min-n", type=click.IntRange(min=1), default=None, help="给出时论域大小在 [min-n, n] 中抽取。")
@click.option("--pairs", type=click.IntRange(min=1), default=None, help="每个空间检查的 (S, N) 对数。")
@click.option("--law", "laws", type=click.Choice([law.law_id for law in LAWS]), multiple=True, help="只审计指定定律（可重复）。")
@click.option("--findings", "findings_path", type=click.Path(dir_okay=False), default=None, help="审计发现的 JSON Lines 输出路径。")
@click.option("--workers", type=click.IntRange(min=1), default=None, help="线程数。")
@click.option("--allow-n4", is_flag=True, help="允许 n = 4 的穷举（65536 个关系）。")
@click.pass_obj
@handle_errors
def verify(
    state: CliState,
    exhaustive: Optional[int],
    sample: bool,
    seed: Optional[int],
    count: Optional[int],
    size: Optional[int],
    min_n: Optional[int],
    pairs: Optional[int],
    laws: Tuple[str, ...],
    findings_path: Optional[str],
    workers: Optional[int],
    allow_n4: bool,
) -> None:
    """在关系语料上审计定律；保证性定律被违反时退出码为 1。"""
    if exhaustive is not None and sample:
        raise click.UsageError("--exhaustive 与 --sample 不能同时使用")

    cfg = state.config.audit
    if exhaustive is not None:
        mode: Dict[str, Any] = {"kind": "exhaustive", "n": exhaustive}
        spaces = exhaustive_spaces(
            exhaustive,
            allow_n4=allow_n4 or cfg.allow_exhaustive_n4,
            max_n=cfg.exhaustive_max_n,
        )
    else:
        seed = cfg.seed if seed is None else seed
        count = count or cfg.count
        size = size or cfg.n
        if min_n is not None and min_n > size:
            raise click.BadParameter(f"--min-n ({min_n}) 不能大于 --n ({size})", param_hint="--min-n")
        mode = {"kind": "sample", "seed": seed, "count": count, "n": size}
        if min_n is not None:
            mode["min_n"] = min_n
        spaces = sampled_spaces(seed, count, size, min_n=min_n)

    report = audit(
        spaces,
        laws=laws or None,
        pairs_per_space=pairs,
        workers=workers or state.config.workers,
        cap=state.max_enum,
    )

    target = _resolve_output(findings_path or state.config.findings_file, findings_path is None)
    written = write_findings(target, report.findings)
    logger.info("审计发现 %d 条已写入 %s", written, target)

    data = dict(report.summary())
    data["mode"] = mode
    table = render.render_table(_summary_rows(report, mode), ["item", "value"])
    state.emit(table, data)

    if not report.ok:
        for f in report.failures[:10]:
            click.echo(f"违反: {f.property_id} 空间 #{f.space.index} {f.detail}", err=True)
        click.get_current_context().exit(InvariantViolationError.exit_code)
