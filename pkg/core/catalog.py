"""
判据目录模块
把 60 条星像性充分条件作为数据加载：表达式树 ψ(u, v, w; α, β)、阈值、不等式方向与参数区间

该模块提供：
- Interval / Threshold / Direction: 参数区间、符号阈值与方向
- CriterionSpec: 一条充分条件
- build_catalog / get_catalog / find_criterion / reference_entries: 目录构造与查询
- remark_reductions: 特殊参数下与已有结论的对照（数值求值）
- eval_psi / psi_values / hypothesis_margins: ψ 的单点与向量化求值
- criterion_holds: 在函数的圆盘网格上检验判据假设
"""
from __future__ import annotations

import logging
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .config import get_config
from .exceptions import CatalogError, ExprError, ParamOutOfDomain, PreconditionFailed
from .expr import DISPLAY_NAMES, PARAMS, QUOTIENT_VARS, REGION_VARS, Expr, parse_expr
from .oracle import DiskGrid, criterion_grid, nonvanishing_check
from .quotients import QuotientTriple, quotient_grid
from .report import CRITERION, VerificationReport
from .series import TaylorFunction

logger = logging.getLogger(__name__)

# 每条定理的条目数
THEOREM_PARTS = {
    "2.1": 4, "2.2": 4, "2.3": 4, "2.4": 4, "2.5": 4, "2.6": 4, "2.7": 8, "2.8": 2,
    "2.9": 2, "2.10": 2, "2.11": 4, "2.12": 4, "2.13": 4, "2.14": 6, "2.15": 4,
}

# 方向为 "<" 的条目
LT_IDS = frozenset({"T2.9.i", "T2.9.ii", "T2.15.i", "T2.15.ii"})

_INTERVAL_RE = re.compile(r"^\s*([\[(])\s*([^,\s]+)\s*,\s*([^\])\s]+)\s*([\])])\s*$")


class Direction(str, Enum):
    """Re ψ > t (GT) 或 Re ψ < t (LT)"""
    GT = "GT"
    LT = "LT"

    @property
    def symbol(self) -> str:
        return ">" if self is Direction.GT else "<"


@dataclass(frozen=True)
class Interval:
    """实数区间，端点可开可闭，可以无界"""
    lo: float
    hi: float
    lo_closed: bool
    hi_closed: bool

    @classmethod
    def parse(cls, text: str) -> "Interval":
        """解析 "[0,inf)"、"(-inf,0]"、"[0,1]" 形式的区间"""
        m = _INTERVAL_RE.match(text)
        if not m:
            raise CatalogError(f"Bad interval {text!r}")
        try:
            lo, hi = float(m.group(2)), float(m.group(3))
        except ValueError:
            raise CatalogError(f"Bad interval endpoint in {text!r}") from None
        if lo > hi:
            raise CatalogError(f"Empty interval {text!r}")
        return cls(
            lo=lo,
            hi=hi,
            lo_closed=m.group(1) == "[" and math.isfinite(lo),
            hi_closed=m.group(4) == "]" and math.isfinite(hi),
        )

    def contains(self, x: float) -> bool:
        if math.isnan(x):
            return False
        above = x >= self.lo if self.lo_closed else x > self.lo
        below = x <= self.hi if self.hi_closed else x < self.hi
        return above and below

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    def describe(self, name: str) -> str:
        """可读形式，例如 "alpha ≥ 0" 或 "0 ≤ alpha ≤ 1" """
        lo_op = "≤" if self.lo_closed else "<"
        hi_op = "≤" if self.hi_closed else "<"
        lo_finite, hi_finite = math.isfinite(self.lo), math.isfinite(self.hi)
        if lo_finite and hi_finite:
            return f"{_num(self.lo)} {lo_op} {name} {hi_op} {_num(self.hi)}"
        if lo_finite:
            return f"{name} {'≥' if self.lo_closed else '>'} {_num(self.lo)}"
        if hi_finite:
            return f"{name} {hi_op} {_num(self.hi)}"
        return f"{name} ∈ ℝ"

    def requirement(self, name: str) -> str:
        """参数越界时的提示，例如 "alpha must be ≥ 0" """
        lo_finite, hi_finite = math.isfinite(self.lo), math.isfinite(self.hi)
        if lo_finite and hi_finite:
            return f"{name} must be in {self}"
        if lo_finite:
            return f"{name} must be {'≥' if self.lo_closed else '>'} {_num(self.lo)}"
        if hi_finite:
            return f"{name} must be {'≤' if self.hi_closed else '<'} {_num(self.hi)}"
        return f"{name} must be a real number"

    def __str__(self) -> str:
        lo = "-inf" if math.isinf(self.lo) else _num(self.lo)
        hi = "inf" if math.isinf(self.hi) else _num(self.hi)
        return f"{'[' if self.lo_closed else '('}{lo},{hi}{']' if self.hi_closed else ')'}"


def _num(x: float) -> str:
    return f"{x:g}"


@dataclass(frozen=True)
class Threshold:
    """符号阈值 t = coeff·param（param 为 None 时是常数）"""
    param: Optional[str]
    coeff: Fraction

    @classmethod
    def from_record(cls, record: Mapping[str, Any]) -> "Threshold":
        param = record.get("param")
        if param not in (None,) + PARAMS:
            raise CatalogError(f"Threshold parameter must be a, b or null, got {param!r}")
        return cls(param=param, coeff=Fraction(str(record["coeff"])))

    def value(self, alpha: float, beta: float) -> float:
        scale = {"a": alpha, "b": beta, None: 1.0}[self.param]
        return float(self.coeff) * scale

    def render(self) -> str:
        if self.param is None:
            return str(self.coeff)
        name = DISPLAY_NAMES[self.param]
        num, den = self.coeff.numerator, self.coeff.denominator
        sign = "-" if num < 0 else ""
        head = f"{abs(num)}{name}" if abs(num) != 1 else name
        return f"{sign}{head}" + (f"/{den}" if den != 1 else "")


@dataclass(frozen=True)
class CriterionSpec:
    """
    一条充分条件 Re ψ(Q_ST, Q_CV, Q_SD) > t（或 < t）

    Attributes:
        id: 编号，例如 "T2.1.i"
        psi: ψ 的表达式树，变量 u, v, w，参数 a (α), b (β)
        re_formula: u = iρ, v = iτ, w = ξ + iη 时 Re ψ 的显式公式
        threshold: 符号阈值
        direction: GT 或 LT
        alpha_domain / beta_domain: 参数区间
        anchor: 原始陈述
        reference_only: 仅作对照的已知结论，不属于 60 条定理条目
    """
    id: str
    psi: Expr
    re_formula: Expr
    threshold: Threshold
    direction: Direction
    alpha_domain: Interval
    beta_domain: Interval
    anchor: str
    theorem: str = ""
    part: str = ""
    header: str = ""
    psi_text: str = ""
    reference_only: bool = False
    source: str = ""

    def check_params(self, alpha: float, beta: float) -> None:
        """
        Raises:
            ParamOutOfDomain: α 或 β 不在参数区间内
        """
        for name, value, domain in (("alpha", alpha, self.alpha_domain), ("beta", beta, self.beta_domain)):
            if not domain.contains(value):
                raise ParamOutOfDomain(f"{self.id}: {domain.requirement(name)} (got {name} = {value:g})")

    def threshold_value(self, alpha: float, beta: float) -> float:
        return self.threshold.value(alpha, beta)

    def margin(self, re_values, alpha, beta):
        """到阈值的裕量：GT 为 Re ψ − t，LT 为 t − Re ψ"""
        t = self.threshold.value(alpha, beta)
        if self.direction is Direction.GT:
            return re_values - t
        return t - re_values

    def formula(self) -> str:
        """可读的条件，例如 "Re(Q_ST*(α*Q_CV + β*Q_SD)) > -α/2" """
        return f"Re({self.psi.render(DISPLAY_NAMES)}) {self.direction.symbol} {self.threshold.render()}"

    def to_record(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "theorem": self.theorem,
            "part": self.part,
            "psi": self.psi_text or str(self.psi),
            "formula": self.formula(),
            "re_formula": str(self.re_formula),
            "threshold": self.threshold.render(),
            "direction": self.direction.value,
            "alpha_domain": str(self.alpha_domain),
            "beta_domain": str(self.beta_domain),
            "anchor": self.anchor,
            "reference_only": self.reference_only,
            "source": self.source,
        }


@dataclass(frozen=True)
class RemarkReduction:
    """特殊参数下的约化对照"""
    criterion: str
    alpha: float
    beta: float
    target: str
    claim: str
    reference: Optional[str]
    matches: bool
    max_gap: float


# ==================== 目录构造 ====================

def _parse_entry(record: Mapping[str, Any], spec_id: str) -> Dict[str, Any]:
    try:
        psi = parse_expr(record["psi"], QUOTIENT_VARS + PARAMS, denominators=("u", "v"))
        re_formula = parse_expr(record["re_formula"], REGION_VARS + PARAMS, denominators=("rho", "tau"))
        return {
            "psi": psi,
            "psi_text": record["psi"],
            "re_formula": re_formula,
            "threshold": Threshold.from_record(record["threshold"]),
            "direction": Direction(record["direction"]),
        }
    except (KeyError, ValueError, ExprError) as e:
        raise CatalogError(f"Bad catalog entry {spec_id}: {e}") from e


def build_catalog(data: Optional[Mapping[str, Any]] = None) -> List[CriterionSpec]:
    """
    由目录数据构造 60 条判据

    Args:
        data: 目录数据；默认读取 config/criteria.json

    Raises:
        CatalogError: 数据缺失、条目数不符、编号重复或方向表不符
    """
    data = get_config().criteria if data is None else data
    theorems = data.get("theorems") if data else None
    if not theorems:
        raise CatalogError("Criterion catalog data is missing or empty")

    specs: List[CriterionSpec] = []
    for block in theorems:
        alpha_domain = Interval.parse(block["alpha_domain"])
        beta_domain = Interval.parse(block["beta_domain"])
        for record in block["parts"]:
            spec_id = f"T{block['theorem']}.{record['part']}"
            specs.append(CriterionSpec(
                id=spec_id,
                alpha_domain=alpha_domain,
                beta_domain=beta_domain,
                anchor=record.get("statement", ""),
                theorem=block["theorem"],
                part=record["part"],
                header=block.get("header", ""),
                **_parse_entry(record, spec_id),
            ))

    _validate(specs)
    logger.debug(f"Built criterion catalog with {len(specs)} entries")
    return specs


def _validate(specs: Sequence[CriterionSpec]) -> None:
    ids = [s.id for s in specs]
    duplicates = [i for i, n in Counter(ids).items() if n > 1]
    if duplicates:
        raise CatalogError(f"Duplicate criterion ids: {', '.join(duplicates)}")
    counts = Counter(s.theorem for s in specs)
    if dict(counts) != THEOREM_PARTS:
        raise CatalogError(f"Per-theorem entry counts {dict(counts)} do not match {THEOREM_PARTS}")
    lt = {s.id for s in specs if s.direction is Direction.LT}
    if lt != LT_IDS:
        raise CatalogError(f"Entries with direction LT must be {sorted(LT_IDS)}, got {sorted(lt)}")


@lru_cache(maxsize=1)
def get_catalog() -> Tuple[CriterionSpec, ...]:
    """缓存的判据目录"""
    return tuple(build_catalog())


def reference_entries(data: Optional[Mapping[str, Any]] = None) -> List[CriterionSpec]:
    """已有文献中的对照条件（reference_only）"""
    data = get_config().criteria if data is None else data
    specs = []
    for record in data.get("references", []):
        specs.append(CriterionSpec(
            id=record["id"],
            alpha_domain=Interval.parse(record["alpha_domain"]),
            beta_domain=Interval.parse(record["beta_domain"]),
            anchor=record.get("statement", ""),
            reference_only=True,
            source=record.get("source", ""),
            **_parse_entry(record, record["id"]),
        ))
    return specs


def find_criterion(criterion_id: str) -> CriterionSpec:
    """
    按编号查找判据（包括对照条目）

    Raises:
        CatalogError: 编号不存在
    """
    key = criterion_id.strip()
    for spec in get_catalog():
        if spec.id.lower() == key.lower():
            return spec
    for spec in reference_entries():
        if spec.id.lower() == key.lower():
            return spec
    raise CatalogError(f"Unknown criterion id {criterion_id!r}")


def remark_reductions(samples: int = 64, seed: int = 0) -> List[RemarkReduction]:
    """
    在随机 (u, v, w) 上逐条比较特殊参数下的 ψ 与文献中的表达式

    matches 为数值比较结果（相对误差 1e-14 以内），不是符号推导。
    """
    data = get_config().criteria
    rng = np.random.default_rng(seed)
    shape = (samples,)
    q = {
        name: rng.normal(size=shape) + 1j * rng.normal(size=shape) + (2.0 if name != "w" else 0.0)
        for name in QUOTIENT_VARS
    }
    results = []
    for record in data.get("remarks", []):
        spec = find_criterion(record["criterion"])
        alpha, beta = float(record["alpha"]), float(record["beta"])
        target = parse_expr(record["target"], QUOTIENT_VARS, denominators=("u", "v"))
        got = spec.psi.evaluate({**q, "a": alpha, "b": beta})
        want = target.evaluate(q)
        gap = float(np.max(np.abs(got - want) / np.maximum(1.0, np.abs(want))))
        results.append(RemarkReduction(
            criterion=spec.id,
            alpha=alpha,
            beta=beta,
            target=record["target"],
            claim=record.get("claim", ""),
            reference=record.get("reference"),
            matches=gap <= 1e-14,
            max_gap=gap,
        ))
    return results


# ==================== 求值 ====================

def eval_psi(spec: CriterionSpec, q: QuotientTriple, alpha: float, beta: float) -> complex:
    """
    以 q = (u, v, w) 求 ψ 的值

    Raises:
        ParamOutOfDomain: (α, β) 不在参数区间内
        RatioAtZero: 分母 Q_ST 或 Q_CV 的模小于 1e-12
    """
    spec.check_params(alpha, beta)
    return complex(spec.psi.evaluate({"u": q.u, "v": q.v, "w": q.w, "a": alpha, "b": beta}))


def psi_values(spec: CriterionSpec, u, v, w, alpha, beta, ratio_tol: Optional[float] = None):
    """
    向量化求 ψ，参数与变量按 numpy 规则广播

    分母过小的点不抛异常，而是在返回的掩码中标记，数值置为 NaN。

    Returns:
        (values, skipped): ψ 的值与被跳过的位置
    """
    tol = get_config().criterion_grid.ratio_tol if ratio_tol is None else ratio_tol
    env = {"u": np.asarray(u), "v": np.asarray(v), "w": np.asarray(w)}
    skipped = np.zeros(np.broadcast(env["u"], env["v"], env["w"]).shape, dtype=bool)
    for den in spec.psi.denominators():
        skipped |= np.abs(env[den.name]) < tol
    if np.any(skipped):
        for den in {d.name for d in spec.psi.denominators()}:
            env[den] = np.where(skipped, 1.0, env[den])
    env.update({"a": alpha, "b": beta})
    values = np.asarray(spec.psi.evaluate(env), dtype=np.complex128)
    if np.any(skipped):
        values = np.where(skipped, np.nan, values)
    return values, np.broadcast_to(skipped, values.shape)


def hypothesis_margins(spec: CriterionSpec, u, v, w, alpha, beta):
    """
    判据假设在每个点的裕量（GT: Re ψ − t；LT: t − Re ψ），跳过的点记为 +inf

    Returns:
        (margins, skipped)
    """
    values, skipped = psi_values(spec, u, v, w, alpha, beta)
    margins = spec.margin(values.real, alpha, beta)
    # 非有限值（例如函数在网格点处有极点）视为不满足
    margins = np.where(np.isfinite(margins), margins, -np.inf)
    return np.where(skipped, np.inf, margins), skipped


def criterion_holds(
    spec: CriterionSpec,
    f: TaylorFunction,
    alpha: float,
    beta: float,
    grid: Optional[DiskGrid] = None,
) -> VerificationReport:
    """
    在圆盘网格（外加原点）上检验判据假设

    Raises:
        ParamOutOfDomain: 参数不在区间内
        PreconditionFailed: 采样发现 f(z)/z 或 f'(z) 的零点
    """
    spec.check_params(alpha, beta)
    grid = grid or criterion_grid()

    precondition = nonvanishing_check(f, grid)
    if precondition.verdict != "holds":
        raise PreconditionFailed(
            f"f(z)f'(z)/z vanishes near z = {precondition.arg_min:.6g} "
            f"(min modulus {precondition.min_value:.3e})"
        )

    qg = quotient_grid(f, grid.points())
    z = np.append(qg.points, 0j)
    u = np.append(qg.u, 1 + 0j)
    v = np.append(qg.v, 1 + 0j)
    w = np.append(qg.w, 0j)

    margins, skipped = hypothesis_margins(spec, u, v, w, alpha, beta)
    evaluated = int(np.count_nonzero(~skipped))
    if evaluated:
        idx = int(np.argmin(margins))
        worst = float(margins[idx])
        arg = (float(z[idx].real), float(z[idx].imag))
    else:
        worst, arg = float("nan"), (float("nan"), float("nan"))

    passed = bool(evaluated and worst > 0)
    logger.info(f"{spec.id} on {f.describe()} (alpha={alpha:g}, beta={beta:g}): worst margin {worst:.6g}")
    return VerificationReport(
        subject=spec.id,
        kind=CRITERION,
        passed=passed,
        value=worst,
        arg=arg,
        samples=evaluated,
        alpha=alpha,
        beta=beta,
        threshold=spec.threshold_value(alpha, beta),
        skipped=int(np.count_nonzero(skipped)),
        details={"function": f.describe()},
    )
