"""
蕴含检验模块
生成随机规范化多项式，检验"判据假设成立 ⇒ 采样判定为星像"

定理都已证明，所以任何违例都说明实现有错误。

该模块提供：
- CorpusConfig: 语料库配置（数量、次数、系数上界、种子、网格、参数扫描点数）
- random_function: 由 (seed, index) 确定的随机函数
- CriterionTally / ImplicationReport: 逐判据计数与违例记录
- implication_test: 在整个目录 × 语料库 × 参数扫描上做检验
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .admissibility import parameter_sweep
from .catalog import CriterionSpec, hypothesis_margins
from .config import get_config
from .exceptions import DomainError
from .oracle import DiskGrid, default_grid, min_real_part, nonvanishing_check
from .quotients import quotient_grid
from .report import FAILS, HOLDS
from .series import TaylorFunction
from .workers import ordered_map

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CorpusConfig:
    """
    随机语料库配置

    Attributes:
        count: 函数个数
        degree: 多项式次数上限
        min_degree: 次数下限（超过 degree 时按 degree 处理）
        coeff_bound: 系数模的上界（k ≥ 2）
        seed: 随机种子
        grid: 假设检验与判定共用的网格
        sweep_points: 每个参数方向的扫描点数
    """
    count: int
    degree: int
    coeff_bound: float
    seed: int
    grid: DiskGrid = field(default_factory=default_grid)
    sweep_points: int = 4
    min_degree: int = 2

    def __post_init__(self):
        if self.count < 0:
            raise DomainError("corpus count must be non-negative")
        if self.degree < 1:
            raise DomainError("corpus degree must be at least 1")
        if self.coeff_bound < 0:
            raise DomainError("coefficient bound must be non-negative")
        if self.seed < 0:
            raise DomainError(f"seed must be non-negative, got {self.seed}")
        if self.min_degree < 1:
            raise DomainError(f"minimum degree must be at least 1, got {self.min_degree}")

    @classmethod
    def from_config(cls, **overrides) -> "CorpusConfig":
        cfg = get_config().search
        params: Dict[str, Any] = dict(
            count=cfg.count,
            degree=cfg.degree,
            min_degree=cfg.min_degree,
            coeff_bound=cfg.coeff_bound,
            seed=cfg.seed,
            sweep_points=cfg.sweep_points,
        )
        params.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**params)

    def params_for(self, spec: CriterionSpec) -> List[Tuple[float, float]]:
        """判据参数区间上的 (α, β) 扫描点"""
        alphas = parameter_sweep(spec.alpha_domain, self.sweep_points).values
        betas = parameter_sweep(spec.beta_domain, self.sweep_points).values
        return list(itertools.product(alphas, betas))


def random_function(cfg: CorpusConfig, index: int) -> TaylorFunction:
    """
    z + Σ_{k=2}^{d} a_k z^k，|a_k| 在 [0, coeff_bound] 上均匀，辐角在 [0, 2π) 上均匀

    次数 d 在 [min_degree, degree] 上均匀抽取。每个下标使用独立的子种子，
    结果只依赖 (seed, index)。
    """
    if not 0 <= index < cfg.count:
        raise DomainError(f"index {index} outside corpus of {cfg.count} functions")
    rng = np.random.default_rng(np.random.SeedSequence(entropy=cfg.seed, spawn_key=(index,)))
    n = max(cfg.degree - 1, 0)
    moduli = rng.uniform(0.0, cfg.coeff_bound, n)
    phases = rng.uniform(0.0, 2 * np.pi, n)
    # 次数最后抽取，min_degree == degree 时系数与固定次数的语料库一致
    d = int(rng.integers(min(cfg.min_degree, cfg.degree), cfg.degree + 1))
    moduli[max(d - 1, 0):] = 0.0
    coeffs = np.concatenate(([0.0, 1.0], moduli * np.exp(1j * phases)))
    return TaylorFunction.from_coeffs(coeffs, label=f"corpus[{cfg.seed}:{index}]")


@dataclass
class Violation:
    """假设成立但判定不成立的一例"""
    criterion: str
    alpha: float
    beta: float
    index: int
    coeffs: Tuple[complex, ...]
    point: complex
    min_re_qst: float

    def to_record(self) -> Dict[str, Any]:
        return {
            "criterion": self.criterion,
            "alpha": self.alpha,
            "beta": self.beta,
            "index": self.index,
            "coeffs": [[c.real, c.imag] for c in self.coeffs],
            "z_re": self.point.real,
            "z_im": self.point.imag,
            "min_re_qst": self.min_re_qst,
        }


@dataclass
class CriterionTally:
    """单个判据的计数，单位为 (函数, α, β) 组合"""
    criterion: str
    evaluated: int = 0
    hypothesis_true: int = 0
    conclusion_true: int = 0
    conclusion_inconclusive: int = 0
    inapplicable: int = 0
    violations: List[Violation] = field(default_factory=list)

    def merge(self, other: "CriterionTally") -> "CriterionTally":
        return CriterionTally(
            criterion=self.criterion,
            evaluated=self.evaluated + other.evaluated,
            hypothesis_true=self.hypothesis_true + other.hypothesis_true,
            conclusion_true=self.conclusion_true + other.conclusion_true,
            conclusion_inconclusive=self.conclusion_inconclusive + other.conclusion_inconclusive,
            inapplicable=self.inapplicable + other.inapplicable,
            violations=self.violations + other.violations,
        )

    def to_record(self) -> Dict[str, Any]:
        return {
            "criterion": self.criterion,
            "evaluated": self.evaluated,
            "hypothesis_true_count": self.hypothesis_true,
            "conclusion_true_count": self.conclusion_true,
            "conclusion_inconclusive_count": self.conclusion_inconclusive,
            "inapplicable_count": self.inapplicable,
            "violation_count": len(self.violations),
        }


@dataclass
class ImplicationReport:
    """全目录的检验结果，tallies 的顺序与目录一致"""
    seed: int
    functions: int
    tallies: List[CriterionTally]

    @property
    def violations(self) -> List[Violation]:
        return [v for t in self.tallies for v in t.violations]

    def merge(self, other: "ImplicationReport") -> "ImplicationReport":
        return ImplicationReport(
            seed=self.seed,
            functions=self.functions + other.functions,
            tallies=[a.merge(b) for a, b in zip(self.tallies, other.tallies)],
        )

    def max_coverage(self) -> int:
        return max((t.hypothesis_true for t in self.tallies), default=0)

    def to_records(self) -> List[Dict[str, Any]]:
        return [t.to_record() for t in self.tallies]


def _scan_function(
    catalog: Sequence[CriterionSpec],
    cfg: CorpusConfig,
    params: Sequence[np.ndarray],
    index: int,
) -> ImplicationReport:
    f = random_function(cfg, index)
    tallies = [CriterionTally(spec.id) for spec in catalog]

    if not nonvanishing_check(f, cfg.grid).holds:
        for tally, (alphas, _) in zip(tallies, params):
            tally.inapplicable = alphas.size
        return ImplicationReport(cfg.seed, 1, tallies)

    qg = quotient_grid(f, cfg.grid.points())
    oracle = min_real_part(qg.u, qg.points)
    u = np.append(qg.u, 1 + 0j)
    v = np.append(qg.v, 1 + 0j)
    w = np.append(qg.w, 0j)

    for spec, tally, (alphas, betas) in zip(catalog, tallies, params):
        margins, _ = hypothesis_margins(spec, u, v, w, alphas[:, None], betas[:, None])
        # ψ 与阈值都不含参数时结果是一维的
        margins = np.broadcast_to(margins, (alphas.size, u.size))
        hypothesis = np.min(margins, axis=1) > 0
        tally.evaluated = alphas.size
        tally.hypothesis_true = int(np.count_nonzero(hypothesis))
        if not tally.hypothesis_true:
            continue
        if oracle.verdict == HOLDS:
            tally.conclusion_true = tally.hypothesis_true
        elif oracle.verdict == FAILS:
            for k in np.flatnonzero(hypothesis):
                tally.violations.append(Violation(
                    criterion=spec.id,
                    alpha=float(alphas[k]),
                    beta=float(betas[k]),
                    index=index,
                    coeffs=tuple(complex(c) for c in f.series.coeffs[:cfg.degree + 1]),
                    point=oracle.arg_min,
                    min_re_qst=oracle.min_value,
                ))
        else:
            tally.conclusion_inconclusive = tally.hypothesis_true
    return ImplicationReport(cfg.seed, 1, tallies)


def implication_test(
    catalog: Sequence[CriterionSpec],
    cfg: CorpusConfig,
    workers: Optional[int] = None,
) -> ImplicationReport:
    """
    对每个函数、每条判据、每组 (α, β)：前提条件不成立计为 inapplicable；
    假设在网格（含原点）上成立时，要求 min Re Q_ST 判定为 holds，判定为 fails 则记为违例。
    """
    params = []
    for spec in catalog:
        pairs = cfg.params_for(spec)
        params.append((np.array([p[0] for p in pairs]), np.array([p[1] for p in pairs])))

    empty = ImplicationReport(cfg.seed, 0, [CriterionTally(spec.id) for spec in catalog])
    partials = ordered_map(lambda i: _scan_function(catalog, cfg, params, i), range(cfg.count), workers)

    report = empty
    for partial in partials:
        report = report.merge(partial)
    logger.info(
        f"Scanned {report.functions} functions against {len(catalog)} criteria: "
        f"{len(report.violations)} violations"
    )
    return report
