"""
可容许条件验证模块
在约束区域 ρτ ≥ (1+3ρ²)/2、ρη ≥ 0 上数值验证 Re ψ(iρ, iτ, ξ+iη) 不落入 Ω

该模块提供：
- AdmissiblePoint: 满足约束的实四元组 (ρ, τ, ξ, η)
- RegionSampler: 确定性格点配置（构造即满足约束，不做过滤）
- sample_region / region_arrays: 逐点与向量化的同序格点
- verify_admissibility: GT 判据检查最大值 ≤ t + tol，LT 判据检查最小值 ≥ t − tol
- boundary_supremum: 在边界面 s=1, η=0 上加密采样估计上确界
- parameter_sweep / sweep_admissibility: 参数区间扫描
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, replace
from typing import Iterator, List, Optional, Tuple

import numpy as np

from .catalog import CriterionSpec, Direction, Interval
from .config import get_config
from .exceptions import ConfigError, DomainError
from .report import ADMISSIBILITY, VerificationReport
from .workers import ordered_map

logger = logging.getLogger(__name__)

# 约束检查的相对容差
CONSTRAINT_RTOL = 1e-12


def tau_for(rho, slack):
    """τ = s·(1+3ρ²)/(2ρ)，s = 1 时恰在约束边界上"""
    return slack * (1 + 3 * rho * rho) / (2 * rho)


@dataclass(frozen=True)
class AdmissiblePoint:
    """满足 ρτ ≥ (1+3ρ²)/2 且 ρη ≥ 0 的点"""
    rho: float
    tau: float
    xi: float
    eta: float

    def __post_init__(self):
        if self.rho == 0:
            raise DomainError("rho must be non-zero")
        bound = (1 + 3 * self.rho ** 2) / 2
        if self.rho * self.tau < bound * (1 - CONSTRAINT_RTOL):
            raise DomainError(f"rho*tau = {self.rho * self.tau:g} is below (1+3rho^2)/2 = {bound:g}")
        if self.rho * self.eta < 0:
            raise DomainError("rho*eta must be non-negative")

    def mirror(self) -> "AdmissiblePoint":
        """(ρ, τ, η) → (−ρ, −τ, −η)，ξ 不变"""
        return AdmissiblePoint(-self.rho, -self.tau, self.xi, -self.eta)

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.rho, self.tau, self.xi, self.eta)


@dataclass(frozen=True)
class RegionSampler:
    """
    区域格点配置

    Attributes:
        rho_range: ρ 的几何采样范围（正分支），ρ_min > 0
        rho_count: ρ 点数
        slack_range: 松弛因子 s 的线性范围 [1, s_max]
        slack_count: s 点数
        eta_max: η 的线性范围 [0, eta_max]
        eta_count: η 的步数（另加 η = 0，共 eta_count + 1 个值）
        xi_max / xi_count: ξ 在 [−xi_max, xi_max] 上的点数，1 表示只取 0
        include_negative_branch: 是否加入 (−ρ, −τ, ξ, −η) 分支
    """
    rho_range: Tuple[float, float] = (1e-3, 1e2)
    rho_count: int = 128
    slack_range: Tuple[float, float] = (1.0, 10.0)
    slack_count: int = 12
    eta_max: float = 1e2
    eta_count: int = 12
    xi_max: float = 1.0
    xi_count: int = 3
    include_negative_branch: bool = True

    def __post_init__(self):
        lo, hi = self.rho_range
        if not 0 < lo <= hi:
            raise ConfigError(f"rho range must satisfy 0 < rho_min <= rho_max, got {self.rho_range}")
        s_lo, s_hi = self.slack_range
        if not 1 <= s_lo <= s_hi:
            raise ConfigError(f"slack range must satisfy 1 <= s_min <= s_max, got {self.slack_range}")
        if self.eta_max < 0 or self.xi_max < 0:
            raise ConfigError("eta_max and xi_max must be non-negative")
        if min(self.rho_count, self.slack_count, self.xi_count) < 1 or self.eta_count < 0:
            raise ConfigError("sampler counts must be positive")

    @classmethod
    def from_config(cls, **overrides) -> "RegionSampler":
        cfg = get_config().admissibility
        params = dict(
            rho_range=cfg.rho_range,
            rho_count=cfg.rho_count,
            slack_range=cfg.slack_range,
            slack_count=cfg.slack_count,
            eta_max=cfg.eta_max,
            eta_count=cfg.eta_count,
            xi_max=cfg.xi_max,
            xi_count=cfg.xi_count,
            include_negative_branch=cfg.include_negative_branch,
        )
        params.update(overrides)
        return cls(**params)

    def axes(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """(ρ, s, η, ξ) 各轴的采样值（正分支）"""
        rho = np.geomspace(self.rho_range[0], self.rho_range[1], self.rho_count)
        slack = np.linspace(self.slack_range[0], self.slack_range[1], self.slack_count)
        eta = np.linspace(0.0, self.eta_max, self.eta_count + 1)
        xi = np.linspace(-self.xi_max, self.xi_max, self.xi_count) if self.xi_count > 1 else np.zeros(1)
        return rho, slack, eta, xi

    @property
    def branches(self) -> Tuple[int, ...]:
        return (1, -1) if self.include_negative_branch else (1,)

    @property
    def size(self) -> int:
        return len(self.branches) * self.rho_count * self.slack_count * (self.eta_count + 1) * self.xi_count


@dataclass(frozen=True)
class RegionArrays:
    """展平的格点数组，顺序为 (分支, ρ, s, η, ξ)，ξ 变化最快"""
    rho: np.ndarray
    tau: np.ndarray
    xi: np.ndarray
    eta: np.ndarray

    def __len__(self) -> int:
        return self.rho.size

    def point(self, index: int) -> AdmissiblePoint:
        return AdmissiblePoint(
            float(self.rho[index]), float(self.tau[index]), float(self.xi[index]), float(self.eta[index])
        )

    def env(self):
        return {"rho": self.rho, "tau": self.tau, "xi": self.xi, "eta": self.eta}


def sample_region(cfg: Optional[RegionSampler] = None) -> Iterator[AdmissiblePoint]:
    """逐点产生格点，顺序与 region_arrays 相同"""
    cfg = cfg or RegionSampler.from_config()
    rho_axis, slack_axis, eta_axis, xi_axis = cfg.axes()
    for sign in cfg.branches:
        for rho, slack, eta, xi in itertools.product(rho_axis, slack_axis, eta_axis, xi_axis):
            yield AdmissiblePoint(
                sign * float(rho),
                sign * float(tau_for(rho, slack)),
                float(xi),
                sign * float(eta),
            )


def region_arrays(cfg: Optional[RegionSampler] = None) -> RegionArrays:
    """向量化的格点"""
    cfg = cfg or RegionSampler.from_config()
    rho_axis, slack_axis, eta_axis, xi_axis = cfg.axes()
    rho, slack, eta, xi = np.meshgrid(rho_axis, slack_axis, eta_axis, xi_axis, indexing="ij")
    tau = tau_for(rho, slack)
    parts = [
        tuple(a.reshape(-1) * m for a, m in ((rho, sign), (tau, sign), (xi, 1), (eta, sign)))
        for sign in cfg.branches
    ]
    return RegionArrays(*(np.concatenate(axis) for axis in zip(*parts)))


def re_psi(spec: CriterionSpec, region: RegionArrays, alpha: float, beta: float) -> np.ndarray:
    """Re ψ(iρ, iτ, ξ+iη)"""
    env = {
        "u": 1j * region.rho,
        "v": 1j * region.tau,
        "w": region.xi + 1j * region.eta,
        "a": alpha,
        "b": beta,
    }
    return np.real(spec.psi.evaluate(env))


def verify_admissibility(
    spec: CriterionSpec,
    alpha: float,
    beta: float,
    cfg: Optional[RegionSampler] = None,
    tol: Optional[float] = None,
) -> VerificationReport:
    """
    验证 ψ 在区域上不落入 Ω

    GT 判据报告最大值，max ≤ t + tol 为通过；LT 判据报告最小值，min ≥ t − tol 为通过。

    Raises:
        ParamOutOfDomain: (α, β) 不在判据参数区间内
        RatioAtZero: 采样点处 ρ 或 τ 过小（采样器配置错误）
    """
    spec.check_params(alpha, beta)
    cfg = cfg or RegionSampler.from_config()
    tol = get_config().admissibility.tol if tol is None else tol
    region = region_arrays(cfg)

    re = re_psi(spec, region, alpha, beta)
    formula = np.real(spec.re_formula.evaluate({**region.env(), "a": alpha, "b": beta}))
    t = spec.threshold_value(alpha, beta)

    if spec.direction is Direction.GT:
        idx = int(np.argmax(re))
        passed = bool(re[idx] <= t + tol)
    else:
        idx = int(np.argmin(re))
        passed = bool(re[idx] >= t - tol)

    # 诊断：ξ 方向的变化、分支对称性、与证明公式的差
    xi_spread = float(np.max(np.ptp(re.reshape(-1, cfg.xi_count), axis=1)))
    branch_gap = 0.0
    if cfg.include_negative_branch:
        halves = re.reshape(2, -1)
        branch_gap = float(np.max(np.abs(halves[0] - halves[1])))
    formula_gap = float(np.max(np.abs(re - formula) / np.maximum(1.0, np.abs(re))))

    report = VerificationReport(
        subject=spec.id,
        kind=ADMISSIBILITY,
        passed=passed,
        value=float(re[idx]),
        arg=region.point(idx).as_tuple(),
        samples=len(region),
        alpha=alpha,
        beta=beta,
        threshold=t,
        details={
            "direction": spec.direction.value,
            "xi_spread": xi_spread,
            "branch_gap": branch_gap,
            "formula_gap": formula_gap,
        },
    )
    if not passed:
        logger.warning(f"{spec.id} (alpha={alpha:g}, beta={beta:g}) is not admissible: extremum {re[idx]:.6g} vs {t:g}")
    return report


@dataclass(frozen=True)
class BoundarySupremum:
    value: float
    arg: AdmissiblePoint
    samples: int


def boundary_supremum(
    spec: CriterionSpec,
    alpha: float,
    beta: float,
    cfg: Optional[RegionSampler] = None,
    points: Optional[int] = None,
) -> BoundarySupremum:
    """
    估计 Re ψ 在区域上的上确界：约束边界面 s=1, η=0, ξ=0 上按几何分布加密 ρ，再与整个格点取最大

    Raises:
        DomainError: 判据方向不是 GT
    """
    if spec.direction is not Direction.GT:
        raise DomainError(f"{spec.id} has direction LT; the supremum is only reported for GT criteria")
    spec.check_params(alpha, beta)
    cfg = cfg or RegionSampler.from_config()
    points = points or get_config().admissibility.boundary_points

    rho = np.geomspace(cfg.rho_range[0], cfg.rho_range[1], points)
    signs = np.repeat(np.asarray(cfg.branches, dtype=float), points)
    rho = np.tile(rho, len(cfg.branches)) * signs
    face = RegionArrays(rho=rho, tau=tau_for(rho, 1.0), xi=np.zeros_like(rho), eta=np.zeros_like(rho))

    best_value, best_arg, total = -math.inf, None, 0
    for region in (face, region_arrays(cfg)):
        re = re_psi(spec, region, alpha, beta)
        idx = int(np.argmax(re))
        total += len(region)
        if re[idx] > best_value:
            best_value, best_arg = float(re[idx]), region.point(idx)
    return BoundarySupremum(value=best_value, arg=best_arg, samples=total)


@dataclass(frozen=True)
class SweepAxis:
    """参数扫描点；truncated 表示无界区间被截断"""
    values: Tuple[float, ...]
    truncated: bool


def parameter_sweep(interval: Interval, n: int, truncation: Optional[float] = None) -> SweepAxis:
    """
    在区间内取 n 个等距点：闭端点包含在内，开端点排除，无界一侧截断到 ±truncation
    """
    if n < 1:
        raise ConfigError("sweep needs at least one point")
    truncation = get_config().admissibility.truncation if truncation is None else truncation
    lo_inf, hi_inf = math.isinf(interval.lo), math.isinf(interval.hi)
    lo = -truncation if lo_inf else interval.lo
    hi = truncation if hi_inf else interval.hi
    # 截断后的端点视为闭端点
    lo_open = not lo_inf and not interval.lo_closed
    hi_open = not hi_inf and not interval.hi_closed

    if lo == hi:
        values = np.array([lo])
    else:
        values = np.linspace(lo, hi, n + int(lo_open) + int(hi_open))
        if lo_open:
            values = values[1:]
        if hi_open:
            values = values[:-1]
    return SweepAxis(values=tuple(float(x) for x in values), truncated=lo_inf or hi_inf)


def sweep_admissibility(
    spec: CriterionSpec,
    cfg: Optional[RegionSampler] = None,
    points: Optional[int] = None,
    workers: Optional[int] = None,
) -> List[VerificationReport]:
    """
    在 α × β 扫描网格上逐点验证，结果按 (α, β) 的字典序排列
    """
    settings = get_config().admissibility
    points = points or settings.sweep_points
    cfg = cfg or RegionSampler.from_config()
    alphas = parameter_sweep(spec.alpha_domain, points)
    betas = parameter_sweep(spec.beta_domain, points)
    pairs = list(itertools.product(alphas.values, betas.values))

    def run(pair):
        report = verify_admissibility(spec, pair[0], pair[1], cfg)
        details = dict(report.details)
        details.update(alpha_truncated=alphas.truncated, beta_truncated=betas.truncated)
        return replace(report, details=details)

    reports = ordered_map(run, pairs, workers)
    failed = sum(not r.passed for r in reports)
    logger.info(f"{spec.id}: {len(reports) - failed}/{len(reports)} parameter pairs admissible")
    return reports
