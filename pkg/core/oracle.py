"""
直接采样判定
在圆盘网格上求 Re Q_ST、Re Q_CV 的最小值（可带阶 γ），以及 f(z)f'(z)/z ≠ 0 前提条件的检查

"holds" 只表示在给定分辨率下没有发现反例，不是证明。
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .config import get_config
from .exceptions import DomainError
from .quotients import quotient_grid
from .report import FAILS, HOLDS, INCONCLUSIVE
from .series import TaylorFunction, derive, evaluate

logger = logging.getLogger(__name__)

MIN_ANGLES = 8


@dataclass(frozen=True)
class DiskGrid:
    """
    极坐标网格：radii × angles，点按半径优先排列，θ_k = 2πk/angles

    Attributes:
        radii: 严格递增的半径，全部在 (0, 1) 内
        angles: 角度等分数（不少于 8）
    """
    radii: Tuple[float, ...]
    angles: int

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        object.__setattr__(self, "radii", radii)
        if not radii:
            raise DomainError("Disk grid needs at least one radius")
        if radii[0] <= 0 or radii[-1] >= 1:
            raise DomainError(f"Grid radii must lie in (0, 1), got {radii[0]:g}..{radii[-1]:g}")
        if any(b <= a for a, b in zip(radii, radii[1:])):
            raise DomainError("Grid radii must be strictly increasing")
        if self.angles < MIN_ANGLES:
            raise DomainError(f"Grid needs at least {MIN_ANGLES} angles, got {self.angles}")

    @classmethod
    def geometric(cls, r_min: float, r_max: float, count: int, angles: int) -> "DiskGrid":
        return cls(tuple(np.geomspace(r_min, r_max, count)), angles)

    @property
    def r_max(self) -> float:
        return self.radii[-1]

    @property
    def size(self) -> int:
        return len(self.radii) * self.angles

    def polar(self) -> Tuple[np.ndarray, np.ndarray]:
        """展平后的 (r, θ)"""
        theta = 2 * np.pi * np.arange(self.angles) / self.angles
        r, t = np.meshgrid(np.asarray(self.radii), theta, indexing="ij")
        return r.reshape(-1), t.reshape(-1)

    def points(self) -> np.ndarray:
        r, theta = self.polar()
        return r * np.exp(1j * theta)

    def refine(self) -> "DiskGrid":
        """角度加倍，新网格包含原网格的全部点"""
        return DiskGrid(self.radii, self.angles * 2)


@dataclass(frozen=True)
class OracleVerdict:
    """
    采样最小值及结论

    verdict 为 holds（min_value > margin_tol）、fails（min_value < −margin_tol）或 inconclusive
    """
    min_value: float
    arg_min: complex
    verdict: str
    margin_tol: float
    samples: int = 0

    @classmethod
    def classify(cls, min_value: float, arg_min: complex, margin_tol: float, samples: int = 0) -> "OracleVerdict":
        if min_value > margin_tol:
            verdict = HOLDS
        elif min_value < -margin_tol:
            verdict = FAILS
        else:
            verdict = INCONCLUSIVE
        return cls(float(min_value), complex(arg_min), verdict, margin_tol, samples)

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def to_record(self):
        return {
            "min_value": self.min_value,
            "arg_re": self.arg_min.real,
            "arg_im": self.arg_min.imag,
            "verdict": self.verdict,
            "margin_tol": self.margin_tol,
            "samples": self.samples,
        }


def default_grid() -> DiskGrid:
    """判定默认网格"""
    cfg = get_config().oracle
    return DiskGrid(cfg.radii, cfg.angles)


def criterion_grid() -> DiskGrid:
    """判据检验默认网格：几何分布的半径"""
    cfg = get_config().criterion_grid
    return DiskGrid.geometric(cfg.r_min, cfg.r_max, cfg.radii_count, cfg.angles)


def _check_order(gamma: float) -> None:
    if not 0 <= gamma < 1:
        raise DomainError(f"Order gamma must lie in [0, 1), got {gamma:g}")


def min_real_part(values: np.ndarray, points: np.ndarray, margin_tol: Optional[float] = None) -> OracleVerdict:
    """对一组复数值取实部最小值；非有限值视为 −inf"""
    tol = get_config().oracle.margin_tol if margin_tol is None else margin_tol
    re = np.where(np.isfinite(values), np.real(values), -np.inf)
    idx = int(np.argmin(re))
    return OracleVerdict.classify(re[idx], points[idx], tol, re.size)


def min_re_qst(
    f: TaylorFunction,
    grid: Optional[DiskGrid] = None,
    gamma: float = 0.0,
    margin_tol: Optional[float] = None,
) -> OracleVerdict:
    """
    min over grid of (Re Q_ST − γ)；γ = 0 即星像性

    Raises:
        DomainError: γ 不在 [0, 1) 内
    """
    _check_order(gamma)
    grid = grid or default_grid()
    qg = quotient_grid(f, grid.points())
    verdict = min_real_part(qg.u - gamma, qg.points, margin_tol)
    logger.debug(f"min Re Q_ST for {f.describe()}: {verdict.min_value:.6g} at {verdict.arg_min:.4g}")
    return verdict


def min_re_qcv(
    f: TaylorFunction,
    grid: Optional[DiskGrid] = None,
    gamma: float = 0.0,
    margin_tol: Optional[float] = None,
) -> OracleVerdict:
    """min over grid of (Re Q_CV − γ)；γ = 0 即凸性"""
    _check_order(gamma)
    grid = grid or default_grid()
    qg = quotient_grid(f, grid.points())
    verdict = min_real_part(qg.v - gamma, qg.points, margin_tol)
    logger.debug(f"min Re Q_CV for {f.describe()}: {verdict.min_value:.6g} at {verdict.arg_min:.4g}")
    return verdict


def nonvanishing_check(
    f: TaylorFunction,
    grid: Optional[DiskGrid] = None,
    margin_tol: Optional[float] = None,
) -> OracleVerdict:
    """
    min over grid of min(|f(z)/z|, |f'(z)|)，模值检查：大于 margin_tol 为 holds，否则 fails

    f 就是多项式本身（非截断）时，从采样最小点出发对 f/z 与 f' 做 Newton 迭代，
    若收敛到 r_max 以内的零点则以该点的模值为准。
    """
    cfg = get_config().oracle
    tol = cfg.margin_tol if margin_tol is None else margin_tol
    grid = grid or default_grid()
    z = grid.points()

    if f.exact is not None:
        with np.errstate(divide="ignore", invalid="ignore"):
            g0 = f.exact.f(z) / z
            g1 = f.exact.df(z)
    else:
        g0 = evaluate(f.over_z(), z)
        g1 = evaluate(derive(f.series), z)

    mags = np.minimum(np.abs(g0), np.abs(g1))
    mags = np.where(np.isfinite(mags), mags, 0.0)
    idx = int(np.argmin(mags))
    min_value, arg = float(mags[idx]), complex(z[idx])

    if not f.truncated:
        starts = (complex(z[int(np.argmin(np.abs(g0)))]), complex(z[int(np.argmin(np.abs(g1)))]))
        for series, start in zip((f.over_z(), derive(f.series)), starts):
            root = _polish_zero(series.coeffs, start, cfg.newton_steps)
            if root is None or abs(root) > grid.r_max:
                continue
            modulus = abs(evaluate(series, root))
            if modulus < min_value:
                min_value, arg = modulus, root
                logger.debug(f"Polished zero of {f.describe()} at {root:.6g}")

    if min_value > tol:
        verdict = HOLDS
    else:
        verdict = FAILS
    return OracleVerdict(min_value, arg, verdict, tol, grid.size)


def _polish_zero(coeffs: Sequence[complex], start: complex, steps: int) -> Optional[complex]:
    """多项式的 Newton 迭代，不收敛时返回 None"""
    c = np.trim_zeros(np.asarray(coeffs, dtype=np.complex128), "b")
    if c.size < 2:
        return None
    dc = np.polynomial.polynomial.polyder(c)
    z = complex(start)
    for _ in range(steps):
        value = np.polynomial.polynomial.polyval(z, c)
        slope = np.polynomial.polynomial.polyval(z, dc)
        if slope == 0:
            return None
        step = value / slope
        z -= step
        if abs(step) < 1e-15 * max(1.0, abs(z)):
            return complex(z)
    final = abs(np.polynomial.polynomial.polyval(z, c))
    return complex(z) if final < 1e-12 else None
