"""
统一配置管理模块
集中管理所有路径、数值常量和运行设置

该模块提供：
- PathConfig: 路径配置，管理判据目录数据与文本模板
- SeriesConfig: 截断幂级数配置
- QuotientConfig: 商函数 (Q_ST, Q_CV, Q_SD) 计算配置
- CriterionGridConfig: 判据假设检验所用的圆盘网格
- OracleConfig: 星像性直接采样判定配置
- AdmissibilityConfig: 可容许条件区域采样配置
- SearchConfig: 随机函数语料库蕴含检验配置
- RuntimeConfig: 运行时配置（并行线程数）
- Config: 全局配置管理器（单例模式）
"""
import json
import logging
import os
from pathlib import Path
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

# 配置日志
logger = logging.getLogger(__name__)

# 获取项目根目录
ROOT_DIR = Path(__file__).parent.parent

# 限制并行线程数的环境变量
THREADS_ENV = "STARLIKE_THREADS"


@dataclass
class PathConfig:
    """路径配置"""
    root: Path = field(default_factory=lambda: ROOT_DIR)

    @property
    def config(self) -> Path:
        return self.root / "config"

    @property
    def criteria(self) -> Path:
        return self.config / "criteria.json"

    @property
    def templates(self) -> Path:
        return self.root / "templates"


@dataclass
class SeriesConfig:
    """截断幂级数配置

    Attributes:
        order: 默认截断阶数 N
        pivot_tol: 除法时除数常数项的最小模
    """
    order: int = 64
    pivot_tol: float = 1e-12


@dataclass
class QuotientConfig:
    """商函数计算配置

    Attributes:
        near_zero: |z| 小于该值时直接返回原点处的极限 (1, 1, 0)
        accuracy_tol: 估计精度半径 r_N 时允许的级数尾项
        zoo_order: 参考函数库中无穷级数函数的截断阶数
    """
    near_zero: float = 1e-8
    accuracy_tol: float = 1e-10
    zoo_order: int = 400


@dataclass
class CriterionGridConfig:
    """判据假设检验网格：几何分布的半径 × 等分角度"""
    r_min: float = 0.05
    r_max: float = 0.995
    radii_count: int = 64
    angles: int = 256
    ratio_tol: float = 1e-12


@dataclass
class OracleConfig:
    """直接采样判定配置"""
    radii: Tuple[float, ...] = (0.1, 0.3, 0.5, 0.7, 0.85, 0.95, 0.99, 0.995)
    angles: int = 512
    margin_tol: float = 1e-6
    newton_steps: int = 30


@dataclass
class AdmissibilityConfig:
    """可容许条件区域采样配置

    Attributes:
        rho_range: ρ 的几何采样范围（正分支）
        rho_count: ρ 采样点数，保证单个格点集合不少于 10^5 个点
        slack_range: τ = s·(1+3ρ²)/(2ρ) 中松弛因子 s 的范围
        eta_max: η 的上界（η=0 总是包含在内）
        xi_max: ξ 的采样范围 [-xi_max, xi_max]
        tol: 阈值比较的绝对容差
        sweep_points: 每个参数方向上的扫描点数
        truncation: 无界参数区间的截断值
        boundary_points: 边界面 s=1, η=0 上的加密采样点数
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
    tol: float = 1e-9
    sweep_points: int = 8
    truncation: float = 4.0
    boundary_points: int = 4096


@dataclass
class SearchConfig:
    """随机语料库配置"""
    count: int = 1000
    degree: int = 6
    min_degree: int = 2
    coeff_bound: float = 0.4
    seed: int = 7
    sweep_points: int = 4


@dataclass
class RuntimeConfig:
    """运行时配置"""
    workers: int = 1


class Config:
    """
    全局配置管理器
    单例模式，确保全局只有一个配置实例
    """
    _instance: Optional['Config'] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._initialized = False
        return cls._instance

    def __init__(self):
        if self._initialized:
            return

        self.paths = PathConfig()
        self.series = SeriesConfig()
        self.quotients = QuotientConfig()
        self.criterion_grid = CriterionGridConfig()
        self.oracle = OracleConfig()
        self.admissibility = AdmissibilityConfig()
        self.search = SearchConfig()
        self.runtime = RuntimeConfig(workers=self._read_workers())

        # 判据目录数据，延迟加载
        self._criteria: Optional[Dict] = None

        self._initialized = True

    @classmethod
    def reset(cls) -> None:
        """丢弃当前实例（环境变量变化后重新读取）"""
        global _config
        cls._instance = None
        _config = None

    @property
    def criteria(self) -> Dict:
        """延迟加载判据目录数据"""
        if self._criteria is None:
            self._criteria = self._load_json(self.paths.criteria)
        return self._criteria

    def _read_workers(self) -> int:
        """线程数上限：环境变量优先，否则取 CPU 核数"""
        default = os.cpu_count() or 1
        raw = os.getenv(THREADS_ENV, "").strip()
        if not raw:
            return default
        try:
            workers = int(raw)
        except ValueError:
            logger.warning(f"Ignoring {THREADS_ENV}={raw!r}: not an integer")
            return default
        if workers < 1:
            logger.warning(f"Ignoring {THREADS_ENV}={raw!r}: must be positive")
            return default
        return workers

    def _load_json(self, path: Path) -> Dict:
        """安全加载 JSON 文件

        Args:
            path: JSON 文件路径

        Returns:
            解析后的字典，如果加载失败返回空字典
        """
        try:
            with open(path, 'r', encoding='utf-8') as f:
                return json.load(f)
        except FileNotFoundError:
            logger.warning(f"Config file not found: {path}")
            return {}
        except json.JSONDecodeError as e:
            logger.warning(f"Invalid JSON in {path}: {e}")
            return {}


# 全局配置获取函数
_config: Optional[Config] = None

def get_config() -> Config:
    """获取全局配置实例"""
    global _config
    if _config is None:
        _config = Config()
    return _config
