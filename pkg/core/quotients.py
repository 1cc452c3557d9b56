"""
商函数计算模块
计算 Q_ST = zf'/f、Q_CV = 1 + zf''/f' 与 Q_SD = z²{f,z}，并提供带闭式表达的参考函数库

该模块提供：
- QuotientTriple: 单点处的 (u, v, w) = (Q_ST, Q_CV, Q_SD)
- QuotientGrid: 一组采样点上的 (u, v, w) 数组
- ClosedForms / ReferenceFunction: 参考函数的闭式表达与已知性质
- quotient_series / quotient_triple / quotient_grid: 级数构造与求值
- reference_zoo / resolve_function: 参考函数库与函数说明解析

Features:
- 每个函数只做一次级数除法，之后逐点 Horner 求值
- 超出精度半径 r_N 时改用截断多项式的直接求值
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple, Union

import numpy as np

from .config import get_config
from .exceptions import ConfigError, DomainError
from .series import ComplexSeries, TaylorFunction, derive, divide, evaluate, multiply

logger = logging.getLogger(__name__)

ComplexFn = Callable[[np.ndarray], np.ndarray]

# 求值方式
METHODS = ("auto", "series", "direct", "exact")

# 已知性质
STARLIKE = "starlike"
CONVEX = "convex"
NOT_STARLIKE = "not-starlike"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class QuotientTriple:
    """单点处的三个商

    Attributes:
        u: Q_ST 的值
        v: Q_CV 的值
        w: Q_SD 的值
        at: 圆盘内的点 z
        accurate: |z| 是否在级数精度半径之内
    """
    u: complex
    v: complex
    w: complex
    at: complex = 0j
    accurate: bool = True


@dataclass(frozen=True)
class QuotientGrid:
    """一组点上的商，数组形状与 points 相同"""
    points: np.ndarray
    u: np.ndarray
    v: np.ndarray
    w: np.ndarray


@dataclass(frozen=True)
class QuotientSeries:
    """三个商的泰勒级数及其精度半径"""
    qst: ComplexSeries
    qcv: ComplexSeries
    qsd: ComplexSeries
    radius: float


@dataclass(frozen=True)
class ClosedForms:
    """闭式表达，所有函数都接受复数数组"""
    f: ComplexFn
    df: ComplexFn
    qst: ComplexFn
    qcv: ComplexFn
    qsd: ComplexFn


@dataclass(frozen=True)
class ReferenceFunction:
    """参考函数

    Attributes:
        id: 名称
        taylor: 截断泰勒展开（附带闭式表达）
        closed: 闭式表达
        known_status: starlike / convex / not-starlike / unknown 之一
    """
    id: str
    taylor: TaylorFunction
    closed: ClosedForms
    known_status: str


# ==================== 级数构造 ====================

def quotient_series(f: TaylorFunction) -> Tuple[ComplexSeries, ComplexSeries, ComplexSeries]:
    """
    构造 Q_ST、Q_CV、Q_SD 的泰勒级数

    Q_ST = f' ÷ (f/z)，Q_CV = 1 + z·(f'' ÷ f')，P = f'' ÷ f'，Q_SD = z²·(P' − P²/2)

    截断自无穷展开的函数只确定到 N−1 阶，N 阶系数置零。
    """
    qs = _series_for(f)
    return qs.qst, qs.qcv, qs.qsd


def _series_for(f: TaylorFunction) -> QuotientSeries:
    return _cached_series(f.fingerprint, f.order, f.truncated)


@lru_cache(maxsize=256)
def _cached_series(fingerprint: bytes, order: int, truncated: bool) -> QuotientSeries:
    coeffs = np.frombuffer(fingerprint, dtype=np.complex128)
    s = ComplexSeries(coeffs)
    d1 = derive(s)
    d2 = derive(d1)

    qst = divide(d1, s.shift_down(1))
    p = divide(d2, d1)
    qcv = ComplexSeries.constant(1.0, order) + p.shift_up(1)
    schwarz = derive(p) - multiply(p, p).scale(0.5)
    qsd = schwarz.shift_up(2)

    # 截断展开缺少 a_{N+1}，三个商的 N 阶系数不确定
    if truncated:
        qst, qcv, qsd = qst.head(order - 1), qcv.head(order - 1), qsd.head(order - 1)

    radius = min(accuracy_radius(qst), accuracy_radius(qcv), accuracy_radius(qsd))
    logger.debug(f"Quotient series built at order {order}, accuracy radius {radius:.4f}")
    return QuotientSeries(qst=qst, qcv=qcv, qsd=qsd, radius=radius)


def accuracy_radius(s: ComplexSeries, tol: Optional[float] = None) -> float:
    """
    由系数增长估计精度半径 r_N：r_N = (tol / M)^(1/N)，M 为高半段系数的最大模
    """
    tol = get_config().quotients.accuracy_tol if tol is None else tol
    upper = s.coeffs[s.order // 2:]
    m = float(np.max(np.abs(upper))) if upper.size else 0.0
    if m <= tol:
        return 0.999
    return float(min(0.999, (tol / m) ** (1.0 / max(s.order, 1))))


# ==================== 逐点求值 ====================

def quotient_triple(f: TaylorFunction, z: complex) -> QuotientTriple:
    """
    在单点 z 处求三个商的级数值

    Raises:
        DomainError: |z| >= 1
    """
    z = complex(z)
    if abs(z) >= 1:
        raise DomainError(f"Point {z} is outside the unit disk")
    if abs(z) < get_config().quotients.near_zero:
        return QuotientTriple(u=1 + 0j, v=1 + 0j, w=0j, at=z, accurate=True)

    qs = _series_for(f)
    return QuotientTriple(
        u=evaluate(qs.qst, z),
        v=evaluate(qs.qcv, z),
        w=evaluate(qs.qsd, z),
        at=z,
        accurate=abs(z) <= qs.radius,
    )


def quotient_grid(
    f: TaylorFunction,
    points: Union[np.ndarray, List[complex]],
    method: str = "auto",
) -> QuotientGrid:
    """
    在一组点上求三个商

    Args:
        f: 规范化函数
        points: 圆盘内的点
        method: "series" 级数求值；"direct" 截断多项式的 f, f', f'', f''' 直接组合；
                "exact" 使用闭式表达；"auto" 优先闭式，其次在 r_N 内用级数、r_N 外直接求值

    Raises:
        DomainError: 存在 |z| >= 1 的点
    """
    if method not in METHODS:
        raise ConfigError(f"Unknown quotient method {method!r}; expected one of {METHODS}")
    z = np.asarray(points, dtype=np.complex128)
    if z.size and np.max(np.abs(z)) >= 1:
        raise DomainError("Quotients are only defined inside the unit disk")

    if method == "exact" or (method == "auto" and f.exact is not None):
        if f.exact is None:
            raise ConfigError(f"No closed forms attached to {f.describe()}")
        u, v, w = _exact_values(f.exact, z)
    elif method == "series":
        u, v, w = _series_values(f, z)
    elif method == "direct":
        u, v, w = _direct_values(f, z)
    else:
        radius = _series_for(f).radius
        inside = np.abs(z) <= radius
        u = np.empty_like(z)
        v = np.empty_like(z)
        w = np.empty_like(z)
        if np.any(inside):
            u[inside], v[inside], w[inside] = _series_values(f, z[inside])
        if np.any(~inside):
            u[~inside], v[~inside], w[~inside] = _direct_values(f, z[~inside])

    # 原点附近使用精确极限
    origin = np.abs(z) < get_config().quotients.near_zero
    if np.any(origin):
        u = np.where(origin, 1 + 0j, u)
        v = np.where(origin, 1 + 0j, v)
        w = np.where(origin, 0j, w)
    return QuotientGrid(points=z, u=u, v=v, w=w)


def _series_values(f: TaylorFunction, z: np.ndarray):
    qs = _series_for(f)
    return evaluate(qs.qst, z), evaluate(qs.qcv, z), evaluate(qs.qsd, z)


def _direct_values(f: TaylorFunction, z: np.ndarray):
    """截断多项式的逐点组合，Q_SD = z²(f'''/f' − 3/2·(f''/f')²)"""
    s = f.series
    d1 = derive(s)
    d2 = derive(d1)
    d3 = derive(d2)
    fz = evaluate(f.over_z(), z)
    f1 = evaluate(d1, z)
    f2 = evaluate(d2, z)
    f3 = evaluate(d3, z)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = f2 / f1
        u = f1 / fz
        v = 1 + z * ratio
        w = z * z * (f3 / f1 - 1.5 * ratio * ratio)
    return u, v, w


def _exact_values(closed: ClosedForms, z: np.ndarray):
    with np.errstate(divide="ignore", invalid="ignore"):
        return closed.qst(z), closed.qcv(z), closed.qsd(z)


# ==================== 参考函数库 ====================

def _taylor(coeffs: np.ndarray, label: str, truncated: bool, closed: ClosedForms) -> TaylorFunction:
    return TaylorFunction(
        ComplexSeries(coeffs), label=label, truncated=truncated, exact=closed
    )


def identity(order: Optional[int] = None) -> ReferenceFunction:
    """恒等映射 f(z) = z"""
    order = order or get_config().quotients.zoo_order
    coeffs = np.zeros(order + 1, dtype=np.complex128)
    coeffs[1] = 1
    closed = ClosedForms(
        f=lambda z: z,
        df=lambda z: np.ones_like(z),
        qst=lambda z: np.ones_like(z),
        qcv=lambda z: np.ones_like(z),
        qsd=lambda z: np.zeros_like(z),
    )
    return ReferenceFunction("identity", _taylor(coeffs, "identity", False, closed), closed, CONVEX)


def koebe(order: Optional[int] = None) -> ReferenceFunction:
    """Koebe 函数 z/(1−z)²，系数 a_n = n"""
    order = order or get_config().quotients.zoo_order
    coeffs = np.arange(order + 1, dtype=np.complex128)
    closed = ClosedForms(
        f=lambda z: z / (1 - z) ** 2,
        df=lambda z: (1 + z) / (1 - z) ** 3,
        qst=lambda z: (1 + z) / (1 - z),
        qcv=lambda z: (1 + 4 * z + z * z) / (1 - z * z),
        qsd=lambda z: -6 * z * z / (1 - z * z) ** 2,
    )
    return ReferenceFunction("koebe", _taylor(coeffs, "koebe", True, closed), closed, STARLIKE)


def mobius(c: complex, order: Optional[int] = None, name: Optional[str] = None) -> ReferenceFunction:
    """Möbius 映射 z/(1−cz)，系数 a_n = c^{n−1}；|c| ≤ 1 时为凸函数"""
    order = order or get_config().quotients.zoo_order
    c = complex(c)
    coeffs = np.zeros(order + 1, dtype=np.complex128)
    coeffs[1:] = c ** np.arange(order)
    closed = ClosedForms(
        f=lambda z: z / (1 - c * z),
        df=lambda z: 1 / (1 - c * z) ** 2,
        qst=lambda z: 1 / (1 - c * z),
        qcv=lambda z: (1 + c * z) / (1 - c * z),
        qsd=lambda z: np.zeros_like(z),
    )
    status = CONVEX if abs(c) <= 1 else UNKNOWN
    label = name or f"mobius:{_fmt(c)}"
    return ReferenceFunction(label, _taylor(coeffs, label, c != 0, closed), closed, status)


def halfplane(order: Optional[int] = None) -> ReferenceFunction:
    """半平面映射 z/(1−z)"""
    return mobius(1.0, order, name="halfplane")


def monomial(n: int, a: complex, order: Optional[int] = None, name: Optional[str] = None) -> ReferenceFunction:
    """
    f(z) = z + a z^n (n ≥ 2)

    记 t = a z^{n−1}：Q_ST = (1+nt)/(1+t)，Q_CV = (1+n²t)/(1+nt)，
    Q_SD = [n(n−1)(n−2)t(1+nt) − 3/2·n²(n−1)²t²]/(1+nt)²。
    |a| ≤ 1/n² 时为凸函数，|a| ≤ 1/n 时为星像函数，否则不是星像函数。
    """
    if n < 2:
        raise ConfigError(f"Monomial perturbation needs n >= 2, got {n}")
    order = max(order or get_config().quotients.zoo_order, n)
    a = complex(a)
    coeffs = np.zeros(order + 1, dtype=np.complex128)
    coeffs[1] = 1
    coeffs[n] += a

    def t_of(z):
        return a * z ** (n - 1)

    def qsd(z):
        t = t_of(z)
        num = n * (n - 1) * (n - 2) * t * (1 + n * t) - 1.5 * (n * (n - 1)) ** 2 * t * t
        return num / (1 + n * t) ** 2

    closed = ClosedForms(
        f=lambda z: z + a * z ** n,
        df=lambda z: 1 + n * a * z ** (n - 1),
        qst=lambda z: (1 + n * t_of(z)) / (1 + t_of(z)),
        qcv=lambda z: (1 + n * n * t_of(z)) / (1 + n * t_of(z)),
        qsd=qsd,
    )
    if abs(a) <= 1 / n ** 2:
        status = CONVEX
    elif abs(a) <= 1 / n:
        status = STARLIKE
    else:
        status = NOT_STARLIKE
    label = name or f"mono:{n}:{_fmt(a)}"
    return ReferenceFunction(label, _taylor(coeffs, label, False, closed), closed, status)


def quadratic(a: complex, order: Optional[int] = None) -> ReferenceFunction:
    """f(z) = z + a z²"""
    return monomial(2, a, order, name=f"quad:{_fmt(complex(a))}")


def reference_zoo() -> List[ReferenceFunction]:
    """参考函数库（默认成员）"""
    return [
        identity(),
        koebe(),
        halfplane(),
        mobius(0.5),
        quadratic(0.2),
        quadratic(0.4),
        quadratic(0.6),
        monomial(3, 0.1),
        monomial(3, 0.3),
        monomial(3, 0.5),
    ]


def _fmt(c: complex) -> str:
    if c.imag == 0:
        return f"{c.real:g}"
    return f"{c.real:g}{c.imag:+g}i"


def parse_complex(text: str) -> complex:
    """解析 "re" 或 "re+imi" 形式的复数"""
    cleaned = text.strip().replace(" ", "")
    if not cleaned:
        raise ConfigError("Empty coefficient")
    try:
        return complex(cleaned.replace("i", "j"))
    except ValueError:
        raise ConfigError(f"Cannot read {text!r} as a complex number") from None


def parse_coeffs(text: str) -> TaylorFunction:
    """
    解析逗号分隔的系数（从下标 0 开始），并检查规范化条件

    Raises:
        ConfigError: 格式错误或 c_0 ≠ 0、c_1 ≠ 1
        DomainError: 系数不是有限数
    """
    values = [parse_complex(part) for part in text.split(",")]
    if len(values) < 2:
        raise ConfigError("Coefficient list must start with c_0 = 0 and c_1 = 1")
    return TaylorFunction.from_coeffs(values, label=f"coeffs:{text.strip()}")


# 命名函数
_NAMED: Dict[str, Callable[[], ReferenceFunction]] = {
    "identity": identity,
    "koebe": koebe,
    "halfplane": halfplane,
}


def resolve_function(spec: str) -> TaylorFunction:
    """
    由函数说明得到 TaylorFunction

    支持：identity、koebe、halfplane、quad:<a>、mono:<n>:<a>、mobius:<c>

    Raises:
        ConfigError: 未知名称或参数格式错误
    """
    return resolve_reference(spec).taylor


def resolve_reference(spec: str) -> ReferenceFunction:
    """由函数说明得到参考函数"""
    name = spec.strip().lower()
    if name in _NAMED:
        return _NAMED[name]()
    head, _, rest = name.partition(":")
    try:
        if head == "quad" and rest:
            return quadratic(parse_complex(rest))
        if head == "mobius" and rest:
            return mobius(parse_complex(rest))
        if head == "mono" and rest:
            n_text, _, a_text = rest.partition(":")
            return monomial(int(n_text), parse_complex(a_text))
    except ValueError:
        pass
    raise ConfigError(
        f"Unknown function {spec!r}; use identity, koebe, halfplane, quad:<a>, mono:<n>:<a> or mobius:<c>"
    )
