"""
截断复幂级数运算
为 f'、f''、f/z 以及商函数和施瓦茨组合提供足够的级数算术

该模块提供：
- ComplexSeries: 截断到 N 阶的复系数幂级数（不可变）
- TaylorFunction: 规范化解析函数 f(0) = f'(0) - 1 = 0 的截断泰勒展开
- derive / multiply / divide / evaluate: 级数的求导、乘法、除法与求值
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Optional, Sequence, Union

import numpy as np
from numpy.polynomial import polynomial as P

from .config import get_config
from .exceptions import ConfigError, DomainError, ZeroConstantTerm

if TYPE_CHECKING:
    from .quotients import ClosedForms

logger = logging.getLogger(__name__)

# 规范化检查容差
NORMALIZATION_TOL = 1e-12

Scalar = Union[complex, float]


@dataclass(frozen=True)
class ComplexSeries:
    """截断复幂级数 c_0 + c_1 z + ... + c_N z^N

    Attributes:
        coeffs: 系数数组，下标 k 对应 z^k 的系数，长度恰为 N+1，只读
    """
    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.array(self.coeffs, dtype=np.complex128).reshape(-1)
        if arr.size < 1:
            raise ValueError("series needs at least one coefficient")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @classmethod
    def from_coeffs(cls, values: Iterable[Scalar], order: Optional[int] = None) -> "ComplexSeries":
        """由系数列表构造，按需补零或截断到 order 阶"""
        arr = np.asarray(list(values), dtype=np.complex128)
        if order is None:
            return cls(arr)
        out = np.zeros(order + 1, dtype=np.complex128)
        n = min(arr.size, order + 1)
        out[:n] = arr[:n]
        return cls(out)

    @classmethod
    def constant(cls, value: Scalar, order: int) -> "ComplexSeries":
        out = np.zeros(order + 1, dtype=np.complex128)
        out[0] = value
        return cls(out)

    @classmethod
    def identity(cls, order: int) -> "ComplexSeries":
        """级数 z"""
        out = np.zeros(order + 1, dtype=np.complex128)
        if order >= 1:
            out[1] = 1.0
        return cls(out)

    def __add__(self, other: "ComplexSeries") -> "ComplexSeries":
        _check_orders(self, other)
        return ComplexSeries(self.coeffs + other.coeffs)

    def __sub__(self, other: "ComplexSeries") -> "ComplexSeries":
        _check_orders(self, other)
        return ComplexSeries(self.coeffs - other.coeffs)

    def scale(self, factor: Scalar) -> "ComplexSeries":
        return ComplexSeries(self.coeffs * factor)

    def shift_up(self, k: int = 1) -> "ComplexSeries":
        """乘以 z^k，超出 N 阶的部分丢弃"""
        out = np.zeros_like(self.coeffs)
        if k <= self.order:
            out[k:] = self.coeffs[:self.order + 1 - k]
        return ComplexSeries(out)

    def shift_down(self, k: int = 1) -> "ComplexSeries":
        """除以 z^k（要求低 k 项为零），高位补零"""
        out = np.zeros_like(self.coeffs)
        out[:self.order + 1 - k] = self.coeffs[k:]
        return ComplexSeries(out)

    def head(self, n: int) -> "ComplexSeries":
        """只保留 0..n 阶，更高项置零，阶数不变"""
        out = np.zeros_like(self.coeffs)
        n = min(max(n, -1), self.order)
        out[:n + 1] = self.coeffs[:n + 1]
        return ComplexSeries(out)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeffs)))


def _check_orders(a: ComplexSeries, b: ComplexSeries) -> None:
    if a.order != b.order:
        raise ValueError(f"Truncation orders differ: {a.order} vs {b.order}")


def derive(s: ComplexSeries) -> ComplexSeries:
    """逐项求导：结果第 k 项为 (k+1)·c_{k+1}，最高项补零以保持阶数 N"""
    out = np.zeros_like(s.coeffs)
    if s.order >= 1:
        out[:-1] = P.polyder(s.coeffs)
    return ComplexSeries(out)


def multiply(a: ComplexSeries, b: ComplexSeries) -> ComplexSeries:
    """柯西乘积，截断到 N 阶"""
    _check_orders(a, b)
    return ComplexSeries(np.convolve(a.coeffs, b.coeffs)[:a.order + 1])


def divide(a: ComplexSeries, b: ComplexSeries, pivot_tol: Optional[float] = None) -> ComplexSeries:
    """
    级数长除法 q = a / b，满足 multiply(q, b) = a（到 N 阶）

    Raises:
        ZeroConstantTerm: |b_0| 小于除法主元容差
    """
    _check_orders(a, b)
    tol = get_config().series.pivot_tol if pivot_tol is None else pivot_tol
    b0 = b.coeffs[0]
    if abs(b0) < tol:
        raise ZeroConstantTerm(f"Divisor constant term {abs(b0):.3e} is below {tol:.1e}")

    n = a.order + 1
    q = np.zeros(n, dtype=np.complex128)
    # 递推：q_k = (a_k - Σ_{j=1..k} b_j q_{k-j}) / b_0
    for k in range(n):
        acc = a.coeffs[k]
        if k:
            acc -= np.dot(b.coeffs[1:k + 1], q[k - 1::-1])
        q[k] = acc / b0
    return ComplexSeries(q)


def evaluate(s: ComplexSeries, z: Union[Scalar, np.ndarray]) -> Union[complex, np.ndarray]:
    """Horner 求值，z 可以是标量或数组"""
    value = P.polyval(z, s.coeffs)
    if np.ndim(value) == 0:
        return complex(value)
    return value


@dataclass(frozen=True)
class TaylorFunction:
    """
    规范化解析函数 f(z) = z + a_2 z^2 + ... 的截断泰勒展开

    Attributes:
        series: 系数级数，c_0 = 0 且 c_1 = 1
        label: 可读名称
        truncated: 系数是否截断自无穷展开（否则 f 就是这个多项式本身）
        exact: 可选的闭式表达（参考函数库提供），用于精确求值
    """
    series: ComplexSeries
    label: str = ""
    truncated: bool = False
    exact: Optional["ClosedForms"] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        c = self.series.coeffs
        if not np.all(np.isfinite(c)):
            raise DomainError("Taylor coefficients must be finite")
        if self.series.order < 1:
            raise ConfigError("A normalized function needs truncation order at least 1")
        if abs(c[0]) > NORMALIZATION_TOL or abs(c[1] - 1) > NORMALIZATION_TOL:
            raise ConfigError(
                f"Function is not normalized: f(0) = {c[0]}, f'(0) = {c[1]} (need 0 and 1)"
            )

    @classmethod
    def from_coeffs(
        cls,
        coeffs: Sequence[Scalar],
        order: Optional[int] = None,
        label: str = "",
    ) -> "TaylorFunction":
        """由系数列表构造，阶数取 max(len-1, 默认阶数)"""
        if order is None:
            order = max(len(coeffs) - 1, get_config().series.order)
        return cls(ComplexSeries.from_coeffs(coeffs, order), label=label)

    @property
    def order(self) -> int:
        return self.series.order

    @property
    def fingerprint(self) -> bytes:
        """系数的字节表示，用作缓存键"""
        return self.series.coeffs.tobytes()

    def over_z(self) -> ComplexSeries:
        """f(z)/z 的级数"""
        return self.series.shift_down(1)

    def describe(self) -> str:
        return self.label or f"polynomial of degree {self.degree}"

    @property
    def degree(self) -> int:
        nonzero = np.nonzero(np.abs(self.series.coeffs) > 0)[0]
        return int(nonzero[-1]) if nonzero.size else 0
