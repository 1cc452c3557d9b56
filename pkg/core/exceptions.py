"""
异常定义
所有可预期的数值或输入错误都继承自 StarlikeError，命令行入口据此映射退出码
"""
from typing import Optional

import numpy as np


class StarlikeError(Exception):
    """本项目所有可预期错误的基类"""


class ZeroConstantTerm(StarlikeError):
    """级数除法中除数的常数项过小，商在原点处不解析"""


class DomainError(StarlikeError):
    """自变量或参数超出允许范围（例如 |z| >= 1）"""


class ParamOutOfDomain(StarlikeError):
    """参数 α 或 β 不在判据的参数区间内"""


class RatioAtZero(StarlikeError):
    """表达式中的分母 (Q_ST 或 Q_CV) 在采样点处接近零

    Attributes:
        mask: 分母过小的位置（布尔数组），便于调用方剔除这些点
    """

    def __init__(self, message: str, mask: Optional[np.ndarray] = None):
        super().__init__(message)
        self.mask = mask


class PreconditionFailed(StarlikeError):
    """f(z)f'(z)/z ≠ 0 的前提条件在采样中不成立"""


class CatalogError(StarlikeError):
    """判据目录数据有误或判据编号不存在"""


class ExprError(StarlikeError):
    """表达式文本无法解析"""


class ConfigError(StarlikeError):
    """命令行输入或运行配置无效"""
