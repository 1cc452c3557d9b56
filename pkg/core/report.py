"""
验证报告
判据检验与可容许性验证共用的结果类型
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Mapping, Optional, Tuple

# 报告种类
CRITERION = "criterion"
ADMISSIBILITY = "admissibility"

# 判据检验的结论
HOLDS = "holds"
FAILS = "fails"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class VerificationReport:
    """
    单个判据（或单次扫描）的验证结果

    Attributes:
        subject: 判据编号
        kind: criterion（在函数上检验假设）或 admissibility（在约束区域上验证）
        passed: 是否通过
        value: criterion 为最差裕量；admissibility 为 Re ψ 的极值
        arg: 极值点；criterion 为 (Re z, Im z)，admissibility 为 (ρ, τ, ξ, η)
        samples: 参与比较的采样点数
        alpha / beta: 参数取值
        threshold: 阈值 t 的数值
        skipped: 分母过小而跳过的点数
        details: 其他诊断量
    """
    subject: str
    kind: str
    passed: bool
    value: float
    arg: Tuple[float, ...]
    samples: int
    alpha: float
    beta: float
    threshold: float
    skipped: int = 0
    details: Mapping[str, Any] = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        if self.kind == CRITERION:
            if self.samples == 0:
                return INCONCLUSIVE
            return HOLDS if self.passed else FAILS
        return "pass" if self.passed else "fail"

    def to_record(self, extra: Optional[Mapping[str, Any]] = None) -> Dict[str, Any]:
        """扁平记录，键名自描述，用于逐行输出"""
        record: Dict[str, Any] = {
            "criterion": self.subject,
            "kind": self.kind,
            "alpha": self.alpha,
            "beta": self.beta,
            "threshold": self.threshold,
            "verdict": self.verdict,
            "passed": self.passed,
            "value": self.value,
            "samples": self.samples,
            "skipped": self.skipped,
        }
        if self.kind == ADMISSIBILITY:
            record.update(dict(zip(("rho", "tau", "xi", "eta"), self.arg)))
        else:
            record.update(dict(zip(("z_re", "z_im"), self.arg)))
        record.update(self.details)
        if extra:
            record.update(extra)
        return record
