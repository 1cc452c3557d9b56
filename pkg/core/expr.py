"""
表达式树
判据函数 ψ 与证明中的实部公式都以短小的算术文本保存，这里解析成不可变的表达式树并做向量化求值

支持的语法：+ - * / **（正整数次幂）、数字常数、括号和给定的符号名
"""
from __future__ import annotations

import ast
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Collection, Dict, FrozenSet, Mapping, Optional, Tuple, Union

import numpy as np

from .exceptions import ExprError, RatioAtZero

logger = logging.getLogger(__name__)

Value = Union[complex, float, np.ndarray]
Env = Mapping[str, Value]

# 商函数变量与参数
QUOTIENT_VARS = ("u", "v", "w")
REGION_VARS = ("rho", "tau", "xi", "eta")
PARAMS = ("a", "b")

# 分母的最小模
RATIO_TOL = 1e-12

# 渲染用的显示名
DISPLAY_NAMES = {
    "u": "Q_ST",
    "v": "Q_CV",
    "w": "Q_SD",
    "a": "α",
    "b": "β",
    "rho": "ρ",
    "tau": "τ",
    "xi": "ξ",
    "eta": "η",
}


class Expr:
    """表达式节点基类"""

    def evaluate(self, env: Env) -> Value:
        raise NotImplementedError

    def render(self, names: Optional[Mapping[str, str]] = None) -> str:
        raise NotImplementedError

    def symbols(self) -> FrozenSet[str]:
        raise NotImplementedError

    def denominators(self) -> Tuple["Expr", ...]:
        return ()

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class Var(Expr):
    """变量：u, v, w 或 ρ, τ, ξ, η"""
    name: str

    def evaluate(self, env: Env) -> Value:
        try:
            return env[self.name]
        except KeyError:
            raise ExprError(f"No value bound for variable {self.name!r}") from None

    def render(self, names=None) -> str:
        return (names or {}).get(self.name, self.name)

    def symbols(self):
        return frozenset({self.name})


@dataclass(frozen=True)
class Param(Var):
    """参数 a (α) 或 b (β)"""


@dataclass(frozen=True)
class Const(Expr):
    value: Fraction

    def evaluate(self, env: Env) -> Value:
        return float(self.value)

    def render(self, names=None) -> str:
        return str(self.value)

    def symbols(self):
        return frozenset()


@dataclass(frozen=True)
class Sum(Expr):
    terms: Tuple[Expr, ...]

    def evaluate(self, env: Env) -> Value:
        total = self.terms[0].evaluate(env)
        for term in self.terms[1:]:
            total = total + term.evaluate(env)
        return total

    def render(self, names=None) -> str:
        parts = []
        for i, term in enumerate(self.terms):
            negated = _negated(term)
            if negated is not None:
                parts.append(("-" if i == 0 else " - ") + _wrap(negated, names, Product))
            else:
                parts.append(("" if i == 0 else " + ") + term.render(names))
        return "".join(parts)

    def symbols(self):
        return frozenset().union(*(t.symbols() for t in self.terms))

    def denominators(self):
        return tuple(d for t in self.terms for d in t.denominators())


@dataclass(frozen=True)
class Product(Expr):
    factors: Tuple[Expr, ...]

    def evaluate(self, env: Env) -> Value:
        total = self.factors[0].evaluate(env)
        for factor in self.factors[1:]:
            total = total * factor.evaluate(env)
        return total

    def render(self, names=None) -> str:
        negated = _negated(self)
        if negated is not None:
            return "-" + _wrap(negated, names, Product)
        return "*".join(_wrap(f, names, Product) for f in self.factors)

    def symbols(self):
        return frozenset().union(*(f.symbols() for f in self.factors))

    def denominators(self):
        return tuple(d for f in self.factors for d in f.denominators())


@dataclass(frozen=True)
class Ratio(Expr):
    num: Expr
    den: Expr

    def evaluate(self, env: Env) -> Value:
        den = self.den.evaluate(env)
        small = np.abs(den) < RATIO_TOL
        if np.any(small):
            raise RatioAtZero(
                f"Denominator {self.den.render()} is below {RATIO_TOL:g} in magnitude",
                mask=np.asarray(small),
            )
        return self.num.evaluate(env) / den

    def render(self, names=None) -> str:
        return f"{_wrap(self.num, names, Ratio)}/{_wrap(self.den, names, Power)}"

    def symbols(self):
        return self.num.symbols() | self.den.symbols()

    def denominators(self):
        return (self.den,) + self.num.denominators() + self.den.denominators()


@dataclass(frozen=True)
class Power(Expr):
    base: Expr
    exponent: int

    def evaluate(self, env: Env) -> Value:
        base = self.base.evaluate(env)
        total = base
        for _ in range(self.exponent - 1):
            total = total * base
        return total

    def render(self, names=None) -> str:
        return f"{_wrap(self.base, names, Power)}**{self.exponent}"

    def symbols(self):
        return self.base.symbols()

    def denominators(self):
        return self.base.denominators()


# 运算优先级，数字越大结合越紧
_PRECEDENCE = {Sum: 1, Product: 2, Ratio: 2, Power: 3}


def _wrap(node: Expr, names, parent: type) -> str:
    text = node.render(names)
    inner = _PRECEDENCE.get(type(node), 4)
    if isinstance(node, Const) and node.value < 0:
        inner = 1
    if inner < _PRECEDENCE[parent] or (parent is Ratio and isinstance(node, Ratio)):
        return f"({text})"
    return text


def _negated(term: Expr) -> Optional[Expr]:
    """识别 (-1)*X 形式的项并返回 X"""
    if isinstance(term, Product) and isinstance(term.factors[0], Const) and term.factors[0].value == -1:
        rest = term.factors[1:]
        return rest[0] if len(rest) == 1 else Product(rest)
    return None


# ==================== 解析 ====================

def parse_expr(
    text: str,
    symbols: Collection[str],
    denominators: Optional[Collection[str]] = None,
) -> Expr:
    """
    把算术文本解析为表达式树

    Args:
        text: 例如 "u*(a*v+b*w)"
        symbols: 允许出现的名字；PARAMS 中的名字解析为 Param
        denominators: 若给定，除法分母只能是这些变量名之一

    Raises:
        ExprError: 语法错误、未知名字、非正整数次幂或不允许的分母
    """
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as e:
        raise ExprError(f"Cannot parse expression {text!r}: {e.msg}") from None
    allowed = frozenset(symbols)
    expr = _convert(tree.body, allowed, text)
    if denominators is not None:
        for den in expr.denominators():
            if not (isinstance(den, Var) and den.name in denominators):
                raise ExprError(
                    f"Expression {text!r} divides by {den.render()}; "
                    f"only {', '.join(sorted(denominators))} are allowed"
                )
    return expr


def _convert(node: ast.AST, allowed: FrozenSet[str], text: str) -> Expr:
    if isinstance(node, ast.Name):
        if node.id not in allowed:
            raise ExprError(f"Unknown name {node.id!r} in {text!r}")
        return Param(node.id) if node.id in PARAMS else Var(node.id)

    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
        return Const(Fraction(str(node.value)))

    if isinstance(node, ast.UnaryOp):
        operand = _convert(node.operand, allowed, text)
        if isinstance(node.op, ast.UAdd):
            return operand
        if isinstance(node.op, ast.USub):
            if isinstance(operand, Const):
                return Const(-operand.value)
            return _product(Const(Fraction(-1)), operand)

    if isinstance(node, ast.BinOp):
        left = _convert(node.left, allowed, text)
        if isinstance(node.op, ast.Pow):
            exponent = node.right
            if not (isinstance(exponent, ast.Constant) and isinstance(exponent.value, int)
                    and not isinstance(exponent.value, bool) and exponent.value >= 1):
                raise ExprError(f"Only positive integer powers are supported in {text!r}")
            return Power(left, exponent.value)
        right = _convert(node.right, allowed, text)
        if isinstance(node.op, ast.Add):
            return _sum(left, right)
        if isinstance(node.op, ast.Sub):
            return _sum(left, _product(Const(Fraction(-1)), right))
        if isinstance(node.op, ast.Mult):
            return _product(left, right)
        if isinstance(node.op, ast.Div):
            if isinstance(left, Const) and isinstance(right, Const):
                if right.value == 0:
                    raise ExprError(f"Division by zero in {text!r}")
                return Const(left.value / right.value)
            return Ratio(left, right)

    raise ExprError(f"Unsupported syntax {type(node).__name__} in {text!r}")


def _sum(*items: Expr) -> Sum:
    terms = []
    for item in items:
        terms.extend(item.terms if isinstance(item, Sum) else (item,))
    return Sum(tuple(terms))


def _product(*items: Expr) -> Product:
    factors = []
    for item in items:
        factors.extend(item.factors if isinstance(item, Product) else (item,))
    return Product(tuple(factors))


def bind(expr: Expr, alpha: float, beta: float, **values: Value) -> Value:
    """以 α、β 和变量值求值"""
    env: Dict[str, Value] = {"a": alpha, "b": beta}
    env.update(values)
    return expr.evaluate(env)
