"""
输出工具
CSV（pandas）、逐行 JSON 记录与 jinja2 文本模板，全部写到标准输出或 --out 指定的文件
"""
from __future__ import annotations

import json
import logging
import math
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, TextIO

import pandas as pd
from jinja2 import Template

from core.config import get_config

logger = logging.getLogger(__name__)

# 输出格式
CSV = "csv"
RECORDS = "records"
TEXT = "text"


@contextmanager
def open_output(path: Optional[str]) -> Iterator[TextIO]:
    """打开输出目标；path 为空时使用标准输出"""
    if not path:
        yield sys.stdout
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w", encoding="utf-8", newline="\n") as f:
        yield f
    logger.info(f"Saved: {target}")


def _plain(value: Any) -> Any:
    """JSON 不支持 NaN/inf，用字符串表示"""
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, complex):
        return [_plain(value.real), _plain(value.imag)]
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if hasattr(value, "item"):
        return _plain(value.item())
    return value


def write_records(records: Iterable[Mapping[str, Any]], out: TextIO) -> int:
    """逐行写 JSON 记录，键名排序以保证输出稳定"""
    count = 0
    for record in records:
        clean = {k: _plain(v) for k, v in record.items()}
        out.write(json.dumps(clean, sort_keys=True, ensure_ascii=False) + "\n")
        count += 1
    return count


def write_table(rows: List[Dict[str, Any]], columns: List[str], out: TextIO) -> int:
    """按给定列顺序写 CSV，换行符固定为 LF"""
    frame = pd.DataFrame(rows, columns=columns)
    out.write(frame.to_csv(index=False, lineterminator="\n"))
    return len(frame)


def emit(rows: List[Dict[str, Any]], columns: List[str], fmt: str, out: TextIO) -> int:
    """CSV 或逐行记录"""
    if fmt == CSV:
        return write_table(rows, columns, out)
    return write_records(({c: r.get(c) for c in columns} for r in rows), out)


def load_template(name: str) -> Template:
    """从模板目录加载 jinja2 模板"""
    path = get_config().paths.templates / name
    with open(path, "r", encoding="utf-8") as f:
        return Template(f.read(), keep_trailing_newline=True)
