"""
判据目录导出
catalog 子命令：每条判据一条记录，其后是对照结论与特殊参数约化表
"""
from __future__ import annotations

import argparse
import logging

from core.catalog import get_catalog, reference_entries, remark_reductions

from .output import CSV, open_output, write_records, write_table

logger = logging.getLogger(__name__)

COLUMNS = [
    "id", "formula", "threshold", "direction",
    "alpha_domain", "beta_domain", "reference_only", "anchor",
]


def cmd_catalog(args: argparse.Namespace) -> int:
    entries = [spec.to_record() for spec in get_catalog()]
    entries += [spec.to_record() for spec in reference_entries()]

    with open_output(args.out) as out:
        if args.format == CSV:
            write_table(entries, COLUMNS, out)
        else:
            write_records(({"record": "criterion", **e} for e in entries), out)
            write_records((
                {
                    "record": "remark",
                    "criterion": r.criterion,
                    "alpha": r.alpha,
                    "beta": r.beta,
                    "target": r.target,
                    "reference": r.reference,
                    "claim": r.claim,
                    "matches": r.matches,
                    "max_gap": r.max_gap,
                }
                for r in remark_reductions()
            ), out)
    return 0
