"""
蕴含扫描
scan 子命令：随机语料库 × 全部判据，输出逐判据计数与违例
"""
from __future__ import annotations

import argparse
import logging

from core.catalog import get_catalog
from core.search import CorpusConfig, implication_test

from .output import CSV, open_output, write_records, write_table

logger = logging.getLogger(__name__)

TALLY_COLUMNS = [
    "criterion",
    "evaluated",
    "hypothesis_true_count",
    "conclusion_true_count",
    "conclusion_inconclusive_count",
    "inapplicable_count",
    "violation_count",
]


def corpus_from_args(args: argparse.Namespace) -> CorpusConfig:
    """未给出的参数取配置默认值"""
    return CorpusConfig.from_config(
        count=args.count,
        degree=args.degree,
        min_degree=args.min_degree,
        coeff_bound=args.coeff_bound,
        seed=args.seed,
        sweep_points=args.sweep_points,
    )


def cmd_scan(args: argparse.Namespace) -> int:
    """
    先输出每条判据的计数记录，再输出违例（带完整系数，便于复现）

    没有违例时返回 0，否则返回 1。
    """
    cfg = corpus_from_args(args)
    report = implication_test(get_catalog(), cfg)

    with open_output(args.out) as out:
        if args.format == CSV:
            write_table(report.to_records(), TALLY_COLUMNS, out)
        else:
            header = {"record": "scan", "seed": cfg.seed, "functions": report.functions,
                      "degree": cfg.degree, "min_degree": cfg.min_degree,
                      "coeff_bound": cfg.coeff_bound,
                      "max_coverage": report.max_coverage(),
                      "violation_count": len(report.violations)}
            write_records([header], out)
            write_records(({"record": "tally", **r} for r in report.to_records()), out)
            write_records(({"record": "violation", "seed": cfg.seed, **v.to_record()}
                           for v in report.violations), out)

    if report.violations:
        logger.warning(f"{len(report.violations)} implication violations found (seed {cfg.seed})")
        return 1
    return 0
