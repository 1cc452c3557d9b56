"""
判据检验
check 子命令：在函数的圆盘网格上检验一条判据的假设
"""
from __future__ import annotations

import argparse
import logging

from core.catalog import criterion_holds, find_criterion
from core.config import get_config
from core.oracle import DiskGrid, criterion_grid
from core.report import FAILS, HOLDS

from .output import RECORDS, load_template, open_output, write_records
from .quotient_table import function_from_args

logger = logging.getLogger(__name__)

# 结论到退出码
EXIT_CODES = {HOLDS: 0, FAILS: 1}
EXIT_INCONCLUSIVE = 3


def grid_from_args(args: argparse.Namespace) -> DiskGrid:
    """--r / --angles 覆盖默认的判据网格"""
    radii = getattr(args, "r", None)
    angles = getattr(args, "angles", None)
    if not radii and not angles:
        return criterion_grid()
    if not radii:
        cfg = get_config().criterion_grid
        return DiskGrid.geometric(cfg.r_min, cfg.r_max, cfg.radii_count, angles)
    return DiskGrid(tuple(radii), angles or get_config().criterion_grid.angles)


def cmd_check(args: argparse.Namespace) -> int:
    """
    检验判据，退出码：holds 0 / fails 1 / inconclusive 3

    判据编号与函数在计算前校验，参数越界由 ParamOutOfDomain 报告。
    """
    spec = find_criterion(args.criterion)
    f = function_from_args(args)
    report = criterion_holds(spec, f, args.alpha, args.beta, grid_from_args(args))

    with open_output(args.out) as out:
        if args.format == RECORDS:
            write_records([report.to_record()], out)
        else:
            out.write(load_template("check.txt.j2").render(
                spec=spec, report=report, function=f.describe()
            ))
    return EXIT_CODES.get(report.verdict, EXIT_INCONCLUSIVE)
