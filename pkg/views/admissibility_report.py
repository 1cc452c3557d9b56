"""
可容许性报告
admissibility 子命令：对一条或全部判据在参数扫描网格上验证可容许条件
"""
from __future__ import annotations

import argparse
import itertools
import logging
from typing import Any, Dict, List

from core.admissibility import (
    RegionSampler,
    boundary_supremum,
    parameter_sweep,
    verify_admissibility,
)
from core.catalog import CriterionSpec, Direction, find_criterion, get_catalog
from core.config import get_config
from core.exceptions import ParamOutOfDomain
from core.workers import ordered_map

from .output import CSV, open_output, write_records, write_table

logger = logging.getLogger(__name__)

NOT_APPLICABLE = "n/a"


def _targets(args: argparse.Namespace) -> List[CriterionSpec]:
    """
    单个编号直接返回；"all" 配合 --alpha/--beta 时跳过参数区间不含该值的判据
    """
    if args.criterion.strip().lower() != "all":
        return [find_criterion(args.criterion)]
    specs = [
        spec for spec in get_catalog()
        if (args.alpha is None or spec.alpha_domain.contains(args.alpha))
        and (args.beta is None or spec.beta_domain.contains(args.beta))
    ]
    skipped = len(get_catalog()) - len(specs)
    if skipped:
        logger.info(f"Skipping {skipped} criteria whose parameter domains exclude the given values")
    if not specs:
        raise ParamOutOfDomain(f"No criterion accepts alpha = {args.alpha}, beta = {args.beta}")
    return specs


def _pairs(spec: CriterionSpec, args: argparse.Namespace):
    points = args.sweep_points or get_config().admissibility.sweep_points
    alphas = parameter_sweep(spec.alpha_domain, points)
    betas = parameter_sweep(spec.beta_domain, points)
    alpha_values = [args.alpha] if args.alpha is not None else list(alphas.values)
    beta_values = [args.beta] if args.beta is not None else list(betas.values)
    flags = {
        "alpha_truncated": args.alpha is None and alphas.truncated,
        "beta_truncated": args.beta is None and betas.truncated,
    }
    return [(spec, a, b, flags) for a, b in itertools.product(alpha_values, beta_values)]


def cmd_admissibility(args: argparse.Namespace) -> int:
    """逐 (判据, α, β) 输出验证记录；全部通过返回 0，否则返回 1"""
    specs = _targets(args)
    sampler = RegionSampler.from_config()
    tasks = [task for spec in specs for task in _pairs(spec, args)]

    def run(task) -> Dict[str, Any]:
        spec, alpha, beta, flags = task
        report = verify_admissibility(spec, alpha, beta, sampler)
        record = report.to_record(extra=flags)
        if args.report_sup and spec.direction is Direction.GT:
            sup = boundary_supremum(spec, alpha, beta, sampler)
            record.update({
                "sup": sup.value,
                "sup_rho": sup.arg.rho,
                "sup_tau": sup.arg.tau,
                "sup_samples": sup.samples,
            })
        elif args.report_sup:
            # LT 判据关心的是下确界，上确界不适用
            record.update({"sup": NOT_APPLICABLE, "sup_rho": None, "sup_tau": None, "sup_samples": 0})
        return record

    records = ordered_map(run, tasks)
    failed = sum(not r["passed"] for r in records)

    with open_output(args.out) as out:
        if args.format == CSV:
            columns = list(records[0].keys()) if records else ["criterion"]
            write_table(records, columns, out)
        else:
            write_records(records, out)

    if failed:
        logger.warning(f"{failed} of {len(records)} admissibility checks failed")
    return 1 if failed else 0
