"""
星像性判据验证工具
命令行入口

子命令：
1. quotients - 在 r × θ 网格上输出 Q_ST, Q_CV, Q_SD
2. check - 在给定函数上检验一条判据的假设
3. admissibility - 在约束区域上验证判据的可容许条件
4. scan - 随机函数语料库上的蕴含检验
5. catalog - 导出判据目录

退出码：0 成功 / 1 判据不成立或验证失败 / 2 输入错误 / 3 无法判定
"""
import sys
import logging
import argparse
from pathlib import Path
from typing import Callable, List, Optional

# 添加项目根目录到 Python 路径
ROOT_DIR = Path(__file__).parent
if str(ROOT_DIR) not in sys.path:
    sys.path.insert(0, str(ROOT_DIR))

from core.exceptions import StarlikeError
from views import cmd_quotients, cmd_check, cmd_admissibility, cmd_scan, cmd_catalog
from views.output import CSV, RECORDS, TEXT

logger = logging.getLogger(__name__)

EXIT_ERROR = 2


def configure_logging(verbose: bool) -> None:
    """日志只写标准错误，标准输出只有数据"""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.StreamHandler(sys.stderr)
        ],
        force=True
    )


def safe_run(command: Callable[[argparse.Namespace], int], args: argparse.Namespace) -> int:
    """执行子命令，把输入类错误统一映射为退出码 2 并输出一行提示"""
    try:
        return command(args)
    except StarlikeError as e:
        logger.debug(f"{args.command} failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


def _radii(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid radius list: {text!r}")


def _add_function_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--fn", help="zoo name: identity, koebe, halfplane, quad:<a>, mono:<n>:<a>, mobius:<c>")
    parser.add_argument("--coeffs", help='comma-separated coefficients from index 0, e.g. "0,1,0.5+0.1i"')


def _add_output_args(parser: argparse.ArgumentParser, formats: List[str], default: str) -> None:
    parser.add_argument("--format", choices=formats, default=default)
    parser.add_argument("--out", help="output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="starlike",
        description="Verify starlikeness criteria built from Q_ST, Q_CV and Q_SD",
    )
    parser.add_argument("--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("quotients", help="tabulate the quotients on a polar grid")
    _add_function_args(p)
    p.add_argument("--r", type=_radii, help="comma-separated radii in [0, 1)")
    p.add_argument("--angles", type=int, default=16)
    p.add_argument("--method", choices=["auto", "series", "direct", "exact"], default="auto")
    _add_output_args(p, [CSV, RECORDS], CSV)
    p.set_defaults(handler=cmd_quotients)

    p = sub.add_parser("check", help="check a criterion's hypothesis on a function")
    _add_function_args(p)
    p.add_argument("--criterion", required=True)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--r", type=_radii, help="override the radii of the criterion grid")
    p.add_argument("--angles", type=int, help="override the angle count of the criterion grid")
    _add_output_args(p, [TEXT, RECORDS], TEXT)
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("admissibility", help="verify admissibility over the constrained region")
    p.add_argument("--criterion", default="all", help='criterion id or "all"')
    p.add_argument("--alpha", type=float,
                   help="single alpha instead of the sweep; with 'all', criteria whose domain excludes it are skipped")
    p.add_argument("--beta", type=float, help="single beta instead of the sweep")
    p.add_argument("--sweep-points", type=int, help="sweep points per parameter")
    p.add_argument("--report-sup", action="store_true", help="add the supremum estimate (n/a for LT criteria)")
    _add_output_args(p, [RECORDS, CSV], RECORDS)
    p.set_defaults(handler=cmd_admissibility)

    p = sub.add_parser("scan", help="implication test over a random corpus")
    p.add_argument("--count", type=int)
    p.add_argument("--degree", type=int, help="maximum polynomial degree")
    p.add_argument("--min-degree", type=int, help="minimum polynomial degree")
    p.add_argument("--coeff-bound", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--sweep-points", type=int)
    _add_output_args(p, [RECORDS, CSV], RECORDS)
    p.set_defaults(handler=cmd_scan)

    p = sub.add_parser("catalog", help="export the criterion catalog")
    _add_output_args(p, [RECORDS, CSV], RECORDS)
    p.set_defaults(handler=cmd_catalog)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """解析参数并执行子命令；argparse 的参数错误以退出码 2 结束"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_ERROR
    configure_logging(args.verbose)
    return safe_run(args.handler, args)


if __name__ == "__main__":
    sys.exit(main())
