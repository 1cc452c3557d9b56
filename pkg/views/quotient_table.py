"""
商函数表
quotients 子命令：在 r × θ 网格上输出 (Re u, Im u, Re v, Im v, Re w, Im w)
"""
from __future__ import annotations

import argparse
import logging
from typing import List, Optional, Sequence

import numpy as np

from core.config import get_config
from core.exceptions import ConfigError, DomainError
from core.quotients import parse_coeffs, quotient_grid, resolve_function
from core.series import TaylorFunction

from .output import emit, open_output

logger = logging.getLogger(__name__)

COLUMNS = ["r", "theta", "re_u", "im_u", "re_v", "im_v", "re_w", "im_w"]


def function_from_args(args: argparse.Namespace) -> TaylorFunction:
    """--fn 或 --coeffs 指定的函数，两者互斥"""
    fn, coeffs = getattr(args, "fn", None), getattr(args, "coeffs", None)
    if fn and coeffs:
        raise ConfigError("Use either --fn or --coeffs, not both")
    if coeffs:
        return parse_coeffs(coeffs)
    if fn:
        return resolve_function(fn)
    raise ConfigError("A function is required: pass --fn <name> or --coeffs <list>")


def polar_points(radii: Optional[Sequence[float]], angles: int):
    """半径优先排列的 (r, θ, z)"""
    radii = list(radii) if radii else list(get_config().oracle.radii)
    if angles < 1:
        raise ConfigError(f"--angles must be positive, got {angles}")
    for r in radii:
        if not 0 <= r < 1:
            raise DomainError(f"Radius {r:g} is outside [0, 1)")
    theta = 2 * np.pi * np.arange(angles) / angles
    r, t = np.meshgrid(np.asarray(radii, dtype=float), theta, indexing="ij")
    r, t = r.reshape(-1), t.reshape(-1)
    return r, t, r * np.exp(1j * t)


def cmd_quotients(args: argparse.Namespace) -> int:
    """输出商函数表，成功返回 0"""
    f = function_from_args(args)
    r, theta, z = polar_points(args.r, args.angles)
    qg = quotient_grid(f, z, method=args.method)

    rows: List[dict] = [
        {
            "r": float(r[k]),
            "theta": float(theta[k]),
            "re_u": float(qg.u[k].real),
            "im_u": float(qg.u[k].imag),
            "re_v": float(qg.v[k].real),
            "im_v": float(qg.v[k].imag),
            "re_w": float(qg.w[k].real),
            "im_w": float(qg.w[k].imag),
        }
        for k in range(z.size)
    ]
    with open_output(args.out) as out:
        emit(rows, COLUMNS, args.format, out)
    logger.info(f"Wrote {len(rows)} quotient rows for {f.describe()}")
    return 0
