# Core module initialization
from .config import Config, get_config
from .exceptions import (
    StarlikeError, ZeroConstantTerm, DomainError, ParamOutOfDomain, RatioAtZero,
    PreconditionFailed, CatalogError, ExprError, ConfigError,
)
from .series import ComplexSeries, TaylorFunction, derive, multiply, divide, evaluate
from .quotients import (
    QuotientTriple, ReferenceFunction, quotient_series, quotient_triple, quotient_grid,
    reference_zoo, resolve_function,
)
from .catalog import CriterionSpec, build_catalog, get_catalog, find_criterion, eval_psi, criterion_holds
from .admissibility import RegionSampler, verify_admissibility, boundary_supremum, sweep_admissibility
from .oracle import DiskGrid, min_re_qst, min_re_qcv, nonvanishing_check
from .search import CorpusConfig, ImplicationReport, implication_test

__all__ = [
    'Config', 'get_config',
    'StarlikeError', 'ZeroConstantTerm', 'DomainError', 'ParamOutOfDomain', 'RatioAtZero',
    'PreconditionFailed', 'CatalogError', 'ExprError', 'ConfigError',
    'ComplexSeries', 'TaylorFunction', 'derive', 'multiply', 'divide', 'evaluate',
    'QuotientTriple', 'ReferenceFunction', 'quotient_series', 'quotient_triple', 'quotient_grid',
    'reference_zoo', 'resolve_function',
    'CriterionSpec', 'build_catalog', 'get_catalog', 'find_criterion', 'eval_psi', 'criterion_holds',
    'RegionSampler', 'verify_admissibility', 'boundary_supremum', 'sweep_admissibility',
    'DiskGrid', 'min_re_qst', 'min_re_qcv', 'nonvanishing_check',
    'CorpusConfig', 'ImplicationReport', 'implication_test',
]
