# Views module initialization
from .quotient_table import cmd_quotients
from .criterion_check import cmd_check
from .admissibility_report import cmd_admissibility
from .implication_scan import cmd_scan
from .catalog_export import cmd_catalog

__all__ = [
    'cmd_quotients',
    'cmd_check',
    'cmd_admissibility',
    'cmd_scan',
    'cmd_catalog'
]
