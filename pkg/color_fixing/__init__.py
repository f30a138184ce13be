# color_fixing/__init__.py

from .core import ColorFixer, solve_trivial
from .config import SOLVERS, BENCH_SUITES
from .errors import ColorFixError, InfeasibleError, MalformedInputError, ParseError, SizeGuardError
from .fixing_number import fixing_number, fixing_number_r
from .models import ColorLists, Coloring, FixResult, FixingNumberReport, Graph
