"""Exact engine for singular Gelfand-Tsetlin gl(n)-modules of index 2.

Derivative-tableau bases, exact divided-difference action formulas, the
commuting family action, and desk-scale verification of the structural
theorems (bracket closure, fiber multiplicities, Jordan structure, the
Verma realization).
"""

from .jets import Jet, JetContext
from .scalars import RAT, fmt_rat, parse_rat, rat

__all__ = ["Jet", "JetContext", "RAT", "rat", "parse_rat", "fmt_rat"]
__version__ = "0.1.0"
