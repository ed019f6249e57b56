"""dafbe: exact MAP / weighted-CSP solving by bucket elimination over
automaton-compressed factors.

Factor tables are stored as one minimal leveled DAFSA per distinct value;
combine and project then run on automata instead of dense tables, which
pays off whenever tables repeat values a lot.
"""

from ._backend import BACKEND
from .automata import Dafsa, Nfa
from .factor import DafsaFactor, TabularFactor, ValueKeySet
from .model import GraphicalModel, Task, bucket_elimination, min_fill_ordering

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Dafsa",
    "Nfa",
    "DafsaFactor",
    "TabularFactor",
    "ValueKeySet",
    "GraphicalModel",
    "Task",
    "bucket_elimination",
    "min_fill_ordering",
    "__version__",
]
