"""Epsilon-keyed value sets.

Factor values are floats; two values closer than ``eps`` are treated as
the same key so that near-duplicates produced by floating-point combine
steps share one automaton.  Clustering is a single sorted scan: a value
opens a new cluster when it sits more than ``eps`` above the current
cluster's representative, and every member maps to that representative
(the cluster's smallest value).  Infinity is its own key.
"""

from __future__ import annotations

import math
from bisect import bisect_right

from .errors import FactorError

DEFAULT_EPS = 1e-10


class ValueKeySet:
    """Immutable set of representatives for epsilon-equal float values."""

    __slots__ = ("eps", "reps", "has_infinity")

    def __init__(self, eps: float = DEFAULT_EPS, reps=(), has_infinity: bool = False):
        if not (eps >= 0.0) or math.isinf(eps) or math.isnan(eps):
            raise FactorError(f"eps must be a finite nonnegative float, got {eps}")
        self.eps = eps
        self.reps = tuple(reps)
        self.has_infinity = has_infinity

    @classmethod
    def from_values(cls, values, eps: float = DEFAULT_EPS) -> "ValueKeySet":
        """Cluster ``values``; finite representatives come out sorted."""
        has_inf = False
        finite = []
        for v in values:
            v = float(v)
            if math.isnan(v):
                raise FactorError("NaN factor value")
            if math.isinf(v):
                if v < 0:
                    raise FactorError("-inf factor value")
                has_inf = True
            else:
                finite.append(v)
        finite.sort()
        reps = []
        for v in finite:
            if not reps or v - reps[-1] > eps:
                reps.append(v)
        return cls(eps, reps, has_inf)

    def key(self, value: float) -> float:
        """Map a value to its representative.

        A value within ``eps`` of two adjacent representatives keys to the
        lower one.  Values must come from the population the set was built
        on (or land within eps of some representative).
        """
        value = float(value)
        if math.isnan(value):
            raise FactorError("NaN factor value")
        if math.isinf(value):
            if value < 0:
                raise FactorError("-inf factor value")
            if not self.has_infinity:
                raise FactorError("infinity not present in this key set")
            return math.inf
        reps = self.reps
        i = bisect_right(reps, value)
        if i and value - reps[i - 1] <= self.eps:
            return reps[i - 1]
        if i < len(reps) and reps[i] - value <= self.eps:
            return reps[i]
        raise FactorError(f"value {value!r} not within eps of any representative")

    def __len__(self):
        return len(self.reps) + (1 if self.has_infinity else 0)

    def __iter__(self):
        yield from self.reps
        if self.has_infinity:
            yield math.inf

    def __repr__(self):
        inf = ", inf" if self.has_infinity else ""
        return f"ValueKeySet(eps={self.eps}, reps={list(self.reps)}{inf})"


def redundancy(values, eps: float = DEFAULT_EPS) -> float:
    """1 - distinct/total over epsilon-keyed values; 0.0 for empty input."""
    total = 0
    vals = []
    for v in values:
        total += 1
        vals.append(v)
    if total == 0:
        return 0.0
    return 1.0 - len(ValueKeySet.from_values(vals, eps)) / total
