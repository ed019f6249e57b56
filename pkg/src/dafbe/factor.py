"""Factors over discrete variables: dense tables and value-keyed automata.

A ``TabularFactor`` is the plain representation: sorted scope, flat
row-major table, last scope variable fastest.  A ``DafsaFactor`` stores
the same function as a list of (value, automaton) entries: each distinct
(epsilon-keyed) value owns the minimal DAFSA of the assignments mapping
to it.  Entries are pairwise disjoint and, unless infinity rows were
pruned, cover the whole assignment space.

``math.inf`` marks hard-infeasible assignments.  It is absorbing under
sum-combination, never beats a finite value under min-projection, and is
rejected outright in product mode (probability factors have no use for
it, and inf * 0 is not a number).
"""

from __future__ import annotations

import dataclasses
import math
from array import array

import numpy as np

from ._backend import kernels
from .automata import Dafsa
from .errors import FactorError
from .keying import DEFAULT_EPS, ValueKeySet
from .keying import redundancy as _value_redundancy

COMBINE_OPS = ("product", "sum")
PROJECT_OPS = ("max", "min")


def _strides(domains):
    """Mixed-radix strides, last variable fastest."""
    out = [1] * len(domains)
    for i in range(len(domains) - 2, -1, -1):
        out[i] = out[i + 1] * domains[i + 1]
    return out


@dataclasses.dataclass(frozen=True)
class TabularFactor:
    """Dense factor over a sorted variable scope.

    ``values[i]`` is the value of the assignment whose mixed-radix rank is
    ``i`` with the last scope variable fastest.  A zero-scope factor is a
    single scalar cell.
    """

    scope: tuple[int, ...]
    domains: tuple[int, ...]
    values: np.ndarray

    def __post_init__(self):
        scope = tuple(self.scope)
        domains = tuple(self.domains)
        object.__setattr__(self, "scope", scope)
        object.__setattr__(self, "domains", domains)
        if list(scope) != sorted(set(scope)):
            raise FactorError(f"scope {scope} must be sorted and duplicate-free")
        if len(scope) != len(domains):
            raise FactorError("scope and domains length mismatch")
        if any(k < 1 for k in domains):
            raise FactorError("domain sizes must be >= 1")
        values = np.asarray(self.values, dtype=np.float64).reshape(-1)
        object.__setattr__(self, "values", values)
        expected = math.prod(domains)
        if len(values) != expected:
            raise FactorError(f"table has {len(values)} cells, expected {expected}")
        if np.isnan(values).any():
            raise FactorError("NaN in factor table")
        if np.isneginf(values).any():
            raise FactorError("-inf in factor table")

    @property
    def size(self) -> int:
        return len(self.values)

    def value_of(self, assignment) -> float:
        """Value at a full model assignment (indexable by variable id)."""
        idx = 0
        for var, stride, k in zip(self.scope, _strides(self.domains), self.domains):
            v = assignment[var]
            if not 0 <= v < k:
                raise FactorError(f"value {v} outside domain of variable {var}")
            idx += v * stride
        return float(self.values[idx])

    def redundancy(self, eps: float = DEFAULT_EPS) -> float:
        """1 - distinct/total over epsilon-keyed table values."""
        return _value_redundancy(self.values.tolist(), eps)


def _combine_values(op, va, vb):
    if op == "sum":
        return va + vb
    # product: inf is rejected at model level for MAP, but stay safe on
    # direct factor calls where 0 * inf would otherwise produce NaN
    if math.isinf(va) or math.isinf(vb):
        return math.inf
    return va * vb


@dataclasses.dataclass(frozen=True)
class DafsaFactor:
    """Factor stored as (value, automaton) entries, sorted by value.

    Entry automata share the factor's scope/domains and are pairwise
    disjoint; infinity, when present, sorts last.  ``remove_level`` output
    is the one transient place overlaps occur, and ``project`` resolves
    them before building a factor.
    """

    scope: tuple[int, ...]
    domains: tuple[int, ...]
    entries: tuple

    def __post_init__(self):
        scope = tuple(self.scope)
        domains = tuple(self.domains)
        entries = tuple((float(v), d) for v, d in self.entries)
        object.__setattr__(self, "scope", scope)
        object.__setattr__(self, "domains", domains)
        object.__setattr__(self, "entries", entries)
        if list(scope) != sorted(set(scope)):
            raise FactorError(f"scope {scope} must be sorted and duplicate-free")
        if len(scope) != len(domains):
            raise FactorError("scope and domains length mismatch")
        prev = None
        for v, dafsa in entries:
            if math.isnan(v):
                raise FactorError("NaN entry value")
            if math.isinf(v) and v < 0:
                raise FactorError("-inf entry value")
            if prev is not None and not v > prev:
                raise FactorError("entry values must be strictly increasing")
            prev = v
            if dafsa.domains != domains:
                raise FactorError(f"entry automaton domains {dafsa.domains} != factor domains {domains}")
            if dafsa.is_empty():
                raise FactorError("empty entry automaton")

    # -- construction ------------------------------------------------------

    @classmethod
    def from_table(
        cls,
        table: TabularFactor,
        eps: float = DEFAULT_EPS,
        prune_infinite: bool = False,
    ) -> "DafsaFactor":
        """Group epsilon-equal cells and compile each group to a DAFSA.

        With ``prune_infinite`` the infinity rows are simply not
        represented; ``value_at`` then returns None for them.
        """
        values = table.values
        keyset = ValueKeySet.from_values(values, eps)
        reps = np.asarray(keyset.reps, dtype=np.float64)
        keyed = np.full(len(values), math.inf)
        finite = ~np.isinf(values)
        if finite.any():
            pos = np.searchsorted(reps, values[finite], side="right") - 1
            keyed[finite] = reps[pos]

        domains = table.domains
        L = len(domains)
        strides = np.asarray(_strides(domains), dtype=np.int64)
        dims = np.asarray(domains, dtype=np.int64)
        entries = []
        order = list(keyset.reps) + ([math.inf] if keyset.has_infinity else [])
        for rep in order:
            if math.isinf(rep) and prune_infinite:
                continue
            rows = np.nonzero(np.isinf(keyed) if math.isinf(rep) else keyed == rep)[0]
            flat = ((rows[:, None] // strides) % dims).astype(np.intc).reshape(-1)
            buf = array("i")
            buf.frombytes(flat.tobytes())
            parts = kernels.compile_sorted(buf, len(rows), L, domains)
            entries.append((rep, Dafsa._from_parts(domains, parts)))
        return cls(table.scope, domains, tuple(entries))

    def to_table(self, default: float = math.inf) -> TabularFactor:
        """Expand back to a dense table; uncovered rows get ``default``.

        Entries are written largest value first, so if automata overlap
        (possible only on hand-assembled factors), the smallest value wins,
        matching min semantics.
        """
        domains = self.domains
        total = math.prod(domains)
        values = np.full(total, float(default))
        strides = np.asarray(_strides(domains), dtype=np.int64)
        for v, dafsa in reversed(self.entries):
            for word in dafsa.enumerate_strings(cap=max(total, 1)):
                values[int(np.dot(np.asarray(word, dtype=np.int64), strides))] = v
        return TabularFactor(self.scope, domains, values)

    # -- queries -----------------------------------------------------------

    @property
    def entry_count(self) -> int:
        return len(self.entries)

    @property
    def total_states(self) -> int:
        return sum(d.state_count for _, d in self.entries)

    def value_at(self, assignment):
        """Entry value covering the full model assignment, None if pruned."""
        word = tuple(assignment[v] for v in self.scope)
        for v, dafsa in self.entries:
            if dafsa.accepts(word):
                return v
        return None

    def covered_count(self) -> int:
        return sum(d.count_strings() for _, d in self.entries)

    def redundancy(self) -> float:
        """1 - entries/covered over the assignments this factor represents."""
        total = self.covered_count()
        if total == 0:
            return 0.0
        return 1.0 - len(self.entries) / total

    def check_partition(self, covering: bool = True):
        """Verify entries are pairwise disjoint (and covering). For tests."""
        for i in range(len(self.entries)):
            for j in range(i + 1, len(self.entries)):
                if not self.entries[i][1].intersect(self.entries[j][1]).is_empty():
                    raise FactorError(f"entries {i} and {j} overlap")
        if covering:
            union = Dafsa.empty(self.domains)
            for _, d in self.entries:
                union = union.union(d)
            if union != Dafsa.universal(self.domains):
                raise FactorError("entries do not cover the assignment space")

    # -- scope surgery -------------------------------------------------------

    def add_levels(self, scope, domains) -> "DafsaFactor":
        """Extend to a superset scope by inserting wildcard levels.

        The new variables are unconstrained: every entry automaton gets a
        wildcard edge at each inserted position, so values are unchanged.
        """
        scope = tuple(scope)
        domains = tuple(domains)
        if len(scope) != len(domains):
            raise FactorError("scope and domains length mismatch")
        if list(scope) != sorted(set(scope)):
            raise FactorError(f"target scope {scope} must be sorted and duplicate-free")
        missing = [i for i, v in enumerate(scope) if v not in set(self.scope)]
        if set(self.scope) - set(scope):
            raise FactorError("target scope must contain the factor scope")
        entries = []
        for val, dafsa in self.entries:
            for pos in missing:
                dafsa = dafsa.insert_wildcard_level(pos, domains[pos])
            entries.append((val, dafsa))
        return DafsaFactor(scope, domains, tuple(entries))


def combine(f1: DafsaFactor, f2: DafsaFactor, op: str, eps: float = DEFAULT_EPS) -> DafsaFactor:
    """Pointwise ``op`` over the union scope.

    Both factors are first aligned to the union scope with wildcard
    levels; every entry pair contributes its intersection under the
    epsilon key of ``v1 op v2``, accumulated by union.  Assignments pruned
    in either input stay pruned.
    """
    if op not in COMBINE_OPS:
        raise FactorError(f"combine op must be one of {COMBINE_OPS}, got {op!r}")
    kmap = {}
    for f in (f1, f2):
        for var, k in zip(f.scope, f.domains):
            if kmap.setdefault(var, k) != k:
                raise FactorError(f"variable {var} has conflicting domains")
    scope = tuple(sorted(kmap))
    domains = tuple(kmap[v] for v in scope)
    a = f1.add_levels(scope, domains)
    b = f2.add_levels(scope, domains)

    pair_values = [
        [_combine_values(op, va, vb) for vb, _ in b.entries] for va, _ in a.entries
    ]
    keyset = ValueKeySet.from_values((v for row in pair_values for v in row), eps)
    acc = {}
    for i, (_, da) in enumerate(a.entries):
        for j, (_, db) in enumerate(b.entries):
            inter = da.intersect(db)
            if inter.is_empty():
                continue
            key = keyset.key(pair_values[i][j])
            cur = acc.get(key)
            acc[key] = inter if cur is None else cur.union(inter)
    entries = tuple(sorted(acc.items()))
    return DafsaFactor(scope, domains, entries)


def project(f: DafsaFactor, var: int, op: str, eps: float = DEFAULT_EPS):
    """Eliminate ``var`` by ``op`` over its values.

    Every entry drops the variable's level (re-determinizing as needed);
    overlaps between the shrunk entries are then resolved in favor of the
    op-preferred value by a running subtraction: entries are visited best
    value first, each keeps only what no better entry already claimed.

    Returns ``(factor, growth)`` where growth lists one
    (nfa_states, raw_dfa_states) sample per processed entry.
    """
    if op not in PROJECT_OPS:
        raise FactorError(f"project op must be one of {PROJECT_OPS}, got {op!r}")
    if var not in f.scope:
        raise FactorError(f"variable {var} not in scope {f.scope}")
    pos = f.scope.index(var)
    scope = f.scope[:pos] + f.scope[pos + 1 :]
    domains = f.domains[:pos] + f.domains[pos + 1 :]

    shrunk = []
    growth = []
    for val, dafsa in f.entries:
        small, nfa_states, raw_states = dafsa.remove_level(pos)
        shrunk.append((val, small))
        growth.append((nfa_states, raw_states))

    if op == "max":
        shrunk.reverse()  # largest value first; inf cannot occur in max mode
    kept = []
    prec = Dafsa.empty(domains)
    for val, dafsa in shrunk:
        remainder = dafsa.difference(prec)
        if remainder.is_empty():
            continue
        kept.append((val, remainder))
        prec = prec.union(dafsa)
    kept.sort(key=lambda e: e[0])
    return DafsaFactor(scope, domains, tuple(kept)), growth
