"""Parsers and writers for the benchmark text formats plus result records.

UAI MARKOV files become MAP (product/max) models, WCSP files become WCSP
(sum/min) models with costs at or above the instance's upper bound mapped
to infinity.  Both parsers track line numbers for error messages, reject
trailing garbage, and parse numbers locale-independently (decimal point
only).  ``write_uai`` / ``write_wcsp`` emit a normal form for which
parse(write(parse(text))) is a fixpoint on the model.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .errors import FormatError
from .model import GraphicalModel, SolverResult, Task
from .factor import TabularFactor, _strides


class _Tokens:
    """Whitespace token stream that remembers the current line number."""

    def __init__(self, text):
        self.items = []  # (token, line)
        for lineno, line in enumerate(text.splitlines(), start=1):
            if "#" in line:  # comment tails, seen in some wcsp corpora
                line = line.split("#", 1)[0]
            for tok in line.split():
                self.items.append((tok, lineno))
        self.pos = 0
        self.last_line = 1

    def next(self, what):
        if self.pos >= len(self.items):
            raise FormatError(f"unexpected end of file, expected {what}", self.last_line)
        tok, line = self.items[self.pos]
        self.pos += 1
        self.last_line = line
        return tok, line

    def next_int(self, what, minimum=None):
        tok, line = self.next(what)
        try:
            val = int(tok)
        except ValueError:
            raise FormatError(f"expected integer {what}, got {tok!r}", line) from None
        if minimum is not None and val < minimum:
            raise FormatError(f"{what} must be >= {minimum}, got {val}", line)
        return val

    def next_float(self, what):
        tok, line = self.next(what)
        try:
            # float() is locale-independent in Python: decimal point only
            val = float(tok)
        except ValueError:
            raise FormatError(f"expected number {what}, got {tok!r}", line) from None
        if math.isnan(val):
            raise FormatError(f"{what} is NaN", line)
        return val

    def expect_end(self):
        if self.pos < len(self.items):
            tok, line = self.items[self.pos]
            raise FormatError(f"trailing garbage starting at {tok!r}", line)


def _read_scopes(toks, n_vars, n_funcs):
    scopes = []
    for i in range(n_funcs):
        arity = toks.next_int(f"arity of function {i}", minimum=0)
        raw = []
        for j in range(arity):
            v = toks.next_int(f"variable {j} of function {i}")
            if not 0 <= v < n_vars:
                raise FormatError(
                    f"function {i} references variable {v}, model has {n_vars}", toks.last_line
                )
            raw.append(v)
        if len(set(raw)) != len(raw):
            raise FormatError(f"function {i} repeats a variable", toks.last_line)
        scopes.append(raw)
    return scopes


def _sorted_table(raw_scope, domains_of, values):
    """Permute a last-variable-fastest table onto the sorted scope."""
    scope = sorted(raw_scope)
    dims = [domains_of(v) for v in raw_scope]
    cube = np.asarray(values, dtype=np.float64).reshape(dims)
    perm = sorted(range(len(raw_scope)), key=lambda i: raw_scope[i])
    cube = np.transpose(cube, perm) if raw_scope else cube
    return TabularFactor(tuple(scope), tuple(domains_of(v) for v in scope), cube.reshape(-1))


def parse_uai(text: str) -> GraphicalModel:
    """UAI MARKOV network as a MAP model (tables multiplied, maximized)."""
    toks = _Tokens(text)
    kind, line = toks.next("header")
    if kind.upper() not in ("MARKOV", "BAYES"):
        raise FormatError(f"expected MARKOV or BAYES header, got {kind!r}", line)
    n_vars = toks.next_int("variable count", minimum=0)
    domains = [toks.next_int(f"domain size of variable {i}", minimum=1) for i in range(n_vars)]
    n_funcs = toks.next_int("function count", minimum=0)
    scopes = _read_scopes(toks, n_vars, n_funcs)
    factors = []
    for i, raw_scope in enumerate(scopes):
        count = toks.next_int(f"table size of function {i}", minimum=0)
        expected = math.prod(domains[v] for v in raw_scope)
        if count != expected:
            raise FormatError(
                f"function {i} declares {count} values, scope needs {expected}", toks.last_line
            )
        values = [toks.next_float(f"value {j} of function {i}") for j in range(count)]
        for j, v in enumerate(values):
            if math.isinf(v) or v < 0:
                raise FormatError(f"function {i} value {j} not a finite nonnegative number", toks.last_line)
        factors.append(_sorted_table(raw_scope, lambda v: domains[v], values))
    toks.expect_end()
    return GraphicalModel(n_vars, tuple(domains), tuple(factors), Task.MAP)


def parse_wcsp(text: str) -> GraphicalModel:
    """WCSP format as a WCSP model; costs >= the upper bound become inf."""
    toks = _Tokens(text)
    toks.next("problem name")
    n_vars = toks.next_int("variable count", minimum=0)
    toks.next_int("max domain size", minimum=0)
    n_funcs = toks.next_int("function count", minimum=0)
    upper = toks.next_float("global upper bound")
    domains = [toks.next_int(f"domain size of variable {i}", minimum=1) for i in range(n_vars)]
    factors = []
    for i in range(n_funcs):
        arity = toks.next_int(f"arity of function {i}", minimum=0)
        raw_scope = []
        for j in range(arity):
            v = toks.next_int(f"variable {j} of function {i}")
            if not 0 <= v < n_vars:
                raise FormatError(
                    f"function {i} references variable {v}, model has {n_vars}", toks.last_line
                )
            raw_scope.append(v)
        if len(set(raw_scope)) != len(raw_scope):
            raise FormatError(f"function {i} repeats a variable", toks.last_line)
        default = toks.next_float(f"default cost of function {i}")
        n_exc = toks.next_int(f"exception count of function {i}", minimum=0)
        dims = [domains[v] for v in raw_scope]
        table = np.full(math.prod(dims), default)
        strides = _strides(dims)
        for e in range(n_exc):
            idx = 0
            for j, v in enumerate(raw_scope):
                val = toks.next_int(f"tuple value {j} of exception {e} of function {i}")
                if not 0 <= val < domains[v]:
                    raise FormatError(
                        f"exception {e} of function {i}: value {val} outside domain "
                        f"of variable {v}",
                        toks.last_line,
                    )
                idx += val * strides[j]
            table[idx] = toks.next_float(f"cost of exception {e} of function {i}")
        if np.isneginf(table).any() or (table < 0).any():
            raise FormatError(f"function {i} has a negative cost", toks.last_line)
        table[table >= upper] = math.inf
        factors.append(_sorted_table(raw_scope, lambda v: domains[v], table))
    toks.expect_end()
    return GraphicalModel(n_vars, tuple(domains), tuple(factors), Task.WCSP)


def parse_path(path: str) -> GraphicalModel:
    with open(path, "r", encoding="ascii") as fh:
        text = fh.read()
    if str(path).endswith(".wcsp"):
        return parse_wcsp(text)
    return parse_uai(text)


def _format_value(v: float) -> str:
    v = float(v)
    if v.is_integer() and abs(v) < 1e15:
        return str(int(v))
    return repr(v)


def write_uai(model: GraphicalModel) -> str:
    if model.task is not Task.MAP:
        raise FormatError("write_uai needs a MAP model")
    lines = ["MARKOV", str(model.n_vars), " ".join(map(str, model.domains)), str(len(model.factors))]
    for f in model.factors:
        lines.append(" ".join([str(len(f.scope))] + [str(v) for v in f.scope]))
    for f in model.factors:
        lines.append("")
        lines.append(str(f.size))
        lines.append(" ".join(_format_value(v) for v in f.values))
    return "\n".join(lines) + "\n"


def write_wcsp(model: GraphicalModel, name: str = "instance") -> str:
    """Normal form: finite costs kept, inf written as the upper bound.

    The emitted upper bound is one above the largest finite cost so that
    re-parsing maps exactly the inf cells back to inf.
    """
    if model.task is not Task.WCSP:
        raise FormatError("write_wcsp needs a WCSP model")
    finite_max = 0.0
    for f in model.factors:
        finite = f.values[np.isfinite(f.values)]
        if len(finite):
            finite_max = max(finite_max, float(finite.max()))
    upper = math.floor(finite_max) + 1
    max_dom = max(model.domains, default=0)
    lines = [
        " ".join([name, str(model.n_vars), str(max_dom), str(len(model.factors)), _format_value(upper)]),
        " ".join(map(str, model.domains)),
    ]
    for f in model.factors:
        values = np.where(np.isinf(f.values), float(upper), f.values)
        # default cost: most frequent value, ties to the smallest
        uniq, counts = np.unique(values, return_counts=True)
        default = float(uniq[np.argmax(counts)])
        exceptions = np.nonzero(values != default)[0]
        lines.append(
            " ".join(
                [str(len(f.scope))]
                + [str(v) for v in f.scope]
                + [_format_value(default), str(len(exceptions))]
            )
        )
        strides = _strides(f.domains)
        for idx in exceptions:
            digits = [(int(idx) // s) % k for s, k in zip(strides, f.domains)]
            lines.append(" ".join([str(d) for d in digits] + [_format_value(values[idx])]))
    return "\n".join(lines) + "\n"


def write_model(model: GraphicalModel) -> str:
    return write_uai(model) if model.task is Task.MAP else write_wcsp(model)


# -- result records ----------------------------------------------------------


def result_record(
    path: str,
    result: SolverResult | None,
    engine: str,
    redundancy_per_factor=None,
    error: str | None = None,
    extra=None,
    timings: bool = False,
) -> dict:
    """Flat, deterministic record for one instance run."""
    rec = {"file": str(path), "engine": engine}
    if error is not None:
        rec["status"] = "error"
        rec["error"] = error
        return rec
    rec["task"] = result.task.name
    rec["status"] = result.status
    rec["optimum"] = None if result.status == "infeasible" else result.optimum
    rec["assignment"] = None if result.assignment is None else list(result.assignment)
    stats = {
        "induced_width": result.stats.induced_width,
        "buckets_processed": result.stats.buckets_processed,
        "messages": result.stats.messages,
        "max_entry_count": result.stats.max_entry_count,
        "max_automaton_states": result.stats.max_automaton_states,
        "peak_live_states": result.stats.peak_live_states,
    }
    peak_cells = getattr(result.stats, "peak_table_cells", None)
    if peak_cells is not None:
        stats["peak_table_cells"] = peak_cells
    growth = result.stats.growth_average
    stats["determinization_growth_avg"] = growth
    stats["determinization_samples"] = len(result.stats.growth_samples)
    if redundancy_per_factor is not None:
        stats["redundancy_per_factor"] = [round(r, 12) for r in redundancy_per_factor]
        stats["redundancy_mean"] = (
            round(sum(redundancy_per_factor) / len(redundancy_per_factor), 12)
            if redundancy_per_factor
            else None
        )
    if timings:
        stats["wall_time_s"] = result.stats.wall_time
    rec["stats"] = stats
    if extra:
        rec.update(extra)
    return rec


def write_result(result: SolverResult, fmt: str = "human", path: str = "-", engine: str = "dafsa", **kw) -> str:
    """One-call record emission for library users; CLI builds records itself."""
    rec = result_record(path, result, engine, **kw)
    if fmt == "json-lines":
        return record_to_json(rec) + "\n"
    return record_to_human(rec)


def record_to_json(rec: dict) -> str:
    return json.dumps(rec, sort_keys=True, allow_nan=False)


def record_to_human(rec: dict) -> str:
    lines = [f"instance: {rec['file']}"]
    if rec.get("error"):
        lines.append(f"  error: {rec['error']}")
        return "\n".join(lines) + "\n"
    lines.append(f"  engine: {rec['engine']}")
    if "task" in rec:
        lines.append(f"  task: {rec['task']}")
    lines.append(f"  status: {rec['status']}")
    if rec.get("optimum") is not None:
        lines.append(f"  optimum: {_format_value(rec['optimum'])}")
    if rec.get("assignment") is not None:
        lines.append("  assignment: " + " ".join(map(str, rec["assignment"])))
    for key, val in sorted(rec.get("stats", {}).items()):
        lines.append(f"  {key}: {val}")
    return "\n".join(lines) + "\n"
