"""Factor algebra over finite-valued variables.

A factor is a dense nonnegative table over an ordered tuple of variables,
stored row-major: the first variable is the most significant index digit and
values are enumerated in their declared order.  Factors are immutable; every
operation returns a fresh factor and optionally charges a CostCounters
accumulator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np


class FactorError(ValueError):
    pass


class LengthMismatch(FactorError):
    pass


class NegativeEntry(FactorError):
    pass


class DuplicateVariable(FactorError):
    pass


class ValueSetMismatch(FactorError):
    pass


class UnknownName(FactorError):
    pass


class ZeroMass(FactorError):
    pass


@dataclass(frozen=True)
class VarSpec:
    """A named variable with an ordered finite value set."""

    name: str
    values: tuple[str, ...] = ("t", "f")

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) < 1:
            raise FactorError(f"variable {self.name} needs at least one value")
        if len(set(self.values)) != len(self.values):
            raise DuplicateVariable(f"duplicate value labels for {self.name}")

    @property
    def size(self) -> int:
        return len(self.values)

    def index_of(self, value: str) -> int:
        try:
            return self.values.index(value)
        except ValueError:
            raise UnknownName(f"{value!r} is not a value of {self.name}") from None


class Assignment:
    """An immutable finite map from variable names to value labels."""

    def __init__(self, bindings: Mapping[str, str] = ()):
        self._b = dict(bindings)

    def __getitem__(self, name: str) -> str:
        return self._b[name]

    def __contains__(self, name: str) -> bool:
        return name in self._b

    def __iter__(self):
        return iter(self._b)

    def __len__(self) -> int:
        return len(self._b)

    def __eq__(self, other) -> bool:
        return isinstance(other, Assignment) and self._b == other._b

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}={v}" for k, v in sorted(self._b.items()))
        return f"Assignment({inner})"

    def items(self):
        return self._b.items()

    def names(self) -> frozenset[str]:
        return frozenset(self._b)

    def extended(self, name: str, value: str) -> "Assignment":
        new = dict(self._b)
        new[name] = value
        return Assignment(new)


def project(a: Assignment, names: Iterable[str]) -> Assignment:
    """Restrict an assignment to the given names."""
    names = set(names)
    missing = names - set(a)
    if missing:
        raise UnknownName(f"assignment does not bind {sorted(missing)}")
    return Assignment({n: a[n] for n in names})


def compatible(a: Assignment, b: Assignment) -> bool:
    common = a.names() & b.names()
    return all(a[n] == b[n] for n in common)


@dataclass
class CostCounters:
    """Per-evaluation accumulator of table work.

    max_live_table tracks the largest table materialized, not the sum of
    live tables; it is the space side of the 2^w accounting.
    """

    entries_written: int = 0
    multiplications: int = 0
    additions: int = 0
    max_live_table: int = 0

    def saw_table(self, size: int) -> None:
        if size > self.max_live_table:
            self.max_live_table = size

    def merge(self, other: "CostCounters") -> None:
        self.entries_written += other.entries_written
        self.multiplications += other.multiplications
        self.additions += other.additions
        self.saw_table(other.max_live_table)

    @property
    def total(self) -> int:
        return self.entries_written + self.multiplications + self.additions


class Factor:
    """Dense factor over an ordered tuple of VarSpecs."""

    __slots__ = ("vars", "table")

    def __init__(self, vars: Sequence[VarSpec], table: np.ndarray):
        # internal constructor: validation lives in factor_new
        self.vars: tuple[VarSpec, ...] = tuple(vars)
        self.table: np.ndarray = table

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.vars)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(v.size for v in self.vars)

    @property
    def size(self) -> int:
        return int(self.table.size)

    def spec_of(self, name: str) -> VarSpec:
        for v in self.vars:
            if v.name == name:
                return v
        raise UnknownName(f"factor has no variable {name}")

    def value(self, a: Assignment) -> float:
        idx = tuple(v.index_of(a[v.name]) for v in self.vars)
        return float(self.table.reshape(self.shape)[idx]) if self.vars else float(self.table[0])

    def assignments(self) -> Iterable[Assignment]:
        for idx in np.ndindex(*self.shape) if self.vars else [()]:
            yield Assignment({v.name: v.values[i] for v, i in zip(self.vars, idx)})

    def total_mass(self) -> float:
        return float(self.table.sum())

    def allclose(self, other: "Factor", tol: float = 1e-9) -> bool:
        """Entrywise comparison up to variable reordering."""
        if set(self.names) != set(other.names):
            return False
        aligned = _broadcast_to(other, self.vars)
        return bool(np.all(np.abs(self.table.reshape(self.shape) - aligned) <= tol))

    def __repr__(self) -> str:
        return f"Factor({self.names}, {self.table.tolist()})"


def _check_value_sets(fs: Iterable[Factor]) -> None:
    seen: dict[str, tuple[str, ...]] = {}
    for f in fs:
        for v in f.vars:
            if v.name in seen and seen[v.name] != v.values:
                raise ValueSetMismatch(
                    f"variable {v.name} declared with values {seen[v.name]} and {v.values}")
            seen[v.name] = v.values


def _broadcast_to(f: Factor, rvars: Sequence[VarSpec]) -> np.ndarray:
    """View of f's table broadcastable against the result variable order."""
    rpos = {v.name: i for i, v in enumerate(rvars)}
    perm = sorted(range(len(f.vars)), key=lambda i: rpos[f.vars[i].name])
    arr = f.table.reshape(f.shape).transpose(perm)
    full = [v.size if v.name in set(f.names) else 1 for v in rvars]
    return arr.reshape(full)


def factor_new(vars: Sequence[VarSpec], table: Sequence[float],
               counters: Optional[CostCounters] = None) -> Factor:
    vars = tuple(vars)
    names = [v.name for v in vars]
    if len(set(names)) != len(names):
        raise DuplicateVariable(f"duplicate variable names in {names}")
    expected = int(np.prod([v.size for v in vars], dtype=np.int64)) if vars else 1
    arr = np.asarray(table, dtype=np.float64).ravel()
    if arr.size != expected:
        raise LengthMismatch(f"table has {arr.size} entries, expected {expected}")
    if np.any(arr < 0):
        raise NegativeEntry("factor entries must be nonnegative")
    if counters is not None:
        counters.entries_written += arr.size
        counters.saw_table(arr.size)
    return Factor(vars, arr.copy())


def unit_factor(vars: Sequence[VarSpec], counters: Optional[CostCounters] = None) -> Factor:
    vars = tuple(vars)
    names = [v.name for v in vars]
    if len(set(names)) != len(names):
        raise DuplicateVariable(f"duplicate variable names in {names}")
    size = int(np.prod([v.size for v in vars], dtype=np.int64)) if vars else 1
    if counters is not None:
        counters.entries_written += size
        counters.saw_table(size)
    return Factor(vars, np.ones(size))


def sum_out(f: Factor, z: Iterable[str], counters: Optional[CostCounters] = None) -> Factor:
    z = set(z)
    unknown = z - set(f.names)
    if unknown:
        raise UnknownName(f"cannot sum out {sorted(unknown)}: not in {f.names}")
    if not z:
        return Factor(f.vars, f.table.copy())
    keep = tuple(v for v in f.vars if v.name not in z)
    axes = tuple(i for i, v in enumerate(f.vars) if v.name in z)
    out = f.table.reshape(f.shape).sum(axis=axes).ravel()
    if counters is not None:
        dropped = int(np.prod([f.vars[i].size for i in axes], dtype=np.int64))
        counters.additions += (dropped - 1) * out.size
        counters.entries_written += out.size
        counters.saw_table(out.size)
    return Factor(keep, out)


def _result_vars(fs: Sequence[Factor]) -> tuple[VarSpec, ...]:
    rvars: list[VarSpec] = []
    seen: set[str] = set()
    for f in fs:
        for v in f.vars:
            if v.name not in seen:
                seen.add(v.name)
                rvars.append(v)
    return tuple(rvars)


def product(f1: Factor, f2: Factor, counters: Optional[CostCounters] = None) -> Factor:
    _check_value_sets([f1, f2])
    rvars = _result_vars([f1, f2])
    out = (_broadcast_to(f1, rvars) * _broadcast_to(f2, rvars)).ravel()
    if counters is not None:
        counters.multiplications += out.size
        counters.entries_written += out.size
        counters.saw_table(out.size)
    return Factor(rvars, out)


def product_many(fs: Sequence[Factor], counters: Optional[CostCounters] = None) -> Factor:
    """Product of k factors in one pass over the result index space.

    Only the result table is materialized, so the work is k * |result|
    multiplications and |result| entries.
    """
    fs = list(fs)
    if not fs:
        return unit_factor([], counters)
    _check_value_sets(fs)
    rvars = _result_vars(fs)
    rshape = tuple(v.size for v in rvars)
    out = np.ones(rshape if rvars else (1,))
    for f in fs:
        out = out * _broadcast_to(f, rvars) if rvars else out * f.table
    out = np.broadcast_to(out, rshape if rvars else (1,)).ravel().copy()
    if counters is not None:
        counters.multiplications += len(fs) * out.size
        counters.entries_written += out.size
        counters.saw_table(out.size)
    return Factor(rvars, out)


def normalize(f: Factor, counters: Optional[CostCounters] = None) -> Factor:
    mass = f.total_mass()
    if mass <= 0.0:
        raise ZeroMass("cannot normalize a zero-mass factor")
    out = f.table / mass
    if counters is not None:
        counters.entries_written += out.size
        counters.saw_table(out.size)
    return Factor(f.vars, out)


def restrict(f: Factor, a: Assignment, counters: Optional[CostCounters] = None) -> Factor:
    """Slice a factor at an assignment of some of its variables."""
    bound = set(a) & set(f.names)
    if set(a) - set(f.names):
        raise UnknownName(f"factor has no variables {sorted(set(a) - set(f.names))}")
    keep = tuple(v for v in f.vars if v.name not in bound)
    idx = tuple(v.index_of(a[v.name]) if v.name in bound else slice(None) for v in f.vars)
    out = f.table.reshape(f.shape)[idx].ravel().copy() if f.vars else f.table.copy()
    if counters is not None:
        counters.entries_written += out.size
        counters.saw_table(out.size)
    return Factor(keep, out)


def is_cpt(f: Factor, child: str, tol: float = 1e-9) -> bool:
    """True when rows grouped by the non-child variables each sum to 1."""
    if child not in f.names:
        return False
    rows = sum_out(f, {child})
    return bool(np.all(np.abs(rows.table - 1.0) <= tol))
