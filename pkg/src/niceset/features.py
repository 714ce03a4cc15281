"""From a numeric dataset to a model instance and a nice feature subset.

Collinearity edges come from thresholding absolute pairwise Pearson
correlations (boundary inclusive); multicollinearity conflict sets come from
variance inflation factors (VIF): a feature whose VIF against all other
features exceeds the threshold gets, as conflict partners, the regressors
with the largest absolute standardized coefficients.  The family is then
symmetrized by union.

All feature indices in this module are 1-based, matching instance vertices:
feature ``j`` is vertex ``j``.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import BudgetError, CsvError
from .instance import Edge, Instance, is_nice
from .solvers import greedy_nice, max_nice_exact, randomized_nice

VIF_MAX = 1e12
_RIDGE = 1e-10
_COEF_FLOOR = 1e-8  # below this a coefficient is numerical zero (ridge scale)
_EXACT_LIMIT = 60


@dataclass(frozen=True)
class FeatureMatrix:
    """``n`` observations of ``m`` named numeric features (columns)."""

    names: tuple[str, ...]
    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data, dtype=float)
        if data.ndim != 2:
            raise ValueError("data must be a 2-d array")
        n, m = data.shape
        if n < 3:
            raise ValueError(f"need at least 3 observations, got {n}")
        if m < 2:
            raise ValueError(f"need at least 2 features, got {m}")
        if len(self.names) != m:
            raise ValueError("one name per column required")
        if len(set(self.names)) != m:
            raise ValueError("feature names must be unique")
        if not np.all(np.isfinite(data)):
            raise ValueError("data contains non-finite entries")
        object.__setattr__(self, "names", tuple(str(s) for s in self.names))
        object.__setattr__(self, "data", data)

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def m(self) -> int:
        return self.data.shape[1]

    def column(self, j: int) -> np.ndarray:
        """Column of feature ``j`` (1-based)."""
        if not 1 <= j <= self.m:
            raise ValueError(f"feature index {j} out of range 1..{self.m}")
        return self.data[:, j - 1]


def load_csv(path, delimiter: str = ",", has_header: bool = True) -> FeatureMatrix:
    """Read a rectangular numeric CSV into a :class:`FeatureMatrix`.

    The header row supplies feature names; without one, names are
    ``f1..fm``.  Blank lines are ignored.  Ragged rows, non-numeric or
    non-finite cells, and bodies with fewer than 3 rows raise
    :class:`CsvError` naming the offending record and column.  Missing
    values are rejected, not imputed.
    """
    with open(path, newline="", encoding="utf-8") as handle:
        records = [(number, record)
                   for number, record in enumerate(csv.reader(handle, delimiter=delimiter), start=1)
                   if record]
    if not records:
        raise CsvError(f"{path}: empty file")
    names: list[str] | None = None
    if has_header:
        names = [cell.strip() for cell in records[0][1]]
        body = records[1:]
    else:
        body = records
    if not body:
        raise CsvError(f"{path}: no data rows")
    width = len(body[0][1]) if names is None else len(names)
    rows: list[list[float]] = []
    for number, record in body:
        if len(record) != width:
            raise CsvError(f"{path}: record {number} has {len(record)} fields, expected {width}",
                           record=number)
        row = []
        for col, cell in enumerate(record, start=1):
            label = names[col - 1] if names else f"f{col}"
            try:
                value = float(cell)
            except ValueError:
                raise CsvError(f"{path}: record {number}, column {label!r}: "
                               f"not a number: {cell!r}", record=number, column=label) from None
            if not np.isfinite(value):
                raise CsvError(f"{path}: record {number}, column {label!r}: "
                               f"non-finite value {cell!r}", record=number, column=label)
            row.append(value)
        rows.append(row)
    if len(rows) < 3:
        raise CsvError(f"{path}: need at least 3 data rows, got {len(rows)}")
    if names is None:
        names = [f"f{j}" for j in range(1, width + 1)]
    return FeatureMatrix(names=tuple(names), data=np.array(rows, dtype=float))


def _check_variances(fm: FeatureMatrix, indices: Iterable[int]) -> None:
    for j in indices:
        if float(np.std(fm.column(j))) == 0.0:
            raise ValueError(f"feature {fm.names[j - 1]!r} (column {j}) is constant")


def pearson_matrix(fm: FeatureMatrix) -> np.ndarray:
    """Sample Pearson correlations of all column pairs: symmetric, unit
    diagonal, entries in [-1, 1].  Constant columns are rejected."""
    _check_variances(fm, range(1, fm.m + 1))
    corr = np.corrcoef(fm.data, rowvar=False)
    corr = (corr + corr.T) / 2.0
    np.fill_diagonal(corr, 1.0)
    return np.clip(corr, -1.0, 1.0)


def collinearity_graph(corr: np.ndarray, lambda_c: float) -> frozenset[Edge]:
    """Edges ``(u, v)`` with ``|corr(u, v)| >= lambda_c`` (boundary inclusive),
    1-based, ``u < v``.  Requires ``lambda_c in (0, 1]``."""
    if not 0.0 < lambda_c <= 1.0:
        raise ValueError("lambda_c must lie in (0, 1]")
    corr = np.asarray(corr)
    if corr.ndim != 2 or corr.shape[0] != corr.shape[1]:
        raise ValueError("correlation matrix must be square")
    m = corr.shape[0]
    return frozenset((u + 1, v + 1) for u in range(m) for v in range(u + 1, m)
                     if abs(corr[u, v]) >= lambda_c)


def _standardize(column: np.ndarray, what: str) -> np.ndarray:
    sd = float(np.std(column))
    if sd == 0.0:
        raise ValueError(f"{what} is constant; cannot standardize")
    return (column - float(np.mean(column))) / sd


def _fit_standardized(fm: FeatureMatrix, j: int, regressors: tuple[int, ...]):
    """Ridge-damped least squares of standardized column ``j`` on the
    standardized regressors.  Returns ``(r_squared, coefficients)``.

    Standardization absorbs the intercept; the tiny ridge keeps exactly
    collinear designs solvable instead of crashing.  The residual-based R^2
    lies in [0, 1] by construction.
    """
    target = _standardize(fm.column(j), f"feature {fm.names[j - 1]!r}")
    design = np.column_stack([
        _standardize(fm.column(r), f"feature {fm.names[r - 1]!r}") for r in regressors
    ])
    n, k = design.shape
    gram = design.T @ design / n
    moment = design.T @ target / n
    coef = np.linalg.solve(gram + _RIDGE * np.eye(k), moment)
    residual = target - design @ coef
    r2 = 1.0 - float(np.mean(residual ** 2))
    return min(max(r2, 0.0), 1.0), coef


def vif(fm: FeatureMatrix, j: int, regressors: Iterable[int]) -> float:
    """Variance inflation factor ``1 / (1 - R^2)`` of regressing feature
    ``j`` (with intercept) on the given regressor features, capped at
    ``VIF_MAX`` once ``R^2 >= 1 - 1e-12``."""
    regressors = tuple(sorted(set(int(r) for r in regressors)))
    if not regressors:
        raise ValueError("at least one regressor required")
    if not 1 <= j <= fm.m:
        raise ValueError(f"feature index {j} out of range 1..{fm.m}")
    for r in regressors:
        if not 1 <= r <= fm.m:
            raise ValueError(f"regressor index {r} out of range 1..{fm.m}")
    if j in regressors:
        raise ValueError(f"feature {j} cannot regress on itself")
    if fm.n <= len(regressors) + 1:
        raise ValueError(f"need n > {len(regressors) + 1} observations, got {fm.n}")
    r2, _ = _fit_standardized(fm, j, regressors)
    if r2 >= 1.0 - 1e-12:
        return VIF_MAX
    return min(1.0 / (1.0 - r2), VIF_MAX)


def conflict_sets(fm: FeatureMatrix, lambda_mc: float, k_top: int = 3) -> dict[int, frozenset[int]]:
    """Conflict family from VIF screening.

    A feature whose VIF against all other features exceeds ``lambda_mc``
    receives as conflict partners the ``k_top`` regressors with the largest
    absolute standardized coefficients (ties to the smaller index).
    Regressors whose coefficient is negligible, absolutely or relative to
    the dominant one, never become partners: they contribute nothing to the
    inflated fit.  Other features start empty.  The family is then
    symmetrized by union, so the returned map satisfies
    ``u in T(v)  iff  v in T(u)``.
    """
    if lambda_mc <= 1.0:
        raise ValueError("lambda_mc must exceed 1")
    if k_top < 1:
        raise ValueError("k_top must be at least 1")
    raw: dict[int, set[int]] = {v: set() for v in range(1, fm.m + 1)}
    for v in range(1, fm.m + 1):
        others = tuple(u for u in range(1, fm.m + 1) if u != v)
        r2, coef = _fit_standardized(fm, v, others)
        factor = VIF_MAX if r2 >= 1.0 - 1e-12 else min(1.0 / (1.0 - r2), VIF_MAX)
        if factor > lambda_mc:
            magnitudes = np.abs(coef)
            floor = max(_COEF_FLOOR, 0.01 * float(magnitudes.max(initial=0.0)))
            ranked = sorted(((u, c) for u, c in zip(others, magnitudes) if c > floor),
                            key=lambda t: (-t[1], t[0]))
            raw[v] = {u for u, _ in ranked[:k_top]}
    for v in range(1, fm.m + 1):
        for u in raw[v].copy():
            raw[u].add(v)
    return {v: frozenset(raw[v]) for v in range(1, fm.m + 1)}


@dataclass(frozen=True)
class SelectionReport:
    """Outcome of a feature-selection run; ``selected`` holds feature names
    in column order and is always verified nice against the derived
    instance."""

    selected: tuple[str, ...]
    method: str
    lambda_c: float
    lambda_mc: float
    edge_count: int
    conflict_max: int
    conflict_mean: float
    witness_checked: bool

    def to_dict(self) -> dict:
        return {
            "selected": list(self.selected),
            "method": self.method,
            "lambda_c": self.lambda_c,
            "lambda_mc": self.lambda_mc,
            "edge_count": self.edge_count,
            "conflict_stats": {"max": self.conflict_max, "mean": self.conflict_mean},
            "witness_checked": self.witness_checked,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=indent)


def build_instance(fm: FeatureMatrix, lambda_c: float, lambda_mc: float,
                   k_top: int = 3) -> Instance:
    """Derive the model instance: collinearity edges plus VIF conflicts."""
    edges = collinearity_graph(pearson_matrix(fm), lambda_c)
    return Instance(m=fm.m, edges=edges, conflicts=conflict_sets(fm, lambda_mc, k_top))


def select_features(fm: FeatureMatrix, lambda_c: float, lambda_mc: float,
                    k_top: int = 3, method: str = "exact",
                    seed: int | None = None) -> SelectionReport:
    """Build the instance from the data and extract a nice feature subset.

    ``method`` is one of ``exact`` (branch and bound; limited to 60
    features), ``greedy``, or ``randomized``.  The result is re-verified
    with the niceness predicate before reporting.
    """
    inst = build_instance(fm, lambda_c, lambda_mc, k_top)
    if method == "exact":
        if fm.m > _EXACT_LIMIT:
            raise BudgetError(
                f"exact selection supports at most {_EXACT_LIMIT} features "
                f"(got {fm.m}); use method='greedy' or method='randomized'")
        result = max_nice_exact(inst)
    elif method == "greedy":
        result = greedy_nice(inst)
    elif method == "randomized":
        result = randomized_nice(inst, seed=seed if seed is not None else 0)
    else:
        raise ValueError(f"unknown method {method!r}")
    witness = is_nice(result.vertices, inst)
    if not witness:
        raise AssertionError("solver returned a non-nice set")  # pragma: no cover
    sizes = [len(inst.conflicts[v]) for v in range(1, inst.m + 1)]
    return SelectionReport(
        selected=tuple(fm.names[v - 1] for v in sorted(result.vertices)),
        method=method,
        lambda_c=float(lambda_c),
        lambda_mc=float(lambda_mc),
        edge_count=len(inst.edges),
        conflict_max=max(sizes),
        conflict_mean=float(sum(sizes)) / len(sizes),
        witness_checked=witness,
    )
