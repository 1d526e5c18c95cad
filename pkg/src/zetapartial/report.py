"""Experiment orchestration and CSV/JSON output of verification reports."""
from __future__ import annotations

import csv
import io
import json
import math
import sys
import time
from dataclasses import asdict, dataclass, field, replace

from .coefficients import (
    brun_set_count,
    build_coefficient_table,
    count_nonzero_coefficients,
    density_ratio,
)
from .cyclotomic import cyclotomic_field
from .dirichlet_poly import build_partial_sum
from .errors import DomainError, ZetaPartialError
from .zero_engine import (
    DEFAULT_TOLERANCES,
    Tolerances,
    count_zeros,
    descartes_check,
    predicted_count,
)

EXIT_OK = 0
EXIT_BOUND = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

CSV_COLUMNS = ("q", "X", "T", "N", "count", "predicted", "discrepancy", "lrz2_bound", "lrz2_pass", "density_scale")


class OutputError(ZetaPartialError, OSError):
    """The report destination cannot be written."""


@dataclass(frozen=True)
class ExperimentConfig:
    q: int
    X_grid: tuple[float, ...]
    T_grid: tuple[float, ...]
    tolerances: Tolerances = DEFAULT_TOLERANCES
    format: str = "json"
    output: str = "-"
    seed: int = 0  # reserved: the pipeline has no randomness
    y_grid: tuple[float, ...] | None = None
    descartes_grid: int = 2000

    def __post_init__(self):
        if self.q < 2:
            raise DomainError("q must be >= 2")
        for name in ("X_grid", "T_grid"):
            grid = tuple(getattr(self, name))
            if not grid:
                raise DomainError(f"{name} must be nonempty")
            if any(b <= a for a, b in zip(grid, grid[1:])):
                raise DomainError(f"{name} must be strictly ascending")
            object.__setattr__(self, name, grid)
        if min(self.X_grid) < 1:
            raise DomainError("X values must be >= 1")
        if min(self.T_grid) < 0:
            raise DomainError("T values must be >= 0")
        if self.format not in ("csv", "json"):
            raise DomainError(f"unknown format {self.format!r}")
        if self.y_grid is not None:
            object.__setattr__(self, "y_grid", tuple(self.y_grid))


@dataclass(frozen=True)
class Cell:
    q: int
    X: float
    T: float
    N: int | None
    count: int | None
    predicted: float | None
    discrepancy: float | None
    lrz2_bound: float
    lrz2_pass: bool | None
    density_scale: float | None
    theorem1_residual: float | None = None
    descartes_zeros: int | None = None
    descartes_terms: int | None = None
    descartes_pass: bool | None = None
    error: str | None = None

    @property
    def exit_code(self) -> int:
        if self.error is not None:
            return EXIT_NUMERICAL
        if self.lrz2_pass is False:
            return EXIT_BOUND
        return EXIT_OK


@dataclass(frozen=True)
class DensityRow:
    x: float
    count: int
    ratio: float | None


@dataclass(frozen=True)
class BrunRow:
    y: float
    count: int


@dataclass(frozen=True)
class VerificationReport:
    q: int
    cells: tuple[Cell, ...]
    density: tuple[DensityRow, ...]
    brun: tuple[BrunRow, ...]
    timings: dict = field(default_factory=dict, compare=False)

    @property
    def exit_code(self) -> int:
        return max((c.exit_code for c in self.cells), default=EXIT_OK)

    def to_dict(self, include_timings: bool = False) -> dict:
        out = {
            "q": self.q,
            "cells": [asdict(c) for c in self.cells],
            "density": [asdict(d) for d in self.density],
            "brun": [asdict(b) for b in self.brun],
        }
        if include_timings:
            out["timings"] = dict(self.timings)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationReport":
        return cls(
            q=data["q"],
            cells=tuple(Cell(**c) for c in data["cells"]),
            density=tuple(DensityRow(**d) for d in data["density"]),
            brun=tuple(BrunRow(**b) for b in data["brun"]),
            timings=data.get("timings", {}),
        )


def _run_cell(q, n0, P, X, T, tol, descartes_grid) -> Cell:
    bound = X / 2.0
    try:
        res = count_zeros(P, T, n0, tol)
    except ZetaPartialError as exc:
        return Cell(q, X, T, P.N, None, None, None, bound, None, None, error=f"{type(exc).__name__}: {exc}")
    floor_disc = res.count - predicted_count(T, math.floor(X))
    cell = Cell(
        q=q,
        X=X,
        T=T,
        N=res.N,
        count=res.count,
        predicted=res.predicted,
        discrepancy=res.discrepancy,
        lrz2_bound=bound,
        lrz2_pass=abs(floor_disc) <= bound,
        density_scale=res.density_scale,
        theorem1_residual=None if res.density_scale is None else res.discrepancy / res.density_scale,
    )
    if res.alpha is not None and T != 0:
        d = descartes_check(P, T, res.alpha - tol.margin, res.beta + tol.margin, grid=descartes_grid)
        cell = replace(
            cell,
            descartes_zeros=d.zeros_of_im,
            descartes_terms=d.nonzero_terms,
            descartes_pass=d.zeros_of_im <= d.nonzero_terms,
        )
    return cell


def run_experiment(config: ExperimentConfig) -> VerificationReport:
    """Density, Brun, counting and Descartes checks over the configured grids.

    Failures inside a cell are recorded on that cell; the run continues.
    """
    field_ = cyclotomic_field(config.q)
    tol = config.tolerances
    cells, timings = [], {}
    for X in config.X_grid:
        P = build_partial_sum(field_, X)
        for T in config.T_grid:
            start = time.perf_counter()
            cells.append(_run_cell(config.q, field_.n0, P, X, T, tol, config.descartes_grid))
            timings[f"{X!r},{T!r}"] = time.perf_counter() - start
    xmax = max(config.X_grid)
    table = build_coefficient_table(field_, xmax)
    density = tuple(
        DensityRow(X, count_nonzero_coefficients(table, X), density_ratio(field_, X, table) if X >= 16 else None)
        for X in config.X_grid
    )
    ys = config.y_grid if config.y_grid is not None else config.X_grid
    brun = tuple(BrunRow(y, brun_set_count(config.q, y)) for y in ys)
    return VerificationReport(config.q, tuple(cells), density, brun, timings)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".15g")
    return str(value)


def report_csv(report: VerificationReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(CSV_COLUMNS)
    for cell in report.cells:
        writer.writerow([_fmt(getattr(cell, col)) for col in CSV_COLUMNS])
    return buf.getvalue()


def report_json(report: VerificationReport, include_timings: bool = False) -> str:
    return json.dumps(report.to_dict(include_timings), indent=2) + "\n"


def parse_report_json(text: str) -> VerificationReport:
    return VerificationReport.from_dict(json.loads(text))


def emit(report: VerificationReport, fmt: str = "json", destination="-", include_timings: bool = False) -> None:
    """Write ``report`` as CSV or JSON to a path, an open text file, or ``"-"`` (stdout)."""
    if fmt == "csv":
        text = report_csv(report)
    elif fmt == "json":
        text = report_json(report, include_timings)
    else:
        raise DomainError(f"unknown format {fmt!r}")
    write_text(text, destination)


def write_text(text: str, destination="-") -> None:
    if destination in (None, "-"):
        sys.stdout.write(text)
        return
    if hasattr(destination, "write"):
        destination.write(text)
        return
    try:
        with open(destination, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OutputError(f"cannot write {destination}: {exc}") from exc
