"""Classical baseline, parameter sweeps, CSV I/O and log-log scaling fits."""

from __future__ import annotations

import csv
import enum
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import groupby

import numpy as np

from ._validation import InfeasibleSizeError, check_feasible, check_hint_size, check_int, check_seed
from .amplification import ScheduleMode
from .flat import run_flat_search
from .instances import StructuredInstance, generate_flat, generate_structured, query_F, query_G
from .structured import run_structured_search

CSV_HEADER = (
    "algorithm", "size", "M", "seed", "mode", "f_calls", "g_calls",
    "total_calls", "success_probability", "outcome_x", "outcome_y", "elapsed_ms",
)


class Algorithm(enum.Enum):
    STRUCTURED_Q = "structured_q"
    FLAT_Q = "flat_q"
    CLASSICAL = "classical"


@dataclass(frozen=True)
class SweepRow:
    algorithm: Algorithm
    size: int
    M: int
    seed: int
    mode: str
    f_calls: int
    g_calls: int
    success_probability: float
    outcome_x: int
    outcome_y: int
    elapsed_ms: float = 0.0

    @property
    def total_calls(self) -> int:
        return self.f_calls + self.g_calls

    @property
    def sort_key(self):
        return (self.algorithm.value, self.size, self.M, self.seed)

    def as_record(self) -> list[str]:
        return [
            self.algorithm.value, str(self.size), str(self.M), str(self.seed), self.mode,
            str(self.f_calls), str(self.g_calls), str(self.total_calls),
            f"{self.success_probability:.17g}", str(self.outcome_x), str(self.outcome_y),
            f"{self.elapsed_ms:.17g}",
        ]


def classical_structured_scan(inst: StructuredInstance) -> SweepRow:
    """Scan x ascending; for each x with G(x) = 1 scan y ascending until F hits."""
    start = time.perf_counter()
    f0, g0 = inst.f_counter, inst.g_counter
    found = None
    for x in range(1, inst.L + 1):
        if not query_G(inst, x):
            continue
        for y in range(1, inst.L + 1):
            if query_F(inst, x, y):
                found = (x, y)
                break
        if found:
            break
    assert found is not None, "x0 is guaranteed to lie in the hint set"
    return SweepRow(
        algorithm=Algorithm.CLASSICAL,
        size=inst.L,
        M=inst.M,
        seed=inst.seed,
        mode="n/a",
        f_calls=inst.f_counter - f0,
        g_calls=inst.g_counter - g0,
        success_probability=1.0,
        outcome_x=found[0],
        outcome_y=found[1],
        elapsed_ms=(time.perf_counter() - start) * 1e3,
    )


def run_structured_row(L: int, M: int, seed: int, mode) -> SweepRow:
    mode = ScheduleMode.coerce(mode)
    inst = generate_structured(L, M, seed)
    start = time.perf_counter()
    res = run_structured_search(inst, mode)
    return SweepRow(Algorithm.STRUCTURED_Q, L, M, seed, mode.value, res.f_calls, res.g_calls,
                    res.success_probability, res.outcome_x, res.outcome_y,
                    (time.perf_counter() - start) * 1e3)


def run_flat_row(N: int, M: int, seed: int, mode) -> SweepRow:
    mode = ScheduleMode.coerce(mode)
    inst = generate_flat(N, M, seed)
    start = time.perf_counter()
    res = run_flat_search(inst, mode)
    return SweepRow(Algorithm.FLAT_Q, N, M, seed, mode.value, res.f_calls, res.g_calls,
                    res.success_probability, res.outcome_x, 0,
                    (time.perf_counter() - start) * 1e3)


def run_classical_row(L: int, M: int, seed: int) -> SweepRow:
    return classical_structured_scan(generate_structured(L, M, seed))


# -- sweeps -------------------------------------------------------------------


@dataclass
class SweepConfig:
    """A grid of (algorithm, size, M, seed) cells.

    ``seeds`` is the number of seeds per cell, overridable per algorithm via
    ``seeds_by_algorithm``; cell seeds are ``base_seed, base_seed + 1, ...``.
    ``elapsed_ms`` is written as 0 unless ``timing`` is set, which keeps
    repeated sweeps byte-identical.
    """

    algorithms: list[Algorithm] = field(default_factory=list)
    sizes: list[int] = field(default_factory=list)
    hint_sizes: list[int] = field(default_factory=list)
    seeds: int = 1
    seeds_by_algorithm: dict[Algorithm, int] = field(default_factory=dict)
    base_seed: int = 0
    mode: ScheduleMode = ScheduleMode.PAPER
    workers: int = 1
    timing: bool = False

    def seeds_for(self, algorithm: Algorithm) -> list[int]:
        n = self.seeds_by_algorithm.get(algorithm, self.seeds)
        return [self.base_seed + i for i in range(n)]

    def cells(self) -> list[tuple[Algorithm, int, int, int]]:
        return [
            (alg, size, M, seed)
            for alg in self.algorithms
            for size in self.sizes
            for M in self.hint_sizes
            for seed in self.seeds_for(alg)
        ]


def _int_list(text: str) -> list[int]:
    return [int(v) for v in text.replace(" ", "").split(",") if v]


def _parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def parse_sweep_config(text: str) -> SweepConfig:
    """Parse ``key=value`` lines; ``#`` starts a comment.

    Keys: ``algorithms``, ``sizes``, ``M``, ``seeds``, ``seeds.<algorithm>``,
    ``base_seed``, ``mode``, ``workers``, ``timing``.
    """
    cfg = SweepConfig()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"line {lineno}: expected key=value, got {raw!r}")
        key, value = key.strip(), value.strip()
        try:
            if key == "algorithms":
                cfg.algorithms = [Algorithm(v.strip().lower()) for v in value.split(",") if v.strip()]
            elif key == "sizes":
                cfg.sizes = _int_list(value)
            elif key == "M":
                cfg.hint_sizes = _int_list(value)
            elif key == "seeds":
                cfg.seeds = check_int(int(value), "seeds", low=0)
            elif key.startswith("seeds."):
                alg = Algorithm(key.split(".", 1)[1].lower())
                cfg.seeds_by_algorithm[alg] = check_int(int(value), key, low=0)
            elif key == "base_seed":
                cfg.base_seed = check_seed(int(value))
            elif key == "mode":
                cfg.mode = ScheduleMode.coerce(value)
            elif key == "workers":
                cfg.workers = check_int(int(value), "workers", low=1)
            elif key == "timing":
                cfg.timing = _parse_bool(value)
            else:
                raise ValueError(f"unknown key {key!r}")
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return cfg


def validate_sweep(config: SweepConfig) -> None:
    """Reject infeasible or inconsistent grids before any work starts."""
    for alg in config.algorithms:
        for size in config.sizes:
            check_int(size, "size", low=2)
            check_feasible(size, two_register=alg is not Algorithm.FLAT_Q)
            for M in config.hint_sizes:
                check_hint_size(M, size)
    last = config.base_seed + max([config.seeds, *config.seeds_by_algorithm.values()], default=0) - 1
    check_seed(max(last, 0))


def _run_cell(cell) -> SweepRow:
    alg, size, M, seed, mode = cell
    if alg is Algorithm.STRUCTURED_Q:
        return run_structured_row(size, M, seed, mode)
    if alg is Algorithm.FLAT_Q:
        return run_flat_row(size, M, seed, mode)
    return run_classical_row(size, M, seed)


def run_sweep(config: SweepConfig) -> list[SweepRow]:
    validate_sweep(config)
    cells = [(*c, config.mode) for c in config.cells()]
    if config.workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            rows = list(pool.map(_run_cell, cells))
    else:
        rows = [_run_cell(c) for c in cells]
    if not config.timing:
        rows = [_without_timing(r) for r in rows]
    return sorted(rows, key=lambda r: r.sort_key)


def _without_timing(row: SweepRow) -> SweepRow:
    return SweepRow(**{**row.__dict__, "elapsed_ms": 0.0})


# -- CSV ----------------------------------------------------------------------


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.as_record())
    return buf.getvalue()


def write_csv(rows, path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(rows_to_csv(rows))


def read_csv(path) -> list[SweepRow]:
    with open(path, newline="") as fh:
        return parse_csv(fh.read())


def parse_csv(text: str) -> list[SweepRow]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or tuple(header) != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header!r}")
    rows = []
    for rec in reader:
        if not rec:
            continue
        row = SweepRow(
            algorithm=Algorithm(rec[0]),
            size=int(rec[1]),
            M=int(rec[2]),
            seed=int(rec[3]),
            mode=rec[4],
            f_calls=int(rec[5]),
            g_calls=int(rec[6]),
            success_probability=float(rec[8]),
            outcome_x=int(rec[9]),
            outcome_y=int(rec[10]),
            elapsed_ms=float(rec[11]),
        )
        if row.total_calls != int(rec[7]):
            raise ValueError(f"total_calls != f_calls + g_calls in row {rec!r}")
        rows.append(row)
    return rows


# -- scaling fits -------------------------------------------------------------


@dataclass(frozen=True)
class FitReport:
    slope: float
    intercept: float
    r_squared: float
    n_points: int

    def __str__(self) -> str:
        return (f"slope={self.slope:.6f} intercept={self.intercept:.6f} "
                f"r_squared={self.r_squared:.6f} n_points={self.n_points}")


def fit_loglog(xs, ys) -> FitReport:
    """Least-squares line through ``(log x, log y)``."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise ValueError("xs and ys must be 1-D sequences of equal length")
    if xs.size < 3:
        raise ValueError(f"need at least 3 points for a fit, got {xs.size}")
    if np.any(xs <= 0) or np.any(ys <= 0):
        raise ValueError("log-log fit needs strictly positive values")
    lx, ly = np.log(xs), np.log(ys)
    if np.ptp(lx) == 0:
        raise ValueError("x values are all equal")
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    ss_res = float(np.sum(resid**2))
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return FitReport(float(slope), float(intercept), r2, int(xs.size))


def cell_means(rows, x_expr: str = "ml", y_expr: str = "total_calls") -> list[tuple[float, float]]:
    """Average ``y_expr`` over seeds in each (size, M) cell, paired with its x value."""
    if x_expr not in ("ml", "n"):
        raise ValueError(f"x_expr must be 'ml' or 'n', got {x_expr!r}")
    key = lambda r: (r.size, r.M)
    points = []
    for (size, M), group in groupby(sorted(rows, key=key), key=key):
        values = [float(getattr(r, y_expr)) for r in group]
        x = size * M if x_expr == "ml" else size
        points.append((float(x), math.fsum(values) / len(values)))
    return points


def fit_scaling(rows, x_expr: str = "ml", y_expr: str = "total_calls") -> FitReport:
    """Fit log(mean y) against log(size * M) (``'ml'``) or log(size) (``'n'``)."""
    points = cell_means(rows, x_expr, y_expr)
    if len(points) < 3:
        raise ValueError(f"need at least 3 (size, M) cells for a fit, got {len(points)}")
    xs, ys = zip(*points)
    return fit_loglog(xs, ys)


__all__ = [
    "Algorithm", "CSV_HEADER", "FitReport", "InfeasibleSizeError", "SweepConfig", "SweepRow",
    "cell_means", "classical_structured_scan", "fit_loglog", "fit_scaling", "parse_csv",
    "parse_sweep_config", "read_csv", "rows_to_csv", "run_classical_row", "run_flat_row",
    "run_structured_row", "run_sweep", "validate_sweep", "write_csv",
]
