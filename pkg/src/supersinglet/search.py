"""Scans and local optimization over interaction times and detuning."""

from __future__ import annotations

import csv
import io
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass

import numpy as np

from .amplitudes import InteractionParams
from .metrics import PureAtomicState, fidelity, supersinglet
from .optimize import golden_section_max
from .protocol import DEFAULT_CUTOFF, project_cavity, three_atom_state

AXES = ("t1", "t2", "t3", "delta")
CSV_HEADER = ("t1_us", "t2_us", "t3_us", "g_rad_per_us", "delta_rad_per_us", "fidelity", "success_prob")

_TARGET = supersinglet(3)


@dataclass(frozen=True)
class ScanRecord:
    t1: float
    t2: float
    t3: float
    g: float
    delta: float
    fidelity: float
    success_prob: float

    @property
    def times(self) -> tuple[float, float, float]:
        return (self.t1, self.t2, self.t3)


def evaluate(times, g: float, delta: float = 0.0, cutoff: int = DEFAULT_CUTOFF) -> ScanRecord:
    """Run the three-pass protocol with ideal vacuum projection."""
    t1, t2, t3 = (float(t) for t in times)
    p = InteractionParams.symmetric(g, delta)
    atomic, prob = project_cavity(three_atom_state((t1, t2, t3), p, cutoff), 0)
    f = fidelity(PureAtomicState.from_joint(atomic), _TARGET)
    return ScanRecord(t1, t2, t3, float(g), float(delta), f, prob)


def _evaluate_point(point):
    times, g, delta, cutoff = point
    return evaluate(times, g, delta, cutoff)


def _map(points, workers: int):
    # results come back in submission order, so output never depends on workers
    if workers <= 1 or len(points) < 2:
        return [_evaluate_point(pt) for pt in points]
    chunk = max(1, len(points) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_evaluate_point, points, chunksize=chunk))


@dataclass(frozen=True)
class GridSpec:
    """Per-axis ``(start, stop, step)``; ``stop`` is included when on the lattice."""

    axes: dict

    def __post_init__(self):
        for name, (start, stop, step) in self.axes.items():
            if name not in AXES:
                raise ValueError(f"unknown axis {name!r}; expected one of {AXES}")
            if not step > 0:
                raise ValueError(f"axis {name}: step must be positive")
            if start > stop:
                raise ValueError(f"axis {name}: start {start} exceeds stop {stop}")

    def values(self, name: str) -> list[float]:
        start, stop, step = self.axes[name]
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [start + i * step for i in range(count)]


def axis_values(start: float, stop: float, step: float) -> list[float]:
    return GridSpec({"t1": (start, stop, step)}).values("t1")


def scan(grid: GridSpec, fixed: dict, workers: int = 1, cutoff: int = DEFAULT_CUTOFF) -> list[ScanRecord]:
    """Evaluate every grid point; ``fixed`` supplies the remaining axes and ``g``.

    Records are ordered lexicographically over ``t1, t2, t3, delta``.
    """
    fixed = dict(fixed)
    clash = set(grid.axes) & set(fixed)
    if clash:
        raise ValueError(f"axes given both on the grid and as fixed values: {sorted(clash)}")
    g = float(fixed.pop("g", 1.0))
    unknown = set(fixed) - set(AXES)
    if unknown:
        raise ValueError(f"unknown fixed parameters: {sorted(unknown)}")
    missing = [a for a in AXES if a not in grid.axes and a not in fixed]
    if missing:
        raise ValueError(f"parameters neither scanned nor fixed: {missing}")

    columns = [grid.values(a) if a in grid.axes else [float(fixed[a])] for a in AXES]
    points = [((t1, t2, t3), g, d, cutoff) for t1, t2, t3, d in itertools.product(*columns)]
    return _map(points, workers)


def sweep_detuning(times, g: float, deltas, workers: int = 1) -> list[ScanRecord]:
    points = [(tuple(times), g, float(d), DEFAULT_CUTOFF) for d in deltas]
    return _map(points, workers)


def scan_surface(t1: float, t2_values, t3_values, g: float, delta: float = 0.0, workers: int = 1) -> np.ndarray:
    """Fidelity matrix with rows indexed by ``t2`` and columns by ``t3``."""
    t2_values, t3_values = list(t2_values), list(t3_values)
    points = [((t1, a, b), g, delta, DEFAULT_CUTOFF) for a in t2_values for b in t3_values]
    records = _map(points, workers)
    return np.array([r.fidelity for r in records]).reshape(len(t2_values), len(t3_values))


def refine_optimum(seed, g: float, delta: float = 0.0, radius: float = 0.5, tol: float = 1e-3) -> ScanRecord:
    """Cyclic coordinate ascent over ``t1 -> t2 -> t3`` with a halving bracket.

    Each coordinate is maximized by golden-section search inside
    ``[x - r, x + r]`` (clipped at zero); a move is kept only if it strictly
    improves the fidelity, so the result is never worse than the seed.
    """
    x = [float(t) for t in seed]
    best = evaluate(x, g, delta)
    r = radius
    while r >= tol:
        for axis in range(3):
            def f(v, axis=axis):
                trial = list(x)
                trial[axis] = v
                return evaluate(trial, g, delta).fidelity

            lo, hi = max(0.0, x[axis] - r), x[axis] + r
            v, fv = golden_section_max(f, lo, hi, tol=tol / 10)
            if fv > best.fidelity:
                x[axis] = v
                best = evaluate(x, g, delta)
        r /= 2
    return best


def _fmt(value: float) -> str:
    return format(value, ".9g")


def records_to_csv(records, out=None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in records:
        writer.writerow([_fmt(v) for v in astuple(rec)])
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text


def surface_to_csv(t2_values, t3_values, matrix, out=None) -> str:
    """Row-major surface; the header row carries the t3 axis, the first column t2."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t2_us\\t3_us"] + [_fmt(v) for v in t3_values])
    for a, row in zip(t2_values, matrix):
        writer.writerow([_fmt(a)] + [_fmt(v) for v in row])
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text


def reproduce_table(number: int, workers: int = 1) -> list[ScanRecord]:
    from .tables import TABLES, table_params

    g, delta = table_params(number)
    points = [((t1, t2, t3), g, delta, DEFAULT_CUTOFF) for t1, t2, t3, *_ in TABLES[number]]
    return _map(points, workers)
