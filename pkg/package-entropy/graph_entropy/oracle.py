"""
Exact counting of non-backtracking paths of metric length r, and an
entropy estimate from their growth rate.

A combinatorial path e1 ... en from x0 has length r when

    l(e1) + ... + l(e_{n-1}) < r <= l(e1) + ... + l(en).

Lengths are rescaled by the common denominator to integers and the count is
a dynamic programme over (last edge, accumulated length). Counts are Python
integers and nothing here touches the eigenvalue machinery, so the estimate
is an independent check on the solver.
"""

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Any, Iterable, Mapping

import numpy as np
from loguru import logger

from graph_entropy.errors import (
    DegenerateFitError,
    GraphValidationError,
    GridTooLargeError,
    IrrationalLengthError,
)
from graph_entropy.graph import MetricGraph, as_length, require_entropy_hypotheses
from graph_entropy.settings import EntropyConfig, resolve


@dataclass(frozen=True)
class PathCount:
    r: Fraction
    count: int
    by_terminal_edge: Mapping[str, int] | None = None


@dataclass(frozen=True)
class EntropyEstimate:
    """Least-squares slope of log N_r against r; an estimate, never exact."""

    h_est: float
    band: float
    fit_error: float
    apriori_width: float
    base: str
    r_max: Fraction
    radii: tuple[Fraction, ...]
    counts: tuple[int, ...]


@dataclass(frozen=True)
class IntegerGrid:
    scale: int
    lengths: Mapping[str, int]
    lattice: int

    @property
    def max_length(self) -> int:
        return max(self.lengths.values())

    def units(self, r: Fraction) -> int:
        """Smallest grid length R with R >= r * scale."""
        return math.ceil(r * self.scale)

    def snap(self, units: int, step: int | None = None) -> int:
        """Round up to a multiple of ``step`` (default the lattice of achievable
        path lengths, between whose points N is constant)."""
        step = step or self.lattice
        return -(-units // step) * step

    def snap_down(self, units: int, step: int | None = None) -> int:
        """Round down to a multiple of ``step`` (default the lattice)."""
        step = step or self.lattice
        return units // step * step


def integer_grid(g: MetricGraph, config: EntropyConfig | None = None) -> IntegerGrid:
    settings = resolve(config).oracle
    scale = math.lcm(*(link.length.denominator for link in g.links))
    if scale > settings.max_cells:
        raise IrrationalLengthError(
            f"lengths have no usable common denominator (lcm {scale}); "
            "the exact oracle needs rational lengths with small denominators"
        )
    lengths = {e: int(g.length(e) * scale) for e in g.edge_ids}
    return IntegerGrid(scale, MappingProxyType(lengths), math.gcd(*lengths.values()))


def path_lengths_lattice(g: MetricGraph, config: EntropyConfig | None = None) -> Fraction:
    """Spacing of the lattice that contains every path length."""
    grid = integer_grid(g, config)
    return Fraction(grid.lattice, grid.scale)


def _follow(g: MetricGraph) -> dict[str, tuple[str, ...]]:
    follow = {}
    for e in g.edge_ids:
        edge = g.edge(e)
        follow[e] = tuple(f for f in g.outgoing(edge.terminus) if f != edge.reversal)
    return follow


def _cycle_period(grid: IntegerGrid, follow: Mapping[str, tuple[str, ...]]) -> int:
    """gcd of the lengths of closed non-backtracking cycles, in grid units.

    Assign a potential to every edge along a search tree; each arc then
    contributes the gcd of its defect pot(e) + l(f) - pot(f).
    """
    root = next(iter(follow))
    potential = {root: 0}
    stack = [root]
    period = 0
    while stack:
        e = stack.pop()
        for f in follow[e]:
            reached = potential[e] + grid.lengths[f]
            if f not in potential:
                potential[f] = reached
                stack.append(f)
            else:
                period = math.gcd(period, abs(reached - potential[f]))
    return period or grid.lattice


def cycle_period(g: MetricGraph, config: EntropyConfig | None = None) -> Fraction:
    """Spacing at which the path counts grow without oscillation."""
    grid = integer_grid(g, config)
    return Fraction(_cycle_period(grid, _follow(g)), grid.scale)


def _check_cells(g: MetricGraph, span: int, config: EntropyConfig | None) -> None:
    cap = resolve(config).oracle.max_cells
    cells = len(g.edge_ids) * span
    if cells > cap:
        raise GridTooLargeError(f"oracle grid needs {cells} cells, cap is {cap}", witness=cells)


def _path_table(
    grid: IntegerGrid,
    follow: Mapping[str, tuple[str, ...]],
    starts: Iterable[str],
    span: int,
) -> list[dict[str, int]]:
    """table[s][e]: paths from the start edges that end with e and have
    integer length s, for s < span."""
    table: list[dict[str, int]] = [{} for _ in range(span)]
    for e in starts:
        s = grid.lengths[e]
        if s < span:
            table[s][e] = table[s].get(e, 0) + 1
    for s in range(span):
        for e, ways in table[s].items():
            for f in follow[e]:
                t = s + grid.lengths[f]
                if t < span:
                    table[t][f] = table[t].get(f, 0) + ways
    return table


def _crossing(
    table: list[dict[str, int]],
    grid: IntegerGrid,
    follow: Mapping[str, tuple[str, ...]],
    starts: Iterable[str],
    units: int,
) -> Counter:
    """Paths whose length first reaches ``units``, keyed by their last edge."""
    by_last: Counter = Counter()
    for e in starts:
        if grid.lengths[e] >= units:
            by_last[e] += 1
    for s in range(max(0, units - grid.max_length), units):
        for e, ways in table[s].items():
            for f in follow[e]:
                if s + grid.lengths[f] >= units:
                    by_last[f] += ways
    return by_last


def _radius(r: Any) -> Fraction:
    radius = as_length(r)
    if radius <= 0:
        raise GraphValidationError(f"radius must be positive, got {radius}")
    return radius


def _count(
    g: MetricGraph,
    starts: tuple[str, ...],
    r: Any,
    config: EntropyConfig | None,
) -> tuple[Fraction, Counter]:
    require_entropy_hypotheses(g)
    radius = _radius(r)
    grid = integer_grid(g, config)
    units = grid.units(radius)
    _check_cells(g, units, config)
    follow = _follow(g)
    table = _path_table(grid, follow, starts, units)
    return radius, _crossing(table, grid, follow, starts, units)


def count_paths(g: MetricGraph, x0: str, r: Any, config: EntropyConfig | None = None) -> PathCount:
    """N_r(x0), with the breakdown by terminal edge."""
    radius, by_last = _count(g, g.outgoing(x0), r, config)
    return PathCount(radius, sum(by_last.values()), MappingProxyType(dict(sorted(by_last.items()))))


def count_paths_between(g: MetricGraph, e: str, f: str, r: Any, config: EntropyConfig | None = None) -> int:
    """N_r(e, f): paths of length r starting with ``e`` and ending with ``f``."""
    g.edge(f)
    _, by_last = _count(g, (g.edge(e).id,), r, config)
    return by_last.get(f, 0)


def estimate_entropy(
    g: MetricGraph,
    x0: str,
    r_max: Any = None,
    config: EntropyConfig | None = None,
) -> EntropyEstimate:
    config = resolve(config)
    settings = config.oracle
    require_entropy_hypotheses(g)
    starts = g.outgoing(x0)
    r_max = _radius(r_max if r_max is not None else settings.default_r_max)
    grid = integer_grid(g, config)

    follow = _follow(g)
    period = _cycle_period(grid, follow)
    half = r_max / 2
    step = half / max(settings.grid_points - 1, 1)
    # radii round up to the period, except past r_max where they round down
    limit = math.floor(r_max * grid.scale)
    snapped = (grid.snap(grid.units(half + i * step), period) for i in range(settings.grid_points))
    units = sorted({u if u <= limit else grid.snap_down(limit, period) for u in snapped} - {0})
    if len(units) < settings.min_grid_points:
        raise DegenerateFitError(
            f"only {len(units)} distinct radii at cycle period {Fraction(period, grid.scale)}, "
            f"need {settings.min_grid_points}"
        )
    span = units[-1]
    lag = max(span - grid.max_length, 1)
    _check_cells(g, span, config)
    logger.debug(
        "oracle grid: scale {}, lattice {}, period {}, span {}, {} radii",
        grid.scale,
        grid.lattice,
        period,
        span,
        len(units),
    )

    table = _path_table(grid, follow, starts, span)
    counts = [sum(_crossing(table, grid, follow, starts, u).values()) for u in units]
    if counts[-1] < settings.min_count:
        raise GraphValidationError(
            f"r_max {r_max} too small: N = {counts[-1]} < {settings.min_count}", witness=counts[-1]
        )
    lagged = sum(_crossing(table, grid, follow, starts, lag).values())

    radii = np.array([u / grid.scale for u in units], dtype=np.float64)
    logs = np.array([math.log(c) for c in counts])
    slope, intercept = np.polyfit(radii, logs, 1)
    residuals = logs - (slope * radii + intercept)
    spread = float(((radii - radii.mean()) ** 2).sum())
    fit_error = math.sqrt(float((residuals**2).sum()) / max(len(radii) - 2, 1) / spread)
    apriori = (math.log(counts[-1]) - math.log(lagged)) / float(radii[-1])
    return EntropyEstimate(
        h_est=float(slope),
        band=fit_error + apriori,
        fit_error=fit_error,
        apriori_width=apriori,
        base=x0,
        r_max=r_max,
        radii=tuple(Fraction(u, grid.scale) for u in units),
        counts=tuple(counts),
    )
