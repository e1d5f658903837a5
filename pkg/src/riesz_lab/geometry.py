"""Bounded sets used by the experiments.

Finite unions of closed intervals on the line, the area-one disk, the
iterated interval family built by repeated splitting of the last interval,
and the crescent-shaped regions left over when a disk is moved against
another disk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError

MERGE_TOL = 1e-12


@dataclass(frozen=True, order=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise InputError(f"non-finite interval endpoint: [{self.lo}, {self.hi}]")
        if not self.lo < self.hi:
            raise InputError(f"interval needs lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def length(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)


@dataclass(frozen=True)
class IntervalSet:
    """Sorted, pairwise disjoint union of closed intervals.

    Build instances with :func:`normalize_intervals`; the constructor
    trusts its input.
    """

    intervals: tuple[Interval, ...] = ()

    def __len__(self):
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    @property
    def measure(self) -> float:
        return measure(self)

    @property
    def empty(self) -> bool:
        return not self.intervals

    @property
    def lows(self) -> np.ndarray:
        return np.array([iv.lo for iv in self.intervals], dtype=float)

    @property
    def highs(self) -> np.ndarray:
        return np.array([iv.hi for iv in self.intervals], dtype=float)

    @property
    def diameter(self) -> float:
        if not self.intervals:
            return 0.0
        return self.intervals[-1].hi - self.intervals[0].lo

    def contains(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=bool)
        for iv in self.intervals:
            out |= (x >= iv.lo) & (x <= iv.hi)
        return out

    def pairs(self) -> list[tuple[float, float]]:
        return [(iv.lo, iv.hi) for iv in self.intervals]

    @classmethod
    def from_pairs(cls, raw) -> "IntervalSet":
        return normalize_intervals(raw)

    def __add__(self, t: float) -> "IntervalSet":
        return translate_set(self, t)

    def __and__(self, other: "IntervalSet") -> "IntervalSet":
        return set_boolean(self, other, "intersect")

    def __or__(self, other: "IntervalSet") -> "IntervalSet":
        return set_boolean(self, other, "union")

    def __sub__(self, other: "IntervalSet") -> "IntervalSet":
        return set_boolean(self, other, "subtract")


def normalize_intervals(raw: Iterable[Sequence[float]], tol: float = MERGE_TOL) -> IntervalSet:
    """Sort and merge ``(lo, hi)`` pairs into an :class:`IntervalSet`.

    Pairs closer than ``tol`` (or touching) are merged, zero-length pairs
    are dropped.
    """
    pairs = []
    for item in raw:
        if isinstance(item, Interval):
            lo, hi = item.lo, item.hi
        else:
            lo, hi = item
        lo, hi = float(lo), float(hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise InputError(f"non-finite interval endpoint: ({lo}, {hi})")
        if lo > hi:
            raise InputError(f"interval with lo > hi: ({lo}, {hi})")
        if hi - lo <= 0.0:
            continue
        pairs.append((lo, hi))
    pairs.sort()
    merged: list[list[float]] = []
    for lo, hi in pairs:
        if merged and lo <= merged[-1][1] + tol:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return IntervalSet(tuple(Interval(lo, hi) for lo, hi in merged))


def measure(S: IntervalSet) -> float:
    return math.fsum(iv.hi - iv.lo for iv in S.intervals)


def translate_set(S: IntervalSet, t: float) -> IntervalSet:
    return IntervalSet(tuple(Interval(iv.lo + t, iv.hi + t) for iv in S.intervals))


def _boundary_sweep(S: IntervalSet, T: IntervalSet, keep) -> IntervalSet:
    events = []
    for iv in S.intervals:
        events += [(iv.lo, 0, 1), (iv.hi, 0, -1)]
    for iv in T.intervals:
        events += [(iv.lo, 1, 1), (iv.hi, 1, -1)]
    # openings before closings at a shared coordinate
    events.sort(key=lambda e: (e[0], -e[2]))
    depth = [0, 0]
    out = []
    start = None
    for x, which, step in events:
        depth[which] += step
        inside = keep(depth[0] > 0, depth[1] > 0)
        if inside and start is None:
            start = x
        elif not inside and start is not None:
            out.append((start, x))
            start = None
    return normalize_intervals(out)


_OPS = {
    "intersect": lambda a, b: a and b,
    "union": lambda a, b: a or b,
    "subtract": lambda a, b: a and not b,
}


def set_boolean(S: IntervalSet, T: IntervalSet, op: str) -> IntervalSet:
    try:
        keep = _OPS[op]
    except KeyError:
        raise InputError(f"unknown set operation {op!r}; expected one of {sorted(_OPS)}") from None
    return _boundary_sweep(S, T, keep)


# -- the iterated family -----------------------------------------------------


@dataclass(frozen=True)
class Stage:
    """One refinement step of the iterated family.

    ``parent`` is the interval that was split into ``splits + 1`` equal
    pieces; from each piece the left ``1/k`` is kept.
    """

    k: int
    splits: int
    parent: Interval
    eps: float
    kept: tuple[Interval, ...]

    @property
    def usable(self) -> tuple[Interval, ...]:
        return self.kept[:-1]

    @property
    def continuation(self) -> Interval:
        return self.kept[-1]

    @property
    def gap(self) -> float:
        return self.kept[1].lo - self.kept[0].hi if len(self.kept) > 1 else float("nan")


@dataclass(frozen=True)
class PaperSetStages:
    stages: int
    split_counts: tuple[int, ...]
    sets: tuple[IntervalSet, ...]
    steps: tuple[Stage, ...] = field(default=())

    @property
    def final(self) -> IntervalSet:
        return self.sets[-1]

    @property
    def eps(self) -> float:
        """Kept length at the last stage (nan for a single stage)."""
        return self.steps[-1].eps if self.steps else float("nan")

    @property
    def usable(self) -> tuple[Interval, ...]:
        return self.steps[-1].usable if self.steps else ()

    @property
    def continuation(self) -> Interval:
        return self.steps[-1].continuation if self.steps else self.sets[0].intervals[-1]

    def stage_set(self, k: int) -> IntervalSet:
        return self.sets[k - 1]


def default_split_counts(n: int) -> list[int]:
    return [3**k for k in range(2, n + 1)]


def build_paper_set(stages: int, split_counts: Sequence[int] | None = None) -> PaperSetStages:
    """Build S_1 ⊇ S_2 ⊇ ... ⊇ S_n.

    S_1 = [0,1] ∪ [2,3]. At stage k the last interval of S_{k-1} is cut into
    ``split_counts[k-2] + 1`` equal pieces and only the left 1/k of every
    piece survives, so the survivors have equal length eps_k and gaps
    (k-1)·eps_k.
    """
    n = int(stages)
    if n < 1:
        raise InputError(f"stages must be >= 1, got {stages}")
    if split_counts is None:
        split_counts = default_split_counts(n)
    split_counts = tuple(int(s) for s in split_counts)
    if len(split_counts) != n - 1:
        raise InputError(f"need {n - 1} split counts for {n} stages, got {len(split_counts)}")
    if any(s < 1 for s in split_counts):
        raise InputError(f"split counts must be positive, got {split_counts}")

    current = [Interval(0.0, 1.0), Interval(2.0, 3.0)]
    sets = [IntervalSet(tuple(current))]
    steps = []
    for k, N in zip(range(2, n + 1), split_counts):
        parent = current.pop()
        pitch = parent.length / (N + 1)
        eps = pitch / k
        kept = []
        for j in range(N + 1):
            lo = parent.lo + j * pitch
            kept.append(Interval(lo, lo + eps))
        current.extend(kept)
        sets.append(IntervalSet(tuple(current)))
        steps.append(Stage(k=k, splits=N, parent=parent, eps=eps, kept=tuple(kept)))
    return PaperSetStages(stages=n, split_counts=split_counts, sets=tuple(sets), steps=tuple(steps))


def long_intervals(S: IntervalSet, eps: float) -> list[Interval]:
    # strictly longer than eps, with slack for the arithmetic that produced eps
    return [iv for iv in S.intervals if iv.length > eps * (1 + 1e-9)]


def left_edge_region(stages: PaperSetStages, n: int, eps: float) -> IntervalSet:
    """Union of the windows [a - n·eps, a + eps] over left endpoints ``a``
    of the intervals of S_n longer than ``eps``.

    Overlapping windows are merged; compare the measure against
    ``count_long * (n + 1) * eps`` to detect that.
    """
    if n != stages.stages:
        raise InputError(f"stage mismatch: construction has {stages.stages} stages, got n={n}")
    if not eps > 0:
        raise InputError(f"eps must be positive, got {eps}")
    if stages.steps and not math.isclose(eps, stages.eps, rel_tol=1e-9):
        raise InputError(f"eps={eps} is not the stage-{n} kept length {stages.eps}")
    longs = long_intervals(stages.final, eps)
    return normalize_intervals([(iv.lo - n * eps, iv.lo + eps) for iv in longs])


# -- disks and lunes -------------------------------------------------------------


@dataclass(frozen=True)
class Disk:
    radius: float = 1.0 / math.sqrt(math.pi)
    center: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise InputError(f"disk radius must be positive, got {self.radius}")
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))

    @property
    def area(self) -> float:
        return math.pi * self.radius**2

    @property
    def measure(self) -> float:
        return self.area

    def contains(self, points) -> np.ndarray:
        p = np.asarray(points, dtype=float)
        return np.hypot(p[..., 0] - self.center[0], p[..., 1] - self.center[1]) <= self.radius


def disk_lune_area(r: float, d: float) -> float:
    """Area of D minus (D + t) for a disk of radius r and |t| = d."""
    if r <= 0 or d < 0:
        raise InputError(f"need r > 0 and d >= 0, got r={r}, d={d}")
    if d == 0:
        return 0.0
    if d >= 2 * r:
        return math.pi * r * r
    lens = 2 * r * r * math.acos(d / (2 * r)) - 0.5 * d * math.sqrt(4 * r * r - d * d)
    return max(math.pi * r * r - lens, 0.0)


def lune_nodes(
    r: float,
    d_outer: float,
    d_inner: float,
    theta: float,
    n_radial: int = 256,
    n_angular: int = 512,
) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature nodes for {x : |x + d_outer·u| <= r, |x + d_inner·u| > r}.

    Here u = (cos θ, sin θ), so the region is the part of the disk centred
    at -d_outer·u not covered by the disk centred at -d_inner·u (both of
    radius r, d_outer > d_inner >= 0). With d_inner = 0 this is the lune
    (D - d_outer·u) \\ D.

    In coordinates (X, Y) along and across u, each horizontal chord is a
    single segment X ∈ [-d_outer - w, min(w - d_outer, -d_inner - w)] with
    w = sqrt(r² - Y²). Y = r sin φ removes the square-root endpoint
    behaviour; φ is split where the chord switches branch. Gauss-Legendre
    in both variables.
    """
    if r <= 0 or d_inner < 0 or d_outer <= d_inner:
        raise InputError(f"need r > 0 and d_outer > d_inner >= 0, got {r}, {d_outer}, {d_inner}")
    u = np.array([math.cos(theta), math.sin(theta)])
    v = np.array([-u[1], u[0]])
    breaks = [-math.pi / 2, math.pi / 2]
    q = (d_outer - d_inner) / (2 * r)
    if q < 1:
        pk = math.acos(q)
        breaks = [-math.pi / 2, -pk, pk, math.pi / 2]
    pieces = len(breaks) - 1
    ax, aw = np.polynomial.legendre.leggauss(max(2, n_angular // pieces))
    gx, gw = np.polynomial.legendre.leggauss(n_radial)
    pts, wts = [], []
    for p0, p1 in zip(breaks[:-1], breaks[1:]):
        phi = 0.5 * (p0 + p1) + 0.5 * (p1 - p0) * ax
        wphi = 0.5 * (p1 - p0) * aw * r * np.cos(phi)
        Y = r * np.sin(phi)
        w = r * np.cos(phi)
        lo = -d_outer - w
        hi = np.minimum(w - d_outer, -d_inner - w)
        half = 0.5 * (hi - lo)
        X = (lo + half)[:, None] + half[:, None] * gx[None, :]
        W = (half * wphi)[:, None] * gw[None, :]
        P = X[..., None] * u + Y[:, None, None] * v
        pts.append(P.reshape(-1, 2))
        wts.append(W.reshape(-1))
    return np.concatenate(pts), np.concatenate(wts)


def lens_nodes(r: float, d: float, theta: float, n_radial: int = 256, n_angular: int = 512):
    """Quadrature nodes for D ∩ (D - d·u), the overlap of a centred disk
    and its translate; same chord parametrisation as :func:`lune_nodes`."""
    if r <= 0 or d < 0:
        raise InputError(f"need r > 0 and d >= 0, got r={r}, d={d}")
    if d >= 2 * r:
        return np.zeros((0, 2)), np.zeros(0)
    u = np.array([math.cos(theta), math.sin(theta)])
    v = np.array([-u[1], u[0]])
    pk = math.acos(d / (2 * r))
    ax, aw = np.polynomial.legendre.leggauss(n_angular)
    gx, gw = np.polynomial.legendre.leggauss(n_radial)
    phi = pk * ax
    wphi = pk * aw * r * np.cos(phi)
    Y = r * np.sin(phi)
    w = r * np.cos(phi)
    lo, hi = -w, w - d
    half = 0.5 * (hi - lo)
    X = (lo + half)[:, None] + half[:, None] * gx[None, :]
    W = (half * wphi)[:, None] * gw[None, :]
    P = X[..., None] * u + Y[:, None, None] * v
    return P.reshape(-1, 2), W.reshape(-1)
