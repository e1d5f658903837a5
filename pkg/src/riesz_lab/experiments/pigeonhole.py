"""Three-sector pigeonhole selection of a function with small energy on A."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import InputError

SECTOR = 2 * math.pi / 3
SECTOR_SLACK = 1e-12


def sector_sum_lowerbound(values) -> tuple[float, float]:
    """Return (|Σ v|, Σ |v|) for values confined to a 120° sector.

    Zero values carry no direction and are ignored in the confinement check.
    """
    z = np.asarray(values, dtype=complex).ravel()
    nz = z[z != 0]
    if nz.size > 1:
        ang = np.sort(np.mod(np.angle(nz), 2 * math.pi))
        gaps = np.diff(np.concatenate([ang, [ang[0] + 2 * math.pi]]))
        # the values fit in a sector iff the complementary gap is at least 240°
        if gaps.max() < 2 * math.pi - SECTOR - SECTOR_SLACK:
            raise InputError("values do not lie in a common 120° sector")
    return float(abs(z.sum())), float(np.abs(z).sum())


@dataclass(frozen=True)
class PigeonholeResult:
    index: int
    energy: float
    bound: float
    sector: int
    witness_point: float
    witness_index: int
    sector_size: int
    M: float
    N: int
    A_measure: float
    hypothesis_holds: bool
    hypothesis_ratio: float

    @property
    def conclusion_holds(self) -> bool:
        return self.energy <= self.bound

    def to_dict(self):
        return dict(self.__dict__)


def sector_of(z) -> np.ndarray:
    """Sector label j ∈ {1, 2, 3} with arg z ∈ [2π(j-1)/3, 2πj/3)."""
    ang = np.mod(np.angle(np.asarray(z, dtype=complex)), 2 * math.pi)
    return np.minimum((ang // SECTOR).astype(int), 2) + 1


def sector_pigeonhole_select(samples, A_measure: float, M: float, *, weights=None, grid=None) -> PigeonholeResult:
    """Pick i₀ with small ∫_A |g_i|², following the three-sector argument.

    ``samples[i, p]`` is g_i at grid point p. ``weights`` are quadrature
    weights summing to |A| (uniform if omitted) and ``grid`` the point
    coordinates (indices if omitted). The witness x₀ maximises Σ|g_i(x)|²;
    the heaviest sector is the one with the largest Σ|g_i(x₀)|. The
    subset-sum hypothesis |Σ_{i∈U} g_i| <= M√|U| is checked on the grid for
    U = that sector, U = all indices and every singleton.
    """
    g = np.asarray(samples, dtype=complex)
    if g.ndim != 2 or g.size == 0:
        raise InputError("samples must be a non-empty (N, points) array")
    if not M > 0:
        raise InputError(f"M must be positive, got {M}")
    if not A_measure > 0:
        raise InputError(f"|A| must be positive, got {A_measure}")
    N, P = g.shape
    w = np.full(P, A_measure / P) if weights is None else np.asarray(weights, dtype=float)
    if w.shape != (P,):
        raise InputError("weights must match the grid")
    mag2 = np.abs(g) ** 2
    energies = mag2 @ w
    p0 = int(np.argmax(mag2.sum(axis=0)))
    at_x0 = g[:, p0]
    labels = sector_of(at_x0)
    mass = [np.abs(at_x0[labels == j]).sum() for j in (1, 2, 3)]
    j = int(np.argmax(mass)) + 1
    U = labels == j
    i0 = int(np.argmin(energies))

    checks = [np.abs(g).max() / M]
    checks.append(np.abs(g.sum(axis=0)).max() / (M * math.sqrt(N)))
    if U.any():
        checks.append(np.abs(g[U].sum(axis=0)).max() / (M * math.sqrt(U.sum())))
    ratio = float(max(checks))
    x0 = float(grid[p0]) if grid is not None else float(p0)
    return PigeonholeResult(
        index=i0,
        energy=float(energies[i0]),
        bound=6 * M**2 * A_measure / math.sqrt(N),
        sector=j,
        witness_point=x0,
        witness_index=p0,
        sector_size=int(U.sum()),
        M=float(M),
        N=N,
        A_measure=float(A_measure),
        hypothesis_holds=ratio <= 1 + 1e-12,
        hypothesis_ratio=ratio,
    )


def random_pigeonhole_instance(rng: np.random.Generator, N: int, points: int = 64, A_measure: float = 1.0):
    """Random-phase g_i on a uniform grid with a certified M.

    M = max_x ||(g_i(x))_i||₂, so Cauchy-Schwarz gives
    |Σ_{i∈U} g_i(x)| <= √|U| ||g(x)||₂ <= M√|U| for every U.
    Amplitudes are random smooth bumps so energies differ between indices.
    """
    if N < 1 or points < 1:
        raise InputError("need N >= 1 and at least one grid point")
    x = (np.arange(points) + 0.5) / points * A_measure
    centers = rng.random(N) * A_measure
    widths = (0.05 + 0.5 * rng.random(N)) * A_measure
    amp = rng.random(N)[:, None] * np.exp(-(((x[None, :] - centers[:, None]) / widths[:, None]) ** 2))
    phase = np.exp(2j * math.pi * (rng.random(N)[:, None] + rng.normal(size=(N, 1)) * x[None, :] / A_measure))
    g = amp * phase
    M = float(np.sqrt((np.abs(g) ** 2).sum(axis=0)).max())
    return g, x, M
