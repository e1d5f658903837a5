"""Brute-force quadrature, used only to check the closed forms."""

from __future__ import annotations

import numpy as np

from ..errors import InputError
from ..geometry import Disk, IntervalSet


def simpson_weights(m: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    if m % 2 == 0:
        m += 1
    x = np.linspace(a, b, m)
    h = (b - a) / (m - 1)
    w = np.full(m, 2.0)
    w[1::2] = 4.0
    w[0] = w[-1] = 1.0
    return x, w * h / 3.0


def quadrature_oracle(integrand, domain, nodes: int = 1001) -> complex:
    """Integrate ``integrand`` over an interval set (composite Simpson with
    ``nodes`` points per interval) or a disk (Simpson in the radius times
    the periodic trapezoid rule in the angle, ``nodes`` each)."""
    if int(nodes) < 2:
        raise InputError(f"node count must be at least 2, got {nodes}")
    nodes = int(nodes)
    if isinstance(domain, IntervalSet):
        total = 0.0 + 0.0j
        for iv in domain.intervals:
            x, w = simpson_weights(nodes, iv.lo, iv.hi)
            total += np.sum(np.asarray(integrand(x)) * w)
        return complex(total)
    if isinstance(domain, Disk):
        rho, wr = simpson_weights(nodes, 0.0, domain.radius)
        phi = 2 * np.pi * np.arange(nodes) / nodes
        wphi = 2 * np.pi / nodes
        total = 0.0 + 0.0j
        cx, cy = domain.center
        for r_i, w_i in zip(rho, wr):
            if r_i == 0.0:
                continue
            pts = np.stack([cx + r_i * np.cos(phi), cy + r_i * np.sin(phi)], axis=1)
            total += w_i * r_i * wphi * np.sum(np.asarray(integrand(pts)))
        return complex(total)
    raise InputError(f"unsupported domain type {type(domain).__name__}")
