"""Closed-form Fourier transforms of indicators and of the mollifier.

Sign convention throughout: ft_S(t) = ∫_S e(+t x) dx with e(x) = exp(2πix).
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import InputError
from ..geometry import IntervalSet
from .bessel import jinc


class _Neumaier:
    """Compensated accumulator for complex arrays, per real component."""

    def __init__(self, shape):
        self.s = np.zeros(shape + (2,))
        self.c = np.zeros(shape + (2,))

    def add(self, z):
        x = np.stack([np.real(z), np.imag(z)], axis=-1)
        t = self.s + x
        big = np.abs(self.s) >= np.abs(x)
        self.c += np.where(big, (self.s - t) + x, (x - t) + self.s)
        self.s = t

    @property
    def value(self):
        v = self.s + self.c
        return v[..., 0] + 1j * v[..., 1]


def interval_ft(lo: float, hi: float, t) -> np.ndarray:
    # length · e(t·mid) · sinc(t·length); free of cancellation near t = 0
    L = hi - lo
    m = 0.5 * (lo + hi)
    return L * np.exp(2j * np.pi * t * m) * np.sinc(t * L)


def indicator_ft_1d(S: IntervalSet, t):
    """∫_S e(t x) dx for an interval set, vectorised over ``t``.

    Each interval contributes L·e(t·m)·sinc(t·L) (m its midpoint), so the
    t -> 0 limit is the measure with no special branch.
    """
    tt = np.asarray(t, dtype=float)
    acc = _Neumaier(tt.shape)
    for iv in S.intervals:
        acc.add(interval_ft(iv.lo, iv.hi, tt))
    out = acc.value
    return complex(out) if tt.ndim == 0 else out


def indicator_ft_disk(r: float, xi_norm):
    """∫_{|x|<=r} e(⟨ξ, x⟩) dx = r·J1(2πr|ξ|)/|ξ| (πr² at ξ = 0)."""
    if not r > 0:
        raise InputError(f"disk radius must be positive, got {r}")
    xi = np.asarray(xi_norm, dtype=float)
    if np.any(xi < 0):
        raise InputError("xi_norm must be nonnegative")
    out = math.pi * r * r * jinc(2 * math.pi * r * xi)
    return float(out) if xi.ndim == 0 else out


def disk_ft(disk, xi) -> np.ndarray:
    """Transform of a (possibly off-centre) disk at 2-D frequencies ``xi``."""
    xi = np.asarray(xi, dtype=float)
    rad = indicator_ft_disk(disk.radius, np.hypot(xi[..., 0], xi[..., 1]))
    cx, cy = disk.center
    if cx == 0.0 and cy == 0.0:
        return np.asarray(rad, dtype=complex)
    return rad * np.exp(2j * np.pi * (xi[..., 0] * cx + xi[..., 1] * cy))


def mollifier_ft(eps: float, lam):
    """Transform of h = (4/eps)·1_[-eps/8, eps/8]: sin(πλε/4)/(πλε/4)."""
    if not eps > 0:
        raise InputError(f"eps must be positive, got {eps}")
    lam = np.asarray(lam, dtype=float)
    out = np.sinc(lam * eps / 4.0)
    return float(out) if out.ndim == 0 else out
