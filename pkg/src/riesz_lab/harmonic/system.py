"""Frequency sets Λ and coefficient vectors indexed by them."""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np
from scipy.spatial import cKDTree

from ..errors import InputError

_AP_RTOL = 1e-12


class ExponentialSystem:
    """Ordered frequency list for e(⟨λ, x⟩), 1-D or 2-D.

    ``step`` is set when a 1-D list is an arithmetic progression (Gram
    matrices are then Toeplitz); ``axes`` is set for 2-D product lattices
    built by :meth:`lattice_2d`, which allows separable synthesis.
    """

    def __init__(self, freqs, *, axes=None):
        f = np.array(freqs, dtype=float)
        if f.ndim == 2 and f.shape[1] == 1:
            f = f[:, 0]
        if f.ndim not in (1, 2) or (f.ndim == 2 and f.shape[1] != 2) or f.shape[0] == 0:
            raise InputError(f"frequencies must be a non-empty list of reals or 2-vectors, got shape {f.shape}")
        if not np.all(np.isfinite(f)):
            raise InputError("frequencies must be finite")
        self.freqs = f
        self.freqs.setflags(write=False)
        self.axes = axes
        self.separation = _separation(f)
        if not self.separation > 0:
            raise InputError("duplicate frequencies: the Gram matrix would be singular by construction")
        self.step = None
        if f.ndim == 1 and f.size >= 2:
            d = np.diff(f)
            if d[0] > 0 and np.allclose(d, d[0], rtol=_AP_RTOL, atol=0):
                # recompute from the endpoints to avoid accumulating the first gap's rounding
                self.step = (f[-1] - f[0]) / (f.size - 1)

    @property
    def dim(self) -> int:
        return 1 if self.freqs.ndim == 1 else 2

    def __len__(self):
        return self.freqs.shape[0]

    def __repr__(self):
        return f"ExponentialSystem(n={len(self)}, dim={self.dim}, separation={self.separation:.6g})"

    @classmethod
    def lattice(cls, step: float, bound: float, lo: float | None = None) -> "ExponentialSystem":
        """step·ℤ ∩ [lo, bound] (lo defaults to -bound)."""
        if not step > 0:
            raise InputError(f"lattice step must be positive, got {step}")
        lo = -bound if lo is None else lo
        m0 = math.ceil(lo / step - 1e-9)
        m1 = math.floor(bound / step + 1e-9)
        if m1 < m0:
            raise InputError(f"empty lattice truncation [{lo}, {bound}] with step {step}")
        return cls(step * np.arange(m0, m1 + 1, dtype=float))

    @classmethod
    def lattice_2d(cls, bound: int, step: float = 1.0) -> "ExponentialSystem":
        """(step·ℤ)² ∩ [-bound, bound]², row-major in (λ1, λ2)."""
        m = int(math.floor(bound / step + 1e-9))
        ax = step * np.arange(-m, m + 1, dtype=float)
        g1, g2 = np.meshgrid(ax, ax, indexing="ij")
        return cls(np.stack([g1.ravel(), g2.ravel()], axis=1), axes=(ax, ax))

    @classmethod
    def perturbed_integers(cls, delta: float, n: int) -> "ExponentialSystem":
        """{k + δ_k : |k| <= n} with δ_k = +delta for even k, -delta for odd k."""
        k = np.arange(-n, n + 1)
        signs = np.where(k % 2 == 0, 1.0, -1.0)
        return cls(k + delta * signs)

    @classmethod
    def load(cls, path) -> "ExponentialSystem":
        """Read frequencies from a JSON array or a text file, one per line
        (two whitespace- or comma-separated numbers per line for 2-D)."""
        text = Path(path).read_text()
        stripped = text.lstrip()
        if stripped.startswith("["):
            return cls(json.loads(stripped))
        rows = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.replace(",", " ").split()
            rows.append([float(p) for p in parts] if len(parts) > 1 else float(parts[0]))
        return cls(rows)

    def to_list(self):
        return self.freqs.tolist()

    def rotation_symmetric(self) -> bool:
        """True when Λ is invariant under rotation by 90 degrees."""
        if self.dim != 2:
            return False
        rot = np.stack([-self.freqs[:, 1], self.freqs[:, 0]], axis=1)
        tree = cKDTree(self.freqs)
        d, _ = tree.query(rot)
        return bool(np.all(d < 1e-9 * max(1.0, np.abs(self.freqs).max())))

    def phases(self, t) -> np.ndarray:
        """e(-⟨λ, t⟩) for every λ."""
        if self.dim == 1:
            return np.exp(-2j * np.pi * self.freqs * float(t))
        t = np.asarray(t, dtype=float).reshape(2)
        return np.exp(-2j * np.pi * (self.freqs @ t))


def _separation(f: np.ndarray) -> float:
    if f.shape[0] < 2:
        return math.inf
    if f.ndim == 1:
        return float(np.min(np.diff(np.sort(f))))
    d, _ = cKDTree(f).query(f, k=2)
    return float(d[:, 1].min())


def synthesize(coefficients, system: ExponentialSystem, points) -> np.ndarray:
    """Evaluate Σ c_λ e(⟨λ, x⟩) at the given points."""
    c = np.asarray(coefficients, dtype=complex)
    x = np.asarray(points, dtype=float)
    if system.dim == 2 and system.axes is not None:
        ax1, ax2 = system.axes
        C = c.reshape(ax1.size, ax2.size)
        flat = x.reshape(-1, 2)
        E1 = np.exp(2j * np.pi * np.outer(flat[:, 0], ax1))
        E2 = np.exp(2j * np.pi * np.outer(flat[:, 1], ax2))
        return np.einsum("pi,pi->p", E1 @ C, E2).reshape(x.shape[:-1])
    if system.dim == 2:
        flat = x.reshape(-1, 2)
        out = np.empty(flat.shape[0], dtype=complex)
        chunk = max(1, (1 << 22) // len(system))
        for s in range(0, flat.shape[0], chunk):
            out[s : s + chunk] = np.exp(2j * np.pi * flat[s : s + chunk] @ system.freqs.T) @ c
        return out.reshape(x.shape[:-1])
    flat = x.ravel()
    out = np.empty(flat.size, dtype=complex)
    chunk = max(1, (1 << 22) // len(system))
    for s in range(0, flat.size, chunk):
        out[s : s + chunk] = np.exp(2j * np.pi * np.outer(flat[s : s + chunk], system.freqs)) @ c
    return out.reshape(x.shape)
