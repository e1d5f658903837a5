"""Gram matrices, moment vectors and exact quadratic-form energies.

G_{jk} = ∫_S w(x) e(⟨λ_k - λ_j, x⟩) dx, so that c* G c = ||Σ c_λ e(⟨λ, ·⟩)||²
and (G c)_j = ⟨P, e_j⟩.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg as sla

from ..errors import InputError
from ..geometry import Disk, IntervalSet, set_boolean
from .functions import Exponential, FunctionSpec, Indicator, Synthesis
from .system import ExponentialSystem
from .transforms import disk_ft, indicator_ft_1d

DENSE_LIMIT = 4096


class GramMatrix:
    """Hermitian Gram matrix, stored densely or by its first Toeplitz row.

    Toeplitz storage is used for arithmetic-progression frequencies on
    1-D domains; the dense array is only materialised on request and
    never above ``DENSE_LIMIT``.
    """

    def __init__(self, entries=None, *, toeplitz_row=None, domain_tag: str = "interval"):
        if (entries is None) == (toeplitz_row is None):
            raise ValueError("give exactly one of entries / toeplitz_row")
        self.domain_tag = domain_tag
        self._dense = None
        self.toeplitz_row = None
        if entries is not None:
            A = np.asarray(entries, dtype=complex)
            if A.ndim != 2 or A.shape[0] != A.shape[1]:
                raise InputError(f"Gram matrix must be square, got shape {A.shape}")
            self._dense = A
            self.n = A.shape[0]
        else:
            row = np.asarray(toeplitz_row, dtype=complex).copy()
            row[0] = row[0].real
            self.toeplitz_row = row
            self.n = row.size

    @property
    def is_toeplitz(self) -> bool:
        return self.toeplitz_row is not None

    @property
    def shape(self):
        return (self.n, self.n)

    @property
    def entries(self) -> np.ndarray:
        if self._dense is None:
            if self.n > DENSE_LIMIT:
                raise MemoryError(f"refusing to materialise a {self.n}x{self.n} Gram matrix")
            row = self.toeplitz_row
            self._dense = sla.toeplitz(np.conj(row), row)
        return self._dense

    @property
    def diagonal(self) -> np.ndarray:
        if self.is_toeplitz:
            return np.full(self.n, self.toeplitz_row[0].real)
        return np.real(np.diag(self._dense))

    @property
    def trace(self) -> float:
        return float(np.sum(self.diagonal))

    def matvec(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        if self._dense is not None or self.n <= DENSE_LIMIT:
            return self.entries @ x
        row = self.toeplitz_row
        return sla.matmul_toeplitz((np.conj(row), row), x)

    def quadratic_form(self, c) -> float | np.ndarray:
        """c* G c for a vector, or per column of a matrix."""
        c = np.asarray(c, dtype=complex)
        Gc = self.matvec(c)
        val = np.real(np.sum(np.conj(c) * Gc, axis=0))
        return float(val) if np.ndim(val) == 0 else val


def _domain_ft(domain, weight, t):
    if isinstance(domain, Disk):
        if weight is not None:
            raise InputError("weighted disk domains are not supported")
        return disk_ft(domain, t)
    if weight is not None:
        return weight.transform(domain, t)
    return indicator_ft_1d(domain, t)


def _check(system: ExponentialSystem, domain):
    if isinstance(domain, Disk):
        if system.dim != 2:
            raise InputError("disk domains need 2-D frequencies")
    elif isinstance(domain, IntervalSet):
        if system.dim != 1:
            raise InputError("interval-set domains need 1-D frequencies")
        if domain.empty:
            raise InputError("domain has zero measure")
    else:
        raise InputError(f"unsupported domain type {type(domain).__name__}")


def gram_matrix(system: ExponentialSystem, domain, weight=None) -> GramMatrix:
    """Exact Gram matrix of E(Λ) on ``domain`` (optionally weighted)."""
    _check(system, domain)
    f = system.freqs
    n = len(system)
    if isinstance(domain, Disk):
        D = f[None, :, :] - f[:, None, :]
        G = disk_ft(domain, D)
        return GramMatrix(0.5 * (G + G.conj().T), domain_tag="disk")
    tag = "weighted" if weight is not None else "interval"
    if system.step is not None:
        row = _domain_ft(domain, weight, system.step * np.arange(n))
        return GramMatrix(toeplitz_row=np.atleast_1d(row), domain_tag=tag)
    if n > DENSE_LIMIT:
        raise InputError(f"non-lattice systems are limited to {DENSE_LIMIT} frequencies")
    G = np.empty((n, n), dtype=complex)
    rows = max(1, (1 << 20) // n)
    for s in range(0, n, rows):
        G[s : s + rows] = _domain_ft(domain, weight, f[None, :] - f[s : s + rows, None])
    return GramMatrix(0.5 * (G + G.conj().T), domain_tag=tag)


def moment_vector(f: FunctionSpec, system: ExponentialSystem, domain, weight=None) -> np.ndarray:
    """b_j = ∫_S f(x) conj(e(⟨λ_j, x⟩)) w(x) dx."""
    _check(system, domain)
    lam = system.freqs
    if isinstance(f, Indicator):
        if isinstance(domain, Disk):
            if not isinstance(f.region, Disk):
                raise InputError("indicator on a disk domain must be a disk")
            _require_inside(f.region, domain)
            return f.scale * np.conj(disk_ft(f.region, lam))
        if not isinstance(f.region, IntervalSet):
            raise InputError("indicator on an interval domain must be an interval set")
        part = set_boolean(f.region, domain, "intersect")
        if part.empty:
            raise InputError("indicator region does not meet the domain")
        return f.scale * np.conj(np.atleast_1d(_domain_ft(part, weight, lam)))
    if isinstance(f, Exponential):
        mu = np.asarray(f.freq, dtype=float)
        return np.atleast_1d(_domain_ft(domain, weight, mu - lam))
    if isinstance(f, Synthesis):
        mu = f.system.freqs
        if isinstance(domain, Disk):
            cross = _domain_ft(domain, weight, mu[None, :, :] - lam[:, None, :])
        else:
            cross = _domain_ft(domain, weight, mu[None, :] - lam[:, None])
        return cross @ f.coefficients
    raise InputError(f"unsupported function spec {type(f).__name__}")


def _require_inside(inner: Disk, outer: Disk):
    gap = np.hypot(inner.center[0] - outer.center[0], inner.center[1] - outer.center[1])
    if gap + inner.radius > outer.radius * (1 + 1e-12):
        raise InputError("indicator disk must lie inside the domain disk")


def function_norm_sq(f: FunctionSpec, domain, weight=None) -> float:
    """||f||² in L²(domain, w)."""
    if isinstance(f, Indicator):
        if isinstance(domain, Disk):
            _require_inside(f.region, domain)
            return f.scale**2 * f.region.area
        part = set_boolean(f.region, domain, "intersect")
        mass = weight.integral(part) if weight is not None else part.measure
        return f.scale**2 * mass
    if isinstance(f, Exponential):
        if isinstance(domain, Disk):
            return domain.area
        return weight.integral(domain) if weight is not None else domain.measure
    if isinstance(f, Synthesis):
        return energy_quadratic_form(f.coefficients, f.system, domain, weight)
    raise InputError(f"unsupported function spec {type(f).__name__}")


def energy_quadratic_form(c, system: ExponentialSystem, domain, weight=None, gram: GramMatrix | None = None) -> float:
    """||Σ c_λ e(⟨λ, ·⟩)||² on (domain, w), computed exactly as c* G c."""
    c = np.asarray(c, dtype=complex)
    if c.shape[0] != len(system):
        raise InputError(f"{c.shape[0]} coefficients for {len(system)} frequencies")
    G = gram if gram is not None else gram_matrix(system, domain, weight)
    # rounding can leave a tiny negative value for near-null vectors
    return max(G.quadratic_form(c), 0.0)
