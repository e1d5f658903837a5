"""Lune energies of a normalised small-disk indicator expanded on the area-1 disk."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import InputError
from ..geometry import Disk, lens_nodes, lune_nodes
from ..harmonic import ExponentialSystem, Indicator, gram_matrix, synthesize
from ..riesz import expand_function, riesz_bounds
from .translation import translate_coefficients


def golden_threshold() -> float:
    """Positive root of K⁴ - K² - 1, i.e. the square root of the golden ratio."""
    return math.sqrt((1 + math.sqrt(5)) / 2)


def _crescent_k(v: float) -> float:
    """Smallest K with 1/K² - (K² - 1) <= v."""
    b = 1.0 - v
    return math.sqrt((b + math.sqrt(b * b + 4.0)) / 2.0)


@dataclass(frozen=True)
class DiskReport:
    """Per-θ lune energies of the expansion of f = (√π ε)^{-1} 1_{εD}.

    Rows carry U (upper lune, shift r - ε), L (lower lune, shift r + ε),
    V (the crescent between the two translates), the lens energy
    ∫_{D∩(D-t)} |f|² and the full translated energy ∫_{D-t} |f|² from the
    exact quadratic form, so U + lens = full is checkable per row.
    """

    eps: float
    theta_count: int
    dimension: int
    rotation_symmetric: bool
    K_section: float
    section_lower: float
    section_upper: float
    f_energy: float
    residual_energy: float
    fubini_integral: float
    threshold: float
    implied_K_lower: float
    implied_K_crescent: float
    n_radial: int
    n_angular: int
    rows: list = field(default_factory=list)

    @property
    def U(self) -> np.ndarray:
        return np.array([r["U"] for r in self.rows])

    @property
    def L(self) -> np.ndarray:
        return np.array([r["L"] for r in self.rows])

    def to_dict(self):
        return dict(self.__dict__)


def _energy(c, system, pts, wts) -> float:
    if wts.size == 0:
        return 0.0
    return float(np.sum(wts * np.abs(synthesize(c, system, pts)) ** 2))


def disk_run(system: ExponentialSystem, eps: float = 0.1, theta_count: int | None = None, *, ridge: float = 0.0,
             n_radial: int = 256, n_angular: int = 512) -> DiskReport:
    """Expand the normalised ε-disk indicator on D = (1/√π)𝔻 and measure
    its extension on the lunes (D - t_θ) \\ D and (D - s_θ) \\ D with
    |t_θ| = r - ε, |s_θ| = r + ε, by Gauss-Legendre quadrature."""
    if system.dim != 2:
        raise InputError("disk run needs 2-D frequencies")
    D = Disk()
    r = D.radius
    if not 0 < eps < r / 2:
        raise InputError(f"eps must lie in (0, {r / 2}), got {eps}")
    sym = system.rotation_symmetric()
    if theta_count is None:
        theta_count = 64 if sym else 256
    if theta_count < 8:
        raise InputError(f"theta_count must be at least 8, got {theta_count}")
    G = gram_matrix(system, D)
    bounds = riesz_bounds(system, D, gram=G)
    f = Indicator.normalized(Disk(eps))
    ex = expand_function(f, system, D, ridge=ridge, gram=G, with_conditioning=False)
    c = ex.coefficients

    rows = []
    for j in range(theta_count):
        th = 2 * math.pi * j / theta_count
        U = _energy(c, system, *lune_nodes(r, r - eps, 0.0, th, n_radial, n_angular))
        L = _energy(c, system, *lune_nodes(r, r + eps, 0.0, th, n_radial, n_angular))
        V = _energy(c, system, *lune_nodes(r, r + eps, r - eps, th, n_radial, n_angular))
        lens = _energy(c, system, *lens_nodes(r, r - eps, th, n_radial, n_angular))
        t = (r - eps) * np.array([math.cos(th), math.sin(th)])
        full = G.quadratic_form(translate_coefficients(c, system, t))
        rows.append(
            dict(
                theta=th,
                U=U,
                L=L,
                V=V,
                lens=lens,
                full=full,
                K_from_U=math.sqrt(U + 1.0),
                K_from_L=1.0 / math.sqrt(L) if L > 0 else math.inf,
                K_from_V=_crescent_k(V),
            )
        )
    fubini = 2 * math.pi * math.fsum(row["V"] for row in rows) / theta_count
    return DiskReport(
        eps=float(eps),
        theta_count=theta_count,
        dimension=len(system),
        rotation_symmetric=sym,
        K_section=bounds.constant,
        section_lower=bounds.lower,
        section_upper=bounds.upper,
        f_energy=ex.projection_energy,
        residual_energy=ex.residual_energy,
        fubini_integral=fubini,
        threshold=golden_threshold(),
        implied_K_lower=max(max(row["K_from_U"], row["K_from_L"]) for row in rows),
        implied_K_crescent=max(row["K_from_V"] for row in rows),
        n_radial=n_radial,
        n_angular=n_angular,
        rows=rows,
    )
