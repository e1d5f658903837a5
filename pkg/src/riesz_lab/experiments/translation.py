"""Coefficient translation and the weighted blow-up scan."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import InputError
from ..geometry import IntervalSet, normalize_intervals
from ..harmonic import (
    ExponentialSystem,
    Indicator,
    PiecewiseConstantWeight,
    PowerWeight,
    energy_quadratic_form,
    gram_matrix,
)
from ..riesz import expand_many


def translate_coefficients(c, system: ExponentialSystem, t) -> np.ndarray:
    """d_λ = c_λ e(-⟨λ, t⟩), the coefficients of x -> P(x - t)."""
    c = np.asarray(c, dtype=complex)
    if c.shape[0] != len(system):
        raise InputError(f"{c.shape[0]} coefficients for {len(system)} frequencies")
    if not np.all(np.isfinite(np.asarray(t, dtype=float))):
        raise InputError("shift must be finite")
    ph = system.phases(t)
    return c * (ph if c.ndim == 1 else ph[:, None])


def _implied_k(ratio: float) -> float:
    if ratio <= 0:
        return math.inf
    return math.sqrt(max(ratio, 1.0 / ratio))


@dataclass(frozen=True)
class TranslationReport:
    """Energies of an expansion before and after a formal translation.

    ``ratio`` is g_energy / expansion_energy, where expansion_energy is the
    energy c*Gc of the computed expansion of f (equal to ||f||² up to the
    truncation residual, which is reported separately).
    """

    coeff_energy: float
    f_energy: float
    expansion_energy: float
    g_energy: float
    ratio: float
    implied_K: float
    residual_energy: float
    shift: float | list

    def to_dict(self):
        return dict(self.__dict__)


def translation_diagnostic(domain, weight, system: ExponentialSystem, f, t, *, ridge: float = 0.0, gram=None) -> TranslationReport:
    G = gram if gram is not None else gram_matrix(system, domain, weight)
    ex = expand_many([f], system, domain, weight, ridge=ridge, gram=G, with_conditioning=False)[0]
    d = translate_coefficients(ex.coefficients, system, t)
    g = energy_quadratic_form(d, system, domain, weight, gram=G)
    ratio = g / ex.projection_energy if ex.projection_energy > 0 else 0.0
    return TranslationReport(
        coeff_energy=float(np.sum(np.abs(ex.coefficients) ** 2)),
        f_energy=ex.f_energy,
        expansion_energy=ex.projection_energy,
        g_energy=g,
        ratio=ratio,
        implied_K=_implied_k(ratio),
        residual_energy=ex.residual_energy,
        shift=float(t) if np.ndim(t) == 0 else [float(v) for v in t],
    )


@dataclass(frozen=True)
class ScanReport:
    weight: dict | None
    truncation: float
    step: float
    domain: list
    rows: list = field(default_factory=list)

    @property
    def implied_K(self) -> list[float]:
        return [r["implied_K"] for r in self.rows]

    def to_dict(self):
        return dict(self.__dict__)


def _scan_geometry(weight, eps: float, domain: IntervalSet):
    """A(ε) sits where w is small and A(ε)+t(ε) where it is large."""
    lo, hi = domain.intervals[0].lo, domain.intervals[-1].hi
    span = hi - lo
    if isinstance(weight, PowerWeight) and weight.alpha < 0:
        return normalize_intervals([(hi - eps, hi)]), -(span - 2 * eps)
    return normalize_intervals([(lo, lo + eps)]), span - 2 * eps


def weighted_scan(weight, eps_grid, truncation: float, *, step: float = 1.0, domain: IntervalSet | None = None,
                  ridge: float = 0.0) -> ScanReport:
    """Translation diagnostic along a shrinking ε grid.

    f_ε = ε^{-1/2} 1_{A(ε)} is expanded in E(Λ), Λ = step·ℤ ∩ [-F, F], on
    (domain, w) and translated by t(ε). For increasing weights A(ε) = [0, ε]
    and t(ε) = 1 - 2ε on [0, 1]; decreasing power weights use the mirror
    image. All ε share one Gram factorisation.
    """
    if weight is not None and not isinstance(weight, (PowerWeight, PiecewiseConstantWeight)):
        raise InputError(f"unsupported weight family {type(weight).__name__}")
    domain = domain if domain is not None else normalize_intervals([(0.0, 1.0)])
    if len(domain) != 1:
        raise InputError("weighted scan needs a single-interval domain")
    eps_grid = [float(e) for e in eps_grid]
    span = domain.measure
    if not eps_grid or any(not 0 < e < span / 2 for e in eps_grid):
        raise InputError(f"every eps must lie in (0, {span / 2}), got {eps_grid}")
    if any(b >= a for a, b in zip(eps_grid, eps_grid[1:])):
        raise InputError("eps grid must be strictly decreasing")
    system = ExponentialSystem.lattice(step, truncation)
    G = gram_matrix(system, domain, weight)
    geo = [_scan_geometry(weight, e, domain) for e in eps_grid]
    fs = [Indicator.normalized(A) for A, _ in geo]
    results = expand_many(fs, system, domain, weight, ridge=ridge, gram=G, with_conditioning=False)
    rows = []
    for e, (A, t), ex in zip(eps_grid, geo, results):
        d = translate_coefficients(ex.coefficients, system, t)
        g = energy_quadratic_form(d, system, domain, weight, gram=G)
        ratio = g / ex.projection_energy if ex.projection_energy > 0 else 0.0
        base = weight.integral(A) if weight is not None else 1.0
        exact = weight.integral(A + t) / base if weight is not None and base > 0 else 1.0
        rows.append(
            dict(
                eps=e,
                shift=t,
                coeff_energy=float(np.sum(np.abs(ex.coefficients) ** 2)),
                f_energy=ex.f_energy,
                expansion_energy=ex.projection_energy,
                g_energy=g,
                ratio=ratio,
                implied_K=_implied_k(ratio),
                untruncated_K=_implied_k(exact),
                residual_energy=ex.residual_energy,
            )
        )
    return ScanReport(
        weight=weight.to_dict() if weight is not None else None,
        truncation=float(truncation),
        step=float(step),
        domain=[list(p) for p in domain.pairs()],
        rows=rows,
    )
