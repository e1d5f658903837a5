"""Test functions that get expanded in E(Λ)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import InputError
from ..geometry import Disk, IntervalSet, normalize_intervals
from .system import ExponentialSystem, synthesize


@dataclass(frozen=True)
class Indicator:
    """scale · 1_region, region an interval set or a disk."""

    region: IntervalSet | Disk
    scale: float = 1.0

    def __post_init__(self):
        if not self.region.measure > 0:
            raise InputError("indicator region must have positive measure")

    @classmethod
    def normalized(cls, region) -> "Indicator":
        """|region|^{-1/2} · 1_region (unit L² norm w.r.t. Lebesgue measure)."""
        if isinstance(region, (list, tuple)):
            region = normalize_intervals(region)
        m = region.measure
        if not m > 0:
            raise InputError("indicator region must have positive measure")
        return cls(region, 1.0 / math.sqrt(m))

    def __call__(self, x):
        return self.scale * self.region.contains(x).astype(float)

    def to_dict(self):
        if isinstance(self.region, Disk):
            reg = {"disk": {"radius": self.region.radius, "center": list(self.region.center)}}
        else:
            reg = {"intervals": self.region.pairs()}
        return {"kind": "indicator", "scale": self.scale, **reg}


@dataclass(frozen=True)
class Exponential:
    """x -> e(⟨freq, x⟩)."""

    freq: float | tuple[float, float]

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if np.ndim(self.freq) == 0:
            return np.exp(2j * np.pi * float(self.freq) * x)
        return np.exp(2j * np.pi * (x @ np.asarray(self.freq, dtype=float)))

    def to_dict(self):
        f = self.freq if np.ndim(self.freq) == 0 else list(self.freq)
        return {"kind": "exponential", "freq": f}


@dataclass(frozen=True, eq=False)
class Synthesis:
    """Σ a_μ e(⟨μ, x⟩) over a second system."""

    system: ExponentialSystem
    coefficients: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=complex)
        if c.shape != (len(self.system),):
            raise InputError("coefficient vector does not match the system")
        object.__setattr__(self, "coefficients", c)

    def __call__(self, x):
        return synthesize(self.coefficients, self.system, x)

    def to_dict(self):
        return {
            "kind": "synthesis",
            "freqs": self.system.to_list(),
            "re": self.coefficients.real.tolist(),
            "im": self.coefficients.imag.tolist(),
        }


FunctionSpec = Indicator | Exponential | Synthesis


def function_from_dict(d) -> FunctionSpec:
    kind = d["kind"]
    if kind == "indicator":
        if "disk" in d:
            region = Disk(d["disk"]["radius"], tuple(d["disk"]["center"]))
        else:
            region = normalize_intervals(d["intervals"])
        return Indicator(region, float(d["scale"]))
    if kind == "exponential":
        f = d["freq"]
        return Exponential(float(f) if np.ndim(f) == 0 else tuple(f))
    if kind == "synthesis":
        return Synthesis(ExponentialSystem(d["freqs"]), np.array(d["re"]) + 1j * np.array(d["im"]))
    raise InputError(f"unknown function kind {kind!r}")
