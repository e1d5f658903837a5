"""Weights for L²(S, w): piecewise constant, or w(x) = x^α on [0, ∞)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from ..errors import InputError
from ..geometry import Interval, IntervalSet, normalize_intervals, set_boolean
from .transforms import indicator_ft_1d


@dataclass(frozen=True)
class PiecewiseConstantWeight:
    """Constant ``value`` on each interval; zero elsewhere."""

    pieces: tuple[tuple[Interval, float], ...]

    def __post_init__(self):
        pieces = []
        for iv, v in self.pieces:
            iv = iv if isinstance(iv, Interval) else Interval(*iv)
            v = float(v)
            if not (v >= 0 and math.isfinite(v)):
                raise InputError(f"weight values must be finite and nonnegative, got {v}")
            pieces.append((iv, v))
        pieces.sort()
        for (a, _), (b, _) in zip(pieces, pieces[1:]):
            if b.lo < a.hi:
                raise InputError("weight pieces overlap")
        object.__setattr__(self, "pieces", tuple(pieces))

    @property
    def name(self) -> str:
        return "piecewise"

    def support(self) -> IntervalSet:
        return normalize_intervals([iv for iv, v in self.pieces if v > 0])

    def bounds(self) -> tuple[float, float]:
        vals = [v for _, v in self.pieces]
        return min(vals), max(vals)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape)
        for iv, v in self.pieces:
            out = np.where((x >= iv.lo) & (x <= iv.hi), v, out)
        return out

    def transform(self, S: IntervalSet, t):
        """∫_S w(x) e(t x) dx."""
        tt = np.asarray(t, dtype=float)
        out = np.zeros(tt.shape, dtype=complex)
        for iv, v in self.pieces:
            part = set_boolean(S, IntervalSet((iv,)), "intersect")
            if v and not part.empty:
                out = out + v * indicator_ft_1d(part, tt)
        return complex(out) if tt.ndim == 0 else out

    def integral(self, S: IntervalSet) -> float:
        return float(np.real(self.transform(S, 0.0)))

    def to_dict(self):
        return {"kind": "piecewise", "pieces": [[iv.lo, iv.hi, v] for iv, v in self.pieces]}


def _unit_power_ft_integer(k: int, s: np.ndarray) -> np.ndarray:
    # ∫_0^1 u^k e(s u) du for integer k >= 0
    om = 2 * np.pi * s
    out = np.empty(s.shape, dtype=complex)
    # forward recurrence is stable once |ω| exceeds the order
    rec = np.abs(om) > k + 1
    if rec.any():
        z = 1j * om[rec]
        e = np.exp(z)
        I = (e - 1) / z
        for j in range(1, k + 1):
            I = e / z - (j / z) * I
        out[rec] = I
    ser = ~rec
    if ser.any():
        z = 1j * om[ser]
        term = np.ones_like(z)
        acc = term / (k + 1)
        for j in range(1, 80):
            term = term * z / j
            acc = acc + term / (k + j + 1)
        out[ser] = acc
    return out


def _unit_power_ft_quad(alpha: float, s: np.ndarray) -> np.ndarray:
    out = np.empty(s.shape, dtype=complex)
    flat = s.ravel()
    res = out.reshape(-1)
    for idx, si in enumerate(flat):
        om = 2 * math.pi * si
        if om == 0:
            res[idx] = 1.0 / (alpha + 1)
            continue
        w = abs(om)
        # algebraic endpoint weight near 0, oscillatory weight beyond
        h = min(1.0, 1.0 / w)
        alg = dict(a=0.0, b=h, weight="alg", wvar=(alpha, 0.0), epsabs=1e-14, epsrel=1e-12, limit=200)
        re, _ = integrate.quad(lambda u: math.cos(w * u), **alg)
        im, _ = integrate.quad(lambda u: math.sin(w * u), **alg)
        if h < 1.0:
            kw = dict(a=h, b=1.0, wvar=w, epsabs=1e-14, epsrel=1e-12, limit=400)
            re += integrate.quad(lambda u: u**alpha, weight="cos", **kw)[0]
            im += integrate.quad(lambda u: u**alpha, weight="sin", **kw)[0]
        res[idx] = re + 1j * math.copysign(1.0, om) * im
    return out


@dataclass(frozen=True)
class PowerWeight:
    """w(x) = x^alpha on x >= 0 (alpha > -1)."""

    alpha: float

    def __post_init__(self):
        if not (self.alpha > -1 and math.isfinite(self.alpha)):
            raise InputError(f"power weight needs alpha > -1, got {self.alpha}")

    @property
    def name(self) -> str:
        return "power"

    @property
    def integer(self) -> bool:
        return float(self.alpha).is_integer()

    def __call__(self, x):
        x = np.clip(np.asarray(x, dtype=float), 0.0, None)
        with np.errstate(divide="ignore"):
            return x**self.alpha

    def primitive(self, c: float, t) -> np.ndarray:
        """∫_0^c x^α e(t x) dx = c^(α+1) · ∫_0^1 u^α e(c t u) du."""
        tt = np.asarray(t, dtype=float)
        if c == 0:
            return np.zeros(tt.shape, dtype=complex)
        s = c * tt
        if self.integer:
            unit = _unit_power_ft_integer(int(self.alpha), np.atleast_1d(s)).reshape(s.shape)
        else:
            unit = _unit_power_ft_quad(self.alpha, np.atleast_1d(s)).reshape(s.shape)
        return c ** (self.alpha + 1) * unit

    def transform(self, S: IntervalSet, t):
        tt = np.asarray(t, dtype=float)
        if not S.empty and S.intervals[0].lo < 0:
            raise InputError("power weight is defined on [0, inf); domain extends below 0")
        out = np.zeros(tt.shape, dtype=complex)
        for iv in S.intervals:
            out = out + (self.primitive(iv.hi, tt) - self.primitive(iv.lo, tt))
        return complex(out) if tt.ndim == 0 else out

    def integral(self, S: IntervalSet) -> float:
        return math.fsum((iv.hi ** (self.alpha + 1) - iv.lo ** (self.alpha + 1)) / (self.alpha + 1) for iv in S.intervals)

    def to_dict(self):
        return {"kind": "power", "alpha": self.alpha}


WeightSpec = PiecewiseConstantWeight | PowerWeight


def weight_from_dict(d) -> WeightSpec | None:
    if d is None:
        return None
    if d["kind"] == "power":
        return PowerWeight(float(d["alpha"]))
    if d["kind"] == "piecewise":
        return PiecewiseConstantWeight(tuple((Interval(lo, hi), v) for lo, hi, v in d["pieces"]))
    raise InputError(f"unknown weight kind {d['kind']!r}")


def parse_weight(text: str | None) -> WeightSpec | None:
    """``power:ALPHA`` or ``pc:lo,hi,v;lo,hi,v;...``; empty or ``1`` means none."""
    if text is None or text.strip() in ("", "1", "none", "unit"):
        return None
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    try:
        if kind == "power":
            return PowerWeight(float(rest))
        if kind in ("pc", "piecewise"):
            pieces = []
            for chunk in rest.split(";"):
                if chunk.strip():
                    lo, hi, v = (float(p) for p in chunk.split(","))
                    pieces.append((Interval(lo, hi), v))
            return PiecewiseConstantWeight(tuple(pieces))
    except (TypeError, ValueError) as exc:
        raise InputError(f"cannot parse weight {text!r}: {exc}") from None
    raise InputError(f"unsupported weight family {kind!r}")
