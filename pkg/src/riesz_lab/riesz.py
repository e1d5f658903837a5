"""Finite-section Riesz bounds and least-squares expansions in E(Λ)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla
from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, eigsh

from .errors import InputError, NumericalError, SingularGramError
from .geometry import normalize_intervals
from .harmonic import (
    ExponentialSystem,
    GramMatrix,
    function_norm_sq,
    gram_matrix,
    moment_vector,
)
from .harmonic.gram import DENSE_LIMIT

EIG_RTOL = 1e-10
HERMITIAN_TOL = 1e-8
NORMAL_EQ_TOL = 1e-8
LANCZOS_NCV = 64
LANCZOS_MAXITER = 5000


@dataclass(frozen=True)
class RieszBounds:
    """Extreme Gram eigenvalues of a finite section and K = max(upper, 1/lower).

    When ``lower`` is below the eigensolver resolution (``EIG_RTOL·upper``)
    the section is flagged singular and ``constant`` is computed from the
    resolution floor instead, so it is a lower bound for the section's
    true constant.
    """

    lower: float
    upper: float
    constant: float
    truncation: str
    dimension: int
    measure: float
    singular: bool = False
    resolution: float = 0.0
    normalized_lower: float | None = None
    normalized_upper: float | None = None
    normalized_constant: float | None = None

    @property
    def outcome(self) -> str:
        return "numerically_singular_section" if self.singular else "ok"

    @property
    def condition(self) -> float:
        return self.upper / self.lower if self.lower > 0 else math.inf


@dataclass(eq=False)
class ExpansionResult:
    coefficients: np.ndarray = field(repr=False)
    residual_energy: float
    conditioning: float | None
    f_energy: float
    projection_energy: float
    ridge: float = 0.0
    normal_residual: float = 0.0


def _as_array(G) -> np.ndarray:
    return G.entries if isinstance(G, GramMatrix) else np.asarray(G)


def extreme_eigenvalues(G) -> tuple[float, float]:
    """(λ_min, λ_max) of a Hermitian matrix or :class:`GramMatrix`.

    Dense symmetric reduction whenever the matrix can be materialised,
    Lanczos on a Toeplitz matvec beyond that.
    """
    n = G.n if isinstance(G, GramMatrix) else np.asarray(G).shape[0]
    if isinstance(G, GramMatrix) and G.is_toeplitz and n > DENSE_LIMIT:
        op = LinearOperator((n, n), matvec=G.matvec, dtype=complex)
        # a wide Krylov space copes with eigenvalues clustered near 0 and 1
        kw = dict(k=1, v0=np.ones(n, dtype=complex), tol=EIG_RTOL, ncv=min(n - 1, LANCZOS_NCV),
                  maxiter=LANCZOS_MAXITER, return_eigenvectors=False)
        try:
            hi = eigsh(op, which="LA", **kw)[0]
            lo = eigsh(op, which="SA", **kw)[0]
        except ArpackNoConvergence as exc:
            raise NumericalError(f"Lanczos did not converge for n = {n}: {exc}") from None
        return float(lo), float(hi)
    A = _as_array(G)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InputError(f"expected a square matrix, got shape {A.shape}")
    asym = np.max(np.abs(A - A.conj().T)) if A.size else 0.0
    if asym > HERMITIAN_TOL * max(1.0, np.max(np.abs(A))):
        raise InputError(f"matrix is not Hermitian (asymmetry {asym:.3g})")
    if n == 1:
        v = float(np.real(A[0, 0]))
        return v, v
    w = sla.eigvalsh(0.5 * (A + A.conj().T))
    return float(w[0]), float(w[-1])


def _domain_measure(domain, weight) -> float:
    if weight is not None:
        return weight.integral(domain)
    return domain.measure


def _describe(system: ExponentialSystem) -> str:
    f = system.freqs
    if system.dim == 1:
        kind = f"step {system.step:.12g}" if system.step is not None else "irregular"
        return f"{len(system)} frequencies in [{f.min():.12g}, {f.max():.12g}], {kind}"
    return f"{len(system)} planar frequencies, max |λ| {np.hypot(f[:, 0], f[:, 1]).max():.12g}"


def riesz_bounds(system: ExponentialSystem, domain, weight=None, *, gram: GramMatrix | None = None) -> RieszBounds:
    G = gram if gram is not None else gram_matrix(system, domain, weight)
    lo, hi = extreme_eigenvalues(G)
    res = EIG_RTOL * hi
    singular = not lo > res
    constant = max(hi, 1.0 / (res if singular else lo))
    m = _domain_measure(domain, weight)
    norm = {}
    if abs(m - 1.0) > 1e-12:
        nlo = (res if singular else lo) / m
        norm = dict(
            normalized_lower=lo / m,
            normalized_upper=hi / m,
            normalized_constant=max(hi / m, 1.0 / nlo),
        )
    return RieszBounds(
        lower=lo,
        upper=hi,
        constant=constant,
        truncation=_describe(system),
        dimension=len(system),
        measure=m,
        singular=singular,
        resolution=res,
        **norm,
    )


def suggested_ridge(G: GramMatrix) -> float:
    return 1e-12 * G.trace / G.n


def _solve(G: GramMatrix, B: np.ndarray, ridge: float) -> np.ndarray:
    if G.is_toeplitz and G.n > DENSE_LIMIT:
        row = G.toeplitz_row.copy()
        row[0] += ridge
        try:
            return sla.solve_toeplitz((np.conj(row), row), B)
        except np.linalg.LinAlgError as exc:
            raise SingularGramError(
                f"Toeplitz solve failed ({exc}); retry with ridge ~ {suggested_ridge(G):.3g}",
                suggested_ridge(G),
            ) from None
    A = G.entries
    if ridge:
        A = A + ridge * np.eye(G.n)
    try:
        cf = sla.cho_factor(A, lower=False, check_finite=True)
    except np.linalg.LinAlgError:
        raise SingularGramError(
            f"Cholesky factorisation failed; the Gram matrix is singular at this precision, "
            f"retry with ridge ~ {suggested_ridge(G):.3g}",
            suggested_ridge(G),
        ) from None
    return sla.cho_solve(cf, B)


def expand_many(fs, system: ExponentialSystem, domain, weight=None, *, ridge: float = 0.0,
                gram: GramMatrix | None = None, with_conditioning: bool = True) -> list[ExpansionResult]:
    """Least-squares expansions of several functions sharing one factorisation."""
    if ridge < 0:
        raise InputError(f"ridge must be nonnegative, got {ridge}")
    G = gram if gram is not None else gram_matrix(system, domain, weight)
    B = np.stack([moment_vector(f, system, domain, weight) for f in fs], axis=1)
    C = _solve(G, B, ridge)
    GC = G.matvec(C)
    scale = np.max(np.abs(B), axis=0)
    resid = np.max(np.abs(GC + ridge * C - B), axis=0) / np.where(scale > 0, scale, 1.0)
    if ridge == 0 and np.any(resid > NORMAL_EQ_TOL):
        raise SingularGramError(
            f"normal equations not satisfied (relative residual {resid.max():.3g}); "
            f"retry with ridge ~ {suggested_ridge(G):.3g}",
            suggested_ridge(G),
        )
    cond = None
    if with_conditioning and G.n <= DENSE_LIMIT:
        lo, hi = extreme_eigenvalues(G)
        cond = hi / lo if lo > 0 else math.inf
    out = []
    for j, f in enumerate(fs):
        c = C[:, j]
        fe = function_norm_sq(f, domain, weight)
        bc = float(np.real(np.vdot(B[:, j], c)))
        pe = float(np.real(np.vdot(c, GC[:, j])))
        res = fe - 2 * bc + pe
        out.append(
            ExpansionResult(
                coefficients=c,
                residual_energy=max(res, 0.0),
                conditioning=cond,
                f_energy=fe,
                projection_energy=pe,
                ridge=ridge,
                normal_residual=float(resid[j]),
            )
        )
    return out


def expand_function(f, system: ExponentialSystem, domain, weight=None, ridge: float = 0.0, *,
                    gram: GramMatrix | None = None, with_conditioning: bool = True) -> ExpansionResult:
    """Solve (G + ridge·I) c = b; with ridge = 0 the coefficients are the
    L²(S, w)-orthogonal projection of f onto span E(Λ)."""
    return expand_many([f], system, domain, weight, ridge=ridge, gram=gram, with_conditioning=with_conditioning)[0]


UNIT_INTERVAL = normalize_intervals([(0.0, 1.0)])


def kadec_experiment(delta: float, n: int) -> RieszBounds:
    """Bounds for {k + δ_k : |k| <= n} on [0, 1], δ_k alternating ±delta."""
    if not 0 <= delta < 0.5:
        raise InputError(f"delta must lie in [0, 0.5), got {delta}")
    if n < 1:
        raise InputError(f"n must be >= 1, got {n}")
    system = ExponentialSystem.perturbed_integers(delta, n)
    return riesz_bounds(system, UNIT_INTERVAL)


__all__ = [
    "RieszBounds",
    "ExpansionResult",
    "extreme_eigenvalues",
    "riesz_bounds",
    "expand_function",
    "expand_many",
    "kadec_experiment",
    "suggested_ridge",
]
