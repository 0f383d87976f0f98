"""Vectorized Lindblad generators and their steady states.

Density matrices are column-stacked, so ``vec(A rho B) = (B^T kron A) vec(rho)``.
The steady state is found by a direct sparse LU solve of ``L vec(rho) = 0``
with one equation replaced by the trace constraint.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import isqrt, prod

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import DimensionError, SolverError, TruncationError
from .fock import FockOperator, annihilation, two_mode_annihilators
from .hamiltonian import ModelPoint, build_h1, build_h2
from .observables import VACUUM_THRESHOLD, mean_photon, g2_zero, g3_zero

__all__ = [
    "DensityMatrix",
    "Liouvillian",
    "SteadyStateSolution",
    "build_liouvillian",
    "steady_state",
    "model_liouvillian",
    "solve_model",
    "check_truncation",
    "evolve_rk4",
]

log = logging.getLogger(__name__)

HEALTH_TOL = 1e-10
RESIDUAL_RTOL = 1e-8


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    dims: tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        mat = np.asarray(self.matrix, dtype=complex)
        n = prod(dims)
        if mat.shape != (n, n):
            raise DimensionError(f"matrix shape {mat.shape} does not match dims {dims}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def fock(cls, dims: tuple[int, ...], index: tuple[int, ...] | int) -> "DensityMatrix":
        """Projector onto a Fock basis state, e.g. ``fock((6, 6), (1, 0))``."""
        index = (index,) if isinstance(index, int) else tuple(index)
        flat = int(np.ravel_multi_index(index, dims))
        mat = np.zeros((prod(dims),) * 2, dtype=complex)
        mat[flat, flat] = 1.0
        return cls(dims, mat)

    @classmethod
    def maximally_mixed(cls, dims: tuple[int, ...]) -> "DensityMatrix":
        n = prod(dims)
        return cls(dims, np.eye(n, dtype=complex) / n)

    @property
    def trace_error(self) -> float:
        return float(abs(np.trace(self.matrix) - 1.0))

    @property
    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))

    @property
    def min_eigenvalue(self) -> float:
        herm = 0.5 * (self.matrix + self.matrix.conj().T)
        return float(np.linalg.eigvalsh(herm).min())

    def is_physical(self, tol: float = HEALTH_TOL) -> bool:
        return (
            self.trace_error < tol
            and self.hermiticity_error < tol
            and self.min_eigenvalue >= -tol
        )

    def vec(self) -> np.ndarray:
        return self.matrix.reshape(-1, order="F")

    def trace_distance(self, other: "DensityMatrix") -> float:
        diff = self.matrix - other.matrix
        return 0.5 * float(np.abs(np.linalg.eigvalsh(0.5 * (diff + diff.conj().T))).sum())


@dataclass(frozen=True, eq=False)
class Liouvillian:
    dims: tuple[int, ...]
    matrix: sp.csc_matrix

    @property
    def hilbert_dim(self) -> int:
        return prod(self.dims)

    def apply(self, rho: DensityMatrix) -> np.ndarray:
        """``L(rho)`` returned as a square matrix."""
        d = self.hilbert_dim
        return (self.matrix @ rho.vec()).reshape(d, d, order="F")

    @property
    def norm(self) -> float:
        return float(spla.norm(self.matrix))


@dataclass(frozen=True, eq=False)
class SteadyStateSolution:
    rho: DensityMatrix
    residual: float
    relative_residual: float
    dims: tuple[int, ...]
    converged: bool
    raw_hermiticity_error: float = 0.0

    def health(self) -> dict[str, float]:
        return {
            "trace_error": self.rho.trace_error,
            "hermiticity_error": max(self.raw_hermiticity_error, self.rho.hermiticity_error),
            "min_eigenvalue": self.rho.min_eigenvalue,
            "relative_residual": self.relative_residual,
        }

    def healthy(self, tol: float = HEALTH_TOL, residual_rtol: float = RESIDUAL_RTOL) -> bool:
        h = self.health()
        return (
            h["trace_error"] < tol
            and h["hermiticity_error"] < tol
            and h["min_eigenvalue"] >= -tol
            and h["relative_residual"] < residual_rtol
        )


def build_liouvillian(H: FockOperator, collapse=()) -> Liouvillian:
    """Generator of ``drho/dt = -i[H, rho] + sum_k (r_k/2)(2 c rho c^+ - c^+c rho - rho c^+c)``.

    ``collapse`` is an iterable of ``(operator, rate)`` pairs.
    """
    d = H.dim
    eye = sp.identity(d, format="csr", dtype=complex)
    h = H.data
    L = -1j * (sp.kron(eye, h) - sp.kron(h.T, eye))
    for op, rate in collapse:
        if op.dims != H.dims:
            raise DimensionError(f"collapse operator dims {op.dims} != Hamiltonian dims {H.dims}")
        if not rate > 0:
            raise ValueError(f"collapse rates must be > 0, got {rate!r}")
        c = op.data
        cdc = (c.conj().T @ c).tocsr()
        L = L + rate * (
            sp.kron(c.conj(), c) - 0.5 * sp.kron(eye, cdc) - 0.5 * sp.kron(cdc.T, eye)
        )
    return Liouvillian(H.dims, sp.csc_matrix(L))


def _trace_vector(d: int) -> np.ndarray:
    return np.eye(d, dtype=complex).reshape(-1, order="F")


def steady_state(L: Liouvillian, rtol: float = RESIDUAL_RTOL, refine: int = 2) -> SteadyStateSolution:
    """Solve ``L vec(rho) = 0`` with ``trace(rho) = 1`` replacing the first equation.

    ``refine`` iterative-refinement steps follow the LU solve.
    """
    mat = L.matrix.tocsr()
    n = mat.shape[0]
    d = isqrt(n)
    if d * d != n:
        raise DimensionError(f"superoperator size {n} is not a square number")

    # trace row scaled to the generator so the LU pivots stay balanced
    weight = float(abs(mat).max()) or 1.0
    keep = sp.diags(np.r_[0.0, np.ones(n - 1)], format="csr")
    row = sp.csr_matrix((weight * _trace_vector(d))[None, :])
    A = (keep @ mat + sp.vstack([row, sp.csr_matrix((n - 1, n))])).tocsc()
    b = np.zeros(n, dtype=complex)
    b[0] = weight

    try:
        lu = spla.splu(A)
    except RuntimeError as exc:
        raise SolverError(f"steady-state system is singular: {exc}") from exc
    x = lu.solve(b)
    if not np.all(np.isfinite(x)):
        raise SolverError("steady-state solve produced non-finite values")

    # The residual is already tiny after one solve, but the few-photon
    # populations carry pivot-order round-off; refinement removes it.
    for _ in range(refine):
        dx = lu.solve(b - A @ x)
        x = x + dx
        if np.linalg.norm(dx) <= 1e-15 * np.linalg.norm(x):
            break

    norm_L = float(spla.norm(mat)) or 1.0
    residual = float(np.linalg.norm(mat @ x))

    rho = x.reshape(d, d, order="F")
    rho = rho / np.trace(rho)
    raw_herm = float(np.max(np.abs(rho - rho.conj().T)))
    rho = 0.5 * (rho + rho.conj().T)
    relative = residual / norm_L
    converged = relative < rtol
    if not converged:
        log.warning("steady state residual %.3e exceeds tolerance %.1e", relative, rtol)
    return SteadyStateSolution(
        rho=DensityMatrix(L.dims, rho),
        residual=residual,
        relative_residual=relative,
        dims=L.dims,
        converged=converged,
        raw_hermiticity_error=raw_herm,
    )


def model_liouvillian(mp: ModelPoint, dims: tuple[int, ...]) -> Liouvillian:
    """Liouvillian of the single-mode (``dims=(d,)``) or two-mode (``(d1, d2)``) model."""
    dims = tuple(dims)
    if len(dims) == 1:
        H = build_h1(mp, dims[0])
        collapse = [(annihilation(dims[0]), mp.gamma)]
    elif len(dims) == 2:
        H = build_h2(mp, *dims)
        a1, a2 = two_mode_annihilators(*dims)
        collapse = [(a1, mp.gamma), (a2, mp.gamma)]
    else:
        raise DimensionError(f"expected one or two modes, got dims={dims}")
    return build_liouvillian(H, collapse)


def solve_model(mp: ModelPoint, dims: tuple[int, ...]) -> SteadyStateSolution:
    return steady_state(model_liouvillian(mp, dims))


def _statistics(rho: DensityMatrix) -> tuple[float, float, float]:
    n = mean_photon(rho)
    if n < VACUUM_THRESHOLD:
        return n, np.nan, np.nan
    g3 = g3_zero(rho) if rho.dims[0] >= 4 else 0.0
    return n, g2_zero(rho), g3


def _rel_change(a: float, b: float) -> float:
    if np.isnan(a) and np.isnan(b):
        return 0.0
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0.0 else abs(a - b) / scale


def check_truncation(
    mp: ModelPoint,
    dims: tuple[int, ...] = (2,),
    rtol: float = 1e-6,
    cap: int = 16,
) -> tuple[int, ...]:
    """Smallest dims (grown one level per mode at a time) at which N, g2 and g3 plateau.

    Returns ``dims`` such that going to ``dims + 1`` changes every statistic
    by less than ``rtol`` relative.
    """
    dims = tuple(int(d) for d in dims)
    current = _statistics(solve_model(mp, dims).rho)
    while max(dims) < cap:
        bigger = tuple(d + 1 for d in dims)
        nxt = _statistics(solve_model(mp, bigger).rho)
        if all(_rel_change(a, b) < rtol for a, b in zip(current, nxt)):
            return dims
        dims, current = bigger, nxt
    raise TruncationError(f"no plateau below dimension cap {cap} (last dims {dims})")


def evolve_rk4(
    L: Liouvillian,
    rho0: DensityMatrix,
    t_final: float,
    dt: float,
) -> DensityMatrix:
    """Fixed-step fourth-order Runge-Kutta propagation of ``rho0``."""
    if rho0.dims != L.dims:
        raise DimensionError(f"state dims {rho0.dims} != Liouvillian dims {L.dims}")
    steps = int(np.ceil(t_final / dt))
    h = t_final / steps
    M = L.matrix.tocsr()
    x = rho0.vec().copy()
    for _ in range(steps):
        k1 = M @ x
        k2 = M @ (x + 0.5 * h * k1)
        k3 = M @ (x + 0.5 * h * k2)
        k4 = M @ (x + h * k3)
        x = x + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
    d = L.hilbert_dim
    return DensityMatrix(L.dims, x.reshape(d, d, order="F"))
