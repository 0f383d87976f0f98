"""Sparse operators on truncated single- and two-mode Fock spaces."""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from numbers import Number

import numpy as np
import scipy.sparse as sp

from .errors import DimensionError

__all__ = [
    "FockOperator",
    "annihilation",
    "creation",
    "number",
    "identity",
    "embed_two_mode",
    "two_mode_annihilators",
    "expectation",
]


@dataclass(frozen=True, eq=False)
class FockOperator:
    """A complex CSR matrix tagged with its per-mode truncation sizes."""

    dims: tuple[int, ...]
    data: sp.csr_matrix

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise DimensionError(f"invalid mode dimensions {self.dims!r}")
        n = prod(dims)
        mat = sp.csr_matrix(self.data, dtype=complex)
        if mat.shape != (n, n):
            raise DimensionError(f"matrix shape {mat.shape} does not match dims {dims}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "data", mat)

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def dag(self) -> "FockOperator":
        return FockOperator(self.dims, self.data.conj().T.tocsr())

    def toarray(self) -> np.ndarray:
        return self.data.toarray()

    def _check(self, other: "FockOperator"):
        if self.dims != other.dims:
            raise DimensionError(f"dims {self.dims} and {other.dims} differ")

    def __matmul__(self, other: "FockOperator") -> "FockOperator":
        self._check(other)
        return FockOperator(self.dims, self.data @ other.data)

    def __add__(self, other: "FockOperator") -> "FockOperator":
        self._check(other)
        return FockOperator(self.dims, self.data + other.data)

    def __sub__(self, other: "FockOperator") -> "FockOperator":
        self._check(other)
        return FockOperator(self.dims, self.data - other.data)

    def __mul__(self, scalar: Number) -> "FockOperator":
        if not isinstance(scalar, Number):
            return NotImplemented
        return FockOperator(self.dims, self.data * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "FockOperator":
        return FockOperator(self.dims, -self.data)

    def commutator(self, other: "FockOperator") -> "FockOperator":
        return self @ other - other @ self

    def is_hermitian(self, rtol: float = 1e-12) -> bool:
        diff = abs(self.data - self.data.conj().T).max() if self.data.nnz else 0.0
        scale = abs(self.data).max() if self.data.nnz else 0.0
        return diff <= rtol * max(scale, 1.0)


def annihilation(d: int) -> FockOperator:
    """Lowering operator with ``A[n-1, n] = sqrt(n)`` on a d-level truncation."""
    if d < 2:
        raise DimensionError(f"truncation dimension must be >= 2, got {d}")
    return FockOperator((d,), sp.diags(np.sqrt(np.arange(1, d)), 1, shape=(d, d), format="csr"))


def creation(d: int) -> FockOperator:
    return annihilation(d).dag()


def number(d: int) -> FockOperator:
    return FockOperator((d,), sp.diags(np.arange(d, dtype=float), 0, format="csr"))


def identity(dims: tuple[int, ...] | int) -> FockOperator:
    dims = (dims,) if isinstance(dims, int) else tuple(dims)
    return FockOperator(dims, sp.identity(prod(dims), format="csr"))


def embed_two_mode(op: FockOperator, mode_index: int, d1: int, d2: int) -> FockOperator:
    """Lift a single-mode operator onto the two-mode space (mode 1 is the left factor)."""
    if len(op.dims) != 1:
        raise DimensionError("embed_two_mode expects a single-mode operator")
    if mode_index == 1:
        if op.dims[0] != d1:
            raise DimensionError(f"operator dimension {op.dims[0]} != d1={d1}")
        mat = sp.kron(op.data, sp.identity(d2), format="csr")
    elif mode_index == 2:
        if op.dims[0] != d2:
            raise DimensionError(f"operator dimension {op.dims[0]} != d2={d2}")
        mat = sp.kron(sp.identity(d1), op.data, format="csr")
    else:
        raise ValueError(f"mode_index must be 1 or 2, got {mode_index!r}")
    return FockOperator((d1, d2), mat)


def two_mode_annihilators(d1: int, d2: int) -> tuple[FockOperator, FockOperator]:
    return (
        embed_two_mode(annihilation(d1), 1, d1, d2),
        embed_two_mode(annihilation(d2), 2, d1, d2),
    )


def expectation(rho, op: FockOperator) -> complex:
    """``trace(rho @ op)``; ``rho`` is a DensityMatrix or a square array."""
    dims = getattr(rho, "dims", None)
    mat = getattr(rho, "matrix", rho)
    if dims is not None and tuple(dims) != op.dims:
        raise DimensionError(f"state dims {tuple(dims)} and operator dims {op.dims} differ")
    mat = np.asarray(mat)
    if mat.shape != (op.dim, op.dim):
        raise DimensionError(f"state shape {mat.shape} does not match operator dimension {op.dim}")
    # trace(rho A) = sum_ij rho_ij A_ji
    coo = op.data.tocoo()
    return complex(np.sum(mat[coo.col, coo.row] * coo.data))
