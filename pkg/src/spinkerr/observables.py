"""Photon statistics of a steady state: N, g2(0), g3(0) and number distributions.

In the two-mode model every statistic refers to the driven mode (mode 1)
unless ``mode=2`` is requested explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, VacuumStateError
from .fock import FockOperator, annihilation, embed_two_mode, expectation

__all__ = [
    "VACUUM_THRESHOLD",
    "ObservableSet",
    "mean_photon",
    "g2_zero",
    "g3_zero",
    "normally_ordered_moment",
    "photon_distribution",
    "mode_distribution",
    "moments_from_distribution",
    "observables_from_state",
]

VACUUM_THRESHOLD = 1e-15


@dataclass(frozen=True, eq=False)
class ObservableSet:
    """Statistics of one drive direction.

    ``distribution`` is P_n (single mode) or the matrix P_mn (two modes).
    ``g3`` is ``None`` when the model cannot resolve three photons.
    ``point`` identifies the operating point so CW/CCW pairs can be matched.
    """

    n: float
    g2: float
    g3: float | None
    distribution: np.ndarray
    drive: str = ""
    point: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0 or self.g2 < 0 or (self.g3 is not None and self.g3 < 0):
            raise ValueError(f"negative statistics: N={self.n}, g2={self.g2}, g3={self.g3}")


def _lowering(dims: tuple[int, ...], mode: int) -> FockOperator:
    if len(dims) == 1:
        if mode != 1:
            raise DimensionError("single-mode state has only mode 1")
        return annihilation(dims[0])
    if len(dims) == 2:
        return embed_two_mode(annihilation(dims[mode - 1]), mode, *dims)
    raise DimensionError(f"unsupported dims {dims}")


def normally_ordered_moment(rho, k: int, mode: int = 1) -> float:
    """``<a^{+k} a^k>`` for the chosen mode."""
    a = _lowering(rho.dims, mode)
    ak = a
    for _ in range(k - 1):
        ak = ak @ a
    return float(expectation(rho, ak.dag() @ ak).real)


def mean_photon(rho, mode: int = 1) -> float:
    return max(normally_ordered_moment(rho, 1, mode), 0.0)


def _correlation(rho, k: int, mode: int) -> float:
    n = mean_photon(rho, mode)
    if n < VACUUM_THRESHOLD:
        raise VacuumStateError(f"g{k}(0) is undefined for N = {n:.3e}")
    return max(normally_ordered_moment(rho, k, mode), 0.0) / n**k


def g2_zero(rho, mode: int = 1) -> float:
    return _correlation(rho, 2, mode)


def g3_zero(rho, mode: int = 1) -> float:
    return _correlation(rho, 3, mode)


def photon_distribution(rho) -> np.ndarray:
    """Diagonal of rho shaped like the mode dimensions (P_n or P_mn)."""
    diag = np.clip(np.real(np.diag(rho.matrix)), 0.0, None)
    return diag.reshape(rho.dims)


def mode_distribution(distribution: np.ndarray, mode: int = 1) -> np.ndarray:
    """Marginal photon-number distribution of one mode."""
    p = np.asarray(distribution)
    if p.ndim == 1:
        return p
    return p.sum(axis=1) if mode == 1 else p.sum(axis=0)


def moments_from_distribution(distribution: np.ndarray, mode: int = 1) -> tuple[float, float, float]:
    """(N, g2, g3) from factorial moments of the photon-number distribution."""
    p = mode_distribution(distribution, mode)
    p = p / p.sum()
    m = np.arange(p.size, dtype=float)
    n = float(m @ p)
    if n < VACUUM_THRESHOLD:
        raise VacuumStateError(f"correlations undefined for N = {n:.3e}")
    g2 = float((m * (m - 1)) @ p) / n**2
    g3 = float((m * (m - 1) * (m - 2)) @ p) / n**3
    return n, g2, g3


def observables_from_state(rho, drive: str = "", point: tuple | None = None) -> ObservableSet:
    n = mean_photon(rho)
    g3 = g3_zero(rho) if rho.dims[0] >= 4 else None
    return ObservableSet(
        n=n,
        g2=g2_zero(rho),
        g3=g3,
        distribution=photon_distribution(rho),
        drive=drive,
        point=point,
    )
