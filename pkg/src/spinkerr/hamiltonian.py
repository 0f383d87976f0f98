"""Kerr-resonator Hamiltonians in the frame rotating at the drive frequency.

The driven mode is always mode 1. Driving the physical CW or CCW mode is
encoded only in the sign of the Sagnac shift ``delta_f`` (hbar = 1, rates
in rad/s).
"""

from __future__ import annotations

from dataclasses import dataclass

from .fock import FockOperator, annihilation, two_mode_annihilators
from .params import DerivedRates

__all__ = ["ModelPoint", "build_h1", "build_h2", "eigenenergy"]


@dataclass(frozen=True)
class ModelPoint:
    """One operating point of the model.

    Attributes
    ----------
    delta_l : float
        Optical detuning omega0 - omega_L.
    delta_f : float
        Signed Sagnac shift (> 0 for CW drive, < 0 for CCW drive).
    chi, xi, gamma : float
        Kerr strength, drive amplitude and cavity loss rate.
    j : float
        Backscattering coupling between the CW and CCW modes.
    """

    delta_l: float
    delta_f: float
    chi: float
    xi: float
    gamma: float
    j: float = 0.0

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError(f"gamma must be > 0, got {self.gamma!r}")
        for name in ("chi", "xi", "j"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0, got {getattr(self, name)!r}")

    @classmethod
    def from_rates(cls, rates: DerivedRates, delta_l: float, j: float = 0.0) -> "ModelPoint":
        return cls(
            delta_l=delta_l,
            delta_f=rates.delta_f,
            chi=rates.chi,
            xi=rates.xi,
            gamma=rates.gamma,
            j=j,
        )

    @property
    def delta1(self) -> float:
        return self.delta_l + self.delta_f

    @property
    def delta2(self) -> float:
        return self.delta_l - self.delta_f

    def reversed_drive(self) -> "ModelPoint":
        return ModelPoint(self.delta_l, -self.delta_f, self.chi, self.xi, self.gamma, self.j)


def eigenenergy(n: int, mp: ModelPoint) -> float:
    """Energy of Fock state |n> of the undriven single-mode Hamiltonian."""
    if n < 0:
        raise ValueError("photon number must be >= 0")
    return n * mp.delta_l + n * mp.delta_f + (n * n - n) * mp.chi


def build_h1(mp: ModelPoint, d: int = 8) -> FockOperator:
    """H1 = (dL + dF) a^+a + chi a^+a^+aa + xi (a^+ + a)."""
    a = annihilation(d)
    ad = a.dag()
    return (
        mp.delta1 * (ad @ a)
        + mp.chi * (ad @ ad @ a @ a)
        + mp.xi * (ad + a)
    )


def build_h2(mp: ModelPoint, d1: int = 6, d2: int = 6) -> FockOperator:
    """Two-mode Hamiltonian with self- and cross-Kerr terms and backscattering J.

    Detunings are ``delta_l + delta_f`` (mode 1) and ``delta_l - delta_f``
    (mode 2); only mode 1 is driven.
    """
    a1, a2 = two_mode_annihilators(d1, d2)
    a1d, a2d = a1.dag(), a2.dag()
    n1, n2 = a1d @ a1, a2d @ a2
    return (
        mp.delta1 * n1
        + mp.delta2 * n2
        + mp.chi * (a1d @ a1d @ a1 @ a1 + a2d @ a2d @ a2 @ a2)
        + (2.0 * mp.chi) * (n1 @ n2)
        + mp.j * (a1d @ a2 + a2d @ a1)
        + mp.xi * (a1d + a1)
    )
