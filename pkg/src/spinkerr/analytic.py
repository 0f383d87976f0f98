"""Weak-drive closed forms for the steady-state amplitudes and photon statistics.

The amplitudes solve the no-jump equations of motion truncated at two photons
(single mode) or three photons (two modes), with each excitation level driven
only by the level below it. Leading-order statistics follow as

    N ~ |C1|^2,   g2 ~ 2|C2|^2 / |C1|^4,   g3 ~ 6|C3|^2 / |C1|^6,

and distribution-based variants (normalised by M) are exposed for diagnostics.

Two-mode second-order amplitudes are written with the constants sigma, eta;
the third level is eliminated explicitly (back-substitution of the 4x4 block).
The literature forms of C20, C11 and the third-order amplitudes contain
misprints. They are kept behind ``printed=True`` for comparison only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePointError
from .hamiltonian import ModelPoint, eigenenergy
from .observables import ObservableSet

__all__ = [
    "SingleModeAmplitudes",
    "AmplitudeConstants",
    "TwoModeAmplitudes",
    "single_mode_amplitudes",
    "single_mode_observables",
    "single_mode_moments",
    "two_mode_constants",
    "two_mode_amplitudes",
    "two_mode_observables",
    "two_mode_moments",
]

SQRT2 = np.sqrt(2.0)
SQRT3 = np.sqrt(3.0)
SQRT6 = np.sqrt(6.0)
DEGENERACY_TOL = 1e-12


@dataclass(frozen=True)
class SingleModeAmplitudes:
    c0: complex
    c1: complex
    c2: complex

    @property
    def norm(self) -> float:
        return 1.0 + abs(self.c1) ** 2 + abs(self.c2) ** 2

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([abs(self.c0) ** 2, abs(self.c1) ** 2, abs(self.c2) ** 2]) / self.norm


def single_mode_amplitudes(mp: ModelPoint) -> SingleModeAmplitudes:
    e1 = eigenenergy(1, mp)
    e2 = eigenenergy(2, mp)
    c1 = -mp.xi / (e1 - 0.5j * mp.gamma)
    c2 = -SQRT2 * mp.xi * c1 / (e2 - 1j * mp.gamma)
    return SingleModeAmplitudes(1.0 + 0j, complex(c1), complex(c2))


def single_mode_observables(mp: ModelPoint, drive: str = "", point: tuple | None = None) -> ObservableSet:
    """Leading-order N and g2(0); g3 is not resolved by the two-photon truncation."""
    d = mp.delta1
    q = 0.25 * mp.gamma**2
    return ObservableSet(
        n=mp.xi**2 / (d**2 + q),
        g2=(d**2 + q) / ((d + mp.chi) ** 2 + q),
        g3=None,
        distribution=single_mode_amplitudes(mp).probabilities,
        drive=drive,
        point=point,
    )


def single_mode_moments(mp: ModelPoint) -> tuple[float, float]:
    """(N, g2) from the normalised amplitude distribution."""
    p = single_mode_amplitudes(mp).probabilities
    n = p[1] + 2 * p[2]
    return float(n), float(2 * p[2] / n**2)


@dataclass(frozen=True)
class AmplitudeConstants:
    """Complex detunings and auxiliary constants of the two-mode solution."""

    d3: complex
    d4: complex
    d5: complex
    d6: complex
    d7: complex
    d8: complex
    sigma1: complex
    sigma2: complex
    sigma3: complex
    zeta: complex
    eta1: complex
    eta2: complex
    eta3: complex
    mu: complex
    gamma1: complex
    gamma2: complex
    gamma3: complex
    gamma4: complex


def two_mode_constants(mp: ModelPoint) -> AmplitudeConstants:
    J2 = mp.j**2
    chi = mp.chi
    d3 = mp.delta1 - 0.5j * mp.gamma
    d4 = mp.delta2 - 0.5j * mp.gamma
    d5, d6 = d3 + chi, d4 + chi
    d7, d8 = d5 + chi, d6 + chi
    s1, s2, s3 = d4 + d5, d5 + d6, d7 + d8
    zeta = s2**2 + s3 * d7 - 4 * J2
    e1 = J2 - d3 * d4
    e2 = J2 - d5 * d6
    e3 = J2 - d7 * d8
    mu = e3 * (e3 - 2 * s3**2)
    base = J2 * chi + s2 * d4 * d6
    g1 = (s3 + d7) * base
    g2 = J2 * (2 * s1 * (J2 + 2 * s3 * d6) - chi * zeta) + s2 * d4 * d6 * zeta
    g3 = (2 * d8**2 - e3) * (J2 * chi + d6 * (s2 * d4 + 2 * s1 * d7))
    g4 = s1 * (e3 - 4 * d6 * d7) - 2 * base
    return AmplitudeConstants(d3, d4, d5, d6, d7, d8, s1, s2, s3, zeta, e1, e2, e3, mu, g1, g2, g3, g4)


@dataclass(frozen=True)
class TwoModeAmplitudes:
    """Amplitudes C_mn (m + n <= 3) keyed by ``(m, n)``."""

    c: dict
    constants: AmplitudeConstants
    printed: bool = False

    @property
    def norm(self) -> float:
        return float(sum(abs(v) ** 2 for v in self.c.values()))

    @property
    def probabilities(self) -> np.ndarray:
        """P_mn as a 4x4 array; entries with m + n > 3 are zero."""
        p = np.zeros((4, 4))
        for (m, n), v in self.c.items():
            p[m, n] = abs(v) ** 2
        return p / self.norm


def _check_degenerate(k: AmplitudeConstants, gamma: float, extra: dict | None = None):
    scaled = {
        "eta1": abs(k.eta1) / gamma**2,
        "eta2": abs(k.eta2) / gamma**2,
        "sigma2": abs(k.sigma2) / gamma,
        "mu": abs(k.mu) / gamma**4,
    }
    scaled.update(extra or {})
    bad = [name for name, v in scaled.items() if not v >= DEGENERACY_TOL]
    if bad:
        raise DegeneratePointError(f"vanishing denominators {bad} at this parameter point")


def _third_order(mp: ModelPoint, k: AmplitudeConstants, c20, c11, c02):
    J, xi = mp.j, mp.xi
    d7, d8 = k.d7, k.d8
    # C30 and C03 eliminated from their own rows
    a21 = 2 * d7 + d8 - J**2 / d7
    a12 = d7 + 2 * d8 - J**2 / d8
    r21 = -SQRT2 * xi * c11 + J * xi * c20 / d7
    r12 = -xi * c02
    det = a21 * a12 - 4 * J**2
    if not abs(det) / mp.gamma**2 >= DEGENERACY_TOL:
        raise DegeneratePointError("vanishing third-order determinant at this parameter point")
    c21 = (a12 * r21 - 2 * J * r12) / det
    c12 = (a21 * r12 - 2 * J * r21) / det
    c30 = -(xi * c20 + J * c21) / (SQRT3 * d7)
    c03 = -J * c12 / (SQRT3 * d8)
    return c30, c21, c12, c03


def two_mode_amplitudes(mp: ModelPoint, printed: bool = False) -> TwoModeAmplitudes:
    """Steady-state amplitudes of the driven two-mode model.

    ``printed=True`` evaluates the literature expressions verbatim; they are
    dimensionally inconsistent beyond first order and are not an oracle.
    """
    k = two_mode_constants(mp)
    _check_degenerate(k, mp.gamma)
    J, xi, chi = mp.j, mp.xi, mp.chi
    J2 = J**2
    e12 = k.eta1 * k.eta2

    c10 = xi * k.d4 / k.eta1
    c01 = -xi * J / k.eta1
    c02 = J2 * xi**2 * k.sigma1 / (SQRT2 * e12 * k.sigma2)

    if printed:
        c11 = -J * xi**2 * k.d6 * k.sigma1 / e12
        c20 = xi**2 * (k.d4 * k.d6 / k.sigma2 + J2 * chi) / (SQRT2 * e12 * k.sigma2)
        den = k.sigma2 * k.mu * e12
        c03 = -(J**3) * xi**3 * k.gamma4 / (SQRT6 * den)
        c12 = J2 * xi**3 * k.d8 * k.gamma4 / (SQRT2 * den)
        c21 = J * xi**3 * (k.gamma3 - k.d3 * k.eta3 * (k.d3 + 4 * chi)) / (SQRT2 * den)
        c30 = xi**3 * (k.eta3 * k.gamma1 - k.d8 * k.gamma2) / (SQRT6 * den)
    else:
        c11 = -J * xi**2 * k.d6 * k.sigma1 / (e12 * k.sigma2)
        c20 = xi**2 * (k.d4 * k.d6 * k.sigma2 + J2 * chi) / (SQRT2 * e12 * k.sigma2)
        c30, c21, c12, c03 = _third_order(mp, k, c20, c11, c02)

    c = {
        (0, 0): 1.0 + 0j,
        (1, 0): c10, (0, 1): c01,
        (2, 0): c20, (1, 1): c11, (0, 2): c02,
        (3, 0): c30, (2, 1): c21, (1, 2): c12, (0, 3): c03,
    }
    return TwoModeAmplitudes({key: complex(v) for key, v in c.items()}, k, printed)


def two_mode_observables(
    mp: ModelPoint,
    printed: bool = False,
    drive: str = "",
    point: tuple | None = None,
) -> ObservableSet:
    """Leading-order N, g2(0), g3(0) of the driven mode with backscattering."""
    amps = two_mode_amplitudes(mp, printed=printed)
    k = amps.constants
    J2, chi = mp.j**2, mp.chi
    n = abs(k.d4) ** 2 * mp.xi**2 / abs(k.eta1) ** 2
    if printed:
        g2 = abs(k.eta1**2 * (k.d4 * k.d6 / k.sigma2 + J2 * chi) ** 2
                 / (k.eta2**2 * k.sigma2**2 * k.d4**4))
        g3 = abs(k.eta1**4 * (k.eta3 * k.gamma1 - k.d8 * k.gamma2) ** 2
                 / (k.mu**2 * k.eta2**2 * k.sigma2**2 * k.d4**6))
    else:
        g2 = (abs(k.eta1) ** 2 * abs(k.d4 * k.d6 * k.sigma2 + J2 * chi) ** 2
              / (abs(k.eta2) ** 2 * abs(k.sigma2) ** 2 * abs(k.d4) ** 4))
        if mp.xi > 0:
            g3 = 6 * abs(amps.c[3, 0]) ** 2 / abs(amps.c[1, 0]) ** 6
        else:
            # the ratio is drive independent; evaluate it at unit drive
            unit = two_mode_amplitudes(ModelPoint(mp.delta_l, mp.delta_f, mp.chi, 1.0, mp.gamma, mp.j))
            g3 = 6 * abs(unit.c[3, 0]) ** 2 / abs(unit.c[1, 0]) ** 6
    return ObservableSet(
        n=float(n),
        g2=float(g2),
        g3=float(g3),
        distribution=amps.probabilities,
        drive=drive,
        point=point,
    )


def two_mode_moments(mp: ModelPoint, printed: bool = False) -> tuple[float, float, float]:
    """(N, g2, g3) of mode 1 from the normalised distribution P_mn."""
    p = two_mode_amplitudes(mp, printed=printed).probabilities
    pm = p.sum(axis=1)
    m = np.arange(4, dtype=float)
    n = float(m @ pm)
    return n, float((m * (m - 1)) @ pm) / n**2, float((m * (m - 1) * (m - 2)) @ pm) / n**3
