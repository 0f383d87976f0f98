"""Nonreciprocity ratios R1, R2, R3 (dB) and the CNR / QNR / H-QNR classification.

Ratios are forced to zero whenever the corresponding reciprocity condition
holds: equal mean photon numbers for R1, and correlation functions on the
same side of 1 for R2 and R3. Floating-point equality is replaced by the
bands in ``ToleranceConfig``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MismatchedPointError
from .observables import ObservableSet

__all__ = ["ToleranceConfig", "NRReport", "ratios", "straddles_one"]


@dataclass(frozen=True)
class ToleranceConfig:
    eps_n: float = 1e-6
    delta_g: float = 1e-9


@dataclass(frozen=True, eq=False)
class NRReport:
    r1: float
    r2: float
    r3: float
    cnr: bool
    qnr: bool
    hqnr: bool
    reciprocal: bool
    cw: ObservableSet
    ccw: ObservableSet

    @property
    def classification(self) -> str:
        if self.hqnr:
            return "HQNR"
        labels = [name for name, flag in (("CNR", self.cnr), ("QNR", self.qnr)) if flag]
        return "+".join(labels) if labels else "reciprocal"


def _db(num: float, den: float) -> float:
    return float(10.0 * np.log10(num / den))


def straddles_one(a: float, b: float, band: float) -> bool:
    """True when one value is below ``1 - band`` and the other above ``1 + band``."""
    lo, hi = 1.0 - band, 1.0 + band
    return (a < lo and b > hi) or (a > hi and b < lo)


def ratios(cw: ObservableSet, ccw: ObservableSet, tol: ToleranceConfig = ToleranceConfig()) -> NRReport:
    if cw.point is not None and ccw.point is not None and cw.point != ccw.point:
        raise MismatchedPointError(f"CW point {cw.point} != CCW point {ccw.point}")

    scale = max(cw.n, ccw.n)
    if scale == 0.0 or abs(ccw.n - cw.n) / scale < tol.eps_n:
        r1 = 0.0
    else:
        r1 = _db(ccw.n, cw.n)

    r2 = _db(ccw.g2, cw.g2) if straddles_one(cw.g2, ccw.g2, tol.delta_g) else 0.0

    if cw.g3 is not None and ccw.g3 is not None and straddles_one(cw.g3, ccw.g3, tol.delta_g):
        r3 = _db(ccw.g3, cw.g3)
    else:
        r3 = 0.0

    return NRReport(
        r1=r1,
        r2=r2,
        r3=r3,
        cnr=r1 != 0.0,
        qnr=r2 != 0.0,
        hqnr=r3 != 0.0 and r1 == 0.0 and r2 == 0.0,
        reciprocal=r1 == 0.0 and r2 == 0.0 and r3 == 0.0,
        cw=cw,
        ccw=ccw,
    )
