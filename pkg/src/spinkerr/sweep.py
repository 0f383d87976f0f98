"""Grid runs over detuning, rotation speed or backscattering for both drive directions."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .analytic import single_mode_observables, two_mode_observables
from .errors import SpinKerrError
from .hamiltonian import ModelPoint
from .lindblad import SteadyStateSolution, solve_model
from .nonreciprocity import NRReport, ToleranceConfig, ratios
from .observables import ObservableSet, mode_distribution, observables_from_state
from .params import PhysicalParams, derive_rates

__all__ = [
    "AXES",
    "MODELS",
    "ENGINES",
    "SweepSpec",
    "PointResult",
    "ResultRow",
    "model_points",
    "solve_point",
    "run_sweep",
    "compare_engines",
    "rows_to_csv",
    "rows_to_json",
]

AXES = ("delta_l", "omega", "j")
MODELS = ("single", "two")
ENGINES = ("numeric", "analytic", "both")
DEFAULT_DIMS = {"single": (8,), "two": (6, 6)}


def default_dims(model: str, nmax: int | None = None) -> tuple[int, ...]:
    if nmax is None:
        return DEFAULT_DIMS[model]
    return (nmax,) if model == "single" else (nmax, nmax)


@dataclass(frozen=True)
class SweepSpec:
    """A linear grid along one axis; the other two axes are held fixed.

    ``delta_l`` and ``j`` are in units of gamma, ``omega`` in rad/s.
    ``omega=None`` uses ``params.omega``.
    """

    params: PhysicalParams = field(default_factory=PhysicalParams)
    axis: str = "delta_l"
    start: float = -4.0
    stop: float = 4.0
    count: int = 41
    delta_l_over_gamma: float = 0.0
    omega: float | None = None
    j_over_gamma: float = 0.0
    model: str = "single"
    engine: str = "numeric"
    tol: ToleranceConfig = field(default_factory=ToleranceConfig)
    dims: tuple[int, ...] | None = None
    workers: int = 1

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")
        if self.model not in MODELS:
            raise ValueError(f"model must be one of {MODELS}, got {self.model!r}")
        if self.engine not in ENGINES:
            raise ValueError(f"engine must be one of {ENGINES}, got {self.engine!r}")
        if int(self.count) != self.count or self.count < 1:
            raise ValueError(f"count must be a positive integer, got {self.count!r}")
        if self.start > self.stop:
            raise ValueError(f"start {self.start} > stop {self.stop}")
        if self.dims is not None and len(self.dims) != (1 if self.model == "single" else 2):
            raise ValueError(f"dims {self.dims} do not fit model {self.model!r}")

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, int(self.count))

    @property
    def resolved_dims(self) -> tuple[int, ...]:
        return tuple(self.dims) if self.dims is not None else default_dims(self.model)

    def coordinates(self, value: float) -> tuple[float, float, float]:
        """(delta_l/gamma, omega, j/gamma) at one grid value."""
        dl = self.delta_l_over_gamma
        om = self.params.omega if self.omega is None else self.omega
        j = self.j_over_gamma
        if self.axis == "delta_l":
            dl = float(value)
        elif self.axis == "omega":
            om = float(value)
        else:
            j = float(value)
        return dl, om, j


def model_points(
    params: PhysicalParams,
    delta_l_over_gamma: float,
    omega: float,
    j_over_gamma: float = 0.0,
) -> dict[str, ModelPoint]:
    """CW and CCW model points at identical detuning, rotation and coupling."""
    out = {}
    for drive in ("cw", "ccw"):
        rates = derive_rates(params.replace(omega=omega, drive=drive))
        out[drive] = ModelPoint.from_rates(
            rates,
            delta_l=delta_l_over_gamma * rates.gamma,
            j=j_over_gamma * rates.gamma,
        )
    return out


def _point_key(mp: ModelPoint) -> tuple:
    return (mp.delta_l, abs(mp.delta_f), mp.j, mp.xi, mp.chi, mp.gamma)


@dataclass(frozen=True, eq=False)
class PointResult:
    numeric: NRReport | None
    analytic: NRReport | None
    solutions: dict[str, SteadyStateSolution]
    dims: tuple[int, ...]

    @property
    def primary(self) -> NRReport:
        return self.numeric if self.numeric is not None else self.analytic

    @property
    def max_residual(self) -> float | None:
        if not self.solutions:
            return None
        return max(s.relative_residual for s in self.solutions.values())


def solve_point(
    params: PhysicalParams,
    delta_l_over_gamma: float,
    omega: float,
    j_over_gamma: float = 0.0,
    model: str = "single",
    engine: str = "numeric",
    dims: tuple[int, ...] | None = None,
    tol: ToleranceConfig = ToleranceConfig(),
) -> PointResult:
    """Solve both drive directions at one point and classify the pair."""
    dims = tuple(dims) if dims is not None else default_dims(model)
    if model == "single" and j_over_gamma != 0.0:
        raise ValueError("backscattering J requires the two-mode model")
    mps = model_points(params, delta_l_over_gamma, omega, j_over_gamma)

    numeric = analytic = None
    solutions: dict[str, SteadyStateSolution] = {}
    if engine in ("numeric", "both"):
        obs: dict[str, ObservableSet] = {}
        for drive, mp in mps.items():
            sol = solve_model(mp, dims)
            solutions[drive] = sol
            obs[drive] = observables_from_state(sol.rho, drive=drive, point=_point_key(mp))
        numeric = ratios(obs["cw"], obs["ccw"], tol)
    if engine in ("analytic", "both"):
        closed = single_mode_observables if model == "single" else two_mode_observables
        obs = {
            drive: closed(mp, drive=drive, point=_point_key(mp))
            for drive, mp in mps.items()
        }
        analytic = ratios(obs["cw"], obs["ccw"], tol)
    return PointResult(numeric, analytic, solutions, dims)


@dataclass(frozen=True, eq=False)
class ResultRow:
    index: int
    axis: str
    value: float
    delta_l_over_gamma: float
    omega: float
    j_over_gamma: float
    model: str
    engine: str
    dims: tuple[int, ...]
    result: PointResult | None = None
    error: str | None = None

    @property
    def numeric(self) -> NRReport | None:
        return None if self.result is None else self.result.numeric

    @property
    def analytic(self) -> NRReport | None:
        return None if self.result is None else self.result.analytic

    def record(self) -> dict[str, object]:
        """Flat column -> value mapping; the column set depends only on the engine."""
        rec: dict[str, object] = {
            "index": self.index,
            "axis": self.axis,
            "value": self.value,
            "delta_l_over_gamma": self.delta_l_over_gamma,
            "omega_rad_s": self.omega,
            "j_over_gamma": self.j_over_gamma,
            "model": self.model,
            "engine": self.engine,
        }
        prefixes = []
        if self.engine in ("numeric", "both"):
            prefixes.append(("num", self.numeric))
        if self.engine in ("analytic", "both"):
            prefixes.append(("an", self.analytic))
        for prefix, rep in prefixes:
            for drive in ("cw", "ccw"):
                o = None if rep is None else getattr(rep, drive)
                rec[f"{prefix}_n_{drive}"] = None if o is None else o.n
                rec[f"{prefix}_g2_{drive}"] = None if o is None else o.g2
                rec[f"{prefix}_g3_{drive}"] = None if o is None else o.g3
                p = None if o is None else mode_distribution(o.distribution, 1)
                for k in range(3):
                    rec[f"{prefix}_p{k}_{drive}"] = None if p is None or k >= p.size else float(p[k])
            rec[f"{prefix}_r1"] = None if rep is None else rep.r1
            rec[f"{prefix}_r2"] = None if rep is None else rep.r2
            rec[f"{prefix}_r3"] = None if rep is None else rep.r3
            rec[f"{prefix}_class"] = None if rep is None else rep.classification
        primary = None if self.result is None else self.result.primary
        rec["classification"] = None if primary is None else primary.classification
        rec["residual"] = None if self.result is None else self.result.max_residual
        rec["dims"] = "x".join(str(d) for d in self.dims)
        rec["error"] = self.error
        return rec


def _run_index(spec: SweepSpec, index: int, value: float) -> ResultRow:
    dl, om, j = spec.coordinates(value)
    dims = spec.resolved_dims
    base = dict(
        index=index, axis=spec.axis, value=float(value),
        delta_l_over_gamma=dl, omega=om, j_over_gamma=j,
        model=spec.model, engine=spec.engine, dims=dims,
    )
    try:
        res = solve_point(spec.params, dl, om, j, spec.model, spec.engine, dims, spec.tol)
    except (SpinKerrError, ValueError, np.linalg.LinAlgError) as exc:
        return ResultRow(**base, error=f"{type(exc).__name__}: {exc}")
    return ResultRow(**base, result=res)


def _run_chunk(args):
    spec, items = args
    return [_run_index(spec, i, v) for i, v in items]


def run_sweep(spec: SweepSpec) -> list[ResultRow]:
    """One row per grid point, ordered by index whatever the worker count."""
    items = list(enumerate(spec.grid()))
    if spec.workers <= 1 or len(items) == 1:
        rows = [_run_index(spec, i, v) for i, v in items]
    else:
        chunks = [items[k::spec.workers] for k in range(spec.workers)]
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            rows = [row for chunk in pool.map(_run_chunk, [(spec, c) for c in chunks]) for row in chunk]
    return sorted(rows, key=lambda r: r.index)


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


def compare_engines(rows: list[ResultRow]) -> dict[str, float]:
    """Max relative analytic-vs-numeric errors over rows computed with engine='both'."""
    out = {"n": 0.0, "g2": 0.0, "g3": 0.0, "points": 0}
    for row in rows:
        if row.numeric is None or row.analytic is None:
            continue
        out["points"] += 1
        for drive in ("cw", "ccw"):
            num, an = getattr(row.numeric, drive), getattr(row.analytic, drive)
            out["n"] = max(out["n"], _rel(an.n, num.n))
            out["g2"] = max(out["g2"], _rel(an.g2, num.g2))
            if an.g3 is not None and num.g3 is not None:
                out["g3"] = max(out["g3"], _rel(an.g3, num.g3))
    return out


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".12g")
    return str(value)


def rows_to_csv(rows: list[ResultRow]) -> str:
    if not rows:
        return ""
    records = [r.record() for r in rows]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(records[0])
    writer.writerows([_fmt(rec[k]) for k in records[0]] for rec in records)
    return buf.getvalue()


def _json_value(value):
    if isinstance(value, (float, np.floating)):
        return float(format(float(value), ".12g"))
    return value


def rows_to_json(rows: list[ResultRow]) -> str:
    data = [{k: _json_value(v) for k, v in r.record().items()} for r in rows]
    return json.dumps(data, indent=1) + "\n"
