"""Polynomial ODE systems, integrators, and conserved-quantity observation.

This module turns the symbolic structures (bracket tensors, metriplectic
pairs, fiber-linear structures on a dual chart) into explicit polynomial
right-hand sides, compiles them to flat coefficient/exponent tables, and
integrates them with either a fixed-step RK4 scheme or an adaptive
Dormand-Prince 5(4) scheme.  Hot loops run through numba-compiled kernels
with a pure-numpy fallback (``LEIBNIZ_NO_NUMBA=1`` selects the fallback).

Observables are tracked symbolically first: ``lie_derivative`` computes the
exact polynomial derivative of an observable along the flow, so tests can
gate "this quantity should be conserved / dissipated" claims on an exact
symbolic statement before measuring numerical drift.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import _kernels
from .algebroid import AlgebroidStructure, Prop4DualTensor
from .brackets import (
    MetriplecticPair,
    TensorField2,
    almost_leibniz_vf,
    hamiltonian_vf,
)
from .poly import Chart, ChartMismatchError, Poly, embed

__all__ = [
    "OdeSystem",
    "IntegratorConfig",
    "Trajectory",
    "ObservableReport",
    "ObservationReport",
    "rhs_from_bracket",
    "rhs_from_pair",
    "rhs_from_algebroid",
    "rhs_metriplectic_algebroid",
    "compile_rhs",
    "integrate",
    "lie_derivative",
    "observe",
    "trajectory_to_csv",
    "trajectory_to_json",
    "trajectory_from_json",
]

MONOTONE_TOL = 1e-12


@dataclass(frozen=True)
class OdeSystem:
    """A polynomial first-order system d(coords)/dt = rhs on a chart.

    ``rhs[i]`` is the time derivative of ``chart.names[i]``.  ``provenance``
    is a short human-readable tag describing how the system was built (it is
    carried into exports, never interpreted).
    """

    chart: Chart
    rhs: tuple[Poly, ...]
    provenance: str = "custom"

    def __post_init__(self) -> None:
        object.__setattr__(self, "rhs", tuple(self.rhs))
        if len(self.rhs) != len(self.chart.names):
            raise ValueError(
                f"need {len(self.chart.names)} components for chart "
                f"{self.chart.names}, got {len(self.rhs)}"
            )
        for comp in self.rhs:
            if comp.chart != self.chart:
                raise ChartMismatchError(
                    "rhs component chart does not match the system chart"
                )

    @property
    def dim(self) -> int:
        return len(self.chart.names)


def rhs_from_bracket(tensor: TensorField2, h: Poly, provenance: str = "bracket") -> OdeSystem:
    """System generated by one function through a bracket tensor."""
    return OdeSystem(tensor.chart, hamiltonian_vf(tensor, h).components, provenance)


def rhs_from_pair(
    pair: MetriplecticPair, h1: Poly, h2: Poly, provenance: str = "pair"
) -> OdeSystem:
    """System generated by two functions through an antisymmetric/symmetric pair."""
    return OdeSystem(pair.chart, almost_leibniz_vf(pair, h1, h2).components, provenance)


def rhs_from_algebroid(
    structure: AlgebroidStructure, h: Poly, provenance: str = "algebroid"
) -> OdeSystem:
    """System generated by ``h`` on the dual chart, from the structure data.

    Computed directly from the structure functions and anchors:

    * base components:   dx^i/dt = -sum_a rho2[i][a] * dh/dxi_a
    * fiber components:  dxi_a/dt = sum_b (sum_d C[a][b][d] xi_d) * dh/dxi_b
                                    + sum_i rho1[i][a] * dh/dx^i

    This is an independent route from contracting the assembled dual-chart
    tensor with the gradient of ``h``; the two are checked against each other
    in the test suite rather than being collapsed into one code path.
    """
    chart = structure.dual_chart
    n, m = structure.n, structure.m
    names = chart.names
    dh = [h.diff(name) for name in names]
    components: list[Poly] = []
    for i in range(n):
        comp = Poly.zero(chart)
        for a in range(m):
            comp = comp - embed(structure.rho2[i][a], chart) * dh[n + a]
        components.append(comp)
    for a in range(m):
        comp = Poly.zero(chart)
        for b in range(m):
            contracted = Poly.zero(chart)
            for d in range(m):
                contracted = contracted + embed(structure.C[a][b][d], chart) * Poly.var(
                    chart, names[n + d]
                )
            comp = comp + contracted * dh[n + b]
        for i in range(n):
            comp = comp + embed(structure.rho1[i][a], chart) * dh[i]
        components.append(comp)
    return OdeSystem(chart, tuple(components), provenance)


def rhs_metriplectic_algebroid(
    antisymmetric_part: AlgebroidStructure,
    symmetric_part: AlgebroidStructure | Prop4DualTensor,
    h1: Poly,
    h2: Poly,
    provenance: str = "metriplectic-algebroid",
) -> OdeSystem:
    """Componentwise sum of an antisymmetric flow for ``h1`` and a symmetric one for ``h2``.

    The symmetric part may be a plain structure or a constructed dual tensor
    with rational-function structure functions; in the latter case its
    vector-field contribution must still be polynomial (it is, whenever the
    construction succeeded for a fiber-linear generator).
    """
    first = rhs_from_algebroid(antisymmetric_part, h1, provenance="")
    chart = first.chart
    if isinstance(symmetric_part, Prop4DualTensor):
        if symmetric_part.dual_chart != chart:
            raise ChartMismatchError("the two structures live on different dual charts")
        second = symmetric_part.vf_contrib(h2)
    else:
        if symmetric_part.dual_chart != chart:
            raise ChartMismatchError("the two structures live on different dual charts")
        second = rhs_from_algebroid(symmetric_part, h2, provenance="").rhs
    total = tuple(p + q for p, q in zip(first.rhs, second))
    return OdeSystem(chart, total, provenance)


# -- compilation -------------------------------------------------------------------


@dataclass(frozen=True)
class CompiledRhs:
    """Flat term tables: component i owns coeffs[offsets[i]:offsets[i+1]]."""

    coeffs: np.ndarray  # float64 (n_terms,)
    expts: np.ndarray  # int64 (n_terms, dim)
    offsets: np.ndarray  # int64 (dim + 1,)


def compile_rhs(system: OdeSystem) -> CompiledRhs:
    """Flatten the rhs polynomials into kernel-ready coefficient tables."""
    coeffs: list[float] = []
    rows: list[tuple[int, ...]] = []
    offsets = [0]
    for comp in system.rhs:
        for expt, coeff in comp.terms():
            coeffs.append(float(coeff))
            rows.append(expt)
        offsets.append(len(coeffs))
    dim = system.dim
    expts = (
        np.array(rows, dtype=np.int64)
        if rows
        else np.zeros((0, dim), dtype=np.int64)
    )
    return CompiledRhs(
        coeffs=np.array(coeffs, dtype=np.float64),
        expts=expts,
        offsets=np.array(offsets, dtype=np.int64),
    )


# -- integration -------------------------------------------------------------------


@dataclass(frozen=True)
class IntegratorConfig:
    """Integration settings.

    ``method`` is ``"rk4_fixed"`` (uniform steps of size ``step``) or
    ``"rk45_adaptive"`` (embedded 5(4) pair; ``step`` seeds the first trial
    step and ``abs_tol``/``rel_tol`` control the per-step error test).
    """

    method: str = "rk45_adaptive"
    t_end: float = 20.0
    step: float = 1e-2
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_steps: int = 200_000

    def __post_init__(self) -> None:
        if self.method not in ("rk4_fixed", "rk45_adaptive"):
            raise ValueError(f"unknown method {self.method!r}")
        if not (self.t_end > 0 and math.isfinite(self.t_end)):
            raise ValueError("t_end must be positive and finite")
        if not (self.step > 0 and math.isfinite(self.step)):
            raise ValueError("step must be positive and finite")
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("abs_tol and rel_tol must be strictly positive")
        if self.max_steps < 1:
            raise ValueError("max_steps must be at least 1")


@dataclass(frozen=True)
class Trajectory:
    """Integration output; ``states[k]`` is the state at ``times[k]``.

    ``status`` is 0 on success, 1 if ``max_steps`` ran out, 2 if a
    non-finite state appeared (the last row records where), and 3 on
    adaptive step-size underflow.  On non-zero status the arrays hold the
    partial trajectory up to the failure.
    """

    times: np.ndarray
    states: np.ndarray
    accepted: int
    rejected: int
    status: int

    @property
    def ok(self) -> bool:
        return self.status == _kernels.STATUS_OK


def integrate(system: OdeSystem, x0: Sequence[float], config: IntegratorConfig) -> Trajectory:
    """Integrate from ``x0`` at t=0 to ``config.t_end``.

    Deterministic: the same system, initial state, config, and kernel path
    produce bitwise-identical trajectories.
    """
    y0 = np.asarray(x0, dtype=np.float64)
    if y0.shape != (system.dim,):
        raise ValueError(f"initial state must have shape ({system.dim},), got {y0.shape}")
    if not np.all(np.isfinite(y0)):
        raise ValueError("initial state must be finite")
    tables = compile_rhs(system)
    fast = _kernels.use_numba()
    if config.method == "rk4_fixed":
        n_steps = math.ceil(config.t_end / config.step)
        if n_steps > config.max_steps:
            raise ValueError(
                f"rk4_fixed needs {n_steps} steps which exceeds max_steps={config.max_steps}"
            )
        kernel = _kernels.rk4_numba if fast else _kernels.rk4_numpy
        times, states, accepted, rejected, status = kernel(
            tables.coeffs, tables.expts, tables.offsets, y0, config.t_end, n_steps
        )
    else:
        kernel = _kernels.dp54_numba if fast else _kernels.dp54_numpy
        times, states, accepted, rejected, status = kernel(
            tables.coeffs,
            tables.expts,
            tables.offsets,
            y0,
            config.t_end,
            config.step,
            config.abs_tol,
            config.rel_tol,
            config.max_steps,
        )
    return Trajectory(
        times=np.array(times),
        states=np.array(states),
        accepted=int(accepted),
        rejected=int(rejected),
        status=int(status),
    )


# -- observation -------------------------------------------------------------------


def lie_derivative(system: OdeSystem, f: Poly) -> Poly:
    """Exact derivative of ``f`` along the flow: sum_mu rhs_mu * df/dmu."""
    if f.chart != system.chart:
        raise ChartMismatchError("observable chart does not match the system chart")
    out = Poly.zero(system.chart)
    for name, comp in zip(system.chart.names, system.rhs):
        out = out + comp * f.diff(name)
    return out


@dataclass(frozen=True)
class ObservableReport:
    """One observable sampled along a trajectory.

    ``drift`` is ``max_k |values[k] - values[0]|``.  The monotonicity verdict
    uses a per-step tolerance: ``"nonincreasing"`` if no step rises by more
    than ``MONOTONE_TOL``, else ``"nondecreasing"`` if no step falls by more
    than it, else ``"neither"``.  ``symbolically_constant`` records whether
    the exact derivative along the flow is the zero polynomial.
    """

    name: str
    values: np.ndarray
    drift: float
    monotonicity: str
    symbolically_constant: bool


@dataclass(frozen=True)
class ObservationReport:
    reports: tuple[ObservableReport, ...] = field(default_factory=tuple)

    def __getitem__(self, name: str) -> ObservableReport:
        for rep in self.reports:
            if rep.name == name:
                return rep
        raise KeyError(name)

    def names(self) -> tuple[str, ...]:
        return tuple(rep.name for rep in self.reports)


def _monotonicity(values: np.ndarray, tol: float) -> str:
    diffs = np.diff(values)
    if diffs.size == 0 or np.all(diffs <= tol):
        return "nonincreasing"
    if np.all(diffs >= -tol):
        return "nondecreasing"
    return "neither"


def observe(
    system: OdeSystem,
    trajectory: Trajectory,
    observables: Mapping[str, Poly],
    tol: float = MONOTONE_TOL,
) -> ObservationReport:
    """Sample observables along a trajectory and summarize their behavior."""
    reports = []
    for name, f in observables.items():
        if f.chart != system.chart:
            raise ChartMismatchError(f"observable {name!r} lives on a different chart")
        values = np.array([f.evaluate(row) for row in trajectory.states])
        drift = float(np.max(np.abs(values - values[0]))) if values.size else 0.0
        reports.append(
            ObservableReport(
                name=name,
                values=values,
                drift=drift,
                monotonicity=_monotonicity(values, tol),
                symbolically_constant=lie_derivative(system, f).is_zero,
            )
        )
    return ObservationReport(tuple(reports))


# -- export ------------------------------------------------------------------------


def trajectory_to_csv(system: OdeSystem, trajectory: Trajectory) -> str:
    """CSV text with header ``t,<coordinate names...>`` and %.17g values."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", *system.chart.names])
    for t, row in zip(trajectory.times, trajectory.states):
        writer.writerow(["%.17g" % t, *("%.17g" % v for v in row)])
    return buf.getvalue()


def trajectory_to_json(
    system: OdeSystem,
    trajectory: Trajectory,
    observations: ObservationReport | None = None,
) -> str:
    """JSON document for a trajectory, optionally with observable summaries."""
    doc: dict = {
        "chart": list(system.chart.names),
        "provenance": system.provenance,
        "status": trajectory.status,
        "accepted": trajectory.accepted,
        "rejected": trajectory.rejected,
        "times": [float(t) for t in trajectory.times],
        "states": [[float(v) for v in row] for row in trajectory.states],
    }
    if observations is not None:
        doc["observables"] = {
            rep.name: {
                "values": [float(v) for v in rep.values],
                "drift": rep.drift,
                "monotonicity": rep.monotonicity,
                "symbolically_constant": rep.symbolically_constant,
            }
            for rep in observations.reports
        }
    return json.dumps(doc, indent=2, sort_keys=True)


def trajectory_from_json(text: str) -> tuple[tuple[str, ...], Trajectory]:
    """Inverse of ``trajectory_to_json`` (chart names and trajectory only)."""
    doc = json.loads(text)
    try:
        names = tuple(str(n) for n in doc["chart"])
        times = np.array(doc["times"], dtype=np.float64)
        states = np.array(doc["states"], dtype=np.float64)
        status = int(doc["status"])
        accepted = int(doc["accepted"])
        rejected = int(doc["rejected"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed trajectory document: {exc}") from exc
    if states.ndim != 2 or states.shape[0] != times.shape[0] or states.shape[1] != len(names):
        raise ValueError("malformed trajectory document: inconsistent shapes")
    return names, Trajectory(
        times=times, states=states, accepted=accepted, rejected=rejected, status=status
    )
