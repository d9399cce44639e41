"""Benchmark coupled systems: maps, flows, and the ODE integrator.

Three unidirectionally coupled pairs, each driven by an autonomous source
subsystem y acting on a target subsystem x:

  henon-henon     four-dimensional map, coupling blends the driver state into
                  the quadratic term of the target.
  lorenz-lorenz   two Lorenz flows with slightly detuned Rayleigh numbers,
                  diffusive coupling eps*(y1 - x1) in the first target equation.
  rossler-lorenz  a time-scaled Rossler driving a Lorenz through eps*y2**beta
                  added to the second target equation.

Flows are integrated with an adaptive Dormand-Prince 5(4) pair sampled on a
fixed grid via its quartic dense-output interpolant, matching the semantics of
fixed-interval sampling of an adaptive solver.  State order is always
(y1, y2, y3, x1, x2, x3).  Each subsystem is observed through its coupling
variable, i.e. the component that appears in the interaction term (y1 and x1
for henon-henon and lorenz-lorenz, y2 and x2 for rossler-lorenz); the choice
is configurable per spec.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np
from numba import njit

from .preprocess import RealSeries

__all__ = [
    "HENON_HENON",
    "LORENZ_LORENZ",
    "ROSSLER_LORENZ",
    "SYSTEM_KINDS",
    "SystemSpec",
    "Trajectory",
    "henon_coupled",
    "lorenz_lorenz_rhs",
    "rossler_lorenz_rhs",
    "integrate_dp45",
    "generate_flow_series",
    "generate_trajectory",
]

HENON_HENON = "henon-henon"
LORENZ_LORENZ = "lorenz-lorenz"
ROSSLER_LORENZ = "rossler-lorenz"
SYSTEM_KINDS = (HENON_HENON, LORENZ_LORENZ, ROSSLER_LORENZ)

_DEFAULT_DT = {LORENZ_LORENZ: 0.03, ROSSLER_LORENZ: 0.02617}
_DEFAULT_DISCARD = {HENON_HENON: 1000, LORENZ_LORENZ: 10000, ROSSLER_LORENZ: 10000}
_DEFAULT_CONSTANTS = {
    HENON_HENON: {"b": 0.3},
    LORENZ_LORENZ: {"rho1": 28.5, "rho2": 27.5},
    ROSSLER_LORENZ: {"alpha": 6.0, "beta": 2.0},
}
# observable component per subsystem: the variable the coupling term acts through
_DEFAULT_OBSERVABLES = {
    HENON_HENON: (0, 0),
    LORENZ_LORENZ: (0, 0),
    ROSSLER_LORENZ: (1, 1),
}
_SUBSYSTEM_DIM = {HENON_HENON: 2, LORENZ_LORENZ: 3, ROSSLER_LORENZ: 3}

_DIVERGENCE_BOUND = 1.0e6
_MAX_IC_RETRIES = 100


@dataclass(frozen=True)
class SystemSpec:
    """Parameterization of one coupled-system realization.

    discard, dt, constants, and the observed components default per system
    kind when left None.  source_var and target_var index into the source and
    target subsystem state (0-based).
    """

    kind: str
    epsilon: float
    length: int
    seed: int
    discard: int | None = None
    dt: float | None = None
    constants: Mapping[str, float] | None = None
    source_var: int | None = None
    target_var: int | None = None

    def __post_init__(self):
        if self.kind not in SYSTEM_KINDS:
            raise ValueError(f"unknown system kind: {self.kind!r}")
        if self.epsilon < 0:
            raise ValueError("epsilon must be >= 0")
        if self.length < 2:
            raise ValueError("length must be >= 2")
        if self.discard is None:
            object.__setattr__(self, "discard", _DEFAULT_DISCARD[self.kind])
        elif self.discard < 0:
            raise ValueError("discard must be >= 0")
        if self.dt is None:
            object.__setattr__(self, "dt", _DEFAULT_DT.get(self.kind))
        elif self.dt <= 0:
            raise ValueError("dt must be positive")
        merged = dict(_DEFAULT_CONSTANTS[self.kind])
        if self.constants is not None:
            unknown = set(self.constants) - set(merged)
            if unknown:
                raise ValueError(f"unknown constants: {sorted(unknown)}")
            merged.update(self.constants)
        object.__setattr__(self, "constants", merged)
        dim = _SUBSYSTEM_DIM[self.kind]
        defaults = _DEFAULT_OBSERVABLES[self.kind]
        for field, default in zip(("source_var", "target_var"), defaults):
            value = getattr(self, field)
            if value is None:
                object.__setattr__(self, field, default)
            elif not 0 <= value < dim:
                raise ValueError(f"{field} must be in [0, {dim})")


@dataclass(frozen=True)
class Trajectory:
    """Observable series of one realization, plus optionally the full state."""

    source_series: RealSeries
    target_series: RealSeries
    full_state: np.ndarray | None = None


@njit(cache=True, nogil=True)
def _henon_run(ic, eps, b, n_steps, bound):
    """Iterate the coupled map; returns (states, steps_done, stayed_bounded)."""
    out = np.empty((n_steps, 4))
    y1 = ic[0]
    y2 = ic[1]
    x1 = ic[2]
    x2 = ic[3]
    for i in range(n_steps):
        ny1 = 1.4 - y1 * y1 + b * y2
        ny2 = y1
        nx1 = 1.4 - (eps * y1 + (1.0 - eps) * x1) * x1 + b * x2
        nx2 = x1
        y1 = ny1
        y2 = ny2
        x1 = nx1
        x2 = nx2
        if abs(y1) > bound or abs(x1) > bound:
            return out, i, False
        out[i, 0] = y1
        out[i, 1] = y2
        out[i, 2] = x1
        out[i, 3] = x2
    return out, n_steps, True


def henon_coupled(
    spec: SystemSpec,
    initial_state: np.ndarray | None = None,
    keep_state: bool = False,
) -> Trajectory:
    """Generate one realization of the coupled map pair.

    Initial conditions are drawn uniformly from [0, 1)^4 using the spec seed;
    orbits that leave |value| <= 1e6 are rejected and redrawn, up to 100
    attempts.  The first `discard` iterations are dropped.  An explicit
    initial_state bypasses the draw and is never retried.
    """
    if spec.kind != HENON_HENON:
        raise ValueError("spec is not a henon-henon system")
    b = spec.constants["b"]
    n_steps = spec.discard + spec.length
    rng = np.random.default_rng(spec.seed)
    for _ in range(_MAX_IC_RETRIES):
        if initial_state is not None:
            ic = np.ascontiguousarray(initial_state, dtype=np.float64)
        else:
            ic = rng.random(4)
        states, steps, bounded = _henon_run(
            ic, float(spec.epsilon), float(b), n_steps, _DIVERGENCE_BOUND
        )
        if bounded:
            tail = states[spec.discard :]
            return Trajectory(
                source_series=RealSeries(tail[:, spec.source_var].copy()),
                target_series=RealSeries(tail[:, 2 + spec.target_var].copy()),
                full_state=tail.copy() if keep_state else None,
            )
        if initial_state is not None:
            raise RuntimeError(f"trajectory diverged at step {steps}")
    raise RuntimeError("persistent divergence: 100 initial conditions rejected")


def lorenz_lorenz_rhs(
    state: np.ndarray, epsilon: float, rho1: float = 28.5, rho2: float = 27.5
) -> np.ndarray:
    """Right-hand side of the coupled Lorenz pair (sigma=10, b=8/3)."""
    y1, y2, y3, x1, x2, x3 = state
    return np.array(
        [
            10.0 * (-y1 + y2),
            rho1 * y1 - y2 - y1 * y3,
            y1 * y2 - (8.0 / 3.0) * y3,
            10.0 * (-x1 + x2) + epsilon * (y1 - x1),
            rho2 * x1 - x2 - x1 * x3,
            x1 * x2 - (8.0 / 3.0) * x3,
        ]
    )


def rossler_lorenz_rhs(
    state: np.ndarray, epsilon: float, alpha: float = 6.0, beta: float = 2.0
) -> np.ndarray:
    """Right-hand side of the Rossler-driven Lorenz (driver scaled by alpha)."""
    y1, y2, y3, x1, x2, x3 = state
    return np.array(
        [
            -alpha * (y2 + y3),
            alpha * (y1 + 0.2 * y2),
            alpha * (0.2 + y3 * (y1 - 5.7)),
            10.0 * (-x1 + x2),
            28.0 * x1 - x2 - x1 * x3 + epsilon * y2**beta,
            x1 * x2 - (8.0 / 3.0) * x3,
        ]
    )


# Dormand-Prince 5(4) tableau
_C2, _C3, _C4, _C5 = 1 / 5, 3 / 10, 4 / 5, 8 / 9
_A21 = 1 / 5
_A31, _A32 = 3 / 40, 9 / 40
_A41, _A42, _A43 = 44 / 45, -56 / 15, 32 / 9
_A51, _A52, _A53, _A54 = 19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729
_A61, _A62, _A63, _A64, _A65 = (
    9017 / 3168,
    -355 / 33,
    46732 / 5247,
    49 / 176,
    -5103 / 18656,
)
_B1, _B3, _B4, _B5, _B6 = 35 / 384, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84
# fifth-order minus fourth-order weights
_E1, _E3, _E4, _E5, _E6, _E7 = (
    71 / 57600,
    -71 / 16695,
    71 / 1920,
    -17253 / 339200,
    22 / 525,
    -1 / 40,
)
# dense-output weights for the quartic interpolant
_D1 = -12715105075 / 11282082432
_D3 = 87487479700 / 32700410799
_D4 = -10690763975 / 1880347072
_D5 = 701980252875 / 199316789632
_D6 = -1453857185 / 822651844
_D7 = 69997945 / 29380423


def integrate_dp45(
    rhs: Callable[[np.ndarray], np.ndarray],
    initial: np.ndarray,
    dt: float,
    n_samples: int,
    rel_tol: float = 1e-6,
    abs_tol: float = 1e-9,
    fixed_step: float | None = None,
) -> np.ndarray:
    """Integrate an autonomous ODE and sample it at t = k*dt.

    Parameters
    ----------
    rhs : callable
        Maps the state vector to its time derivative.
    initial : array_like
        State at t = 0; emitted as the first sample.
    dt : float
        Sampling interval.
    n_samples : int
        Number of samples, including the initial state.
    rel_tol, abs_tol : float
        Error-per-step tolerances of the adaptive controller.
    fixed_step : float, optional
        Disable step-size control and march with this step instead; samples
        are still read off the dense-output interpolant.

    Returns
    -------
    ndarray, shape (n_samples, len(initial))

    Raises
    ------
    RuntimeError
        If the controller drives the step size below representable
        resolution, typically a sign of stiffness or divergence.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    if rel_tol <= 0 or abs_tol <= 0:
        raise ValueError("tolerances must be positive")
    if fixed_step is not None and fixed_step <= 0:
        raise ValueError("fixed_step must be positive")

    y = np.atleast_1d(np.asarray(initial, dtype=np.float64)).copy()
    if y.ndim != 1:
        raise ValueError("initial state must be one-dimensional")

    def f(state):
        return np.asarray(rhs(state), dtype=np.float64)

    out = np.empty((n_samples, y.size))
    out[0] = y
    if n_samples == 1:
        return out

    t_end = (n_samples - 1) * dt
    emit_tol = 1e-9 * dt
    t = 0.0
    k1 = f(y)
    h = fixed_step if fixed_step is not None else 0.01 * dt
    next_k = 1
    grow_cap = 5.0

    while next_k < n_samples:
        if fixed_step is None:
            if h < 1e-12 * max(1.0, abs(t)):
                raise RuntimeError(f"step size underflow at t={t:.6g}")
            if t + h > t_end:
                h = t_end - t

        k2 = f(y + h * (_A21 * k1))
        k3 = f(y + h * (_A31 * k1 + _A32 * k2))
        k4 = f(y + h * (_A41 * k1 + _A42 * k2 + _A43 * k3))
        k5 = f(y + h * (_A51 * k1 + _A52 * k2 + _A53 * k3 + _A54 * k4))
        k6 = f(y + h * (_A61 * k1 + _A62 * k2 + _A63 * k3 + _A64 * k4 + _A65 * k5))
        y_new = y + h * (_B1 * k1 + _B3 * k3 + _B4 * k4 + _B5 * k5 + _B6 * k6)
        k7 = f(y_new)

        if fixed_step is None:
            err_vec = h * (
                _E1 * k1 + _E3 * k3 + _E4 * k4 + _E5 * k5 + _E6 * k6 + _E7 * k7
            )
            scale = abs_tol + rel_tol * np.maximum(np.abs(y), np.abs(y_new))
            err = float(np.sqrt(np.mean((err_vec / scale) ** 2)))
            if not np.isfinite(err):
                h *= 0.2
                grow_cap = 1.0
                continue
            if err > 1.0:
                h *= min(1.0, max(0.2, 0.9 * err**-0.2))
                grow_cap = 1.0
                continue
        else:
            err = 0.0

        t_new = t + h
        if next_k * dt <= t_new + emit_tol:
            ydiff = y_new - y
            bspl = h * k1 - ydiff
            rcont3 = bspl
            rcont4 = ydiff - h * k7 - bspl
            rcont5 = h * (
                _D1 * k1 + _D3 * k3 + _D4 * k4 + _D5 * k5 + _D6 * k6 + _D7 * k7
            )
            while next_k < n_samples and next_k * dt <= t_new + emit_tol:
                theta = (next_k * dt - t) / h
                theta = min(max(theta, 0.0), 1.0)
                th1 = 1.0 - theta
                out[next_k] = y + theta * (
                    ydiff + th1 * (rcont3 + theta * (rcont4 + th1 * rcont5))
                )
                next_k += 1

        t = t_new
        y = y_new
        k1 = k7
        if fixed_step is None:
            factor = grow_cap if err == 0.0 else min(grow_cap, max(0.2, 0.9 * err**-0.2))
            h *= factor
            grow_cap = 5.0

    return out


def generate_flow_series(
    spec: SystemSpec,
    initial_state: np.ndarray | None = None,
    keep_state: bool = False,
    rel_tol: float = 1e-6,
    abs_tol: float = 1e-9,
) -> Trajectory:
    """Integrate one flow realization and return its observables.

    The initial condition is drawn uniformly from [0, 1)^6 and shifted by
    (0, 0, 0, 0, 0, 20) to start the target Lorenz near its attractor basin;
    the first `discard` samples are dropped.
    """
    if spec.kind == LORENZ_LORENZ:
        c = spec.constants

        def rhs(state):
            return lorenz_lorenz_rhs(state, spec.epsilon, c["rho1"], c["rho2"])

    elif spec.kind == ROSSLER_LORENZ:
        c = spec.constants

        def rhs(state):
            return rossler_lorenz_rhs(state, spec.epsilon, c["alpha"], c["beta"])

    else:
        raise ValueError("spec is not a flow system")

    if initial_state is not None:
        ic = np.ascontiguousarray(initial_state, dtype=np.float64)
    else:
        rng = np.random.default_rng(spec.seed)
        ic = rng.random(6) + np.array([0.0, 0.0, 0.0, 0.0, 0.0, 20.0])
    n_total = spec.discard + spec.length
    states = integrate_dp45(rhs, ic, spec.dt, n_total, rel_tol, abs_tol)
    tail = states[spec.discard :]
    return Trajectory(
        source_series=RealSeries(tail[:, spec.source_var].copy()),
        target_series=RealSeries(tail[:, 3 + spec.target_var].copy()),
        full_state=tail.copy() if keep_state else None,
    )


def generate_trajectory(
    spec: SystemSpec,
    initial_state: np.ndarray | None = None,
    keep_state: bool = False,
) -> Trajectory:
    """Generate a realization of any system kind."""
    if spec.kind == HENON_HENON:
        return henon_coupled(spec, initial_state, keep_state)
    return generate_flow_series(spec, initial_state, keep_state)
