"""Parameter sweeps and entanglement maximization over beam-splitter angles and phases."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import minimize_scalar

from .gaussian import (
    TWO_PI,
    BeamSplitterParams,
    SqueezingParam,
    _mode_a_parts,
    entanglement_arrays,
)

PARAM_NAMES = ("r_a", "r_b", "theta", "phi0", "phi1", "chi_a", "chi_b")
# Delta_b - Delta_a, realized by moving phi1
DERIVED_PARAMS = ("delta_diff",)
ANGLE_PARAMS = ("theta", "phi0", "phi1", "chi_a", "chi_b", "delta_diff")
PHASE_PARAMS = ("phi0", "phi1", "chi_a", "chi_b")
FREE_ALIASES = {"phases": ("phi1",), "all": ("theta", "phi1")}
MAX_FREE = 3
MAX_STEPS = 10**6
PHASE_TOL = 1e-6
FLAT_TOL = 1e-12


@dataclass(frozen=True)
class Setup:
    """Full parameter set of one configuration, as plain floats."""

    r_a: float = 0.0
    r_b: float = 0.0
    theta: float = math.pi / 4
    phi0: float = 0.0
    phi1: float = 0.0
    chi_a: float = 0.0
    chi_b: float = 0.0

    @classmethod
    def from_params(cls, za: SqueezingParam, zb: SqueezingParam, bs: BeamSplitterParams) -> "Setup":
        return cls(za.r, zb.r, bs.theta, bs.phi0, bs.phi1, za.chi, zb.chi)

    def squeezing(self):
        return SqueezingParam(self.r_a, self.chi_a), SqueezingParam(self.r_b, self.chi_b)

    def beam_splitter(self) -> BeamSplitterParams:
        return BeamSplitterParams(self.theta, self.phi0, self.phi1)

    def canonical(self) -> "Setup":
        za, zb = self.squeezing()
        return Setup.from_params(za, zb, self.beam_splitter())

    @property
    def phase_difference(self) -> float:
        """``Delta_b - Delta_a = 2(phi1 - phi0) - (chi_b - chi_a)``."""
        return 2 * (self.phi1 - self.phi0) - (self.chi_b - self.chi_a)

    def with_value(self, name: str, value: float) -> "Setup":
        if name == "delta_diff":
            return replace(self, phi1=self.phi0 + 0.5 * (value + self.chi_b - self.chi_a))
        if name not in PARAM_NAMES:
            raise ValueError(f"unknown parameter {name!r}")
        return replace(self, **{name: value})


@dataclass(frozen=True)
class SweepSpec:
    param: str
    start: float
    stop: float
    steps: int
    fixed: Setup = field(default_factory=Setup)

    def __post_init__(self):
        if self.param not in PARAM_NAMES + DERIVED_PARAMS:
            raise ValueError(f"unknown sweep parameter {self.param!r}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)) or not self.start < self.stop:
            raise ValueError("sweep needs finite bounds with from < to")
        if int(self.steps) != self.steps or not 2 <= self.steps <= MAX_STEPS:
            raise ValueError(f"steps must be an integer in [2, {MAX_STEPS}]")
        if self.param in ("r_a", "r_b") and self.start < 0:
            raise ValueError("squeezing magnitude cannot be negative")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, int(self.steps))


@dataclass(frozen=True)
class SweepRow:
    param: str
    value: float
    delta: float
    entropy_nats: float


@dataclass(frozen=True)
class MaximizationResult:
    argmax: Setup
    free: tuple
    delta_max: float
    entropy_max: float
    k_branch: int
    phase_residual: float
    flat_objective: bool = False


def _columns(setups_or_base: Setup, name=None, values=None):
    base = setups_or_base
    cols = {k: np.full(1, getattr(base, k)) for k in PARAM_NAMES}
    if name is not None:
        if name == "delta_diff":
            cols["phi1"] = base.phi0 + 0.5 * (np.asarray(values) + base.chi_b - base.chi_a)
        else:
            cols[name] = np.asarray(values, dtype=float)
    return cols


def _evaluate(cols):
    return entanglement_arrays(
        cols["r_a"], cols["chi_a"], cols["r_b"], cols["chi_b"], cols["theta"], cols["phi0"], cols["phi1"]
    )


def sweep(spec: SweepSpec) -> list[SweepRow]:
    """Delta and entropy on an evenly spaced grid of one parameter, in grid order."""
    values = spec.values()
    d, e = _evaluate(_columns(spec.fixed, spec.param, values))
    d, e = np.broadcast_to(d, values.shape), np.broadcast_to(e, values.shape)
    return [SweepRow(spec.param, float(v), float(dv), float(ev)) for v, dv, ev in zip(values, d, e)]


def phase_condition_check(za: SqueezingParam, zb: SqueezingParam, bs: BeamSplitterParams) -> float:
    """Distance (radians, in ``[0, pi]``) of ``2(phi1-phi0) - (chi_b-chi_a)`` from an odd multiple of pi."""
    return _odd_pi_distance(Setup.from_params(za, zb, bs).phase_difference)


def _odd_pi_distance(value: float) -> float:
    off = math.fmod(value - math.pi, TWO_PI)
    off = abs(off)
    return min(off, TWO_PI - off)


def _nearest_branch(value: float) -> int:
    return int(round((value - math.pi) / TWO_PI))


def expand_free(names) -> tuple:
    out = []
    for name in names:
        for n in FREE_ALIASES.get(name, (name,)):
            if n not in ("theta",) + PHASE_PARAMS:
                raise ValueError(f"cannot optimize over {name!r}; free parameters are theta and phases")
            if n not in out:
                out.append(n)
    if not out:
        raise ValueError("at least one free parameter is required")
    if len(out) > MAX_FREE:
        raise ValueError(f"at most {MAX_FREE} free parameters")
    return tuple(out)


def _bounds(name):
    # entanglement has period pi/2 in theta
    return (0.0, math.pi / 2) if name == "theta" else (0.0, TWO_PI)


def _line_objective(setup: Setup, name: str):
    """Scalar function to minimize along one coordinate, with the same argmax as the entropy.

    Along a phase the phase-free part ``A`` of the reduced covariance is constant and
    ``delta^2 = A^2 - |Z|^2``, so minimizing ``|Z|^2`` avoids losing the phase
    dependence to rounding in ``A^2``.
    """
    if name in PHASE_PARAMS:

        def f(x):
            s = replace(setup, **{name: x})
            _, z = _mode_a_parts(s.r_a, s.chi_a, s.r_b, s.chi_b, s.theta, s.phi0, s.phi1)
            return float(abs(z) ** 2)

    else:

        def f(x):
            d, _ = _evaluate(_columns(replace(setup, **{name: x})))
            return -float(d[0]) ** 2

    return f


def _refine(setup: Setup, name: str, step: float) -> Setup:
    f = _line_objective(setup, name)
    x0 = getattr(setup, name)
    fb = f(x0)
    if fb < f(x0 - step) and fb < f(x0 + step):
        bracket = (x0 - step, x0, x0 + step)
    else:
        # tie with a neighbour (optimum between grid points): let golden search expand downhill
        bracket = (x0 - 0.5 * step, x0 + 0.5 * step)
    try:
        res = minimize_scalar(f, bracket=bracket, method="golden", tol=1e-10)
    except (ValueError, RuntimeError):
        return setup
    if res.fun < fb and abs(res.x - x0) <= 2 * step:
        return replace(setup, **{name: float(res.x)})
    return setup


def maximize_entanglement(
    r_a: float, r_b: float, free, fixed: Setup | None = None, points: int = 64, rounds: int = 3
) -> MaximizationResult:
    """Maximize the output entanglement over the free angles at fixed squeezing magnitudes.

    A coarse grid with ``points`` samples per free coordinate locates the basin, then
    each coordinate is refined by golden-section search for ``rounds`` sweeps. When a
    phase is free, ``phi1`` is finally shifted by multiples of pi (which leaves the
    state's entanglement unchanged) so that ``Delta_b - Delta_a`` lies in ``(0, 2 pi]``.
    """
    free = expand_free(free)
    if points < 64:
        raise ValueError("coarse grid needs at least 64 points per dimension")
    base = replace(fixed or Setup(), r_a=float(r_a), r_b=float(r_b))

    axes = [np.linspace(*_bounds(n), points, endpoint=(n == "theta")) for n in free]
    mesh = np.meshgrid(*axes, indexing="ij")
    cols = _columns(base)
    for n, grid in zip(free, mesh):
        cols[n] = grid.ravel()
    d, e = _evaluate(cols)
    d = np.broadcast_to(d, mesh[0].size)
    flat = bool(np.ptp(d) <= FLAT_TOL * float(np.max(d)))
    best = int(np.argmax(d))
    start = base
    for n, grid in zip(free, mesh):
        start = replace(start, **{n: float(grid.ravel()[best])})

    current = start
    if not flat:
        for _ in range(rounds):
            for n, ax in zip(free, axes):
                current = _refine(current, n, float(ax[1] - ax[0]))

    result = current.canonical()
    phases_free = any(n in PHASE_PARAMS for n in free)
    if phases_free:
        result = _canonical_branch(result)

    (dm,), (em,) = (np.atleast_1d(v) for v in _evaluate(_columns(result)))
    diff = result.phase_difference
    residual = _odd_pi_distance(diff)
    if phases_free and not flat and _phase_weight(result) > 1e-12 and residual > PHASE_TOL:
        raise RuntimeError(f"optimizer missed the optimal phase condition (residual {residual:.2e})")
    return MaximizationResult(
        argmax=result,
        free=free,
        delta_max=float(dm),
        entropy_max=float(em),
        k_branch=_nearest_branch(diff),
        phase_residual=residual,
        flat_objective=flat,
    )


def _phase_weight(s: Setup) -> float:
    """Coefficient of ``-cos(Delta_b - Delta_a)`` in ``delta^2``."""
    return 0.5 * math.sinh(2 * s.r_a) * math.sinh(2 * s.r_b) * math.sin(2 * s.theta) ** 2


def _canonical_branch(s: Setup) -> Setup:
    # phi shifts by pi move Delta_b - Delta_a by 2 pi; prefer a value in (0, 2 pi]
    def miss(c):
        v = c.phase_difference
        return 0.0 if 0.0 < v <= TWO_PI else min(abs(v), abs(v - TWO_PI))

    options = [
        replace(s, phi0=s.phi0 + i * math.pi, phi1=s.phi1 + j * math.pi)
        for i in (0, -1, 1)
        for j in (0, -1, 1)
    ]
    options = [c for c in options if 0.0 <= c.phi0 < TWO_PI and 0.0 <= c.phi1 < TWO_PI]
    return min(options, key=miss)
