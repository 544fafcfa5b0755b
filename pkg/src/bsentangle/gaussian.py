"""Gaussian phase-space engine for two squeezed vacua mixed on a lossless beam splitter.

Covariance matrices use the characteristic-function convention

    C(xi) = tr[D(xi) rho] = exp(-1/2 v^T M v),   D(xi) = exp(xi a - xi* a^dag)

with ``v = (Re xi_a, Im xi_a, Re xi_b, Im xi_b)``, so the vacuum has ``M = I``.
The real components pair with the quadratures of ``exp(i sqrt2 (xi^I x + xi^R p))``,
i.e. ``M[0, 0] = 2<p^2>`` and ``M[1, 1] = 2<x^2>`` for mode a.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

TWO_PI = 2.0 * math.pi

OMEGA_1 = np.array([[0.0, 1.0], [-1.0, 0.0]])
OMEGA = np.kron(np.eye(2), OMEGA_1)

# J of the separability condition; sigma_tilde = J^T (+) J
J_PPT = np.array([[0.0, -1.0], [1.0, 0.0]])
SIGMA_TILDE = np.block([[J_PPT.T, np.zeros((2, 2))], [np.zeros((2, 2)), J_PPT]])

SYMPLECTIC_TOL = 1e-10
PPT_TOL = 1e-9
DELTA_CLAMP_TOL = 1e-10
DELTA_INVALID_TOL = 1e-6


def _wrap(angle: float) -> float:
    a = math.fmod(float(angle), TWO_PI)
    if a < 0.0:
        a += TWO_PI
    # fmod can land exactly on 2*pi after the shift
    return 0.0 if a >= TWO_PI else a


@dataclass(frozen=True)
class SqueezingParam:
    """Squeezing ``zeta = r exp(i chi)`` of one mode."""

    r: float
    chi: float = 0.0

    def __post_init__(self):
        r = float(self.r)
        if not math.isfinite(r) or r < 0.0:
            raise ValueError(f"squeezing magnitude must be finite and >= 0, got {self.r!r}")
        if not math.isfinite(float(self.chi)):
            raise ValueError(f"squeezing phase must be finite, got {self.chi!r}")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "chi", 0.0 if r == 0.0 else _wrap(self.chi))

    @classmethod
    def from_complex(cls, zeta: complex) -> "SqueezingParam":
        zeta = complex(zeta)
        return cls(abs(zeta), math.atan2(zeta.imag, zeta.real))

    @property
    def zeta(self) -> complex:
        return self.r * complex(math.cos(self.chi), math.sin(self.chi))


@dataclass(frozen=True)
class BeamSplitterParams:
    """Mixing angle ``theta`` with transmission/reflection phases ``phi0``, ``phi1``.

    ``theta`` is brought into ``[0, pi/2]`` by shifting the phases by ``pi``;
    the mode-mixing matrix is unchanged by this, so the formulas hold for any
    input angle.
    """

    theta: float = math.pi / 4
    phi0: float = 0.0
    phi1: float = 0.0

    def __post_init__(self):
        for name in ("theta", "phi0", "phi1"):
            if not math.isfinite(float(getattr(self, name))):
                raise ValueError(f"{name} must be finite")
        theta = _wrap(self.theta)
        phi0, phi1 = float(self.phi0), float(self.phi1)
        if theta >= math.pi:
            # M -> -M
            theta -= math.pi
            phi0 += math.pi
            phi1 += math.pi
        if theta > math.pi / 2:
            # cos -> -cos
            theta = math.pi - theta
            phi0 += math.pi
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi0", _wrap(phi0))
        object.__setattr__(self, "phi1", _wrap(phi1))

    def mode_matrix(self) -> np.ndarray:
        """Complex 2x2 mode-mixing matrix ``M_B``."""
        c, s = math.cos(self.theta), math.sin(self.theta)
        e0 = complex(math.cos(self.phi0), math.sin(self.phi0))
        e1 = complex(math.cos(self.phi1), math.sin(self.phi1))
        return np.array(
            [[c * e0, s * e1], [-s * e1.conjugate(), c * e0.conjugate()]],
            dtype=complex,
        )


@dataclass(frozen=True, eq=False)
class GaussianState:
    """Zero-mean two-mode Gaussian state given by its 4x4 covariance matrix."""

    cov: np.ndarray

    def __post_init__(self):
        cov = np.array(self.cov, dtype=float)
        if cov.shape != (4, 4):
            raise ValueError(f"expected a 4x4 covariance matrix, got shape {cov.shape}")
        if not np.all(np.isfinite(cov)):
            raise ValueError("covariance matrix has non-finite entries")
        scale = max(1.0, float(np.max(np.abs(cov))))
        if np.max(np.abs(cov - cov.T)) > 1e-12 * scale:
            raise ValueError("covariance matrix is not symmetric")
        cov = 0.5 * (cov + cov.T)
        cov.setflags(write=False)
        object.__setattr__(self, "cov", cov)

    @classmethod
    def vacuum(cls) -> "GaussianState":
        return cls(np.eye(4))

    def uncertainty_min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.cov + 1j * OMEGA)[0])

    def purity_det(self) -> float:
        return float(np.linalg.det(self.cov))


@dataclass(frozen=True)
class CovarianceMatrix2:
    """Reduced one-mode covariance ``[[m11, m12], [m12, m22]]``."""

    m11: float
    m12: float
    m22: float

    def as_array(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m12, self.m22]])

    @property
    def det(self) -> float:
        return self.m11 * self.m22 - self.m12 * self.m12


@dataclass(frozen=True)
class ThermalEquivalent:
    """Thermal state unitarily equivalent to the reduced state of mode a.

    ``beta`` is ``math.inf`` when ``delta == 1`` (pure reduced state).
    """

    delta: float
    beta: float
    entropy_nats: float


@dataclass(frozen=True)
class PhaseSpacePoint:
    xi_a: complex = 0j
    xi_b: complex = 0j

    def as_real(self) -> np.ndarray:
        a, b = complex(self.xi_a), complex(self.xi_b)
        return np.array([a.real, a.imag, b.real, b.imag])


@dataclass(frozen=True)
class PPTResult:
    inseparable: bool
    lambda_min: float

    @property
    def verdict(self) -> str:
        return "inseparable" if self.inseparable else "separable"


def realify(m: np.ndarray) -> np.ndarray:
    """Real ``2n x 2n`` image of a complex ``n x n`` matrix acting on ``(Re, Im)`` pairs."""
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    out = np.empty((2 * n, 2 * n))
    out[0::2, 0::2] = m.real
    out[0::2, 1::2] = -m.imag
    out[1::2, 0::2] = m.imag
    out[1::2, 1::2] = m.real
    return out


def squeezer_symplectic(zeta: SqueezingParam) -> np.ndarray:
    """Phase-space matrix of the single-mode squeezer.

    Built from the Bogoliubov coefficients ``(cosh r, -exp(i chi) sinh r)``;
    the squeezed-vacuum covariance is ``S @ S.T``.
    """
    c, s = math.cosh(zeta.r), math.sinh(zeta.r)
    cc, sc = s * math.cos(zeta.chi), s * math.sin(zeta.chi)
    return np.array([[c + cc, -sc], [-sc, c - cc]])


def beam_splitter_symplectic(bs: BeamSplitterParams) -> np.ndarray:
    """Orthogonal symplectic 4x4 matrix of the beam splitter."""
    return realify(bs.mode_matrix())


def symplectic_residual(s: np.ndarray) -> float:
    """``max |S Omega S^T - Omega|`` for a 2x2 or 4x4 matrix."""
    s = np.asarray(s, dtype=float)
    omega = OMEGA_1 if s.shape == (2, 2) else OMEGA
    return float(np.max(np.abs(s @ omega @ s.T - omega)))


def input_state(za: SqueezingParam, zb: SqueezingParam) -> GaussianState:
    sa = squeezer_symplectic(za)
    sb = squeezer_symplectic(zb)
    cov = np.zeros((4, 4))
    cov[:2, :2] = sa @ sa.T
    cov[2:, 2:] = sb @ sb.T
    return GaussianState(cov)


def apply_transform(state: GaussianState, s: np.ndarray) -> GaussianState:
    s = np.asarray(s, dtype=float)
    if s.shape != (4, 4):
        raise ValueError(f"expected a 4x4 transform, got shape {s.shape}")
    # entries grow like e^r, so scale the check with |S|^2
    bound = SYMPLECTIC_TOL * max(1.0, float(np.max(np.abs(s))) ** 2)
    if symplectic_residual(s) > bound:
        raise ValueError("transform is not symplectic")
    return GaussianState(s @ state.cov @ s.T)


def reduce_mode_a(state: GaussianState) -> CovarianceMatrix2:
    """Marginal of mode a: setting ``xi_b = 0`` keeps the upper-left block."""
    c = state.cov
    return CovarianceMatrix2(float(c[0, 0]), float(c[0, 1]), float(c[1, 1]))


def output_state(za: SqueezingParam, zb: SqueezingParam, bs: BeamSplitterParams) -> GaussianState:
    return apply_transform(input_state(za, zb), beam_splitter_symplectic(bs))


def _mode_a_parts(r_a, chi_a, r_b, chi_b, theta, phi0, phi1):
    """Split the reduced covariance as ``m11 = A + Re Z``, ``m22 = A - Re Z``, ``m12 = Im Z``.

    Works elementwise on numpy arrays. ``A`` does not depend on any phase.
    """
    c2 = np.cos(theta) ** 2
    s2 = np.sin(theta) ** 2
    sigma_a = np.cosh(2 * r_a)
    sigma_b = np.cosh(2 * r_b)
    x_a = np.sinh(r_a) * np.cosh(r_a)
    x_b = np.sinh(r_b) * np.cosh(r_b)
    big_delta_a = 2 * phi0 - chi_a
    big_delta_b = 2 * phi1 - chi_b
    a = sigma_a * c2 + sigma_b * s2
    z = 2 * x_a * c2 * np.exp(1j * big_delta_a) + 2 * x_b * s2 * np.exp(1j * big_delta_b)
    return a, z


def covariance_elements(
    za: SqueezingParam, zb: SqueezingParam, bs: BeamSplitterParams
) -> CovarianceMatrix2:
    """Closed-form reduced covariance of mode a after the beam splitter.

    Uses ``Sigma = cosh^2 r + sinh^2 r``, ``x = sinh r cosh r``,
    ``Delta_a = 2 phi0 - chi_a`` and ``Delta_b = 2 phi1 - chi_b``.
    """
    a, z = _mode_a_parts(za.r, za.chi, zb.r, zb.chi, bs.theta, bs.phi0, bs.phi1)
    return CovarianceMatrix2(float(a + z.real), float(z.imag), float(a - z.real))


def _det_rounding_bound(m11, m12, m22):
    return 16.0 * np.finfo(float).eps * (np.abs(m11 * m22) + m12 * m12)


def _delta_from_elements(m11, m12, m22):
    """Vectorized determinant route with the clamp/validation rules of :func:`delta`."""
    det = m11 * m22 - m12 * m12
    if np.any(det < 1.0 - DELTA_INVALID_TOL):
        raise ValueError("invalid one-mode covariance: m11*m22 - m12^2 < 1")
    snap = np.abs(det - 1.0) <= np.maximum(DELTA_CLAMP_TOL, _det_rounding_bound(m11, m12, m22))
    det = np.where(snap, 1.0, det)
    if np.any(det < 1.0):
        raise ValueError("one-mode covariance violates the uncertainty bound")
    return np.sqrt(det)


def delta(cov2: CovarianceMatrix2) -> float:
    """Symplectic eigenvalue ``sqrt(m11 m22 - m12^2)`` of the reduced state.

    Values indistinguishable from 1 at working precision are returned as exactly 1.

    Raises:
        ValueError: if the determinant is below ``1 - 1e-6`` or below 1 by more
            than rounding can explain.
    """
    return float(_delta_from_elements(cov2.m11, cov2.m12, cov2.m22))


def delta_squared_closed_form(
    za: SqueezingParam, zb: SqueezingParam, bs: BeamSplitterParams
) -> float:
    """Expanded ``m11 m22 - m12^2`` as a function of the phase difference.

    ``(sin^4 + cos^4) + 1/2 Sigma_a Sigma_b sin^2 2theta
    - 2 x_a x_b sin^2 2theta cos(Delta_b - Delta_a)``
    """
    return float(_delta_squared_closed_form(za.r, za.chi, zb.r, zb.chi, bs.theta, bs.phi0, bs.phi1))


def _delta_squared_closed_form(r_a, chi_a, r_b, chi_b, theta, phi0, phi1):
    s2t = np.sin(2 * theta) ** 2
    c, s = np.cos(theta), np.sin(theta)
    x_a = np.sinh(r_a) * np.cosh(r_a)
    x_b = np.sinh(r_b) * np.cosh(r_b)
    diff = (2 * phi1 - chi_b) - (2 * phi0 - chi_a)
    return (
        s**4
        + c**4
        + 0.5 * np.cosh(2 * r_a) * np.cosh(2 * r_b) * s2t
        - 2 * x_a * x_b * s2t * np.cos(diff)
    )


def thermal_entropy(d):
    """Von Neumann entropy (nats) of the one-mode thermal state with symplectic eigenvalue ``d``."""
    d = np.asarray(d, dtype=float)
    plus = 0.5 * (d + 1.0)
    minus = 0.5 * (d - 1.0)
    out = xlogy(plus, plus) - xlogy(minus, minus)
    return np.where(d == 1.0, 0.0, out)


def thermal_equivalent(d: float) -> ThermalEquivalent:
    d = float(d)
    if not d >= 1.0 - DELTA_CLAMP_TOL:
        raise ValueError(f"symplectic eigenvalue must be >= 1, got {d!r}")
    if d <= 1.0:
        return ThermalEquivalent(1.0, math.inf, 0.0)
    beta = math.log((d + 1.0) / (d - 1.0))
    return ThermalEquivalent(d, beta, float(thermal_entropy(d)))


def entanglement(
    za: SqueezingParam, zb: SqueezingParam, bs: BeamSplitterParams
) -> ThermalEquivalent:
    """Entanglement entropy of the pure output state, via the reduced state of mode a."""
    return thermal_equivalent(delta(covariance_elements(za, zb, bs)))


def entanglement_arrays(r_a, chi_a, r_b, chi_b, theta, phi0, phi1):
    """Broadcasting version of :func:`entanglement`; returns ``(delta, entropy_nats)``."""
    args = (r_a, chi_a, r_b, chi_b, theta, phi0, phi1)
    a, z = _mode_a_parts(*np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in args)))
    d = _delta_from_elements(a + z.real, z.imag, a - z.real)
    return d, thermal_entropy(d)


def char_fn_eval(state: GaussianState, xi: PhaseSpacePoint) -> float:
    v = xi.as_real()
    return float(math.exp(-0.5 * v @ state.cov @ v))


def ppt_inseparable(state: GaussianState, tol: float = PPT_TOL) -> PPTResult:
    """Partial-transpose test: inseparable iff ``cov + i sigma_tilde`` has a negative eigenvalue."""
    lam = float(np.linalg.eigvalsh(state.cov + 1j * SIGMA_TILDE)[0])
    return PPTResult(lam < -tol, lam)
