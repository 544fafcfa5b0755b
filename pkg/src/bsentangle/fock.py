"""Brute-force check of the Gaussian results in a truncated Fock basis.

Two-mode amplitudes are stored as ``psi[n_a, n_b]`` (row-major flattening gives
``|n_a> (x) |n_b>``). The beam splitter conserves total photon number, so it is
applied block by block over the whole support of the truncated input and adds no
truncation error of its own; the only error is the input tail, reported as the
truncation budget ``1 - norm^2``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from . import kernels
from .gaussian import BeamSplitterParams, PhaseSpacePoint, SqueezingParam

TRUNCATION_LIMIT = 1e-6
NEGATIVE_EIG_LIMIT = 1e-8
ZERO_EIG = 1e-14


class TruncationError(ValueError):
    """The truncated state misses more norm than the oracle tolerates."""

    def __init__(self, budget: float, limit: float = TRUNCATION_LIMIT):
        super().__init__(f"truncation budget {budget:.3e} exceeds {limit:.0e}; raise the cutoff")
        self.budget = budget


@dataclass(frozen=True)
class FockCutoff:
    n_max: int

    def __post_init__(self):
        if int(self.n_max) != self.n_max or self.n_max < 1:
            raise ValueError(f"cutoff must be an integer >= 1, got {self.n_max!r}")
        object.__setattr__(self, "n_max", int(self.n_max))

    @property
    def dim(self) -> int:
        return self.n_max + 1

    def check_for(self, r: float) -> bool:
        """Warn when ``n_max + 1 < 4 sinh^2 r + 10``; returns whether the heuristic holds."""
        ok = self.dim >= 4 * math.sinh(r) ** 2 + 10
        if not ok:
            warnings.warn(
                f"cutoff {self.n_max} is small for squeezing r={r:g}", RuntimeWarning, stacklevel=2
            )
        return ok


def _cutoff(cutoff) -> FockCutoff:
    return cutoff if isinstance(cutoff, FockCutoff) else FockCutoff(cutoff)


@dataclass(frozen=True, eq=False)
class FockVector:
    amplitudes: np.ndarray
    truncation_budget: float = 0.0

    @property
    def norm_sq(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)


@dataclass(frozen=True)
class OracleResult:
    entropy_nats: float
    truncation_budget: float


def squeeze_vacuum_fock(zeta: SqueezingParam, cutoff, strict: bool = True) -> FockVector:
    """Truncated amplitudes of ``S(zeta)|0>``.

    ``c_{2n} = (-e^{i chi} tanh r)^n sqrt((2n)!) / (2^n n!) / sqrt(cosh r)``,
    generated by the ratio ``c_{2n+2}/c_{2n} = -e^{i chi} tanh r sqrt((2n+1)/(2n+2))``.

    Raises:
        TruncationError: if ``strict`` and ``1 - norm^2 > 1e-6``.
    """
    cut = _cutoff(cutoff)
    amps = np.zeros(cut.dim, dtype=complex)
    amps[0] = 1.0 / math.sqrt(math.cosh(zeta.r))
    ratio = -complex(math.cos(zeta.chi), math.sin(zeta.chi)) * math.tanh(zeta.r)
    for k in range(2, cut.dim, 2):
        amps[k] = amps[k - 2] * ratio * math.sqrt((k - 1) / k)
    # sum the discarded tail directly; 1 - sum|c|^2 would bottom out at eps
    last = cut.n_max - cut.n_max % 2
    c, k, budget = abs(amps[last]), last + 2, 0.0
    t = abs(ratio)
    while t > 0.0:
        c *= t * math.sqrt((k - 1) / k)
        budget += c * c
        if c * c <= 1e-18 * budget or c == 0.0:
            break
        k += 2
    if strict and budget > TRUNCATION_LIMIT:
        raise TruncationError(budget)
    return FockVector(amps, budget)


def product_state(va: FockVector, vb: FockVector) -> FockVector:
    psi = np.outer(va.amplitudes, vb.amplitudes)
    ba, bb = va.truncation_budget, vb.truncation_budget
    budget = ba + bb - ba * bb
    return FockVector(psi, budget)


def mode_transfer(bs: BeamSplitterParams) -> np.ndarray:
    """``W`` with ``B a^dag B^-1 = W[0,0] a^dag + W[0,1] b^dag`` (and likewise for ``b^dag``)."""
    return bs.mode_matrix().conj().T


def _phase_split(bs: BeamSplitterParams):
    # M_B = diag(e^{i al}, e^{-i al}) R(theta) diag(e^{i be}, e^{-i be})
    return 0.5 * (bs.phi0 + bs.phi1), 0.5 * (bs.phi0 - bs.phi1)


def _lowering(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1)


def bs_unitary_fock(bs: BeamSplitterParams, cutoff) -> np.ndarray:
    """Dense beam-splitter unitary on the ``(n_max+1)^2`` box.

    ``B = exp(-i al (n_a - n_b)) exp(theta (a^dag b - a b^dag)) exp(-i be (n_a - n_b))``,
    exponentiated with scaling and squaring. Exact on states with
    ``n_a + n_b <= n_max``.
    """
    dim = _cutoff(cutoff).dim
    low = _lowering(dim)
    eye = np.eye(dim)
    a = np.kron(low, eye)
    b = np.kron(eye, low)
    gen = bs.theta * (a.T @ b - a @ b.T)
    alpha, beta = _phase_split(bs)
    n = np.arange(dim)
    diff = (n[:, None] - n[None, :]).ravel()
    return np.exp(-1j * alpha * diff)[:, None] * expm(gen) * np.exp(-1j * beta * diff)[None, :]


def bs_blocks_expm(bs: BeamSplitterParams, top: int) -> np.ndarray:
    """Fixed-photon-number blocks ``z[N, m, p] = <m, N-m|B|p, N-p>`` by matrix exponential."""
    alpha, beta = _phase_split(bs)
    z = np.zeros((top + 1, top + 1, top + 1), dtype=complex)
    for big_n in range(top + 1):
        m = np.arange(big_n)
        raise_a = np.zeros((big_n + 1, big_n + 1))
        raise_a[m + 1, m] = np.sqrt((m + 1.0) * (big_n - m))
        block = expm(bs.theta * (raise_a - raise_a.T))
        spin = 2 * np.arange(big_n + 1) - big_n
        z[big_n, : big_n + 1, : big_n + 1] = (
            np.exp(-1j * alpha * spin)[:, None] * block * np.exp(-1j * beta * spin)[None, :]
        )
    return z


def apply_beam_splitter(psi: FockVector, bs: BeamSplitterParams, method: str = "kernel") -> FockVector:
    """Exact beam-splitter action on a truncated two-mode state.

    The output lives on ``n_a, n_b <= da + db - 2`` so nothing is cut off.
    ``method`` is ``"kernel"`` (photon-number recurrence) or ``"expm"``.
    """
    amps = np.asarray(psi.amplitudes, dtype=complex)
    top = amps.shape[0] + amps.shape[1] - 2
    if method == "kernel":
        z = kernels.bs_blocks(mode_transfer(bs), top)
    elif method == "expm":
        z = bs_blocks_expm(bs, top)
    else:
        raise ValueError(f"unknown method {method!r}")
    return FockVector(kernels.bs_apply(amps, z), psi.truncation_budget)


def reduced_density_a(psi: FockVector) -> np.ndarray:
    """Partial trace over mode b: ``rho[m, n] = sum_k psi[m, k] psi*[n, k]``."""
    amps = np.asarray(psi.amplitudes)
    rho = amps @ amps.conj().T
    return 0.5 * (rho + rho.conj().T)


def reduced_density_b(psi: FockVector) -> np.ndarray:
    amps = np.asarray(psi.amplitudes)
    rho = amps.T @ amps.conj()
    return 0.5 * (rho + rho.conj().T)


def vn_entropy(rho: np.ndarray) -> float:
    """``-sum lambda ln lambda`` in nats; eigenvalues at or below 1e-14 contribute nothing.

    Raises:
        ValueError: if an eigenvalue is below ``-1e-8``.
    """
    lam = np.linalg.eigvalsh(rho)
    if lam[0] < -NEGATIVE_EIG_LIMIT:
        raise ValueError(f"density matrix is not positive semidefinite (min eigenvalue {lam[0]:.3e})")
    lam = lam[lam > ZERO_EIG]
    return float(-np.sum(lam * np.log(lam)))


def oracle_output(
    za: SqueezingParam, zb: SqueezingParam, bs: BeamSplitterParams, cutoff, method: str = "kernel",
    strict: bool = True,
) -> FockVector:
    cut = _cutoff(cutoff)
    va = squeeze_vacuum_fock(za, cut, strict=False)
    vb = squeeze_vacuum_fock(zb, cut, strict=False)
    psi = product_state(va, vb)
    if strict and psi.truncation_budget > TRUNCATION_LIMIT:
        raise TruncationError(psi.truncation_budget)
    return apply_beam_splitter(psi, bs, method=method)


def oracle_entanglement(
    za: SqueezingParam, zb: SqueezingParam, bs: BeamSplitterParams, cutoff, method: str = "kernel",
    strict: bool = True,
) -> OracleResult:
    """Entropy of mode a after the beam splitter, computed in the Fock basis.

    The reduced state is renormalized before taking the entropy.

    Raises:
        TruncationError: if ``strict`` and the input truncation budget exceeds 1e-6.
    """
    out = oracle_output(za, zb, bs, cutoff, method=method, strict=strict)
    rho = reduced_density_a(out)
    rho /= np.trace(rho).real
    return OracleResult(vn_entropy(rho), out.truncation_budget)


def displacement_operator(xi: complex, dim: int, pad: int = 40) -> np.ndarray:
    """Truncated ``exp(xi a - xi* a^dag)``, exponentiated in a padded space then cropped."""
    low = _lowering(dim + pad)
    return expm(xi * low - np.conj(xi) * low.T)[:dim, :dim]


def displacement_expectation(psi: FockVector, xi: PhaseSpacePoint) -> complex:
    """``tr[D(xi_a, xi_b) |psi><psi|]`` for a one- or two-mode truncated state."""
    amps = np.asarray(psi.amplitudes, dtype=complex)
    if amps.ndim == 1:
        if xi.xi_b != 0:
            raise ValueError("single-mode state with a nonzero xi_b")
        return complex(np.vdot(amps, displacement_operator(xi.xi_a, amps.shape[0]) @ amps))
    da = displacement_operator(xi.xi_a, amps.shape[0])
    db = displacement_operator(xi.xi_b, amps.shape[1])
    return complex(np.vdot(amps, da @ amps @ db.T))


def quadrature_moments(psi: FockVector):
    """``(2<p^2>, 2<x^2>, <n>)`` of a one-mode state, ``x = (a^dag+a)/sqrt2``, ``p = i(a-a^dag)/sqrt2``.

    The first two are the diagonal entries of the covariance in this package's convention.
    """
    amps = np.asarray(psi.amplitudes, dtype=complex)
    dim = amps.shape[0]
    low = _lowering(dim + 2)
    v = np.zeros(dim + 2, dtype=complex)
    v[:dim] = amps
    x = (low + low.T) / math.sqrt(2)
    p = 1j * (low - low.T) / math.sqrt(2)
    xv, pv = x @ v, p @ v
    n = float(np.vdot(v, low.T @ low @ v).real)
    return 2 * float(np.vdot(pv, pv).real), 2 * float(np.vdot(xv, xv).real), n
