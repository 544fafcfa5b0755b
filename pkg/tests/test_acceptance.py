"""End-to-end acceptance checks, one test per criterion.

Each test records a one-line verdict; ``conftest.pytest_terminal_summary`` prints
them after the run. ``python tests/test_acceptance.py`` runs the same checks
without pytest.
"""

import math
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent))

from bsentangle import fock  # noqa: E402
from bsentangle.gaussian import (  # noqa: E402
    BeamSplitterParams,
    SqueezingParam,
    apply_transform,
    beam_splitter_symplectic,
    covariance_elements,
    delta,
    delta_squared_closed_form,
    entanglement,
    input_state,
    output_state,
    ppt_inseparable,
    reduce_mode_a,
    squeezer_symplectic,
    symplectic_residual,
)
from bsentangle.optimize import Setup, SweepSpec, maximize_entanglement, sweep  # noqa: E402

from conftest import TWO_PI, draw  # noqa: E402

RESULTS = {}

# seed and draw count per criterion; criterion 8 replays all of them
DRAWS = {
    1: (101, 50, 0.0),
    2: (102, 25, 0.8),
    3: (103, 1000, 2.0),
    4: (104, 1000, 2.0),
    7: (107, 200, 2.0),
}


def record(n, ok, elapsed, budget, detail):
    ok = bool(ok) and (budget is None or elapsed < budget)
    limit = "" if budget is None else f" (limit {budget:g} s)"
    RESULTS[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}  [{elapsed:.2f} s{limit}]"
    assert ok, RESULTS[n]


def draws(n):
    seed, count, r_max = DRAWS[n]
    rng = np.random.default_rng(seed)
    return [draw(rng, r_max=r_max) for _ in range(count)]


def test_criterion_1_vacuum_baseline():
    t0 = time.perf_counter()
    bad = 0
    for za, zb, bs in draws(1):
        e = entanglement(za, zb, bs).entropy_nats
        ppt = ppt_inseparable(output_state(za, zb, bs))
        bad += e != 0.0 or ppt.inseparable
    record(1, bad == 0, time.perf_counter() - t0, 1.0, f"E == 0 and separable on 50 draws ({bad} violations)")


def test_criterion_2_fock_oracle():
    t0 = time.perf_counter()
    worst = 0.0
    ok = True
    for za, zb, bs in draws(2):
        res = fock.oracle_entanglement(za, zb, bs, 40)
        diff = abs(entanglement(za, zb, bs).entropy_nats - res.entropy_nats)
        ok &= diff <= max(1e-3, 10 * res.truncation_budget)
        worst = max(worst, diff)
    record(2, ok, time.perf_counter() - t0, 300.0, f"max |E_gauss - E_fock| = {worst:.2e} over 25 draws, cutoff 40")


def test_criterion_3_closed_form_vs_symplectic():
    t0 = time.perf_counter()
    worst = 0.0
    for za, zb, bs in draws(3):
        closed = covariance_elements(za, zb, bs).as_array()
        path = reduce_mode_a(output_state(za, zb, bs)).as_array()
        worst = max(worst, float(np.max(np.abs(closed - path))))
    record(3, worst <= 1e-12, time.perf_counter() - t0, 5.0, f"max element difference {worst:.2e} over 1000 draws")


def test_criterion_4_corrected_delta():
    t0 = time.perf_counter()
    worst = 0.0
    for za, zb, bs in draws(4):
        d = delta(covariance_elements(za, zb, bs))
        worst = max(worst, abs(d - math.sqrt(delta_squared_closed_form(za, zb, bs))))
    special = 0.0
    for r in (0.2, 0.5, 1.0):
        z = SqueezingParam(r)
        d = delta(covariance_elements(z, z, BeamSplitterParams(math.pi / 4, 0.0, math.pi / 2)))
        special = max(special, abs(d - math.cosh(2 * r)))
    ok = worst <= 1e-10 and special <= 1e-12
    record(4, ok, time.perf_counter() - t0, 5.0, f"det vs closed form {worst:.2e}; cosh 2r check {special:.2e}")


def test_criterion_5_maximization_condition():
    t0 = time.perf_counter()
    fixed = Setup(r_a=0.5, r_b=0.5, theta=math.pi / 4)
    rows = sweep(SweepSpec("delta_diff", 0.0, TWO_PI, 721, fixed=fixed))
    peak = max(rows, key=lambda r: r.entropy_nats).value
    step = TWO_PI / 720
    rng = np.random.default_rng(105)
    residuals = []
    for _ in range(10):
        ra, rb = rng.uniform(0.05, 2.0, 2)
        theta = rng.uniform(0.1, math.pi / 2 - 0.1)
        res = maximize_entanglement(ra, rb, ["phi0", "phi1"], fixed=Setup(theta=theta))
        residuals.append(res.phase_residual)
    ok = abs(peak - math.pi) <= step and max(residuals) < 1e-6
    record(
        5, ok, time.perf_counter() - t0, 10.0,
        f"sweep peak at {peak:.6f} (pi +/- {step:.4f}); max optimizer residual {max(residuals):.2e}",
    )


def _thermal_series(d, terms=2000):
    q = (d - 1) / (d + 1)
    n = np.arange(terms)
    p = (1 - q) * q**n
    p = p[p > 0]
    return float(-np.sum(p * np.log(p)))


def test_criterion_6_entropy_errata():
    from bsentangle.gaussian import thermal_entropy

    t0 = time.perf_counter()
    ours = float(thermal_entropy(3.0))
    series = _thermal_series(3.0)
    # the printed closed form, ln(2/(d+1)) - ((d-1)/2) ln((d-1)/(d+1)), vanishes at d = 3
    d = 3.0
    printed = math.log(2 / (d + 1)) - (d - 1) / 2 * math.log((d - 1) / (d + 1))
    ok = abs(ours - 2 * math.log(2)) <= 1e-10 and abs(series - ours) <= 1e-10
    record(6, ok, time.perf_counter() - t0, 1.0, f"S(3) = {ours:.12f}, series {series:.12f}, printed form gives {printed:g}")


def _separable_setups():
    # random draws are almost always entangled; these give product outputs
    rng = np.random.default_rng(170)
    out = []
    for k in range(30):
        za, zb, bs = draw(rng)
        if k % 3 == 0:
            bs = BeamSplitterParams(0.0, bs.phi0, bs.phi1)
        elif k % 3 == 1:
            bs = BeamSplitterParams(math.pi / 2, bs.phi0, bs.phi1)
        else:
            # equal squeezing with Delta_b = Delta_a
            zb = SqueezingParam(za.r, za.chi + 2 * (bs.phi1 - bs.phi0))
        out.append((za, zb, bs))
    return out


def test_criterion_7_ppt_agreement():
    t0 = time.perf_counter()
    disagree = 0
    entangled = 0
    for za, zb, bs in draws(7) + _separable_setups():
        e = entanglement(za, zb, bs).entropy_nats
        ppt = ppt_inseparable(output_state(za, zb, bs))
        disagree += ppt.inseparable != (e > 1e-9)
        entangled += e > 1e-9
    record(7, disagree == 0, time.perf_counter() - t0, 10.0, f"{disagree} disagreements over 200 draws + 30 product-output setups ({entangled} entangled)")


def test_criterion_8_symplectic_and_purity():
    t0 = time.perf_counter()
    worst_s = worst_det = 0.0
    count = 0
    for n in DRAWS:
        for za, zb, bs in draws(n):
            sq = np.zeros((4, 4))
            sq[:2, :2] = squeezer_symplectic(za)
            sq[2:, 2:] = squeezer_symplectic(zb)
            bsm = beam_splitter_symplectic(bs)
            for s in (sq, bsm, bsm @ sq):
                worst_s = max(worst_s, symplectic_residual(s))
            out = apply_transform(input_state(za, zb), bsm)
            worst_det = max(worst_det, abs(float(np.linalg.det(out.cov)) - 1.0))
            count += 1
    ok = worst_s <= 1e-12 and worst_det <= 1e-9
    record(8, ok, time.perf_counter() - t0, None, f"max |S Om S^T - Om| {worst_s:.2e}, max |det - 1| {worst_det:.2e} over {count} setups")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted((k, v) for k, v in globals().items() if k.startswith("test_criterion_")):
        try:
            fn()
        except AssertionError:
            failed += 1
    for n in sorted(RESULTS):
        print(RESULTS[n])
    sys.exit(1 if failed else 0)
