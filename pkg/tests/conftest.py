import math
import sys

import numpy as np
import pytest

from bsentangle import _kernels_py
from bsentangle.gaussian import BeamSplitterParams, SqueezingParam

TWO_PI = 2 * math.pi
OPT_BS = BeamSplitterParams(math.pi / 4, 0.0, math.pi / 2)  # Delta_b - Delta_a = pi

try:
    from bsentangle import _kernels as _kernels_cy
except ImportError:  # extension not built
    _kernels_cy = None

BACKENDS = [_kernels_py] + ([_kernels_cy] if _kernels_cy is not None else [])


def draw(rng, r_max=2.0, r_min=0.0):
    """Random (za, zb, bs) with r in [r_min, r_max] and every angle in [0, 2 pi)."""
    ra, rb = rng.uniform(r_min, r_max, 2)
    chia, chib, theta, phi0, phi1 = rng.uniform(0, TWO_PI, 5)
    return SqueezingParam(ra, chia), SqueezingParam(rb, chib), BeamSplitterParams(theta, phi0, phi1)


@pytest.fixture
def rng():
    return np.random.default_rng(20021016)


@pytest.fixture(params=BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def backend(request):
    return request.param


def random_symplectic(rng, r_max=1.0):
    """Passive-squeeze-passive product, all pieces symplectic by construction."""
    from bsentangle.gaussian import beam_splitter_symplectic, squeezer_symplectic

    def passive():
        return beam_splitter_symplectic(BeamSplitterParams(*rng.uniform(0, TWO_PI, 3)))

    sq = np.zeros((4, 4))
    sq[:2, :2] = squeezer_symplectic(SqueezingParam(rng.uniform(0, r_max), rng.uniform(0, TWO_PI)))
    sq[2:, 2:] = squeezer_symplectic(SqueezingParam(rng.uniform(0, r_max), rng.uniform(0, TWO_PI)))
    return passive() @ sq @ passive()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
