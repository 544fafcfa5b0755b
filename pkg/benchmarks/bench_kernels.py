"""Time the compiled and numpy beam-splitter kernels against each other.

    python benchmarks/bench_kernels.py [--cutoffs 20 40 80] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from bsentangle import _kernels_py, fock
from bsentangle.gaussian import BeamSplitterParams, SqueezingParam

try:
    from bsentangle import _kernels as _kernels_cy
except ImportError:
    _kernels_cy = None


def best_of(fn, repeat):
    timer = timeit.Timer(fn)
    number, _ = timer.autorange()
    return min(timer.repeat(repeat=repeat, number=number)) / number


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--cutoffs", type=int, nargs="+", default=[10, 20, 40, 60])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    backends = {"numpy": _kernels_py}
    if _kernels_cy is not None:
        backends["cython"] = _kernels_cy
    else:
        print("compiled extension not built; timing the numpy backend only")

    bs = BeamSplitterParams(0.9, 0.4, 2.2)
    w = fock.mode_transfer(bs)
    print(f"{'cutoff':>6} {'kernel':>10} " + " ".join(f"{name:>12}" for name in backends) + "   speedup")
    for cutoff in args.cutoffs:
        va = fock.squeeze_vacuum_fock(SqueezingParam(0.5, 0.3), cutoff, strict=False)
        vb = fock.squeeze_vacuum_fock(SqueezingParam(0.5, 1.1), cutoff, strict=False)
        psi = np.outer(va.amplitudes, vb.amplitudes)
        top = 2 * cutoff
        z = _kernels_py.bs_blocks(w, top)
        cases = {
            "bs_blocks": lambda mod: (lambda: mod.bs_blocks(w, top)),
            "bs_apply": lambda mod: (lambda: mod.bs_apply(psi, z)),
        }
        for kname, make in cases.items():
            times = {name: best_of(make(mod), args.repeat) for name, mod in backends.items()}
            cells = " ".join(f"{t * 1e3:10.3f}ms" for t in times.values())
            speed = f"{times['numpy'] / times['cython']:8.1f}x" if "cython" in times else ""
            print(f"{cutoff:>6} {kname:>10} {cells} {speed}")


if __name__ == "__main__":
    main()
