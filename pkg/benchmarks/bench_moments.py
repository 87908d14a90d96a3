"""Time the compiled and pure-numpy moment kernels on the same workloads.

    python benchmarks/bench_moments.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from ngent import _fallback
from ngent.fock_core import monomials
from ngent.states import BSN, TMSN, build_bsn, build_tmsn
from ngent.witnesses import required_monomials

try:
    from ngent import _kernels
except ImportError:
    _kernels = None


def workloads():
    yield "tmsn(3,3,0.7) witness set", build_tmsn(TMSN(3, 3, 0.7)).amplitudes, required_monomials()
    yield "tmsn(1,1,0.9) order<=4", build_tmsn(TMSN(1, 1, 0.9)).amplitudes, monomials(4)
    yield "bsn(20,20,1) order<=8", build_bsn(BSN(20, 20, 1.0)).amplitudes, monomials(8)


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = [("python", _fallback)] + ([("cython", _kernels)] if _kernels else [])
    print(f"{'workload':<28} {'lattice':>8} {'monos':>6} " + " ".join(f"{n:>12}" for n, _ in backends) + "  speedup")
    for name, amps, monos in workloads():
        arr = np.array(monos, dtype=np.int64)
        times = []
        for _, mod in backends:
            t = min(timeit.repeat(lambda: mod.moments(amps, arr), number=1, repeat=args.repeat))
            times.append(t)
        ref = _fallback.moments(amps, arr)
        for _, mod in backends[1:]:
            assert np.allclose(mod.moments(amps, arr), ref, atol=1e-10)
        speed = f"{times[0] / times[-1]:7.1f}x" if len(times) > 1 else "      -"
        print(
            f"{name:<28} {amps.shape[0]:>8} {len(monos):>6} "
            + " ".join(f"{t * 1e3:>10.2f}ms" for t in times) + f"  {speed}"
        )


if __name__ == "__main__":
    main()
