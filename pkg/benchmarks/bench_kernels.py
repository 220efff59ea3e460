"""Compare the compiled and pure kernels on the workloads the verifier runs.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from magic4 import _pykernels, degree, kernels, ktheory, rp3


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def density_inputs(F, n_points: int, seed: int = 0):
    tensor = degree.MonomialTensor.from_matfun(F)
    rng = np.random.default_rng(seed)
    a, jac = degree.chart(rng.random((n_points, 3)) * degree.BOX)
    re, im = tensor.evaluate_chart(a, jac)
    return re[0], im[0], re[1:], im[1:]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--points", type=int, default=40_000)
    args = ap.parse_args()
    if kernels.BACKEND != "cython":
        print("compiled extension not built; only the pure kernels are available")
        return
    from magic4 import _ckernels

    rows = []
    delta = ktheory.load_delta_data().delta.entries
    for bound in (6, 10):
        want = _pykernels.cone_kernel_points(delta, bound)
        got = _ckernels.cone_kernel_points(delta, bound)
        assert sorted(want[0]) == sorted(got[0])
        rows.append((f"cone search, bound {bound}",
                     best_of(lambda: _pykernels.cone_kernel_points(delta, bound), args.repeat),
                     best_of(lambda: _ckernels.cone_kernel_points(delta, bound), args.repeat)))

    maps = {"w (2x2)": rp3.w_matfun(), "iota4(w) (16x16, sparse)": rp3.iota4_w(), "U_bar (16x16)": rp3.U_bar()}
    for name, F in maps.items():
        inp = density_inputs(F, args.points)
        assert np.allclose(_pykernels.cartan_density(*inp), _ckernels.cartan_density(*inp))
        rows.append((f"Cartan density, {name}, {args.points} points",
                     best_of(lambda: _pykernels.cartan_density(*inp), args.repeat),
                     best_of(lambda: _ckernels.cartan_density(*inp), args.repeat)))

    rng = np.random.default_rng(1)
    fr, fi = rng.standard_normal((2, args.points, 16, 16))
    dr, di = rng.standard_normal((2, 3, args.points, 16, 16))
    rows.append((f"Cartan density, dense random 16x16, {args.points} points",
                 best_of(lambda: _pykernels.cartan_density(fr, fi, dr, di), args.repeat),
                 best_of(lambda: _ckernels.cartan_density(fr, fi, dr, di), args.repeat)))

    width = max(len(r[0]) for r in rows)
    print(f"{'workload':<{width}}  {'numpy/python':>12}  {'cython':>9}  {'speedup':>7}")
    for name, py, cy in rows:
        print(f"{name:<{width}}  {py:11.4f}s  {cy:8.4f}s  {py / cy:6.2f}x")


if __name__ == "__main__":
    main()
