import os
import subprocess
import sys

import numpy as np

from magic4 import _pykernels, kernels


def test_pure_backend_can_be_forced():
    env = dict(os.environ, MAGIC4_PURE="1")
    out = subprocess.run([sys.executable, "-c", "from magic4 import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_selected_backend_is_reported():
    assert kernels.BACKEND in ("cython", "python")


def test_cone_search_small_system():
    # x1 - x2 = 0, x2 - x3 = 0: the kernel points are multiples of (1,1,1)
    pts, visited = kernels.cone_kernel_points([[1, -1, 0], [0, 1, -1]], 7)
    assert sorted(pts) == [(k, k, k) for k in range(3)]
    assert visited > 0
    assert sorted(_pykernels.cone_kernel_points([[1, -1, 0], [0, 1, -1]], 7)[0]) == sorted(pts)


def test_cone_search_bound_zero():
    assert kernels.cone_kernel_points([[1, 2]], 0)[0] == [(0, 0)]


def test_density_of_empty_batch():
    z = np.zeros((0, 2, 2))
    assert kernels.cartan_density(z, z, np.zeros((3, 0, 2, 2)), np.zeros((3, 0, 2, 2))).shape == (0,)
