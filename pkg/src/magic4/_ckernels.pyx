# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels in _pykernels."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef class _ConeSearch:
    cdef long[:, ::1] cols
    cdef long[:, ::1] pos
    cdef long[:, ::1] neg
    cdef long[::1] l1
    cdef long[::1] res
    cdef long[::1] x
    cdef int nrows, ncols
    cdef public long visited
    cdef public list out

    def __init__(self, matrix):
        m = np.ascontiguousarray(np.asarray(matrix, dtype=np.int64).T)
        self.cols = m
        self.ncols = m.shape[0]
        self.nrows = m.shape[1]
        pos = np.zeros((self.ncols + 1, self.nrows), dtype=np.int64)
        neg = np.zeros((self.ncols + 1, self.nrows), dtype=np.int64)
        l1 = np.zeros(self.ncols + 1, dtype=np.int64)
        for k in range(self.ncols - 1, -1, -1):
            pos[k] = np.maximum(pos[k + 1], np.clip(m[k], 0, None))
            neg[k] = np.maximum(neg[k + 1], np.clip(-m[k], 0, None))
            l1[k] = max(l1[k + 1], int(np.abs(m[k]).sum()))
        self.pos, self.neg, self.l1 = pos, neg, l1
        self.res = np.zeros(self.nrows, dtype=np.int64)
        self.x = np.zeros(self.ncols, dtype=np.int64)
        self.visited = 0
        self.out = []

    cdef bint feasible(self, int k, long budget):
        cdef long tot = 0, v
        cdef int r
        for r in range(self.nrows):
            v = self.res[r]
            if v > 0:
                if v > budget * self.neg[k, r]:
                    return False
                tot += v
            elif v < 0:
                if -v > budget * self.pos[k, r]:
                    return False
                tot -= v
        return tot <= budget * self.l1[k]

    cdef void rec(self, int k, long budget):
        cdef long val
        cdef int r
        cdef bint zero
        self.visited += 1
        if k == self.ncols:
            zero = True
            for r in range(self.nrows):
                if self.res[r] != 0:
                    zero = False
                    break
            if zero:
                self.out.append(tuple(int(v) for v in self.x))
            return
        for val in range(budget + 1):
            if val:
                for r in range(self.nrows):
                    self.res[r] += self.cols[k, r]
            self.x[k] = val
            if self.feasible(k + 1, budget - val):
                self.rec(k + 1, budget - val)
        if budget:
            for r in range(self.nrows):
                self.res[r] -= budget * self.cols[k, r]
        self.x[k] = 0

    def run(self, long bound):
        self.rec(0, bound)


def cone_kernel_points(matrix, bound):
    s = _ConeSearch(matrix)
    s.run(int(bound))
    return s.out, int(s.visited)


cdef void _mul_ah_b(const double* xr, const double* xi, const double* yr, const double* yi,
                    double* outr, double* outi, Py_ssize_t n) noexcept nogil:
    """out = x^* y for row-major n x n blocks, skipping zero entries of x."""
    cdef Py_ssize_t i, j, k
    cdef double ar, ai
    cdef const double* yrk
    cdef const double* yik
    cdef double* ori
    cdef double* oii
    for i in range(n * n):
        outr[i] = 0.0
        outi[i] = 0.0
    for k in range(n):
        yrk = yr + k * n
        yik = yi + k * n
        for i in range(n):
            ar = xr[k * n + i]
            ai = -xi[k * n + i]
            if ar == 0.0 and ai == 0.0:
                continue
            ori = outr + i * n
            oii = outi + i * n
            for j in range(n):
                ori[j] += ar * yrk[j] - ai * yik[j]
                oii[j] += ar * yik[j] + ai * yrk[j]


cdef void _mul_acc(const double* xr, const double* xi, const double* yr, const double* yi,
                   double* outr, double* outi, Py_ssize_t n, double sign) noexcept nogil:
    """out += sign * x y."""
    cdef Py_ssize_t i, j, k
    cdef double ar, ai
    cdef const double* yrk
    cdef const double* yik
    cdef double* ori
    cdef double* oii
    for i in range(n):
        ori = outr + i * n
        oii = outi + i * n
        for k in range(n):
            ar = sign * xr[i * n + k]
            ai = sign * xi[i * n + k]
            if ar == 0.0 and ai == 0.0:
                continue
            yrk = yr + k * n
            yik = yi + k * n
            for j in range(n):
                ori[j] += ar * yrk[j] - ai * yik[j]
                oii[j] += ar * yik[j] + ai * yrk[j]


def cartan_density(fr_arr, fi_arr, dr_arr, di_arr):
    cdef double[:, :, ::1] fr = np.ascontiguousarray(fr_arr, dtype=np.float64)
    cdef double[:, :, ::1] fi = np.ascontiguousarray(fi_arr, dtype=np.float64)
    cdef double[:, :, :, ::1] dr = np.ascontiguousarray(dr_arr, dtype=np.float64)
    cdef double[:, :, :, ::1] di = np.ascontiguousarray(di_arr, dtype=np.float64)
    cdef Py_ssize_t N = fr.shape[0], n = fr.shape[1], nn = n * n
    cdef Py_ssize_t p, m, i, j
    out_arr = np.empty(N, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double[::1] ar = np.empty(3 * nn)
    cdef double[::1] ai = np.empty(3 * nn)
    cdef double[::1] cr = np.empty(nn)
    cdef double[::1] ci = np.empty(nn)
    cdef double tr
    if N == 0:
        return out_arr
    with nogil:
        for p in range(N):
            for m in range(3):
                _mul_ah_b(&fr[p, 0, 0], &fi[p, 0, 0], &dr[m, p, 0, 0], &di[m, p, 0, 0],
                          &ar[m * nn], &ai[m * nn], n)
            for i in range(nn):
                cr[i] = 0.0
                ci[i] = 0.0
            _mul_acc(&ar[nn], &ai[nn], &ar[2 * nn], &ai[2 * nn], &cr[0], &ci[0], n, 1.0)
            _mul_acc(&ar[2 * nn], &ai[2 * nn], &ar[nn], &ai[nn], &cr[0], &ci[0], n, -1.0)
            tr = 0.0
            for i in range(n):
                for j in range(n):
                    tr += ar[i * n + j] * cr[j * n + i] - ai[i * n + j] * ci[j * n + i]
            out[p] = 3.0 * tr
    return out_arr
