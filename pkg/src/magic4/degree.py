"""Degree of a unitary-valued polynomial map on S^3 by Monte Carlo integration.

deg F = -(1/24 pi^2) * integral over S^3 of tr((F^* dF)^3), read through the chart

    a = (cos psi, sin psi cos theta, sin psi sin theta cos phi, sin psi sin theta sin phi)

on the box [0, pi] x [0, pi] x [0, 2 pi]. In chart coordinates the 3-form is
3 (tr(A1 A2 A3) - tr(A1 A3 A2)) dpsi dtheta dphi with A_k = F^* dF/dx_k, and the
chart derivatives come from exact polynomial partials through the Jacobian.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import ceil, floor, pi

import numpy as np

from .kernels import cartan_density
from .poly import MatFun
from .report import CheckResult

BOX = np.array([pi, pi, 2 * pi])
Z_SCORE = 4.0


class MonomialTensor:
    """F(a) = sum_m a^e_m C_m with complex coefficient matrices C_m."""

    def __init__(self, exps: np.ndarray, coef: np.ndarray):
        self.exps = exps
        self.coef = coef
        self.n = coef.shape[1]

    @classmethod
    def from_matfun(cls, F: MatFun) -> "MonomialTensor":
        mons = F.monomials() or [(0, 0, 0, 0)]
        index = {e: k for k, e in enumerate(mons)}
        coef = np.zeros((len(mons), F.rows, F.cols), dtype=np.complex128)
        for i, row in enumerate(F.entries):
            for j, p in enumerate(row):
                for e, c in p.terms.items():
                    coef[index[e], i, j] = c.to_complex()
        return cls(np.array(mons, dtype=np.int64).reshape(-1, 4), coef)

    def partial(self, k: int) -> "MonomialTensor":
        """Derivative in a_{k+1} (0-based k)."""
        e = self.exps.copy()
        mult = e[:, k].astype(float)
        keep = mult > 0
        e = e[keep]
        e[:, k] -= 1
        coef = self.coef[keep] * mult[keep][:, None, None]
        if not len(e):
            return MonomialTensor(np.zeros((1, 4), np.int64), np.zeros((1, self.n, self.n), np.complex128))
        return MonomialTensor(e, coef)

    def evaluate(self, pts: np.ndarray) -> np.ndarray:
        mono = np.ones((len(pts), len(self.exps)))
        for k in range(4):
            col = self.exps[:, k]
            if col.any():
                mono *= pts[:, k][:, None] ** col[None, :]
        flat = self.coef.reshape(len(self.exps), -1)
        out = mono @ flat.real + 1j * (mono @ flat.imag)
        return out.reshape(len(pts), self.n, self.n)

    def evaluate_chart(self, a: np.ndarray, jac: np.ndarray):
        """Real and imaginary parts of F and of its three chart derivatives, each (4, N, n, n).

        Index 0 is F itself; 1..3 are dF/dx_c = sum_k dF/da_k * da_k/dx_c.
        """
        N, M = len(a), len(self.exps)
        top = int(self.exps.max()) if M else 0
        pw = np.ones((4, top + 1, N))
        for p in range(1, top + 1):
            pw[:, p] = pw[:, p - 1] * a.T
        X = np.zeros((4, N, M))
        for m, e in enumerate(self.exps):
            f = [pw[k, e[k]] for k in range(4)]
            X[0, :, m] = f[0] * f[1] * f[2] * f[3]
            for k in range(4):
                if e[k]:
                    g = e[k] * pw[k, e[k] - 1]
                    for l in range(4):
                        if l != k:
                            g = g * f[l]
                    X[1:, :, m] += g[None, :] * jac[:, k, :].T
        flat = self.coef.reshape(M, -1)
        X = X.reshape(4 * N, M)
        shape = (4, N, self.n, self.n)
        return (X @ np.ascontiguousarray(flat.real)).reshape(shape), (X @ np.ascontiguousarray(flat.imag)).reshape(shape)


def chart(x: np.ndarray):
    """Points on S^3 and the Jacobian (N, 4, 3) of the angular chart."""
    psi, th, ph = x[:, 0], x[:, 1], x[:, 2]
    sp, cp, st, ct, sf, cf = np.sin(psi), np.cos(psi), np.sin(th), np.cos(th), np.sin(ph), np.cos(ph)
    a = np.stack([cp, sp * ct, sp * st * cf, sp * st * sf], axis=1)
    z = np.zeros_like(psi)
    d_psi = np.stack([-sp, cp * ct, cp * st * cf, cp * st * sf], axis=1)
    d_th = np.stack([z, -sp * st, sp * ct * cf, sp * ct * sf], axis=1)
    d_ph = np.stack([z, z, -sp * st * sf, sp * st * cf], axis=1)
    return a, np.stack([d_psi, d_th, d_ph], axis=2)


def chart_orientation() -> int:
    """Sign of det[a, da/dpsi, da/dtheta, da/dphi] (constant on the open box): +1 iff the chart agrees with the outward-normal orientation."""
    x = np.array([[1.0, 1.0, 1.0]])
    a, jac = chart(x)
    return int(np.sign(np.linalg.det(np.column_stack([a[0], jac[0]]))))


# The chart is positively oriented (see chart_orientation), and with the Cartan
# form sign below the map w(a) = sum a_k c_k has degree +1.
DEGREE_SIGN = -1.0


@dataclass
class DegreeEstimate:
    estimate: float
    stderr: float
    samples: int
    seed: int
    snapped: int | None = None
    interval: tuple = field(default=(0.0, 0.0))

    def to_dict(self) -> dict:
        return {"estimate": self.estimate, "stderr": self.stderr, "samples": self.samples,
                "seed": self.seed, "snapped": self.snapped, "interval": list(self.interval)}

    def __str__(self):
        snap = "no snap" if self.snapped is None else f"-> {self.snapped}"
        return f"{self.estimate:.6f} +- {self.stderr:.2e} ({snap})"


def snap(estimate: float, stderr: float, z: float = Z_SCORE):
    """Nearest integer, unless the interval estimate +- z*stderr holds two or more integers."""
    lo, hi = estimate - z * stderr, estimate + z * stderr
    count = floor(hi) - floor(lo) + (1 if lo == floor(lo) else 0)
    return (None if count >= 2 else int(round(estimate))), (lo, hi)


def _strata(samples: int):
    m = max(1, ceil((samples / 2) ** (1 / 3) - 1e-9))
    return m


def _block(F: MonomialTensor, m: int, lo: int, hi: int, seed_seq) -> tuple:
    rng = np.random.default_rng(seed_seq)
    idx = np.arange(lo, hi)
    cell = np.stack([idx // (m * m), (idx // m) % m, idx % m], axis=1).astype(float)
    width = BOX / m
    vals = []
    for _ in range(2):
        x = (cell + rng.random((len(idx), 3))) * width
        a, jac = chart(x)
        re, im = F.evaluate_chart(a, jac)
        vals.append(cartan_density(re[0], im[0], re[1:], im[1:]))
    vol = float(np.prod(width))
    f1, f2 = vals
    total = vol * float(np.sum((f1 + f2) / 2))
    var = vol * vol * float(np.sum((f1 - f2) ** 2 / 4))
    return total, var


def degree_of_unitary(F: MatFun, samples: int = 1_000_000, seed: int = 0, jobs: int = 1,
                      check_unitary: bool = True, batch: int = 20_000) -> DegreeEstimate:
    """Stratified Monte Carlo degree with two samples per stratum (for the error estimate)."""
    if check_unitary and not (F.adjoint() @ F).is_identity():
        raise ValueError("F is not unitary as a polynomial map on S^3")
    tensor = MonomialTensor.from_matfun(F)
    m = _strata(samples)
    nstrata = m ** 3
    bounds = list(range(0, nstrata, batch)) + [nstrata]
    seeds = np.random.SeedSequence(seed).spawn(len(bounds) - 1)
    tasks = [(tensor, m, lo, hi, s) for lo, hi, s in zip(bounds[:-1], bounds[1:], seeds)]
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as ex:
            parts = list(ex.map(lambda t: _block(*t), tasks))
    else:
        parts = [_block(*t) for t in tasks]
    total = sum(p[0] for p in parts)
    var = sum(p[1] for p in parts)
    scale = DEGREE_SIGN / (24 * pi * pi)
    est = scale * total
    se = abs(scale) * var ** 0.5
    snapped, interval = snap(est, se)
    return DegreeEstimate(est, se, 2 * nstrata, seed, snapped, interval)


def degree_targets(reading: str = "corrected") -> dict:
    """The maps whose degrees are certified, with expected values."""
    from .rp3 import U_bar, iota4_w, iota_prime4_w, w_matfun
    w = w_matfun()
    return {
        "w": (w, 1),
        "iota4_w": (iota4_w(reading), 8),
        "iota_prime4_w": (iota_prime4_w(), 8),
        "U_bar": (U_bar(), 16),
        "w_plus_w": (MatFun.block_diag([w, w]), 2),
    }


def degree_check(samples: int = 1_000_000, seed: int = 0, jobs: int = 1, tolerance: float = 0.2,
                 names=None) -> CheckResult:
    res = CheckResult("degree_check")
    targets = degree_targets()
    for name in names or targets:
        F, want = targets[name]
        est = degree_of_unitary(F, samples, seed, jobs)
        res.ok(est.snapped == want and abs(est.estimate - want) <= tolerance,
               f"deg {name} = {est} (expected {want})")
        res.data[name] = est.to_dict()
    return res
