"""Fixed points of the K x K action on RP^3, special orbits, and the fundamental domain V.

The action is sigma_{i,j}[a] = [U_{i,j} a]. Fixed-set claims are decided by exact
eigenspace computations; only the open-condition claims about V are sampled.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

import numpy as np

from .exact import INV_SQRT2, ONE, ZERO, FieldScalar, QMatrix, fs
from .poly import A, SpherePoly
from .report import CheckResult
from .rp3 import TRIPLES, build_P, conj_by
from .symmetry import PAIRS, U, t_of

ORDER2 = tuple((i, j) for i in (2, 3, 4) for j in (2, 3, 4))
MIXED = tuple([(1, i) for i in (2, 3, 4)] + [(i, 1) for i in (2, 3, 4)])


class ProjPoint:
    """A nonzero real 4-vector up to nonzero real scaling."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        v = tuple(fs(x) for x in coords)
        if len(v) != 4 or not any(v):
            raise ValueError("a projective point needs a nonzero 4-vector")
        if not all(x.is_real() for x in v):
            raise ValueError("projective points have real coordinates")
        object.__setattr__(self, "coords", v)

    def __setattr__(self, name, value):
        raise AttributeError("ProjPoint is immutable")

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return parallel(self.coords, other.coords)

    def __hash__(self):
        k = next(x for x in self.coords if x)
        inv = k.inverse()
        return hash(tuple(x * inv for x in self.coords))

    def normalized(self) -> tuple:
        """Exact unit representative, when the squared norm is 1, 2 or 4 times a square (as for every special point)."""
        n2 = sum((x * x for x in self.coords), ZERO)
        if not n2.is_rational():
            raise ValueError("squared norm is not rational")
        q = n2.re_rat
        for scale in (Fraction(1), Fraction(2)):
            r = q / scale
            num, den = _isqrt(r.numerator), _isqrt(r.denominator)
            if num is not None and den is not None:
                inv = fs(Fraction(den, num))
                if scale == 2:
                    inv = inv * INV_SQRT2
                return tuple(x * inv for x in self.coords)
        raise ValueError(f"cannot normalize exactly (|v|^2 = {q})")

    def __repr__(self):
        return "[" + ",".join(str(x) for x in self.coords) + "]"


def _isqrt(n: int):
    if n < 0:
        return None
    r = int(n ** 0.5)
    for c in (r - 1, r, r + 1):
        if c >= 0 and c * c == n:
            return c
    return None


def parallel(u, v) -> bool:
    """All 2x2 minors of the stack [u; v] vanish."""
    return all(not (u[a] * v[b] - u[b] * v[a]) for a, b in combinations(range(4), 2))


# fixed families: each is two parameterized 2-planes, tokens in {a, -a, b, -b, 0}

FAMILY_DISPLAY = {
    (2, 2): ("a b 0 0", "0 0 a b"),
    (2, 3): ("a b -b a", "a b b -a"),
    (2, 4): ("a b a b", "a b -a -b"),
    (3, 2): ("a b b a", "a b -b -a"),
    (3, 3): ("a 0 b 0", "0 a 0 b"),
    (3, 4): ("a a b -b", "a -a b b"),
    (4, 2): ("a b a -b", "a b -a b"),
    (4, 3): ("a a b b", "a -a b -b"),
    (4, 4): ("a 0 0 b", "0 a b 0"),
}


def family_vector(text: str) -> tuple:
    """Symbolic vector with a -> a1, b -> a2 as SpherePoly entries."""
    sym = {"a": A[0], "b": A[1]}
    out = []
    for tok in text.split():
        if tok == "0":
            out.append(SpherePoly.const(0))
        else:
            v = sym[tok.lstrip("-")]
            out.append(-v if tok.startswith("-") else v)
    return tuple(out)


def family_basis(text: str) -> list:
    vals = {"a": (1, 0), "b": (0, 1)}
    out = []
    for which in (0, 1):
        vec = []
        for tok in text.split():
            if tok == "0":
                vec.append(ONE * 0)
            else:
                s = -1 if tok.startswith("-") else 1
                vec.append(fs(s * vals[tok.lstrip("-")][which]))
        out.append(tuple(vec))
    return out


def eigenspace(M: QMatrix, lam) -> list:
    return (M - QMatrix.identity(M.rows).scale(lam)).nullspace()


def _span_equal(xs, ys) -> bool:
    rk = lambda vs: QMatrix(list(vs)).rank() if vs else 0
    return rk(xs) == rk(ys) == rk(list(xs) + list(ys))


class FixedFamily:
    __slots__ = ("label", "plus", "minus")

    def __init__(self, label, plus, minus):
        self.label, self.plus, self.minus = label, plus, minus


def fixed_family(i: int, j: int) -> FixedFamily:
    m = U[(i, j)]
    return FixedFamily((i, j), eigenspace(m, 1), eigenspace(m, -1))


def fixed_point_structure() -> CheckResult:
    res = CheckResult("fixed_point_structure")
    ident = QMatrix.identity(4)
    for p in ORDER2:
        m = U[p]
        res.ok(m @ m == ident, f"U{p}^2 != 1")
        fam = fixed_family(*p)
        res.ok(len(fam.plus) == 2 and len(fam.minus) == 2, f"U{p}: eigenspace dims {len(fam.plus)}, {len(fam.minus)}")
        res.ok(len(fam.plus) + len(fam.minus) == 4, f"U{p}: eigenspaces do not fill C^4")
        matched = set()
        for text in FAMILY_DISPLAY[p]:
            vec = family_vector(text)
            img = tuple(sum((vec[l] * m[k, l] for l in range(4) if m[k, l]), SpherePoly.const(0)) for k in range(4))
            if img == vec:
                sign = 1
            elif img == tuple(-x for x in vec):
                sign = -1
            else:
                res.fail(f"U{p}: family [{text}] is not an eigenvector family")
                continue
            res.ok(True)
            space = fam.plus if sign == 1 else fam.minus
            res.ok(_span_equal(family_basis(text), space), f"U{p}: family [{text}] does not span the {sign:+d} eigenspace")
            matched.add(sign)
        res.ok(matched == {1, -1}, f"U{p}: families cover eigenvalues {sorted(matched)}")
    for p in MIXED:
        m = U[p]
        # U^2 = -1 means a real eigenvector v would satisfy v = lam^2 v = -v
        res.ok(m @ m == -ident, f"U{p}^2 != -1")
        res.ok(m.is_real(), f"U{p} not real")
    return res


SPECIAL_POINTS = {
    (2, 3, 4): [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)],
    (3, 4, 2): [(1, 1, 1, 1), (1, 1, -1, -1), (1, -1, -1, 1), (1, -1, 1, -1)],
    (4, 2, 3): [(-1, 1, 1, 1), (1, -1, 1, 1), (1, 1, -1, 1), (1, 1, 1, -1)],
    (2, 4, 3): [(1, 1, 0, 0), (1, -1, 0, 0), (0, 0, 1, 1), (0, 0, 1, -1)],
    (4, 3, 2): [(1, 0, 1, 0), (1, 0, -1, 0), (0, 1, 0, 1), (0, 1, 0, -1)],
    (3, 2, 4): [(1, 0, 0, 1), (1, 0, 0, -1), (0, 1, 1, 0), (0, 1, -1, 0)],
}


def triple_pairs(triple):
    """The three unitaries (i2,2), (i3,3), (i4,4) of a triple."""
    return [(triple[0], 2), (triple[1], 3), (triple[2], 4)]


def is_fixed(p, vec) -> bool:
    return parallel(U[p].apply(vec), vec)


def pair_fixed_lines(p, q) -> list:
    """Projective fixed points of sigma_p and sigma_q: joint eigenlines of U_p, U_q."""
    ident = QMatrix.identity(4)
    out = []
    for s1, s2 in product((1, -1), (1, -1)):
        stacked = QMatrix(list((U[p] - ident.scale(s1)).entries) + list((U[q] - ident.scale(s2)).entries))
        ns = stacked.nullspace()
        out.append(ns)
    return out


def special_orbit_check() -> CheckResult:
    res = CheckResult("special_orbit_check")
    for triple, pts in SPECIAL_POINTS.items():
        pps = [ProjPoint(v) for v in pts]
        res.ok(len(set(pps)) == 4, f"{triple}: points not distinct")
        for v in pts:
            for p in triple_pairs(triple):
                res.ok(is_fixed(p, tuple(fs(x) for x in v)), f"{triple}: {v} not fixed by sigma{p}")
        for p, q in combinations(triple_pairs(triple), 2):
            lines = pair_fixed_lines(p, q)
            dims = sorted(len(ns) for ns in lines)
            res.ok(all(d <= 1 for d in dims), f"{triple}: {p}&{q} joint eigenspace dims {dims}")
            found = {ProjPoint(ns[0]) for ns in lines if len(ns) == 1}
            res.ok(found == set(pps), f"{triple}: fixed set of {p}&{q} is {found}")
    return res


PAPA_GROUPS_TEXT = (
    "11 {i2}2 {i3}3 {i4}4",
    "{i2}1 12 {i4}3 {i3}4",
    "{i3}1 {i4}2 13 {i2}4",
    "{i4}1 {i3}2 {i2}3 14",
)


def papa_groups(triple) -> list:
    i2, i3, i4 = triple
    out = []
    for text in PAPA_GROUPS_TEXT:
        words = text.format(i2=i2, i3=i3, i4=i4).split()
        out.append([(int(w[0]), int(w[1])) for w in words])
    return out


def orbit(triple, start) -> set:
    gens = triple_pairs(triple)
    seen, todo = {start}, [start]
    while todo:
        k, l = todo.pop()
        for i, j in gens:
            nxt = (t_of(i, k), t_of(j, l))
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return seen


def papa_spot_check(P=None) -> CheckResult:
    P = build_P() if P is None else P
    res = CheckResult("papa_spot_check")
    ident = QMatrix.identity(4)
    for triple, pts in SPECIAL_POINTS.items():
        groups = papa_groups(triple)
        res.ok(sorted(map(sorted, groups)) == sorted(sorted(orbit(triple, g[0])) for g in groups),
               f"{triple}: displayed groups are not the orbits")
        for v in pts:
            x = ProjPoint(v).normalized()
            vals = {p: P[p].evaluate(x) for p in PAIRS}
            reps = []
            for g in groups:
                first = vals[g[0]]
                for p in g[1:]:
                    res.ok(vals[p] == first, f"{triple} at {v}: P{g[0]} != P{p}")
                reps.append(first)
            for a, b in combinations(range(4), 2):
                res.ok((reps[a] @ reps[b]).is_zero(), f"{triple} at {v}: groups {a + 1},{b + 1} not orthogonal")
            tot = reps[0] + reps[1] + reps[2] + reps[3]
            res.ok(tot == ident, f"{triple} at {v}: grouped projections do not sum to 1")
            for p in ORDER2:
                if is_fixed(p, x):
                    for q in PAIRS:
                        res.ok(U[p] @ vals[q] @ U[p].adjoint() == vals[q], f"Ad U{p} moves P{q} at {v}")
    return res


# the fundamental domain V and the map h

def h_exact(a) -> tuple:
    """h(a) = (3 a_k^2 + a4^2 + 4 a4 |a4|)_{k=1,2,3} for rational a."""
    a = [Fraction(x) for x in a]
    t = a[3] * a[3] + 4 * a[3] * abs(a[3])
    return tuple(3 * a[k] * a[k] + t for k in range(3))


def h_numeric(a: np.ndarray) -> np.ndarray:
    a4 = a[:, 3]
    t = a4 * a4 + 4.0 * a4 * np.abs(a4)
    return 3.0 * a[:, :3] ** 2 + t[:, None]


HULL_NORMALS = np.array([[-1, 0, 0], [0, -1, 0], [0, 0, -1], [2, 2, -1], [2, -1, 2], [-1, 2, 2]], dtype=float)
HULL_OFFSETS = np.array([0, 0, 0, 6, 6, 6], dtype=float)
HEXAHEDRON_VERTICES = ((0, 0, 0), (3, 0, 0), (0, 3, 0), (0, 0, 3), (2, 2, 2))


def signed_unitaries() -> np.ndarray:
    """The 32 matrices +-U_{i,j} as a (32, 4, 4) float array, (1,1) first."""
    mats = [np.array([[float(x.re_rat) for x in row] for row in U[p].entries]) for p in PAIRS]
    return np.array([s * m for m in mats for s in (1.0, -1.0)])


def in_closed_V(a: np.ndarray, tol: float = 0.0) -> np.ndarray:
    m = np.abs(a[..., 3])
    return (a[..., 0] >= m - tol) & (a[..., 1] >= m - tol) & (a[..., 2] >= m - tol)


def in_open_V(a: np.ndarray) -> np.ndarray:
    m = np.abs(a[..., 3])
    return (a[..., 0] > m) & (a[..., 1] > m) & (a[..., 2] > m)


def random_sphere(rng, n: int) -> np.ndarray:
    x = rng.standard_normal((n, 4))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def fold_to_V(points: np.ndarray, mats=None):
    """Map each point into the closed domain by one of the 32 signed unitaries.

    Returns (folded points, mask of points for which no image landed in the domain).
    """
    mats = signed_unitaries() if mats is None else mats
    imgs = np.einsum("mij,nj->nmi", mats, points)
    ok = in_closed_V(imgs, tol=1e-15)
    idx = np.argmax(ok, axis=1)
    folded = imgs[np.arange(len(points)), idx]
    return folded, ~ok.any(axis=1)


def _fmt(v) -> str:
    return "(" + ", ".join(f"{float(x):.12g}" for x in v) + ")"


def hexahedron_check(samples: int = 100_000, seed: int = 0) -> CheckResult:
    res = CheckResult("hexahedron_check")
    h_half = Fraction(1, 2)
    exact_cases = [
        ((h_half, h_half, h_half, h_half), (2, 2, 2)),
        ((h_half, h_half, h_half, -h_half), (0, 0, 0)),
        ((1, 0, 0, 0), (3, 0, 0)),
        ((0, 1, 0, 0), (0, 3, 0)),
        ((0, 0, 1, 0), (0, 0, 3)),
    ]
    for a, want in exact_cases:
        got = h_exact(a)
        res.ok(got == tuple(Fraction(x) for x in want), f"h{tuple(map(str, a))} = {tuple(map(str, got))}")
    for vert in HEXAHEDRON_VERTICES:
        res.ok(bool(np.all(HULL_NORMALS @ np.array(vert, float) <= HULL_OFFSETS + 1e-12)), f"vertex {vert} outside hull")

    rng = np.random.default_rng(seed)
    mats = signed_unitaries()
    x, miss_x = fold_to_V(random_sphere(rng, samples), mats)
    half = samples // 2
    # close pairs: perturb by a log-uniform step and fold again
    step = 10.0 ** rng.uniform(-4, -0.5, size=(samples - half, 1))
    near = x[half:] + step * rng.standard_normal((samples - half, 4))
    near /= np.linalg.norm(near, axis=1, keepdims=True)
    y_far, miss_y1 = fold_to_V(random_sphere(rng, half), mats)
    y_near, miss_y2 = fold_to_V(near, mats)
    y = np.vstack([y_far, y_near])
    misses = int(miss_x.sum() + miss_y1.sum() + miss_y2.sum())
    res.ok(misses == 0, f"{misses} sample points could not be folded into the closed domain")

    hx, hy = h_numeric(x), h_numeric(y)
    for pts in (hx, hy):
        viol = (pts @ HULL_NORMALS.T - HULL_OFFSETS > 1e-12).any(axis=1)
        res.checked += len(pts)
        if viol.any():
            k = int(np.argmax(viol))
            res.failed += int(viol.sum())
            res.witnesses.append(f"image {_fmt(pts[k])} outside the hexahedron")
    dist_in = np.minimum(np.linalg.norm(x - y, axis=1), np.linalg.norm(x + y, axis=1))
    dist_out = np.linalg.norm(hx - hy, axis=1)
    bad = (dist_in > 1e-3) & (dist_out <= 1e-9)
    res.checked += samples
    if bad.any():
        k = int(np.argmax(bad))
        res.failed += int(bad.sum())
        res.witnesses.append(f"h collides at {_fmt(x[k])} and {_fmt(y[k])}")
    res.data.update(samples=samples, seed=seed, close_pairs=int(((dist_in > 1e-3) & (dist_in < 1e-2)).sum()),
                    min_output_gap=float(dist_out[dist_in > 1e-3].min()) if (dist_in > 1e-3).any() else None)
    return res


def v_translate_disjointness(samples: int = 100_000, seed: int = 0) -> CheckResult:
    res = CheckResult("v_translate_disjointness")
    rng = np.random.default_rng(seed)
    mats = signed_unitaries()
    pts = np.empty((0, 4))
    while len(pts) < samples:
        folded, _ = fold_to_V(random_sphere(rng, samples), mats)
        pts = np.vstack([pts, folded[in_open_V(folded)]])
    pts = pts[:samples]
    for n, (i, j) in enumerate(PAIRS):
        if (i, j) == (1, 1):
            continue
        for s in (1.0, -1.0):
            img = pts @ (s * mats[2 * n]).T
            hit = in_open_V(img)
            res.checked += samples
            if hit.any():
                k = int(np.argmax(hit))
                res.failed += int(hit.sum())
                res.witnesses.append(f"{'+' if s > 0 else '-'}U({i},{j}) maps {_fmt(pts[k])} into V")
    res.data.update(samples=samples, seed=seed, translates=15)
    return res
