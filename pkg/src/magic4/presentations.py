"""Characters of the abelianized magic square algebra and commutativity of A(3).

Noncommutative polynomials in the generators p_{i,j} are dicts {word: Fraction},
where a word is a tuple of (i, j) pairs. Two normal forms are used:

* "idempotent": only p p -> p is applied (a defining relation);
* "reduced": additionally p_{i,j} p_{i,k} -> 0 and p_{i,j} p_{k,j} -> 0 for
  distinct indices. These orthogonality rules are certified first, by ideal
  membership in the idempotent normal form at degree 3.

Ideal membership at bounded degree D means: the target lies in the rational span
of u r v, for r a row or column relation and words u, v with deg(u r v) <= D.
A hit is a proof. A miss says nothing beyond "raise D".
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product

from .report import CheckResult
from .symmetry import Perm, all_perms


class Character:
    """chi_sigma(p_{i,j}) = 1 if i = sigma(j) else 0."""

    def __init__(self, sigma: Perm):
        self.sigma = sigma
        self.n = sigma.n

    def __call__(self, i: int, j: int) -> int:
        return 1 if self.sigma(j) == i else 0

    def word(self, word) -> int:
        out = 1
        for i, j in word:
            out *= self(i, j)
        return out

    def respects_relations(self) -> bool:
        idx = range(1, self.n + 1)
        rows = all(sum(self(i, j) for j in idx) == 1 for i in idx)
        cols = all(sum(self(i, j) for i in idx) == 1 for j in idx)
        proj = all(self(i, j) ** 2 == self(i, j) for i in idx for j in idx)
        return rows and cols and proj


def minimal_projection_word(sigma: Perm) -> tuple:
    """p_sigma = p_{sigma(1),1} ... p_{sigma(n),n}."""
    return tuple((sigma(j), j) for j in range(1, sigma.n + 1))


def character_table(n: int) -> CheckResult:
    if not 1 <= n <= 4:
        raise ValueError("character tables are built for n <= 4")
    res = CheckResult(f"character_table_n{n}")
    perms = all_perms(n)
    chars = [Character(s) for s in perms]
    for ch in chars:
        res.ok(ch.respects_relations(), f"chi{ch.sigma} violates a defining relation")
    table = [[ch.word(minimal_projection_word(s)) for s in perms] for ch in chars]
    for a, row in enumerate(table):
        for b, v in enumerate(row):
            res.ok(v == (1 if a == b else 0), f"chi{perms[a]}(p{perms[b]}) = {v}")
    res.data["size"] = len(perms)
    return res


# noncommutative polynomials

def _orth(x, y) -> bool:
    return x != y and (x[0] == y[0] or x[1] == y[1])


class WordAlgebra:
    """Words over p_{i,j} (1 <= i, j <= n) in one of the two normal forms."""

    def __init__(self, n: int, reduced: bool):
        self.n = n
        self.reduced = reduced
        self.letters = tuple(product(range(1, n + 1), repeat=2))

    def normal(self, word) -> tuple | None:
        out = []
        for x in word:
            if out and out[-1] == x:
                continue
            if self.reduced and out and _orth(out[-1], x):
                return None
            out.append(x)
        return tuple(out)

    def elem(self, terms) -> dict:
        out: dict = {}
        for w, c in terms:
            w = self.normal(w)
            if w is None:
                continue
            out[w] = out.get(w, 0) + Fraction(c)
            if not out[w]:
                del out[w]
        return out

    def gen(self, i: int, j: int) -> dict:
        return {((i, j),): Fraction(1)}

    def one(self) -> dict:
        return {(): Fraction(1)}

    def mul(self, *xs) -> dict:
        acc = self.one()
        for x in xs:
            acc = self.elem((u + v, a * b) for u, a in acc.items() for v, b in x.items())
        return acc

    def words(self, length: int):
        """All normal words of exactly this length."""
        if length == 0:
            yield ()
            return
        for w in self.words(length - 1):
            for x in self.letters:
                v = w + (x,)
                if self.normal(v) == v:
                    yield v

    def basis(self, D: int) -> list:
        return [w for k in range(D + 1) for w in self.words(k)]

    def relations(self) -> dict:
        """Row and column relations sum p - 1, keyed by ('row', i) / ('col', j)."""
        n = self.n
        rels = {}
        for i in range(1, n + 1):
            rels[("row", i)] = self.elem([(((i, j),), 1) for j in range(1, n + 1)] + [((), -1)])
        for j in range(1, n + 1):
            rels[("col", j)] = self.elem([(((i, j),), 1) for i in range(1, n + 1)] + [((), -1)])
        return rels


def add(*xs, coeffs=None) -> dict:
    out: dict = {}
    coeffs = coeffs or [1] * len(xs)
    for x, k in zip(xs, coeffs):
        for w, c in x.items():
            out[w] = out.get(w, 0) + k * c
            if not out[w]:
                del out[w]
    return out


def adjoint(x: dict) -> dict:
    """p* = p, so the adjoint reverses words (coefficients are rational)."""
    return {tuple(reversed(w)): c for w, c in x.items()}


class FreeWordSpace:
    """Span of u r v at bounded degree, kept in echelon form for membership tests."""

    def __init__(self, n: int, D: int, reduced: bool = True):
        self.alg = WordAlgebra(n, reduced)
        self.n, self.D = n, D
        self.basis = self.alg.basis(D)
        self.order = {w: k for k, w in enumerate(self.basis)}
        self.pivots: dict = {}
        self.generators = 0
        self._build()

    def _reduce(self, vec: dict) -> dict:
        vec = dict(vec)
        while vec:
            lead = min(vec, key=self.order.__getitem__)
            row = self.pivots.get(lead)
            if row is None:
                return vec
            k = vec[lead]
            for w, c in row.items():
                v = vec.get(w, 0) - k * c
                if v:
                    vec[w] = v
                else:
                    vec.pop(w, None)
        return vec

    def _insert(self, vec: dict) -> None:
        self.generators += 1
        vec = self._reduce(vec)
        if vec:
            lead = min(vec, key=self.order.__getitem__)
            inv = 1 / vec[lead]
            self.pivots[lead] = {w: c * inv for w, c in vec.items()}

    def _build(self) -> None:
        alg = self.alg
        by_len = [list(alg.words(k)) for k in range(self.D)]
        for r in alg.relations().values():
            for lu in range(self.D):
                for lv in range(self.D - lu):
                    for u in by_len[lu]:
                        for v in by_len[lv]:
                            vec = alg.mul({u: Fraction(1)}, r, {v: Fraction(1)})
                            if vec:
                                self._insert(vec)

    def contains(self, x: dict) -> tuple:
        """(member?, residual after reduction)."""
        rest = self._reduce(x)
        return not rest, rest

    @property
    def dimension(self) -> int:
        return len(self.pivots)


def _fmt(x: dict) -> str:
    if not x:
        return "0"
    parts = []
    for w, c in sorted(x.items(), key=lambda t: (len(t[0]), t[0])):
        mon = "".join(f"p{i}{j}" for i, j in w) or "1"
        parts.append(f"{c}*{mon}")
    return " + ".join(parts)


def orthogonality_check(n: int = 3, D: int = 3) -> CheckResult:
    """p_{i,j} p_{i,k} and p_{i,j} p_{k,j} (distinct) lie in the ideal, in the idempotent normal form."""
    res = CheckResult(f"orthogonality_n{n}")
    space = FreeWordSpace(n, D, reduced=False)
    alg = space.alg
    rules = [(x, y) for x in alg.letters for y in alg.letters if _orth(x, y)]
    for x, y in rules:
        ok, rest = space.contains(alg.mul(alg.gen(*x), alg.gen(*y)))
        res.ok(ok, f"p{x[0]}{x[1]} p{y[0]}{y[1]} not in the degree-{D} ideal (residual {_fmt(rest)})")
    res.ok(set(rules) == {(y, x) for x, y in rules}, "orthogonality rules not closed under adjoint")
    res.data.update(rules=len(rules), degree=D, words=len(space.basis), rank=space.dimension)
    return res


def relabel(x: dict, rows: Perm, cols: Perm) -> dict:
    """The symmetry p_{i,j} -> p_{rows(i), cols(j)}."""
    return {tuple((rows(i), cols(j)) for i, j in w): c for w, c in x.items()}


def proof_chain(alg: WordAlgebra):
    """The displayed chain p11 p22 = ... = p33 p22, step by step.

    Each step is (lhs, rhs, certificate), the certificate being a list of
    (coefficient, left word, relation key, right word) with
    lhs - rhs = sum coefficient * u r v in the reduced normal form.
    """
    g = alg.gen
    one = alg.one()
    p22 = g(2, 2)
    s0 = alg.mul(g(1, 1), p22)
    s1 = alg.mul(add(one, g(1, 2), g(1, 3), coeffs=[1, -1, -1]), p22)
    s2 = add(p22, alg.mul(g(1, 3), p22), coeffs=[1, -1])
    s3 = add(p22, alg.mul(add(one, g(2, 3), g(3, 3), coeffs=[1, -1, -1]), p22), coeffs=[1, -1])
    s4 = alg.mul(g(3, 3), p22)
    return [
        ("p11 p22 = (1 - p12 - p13) p22", s0, s1, [(1, (), ("row", 1), ((2, 2),))]),
        ("(1 - p12 - p13) p22 = p22 - p13 p22", s1, s2, []),
        ("p22 - p13 p22 = p22 - (1 - p23 - p33) p22", s2, s3, [(-1, (), ("col", 3), ((2, 2),))]),
        ("p22 - (1 - p23 - p33) p22 = p33 p22", s3, s4, []),
    ]


def verify_chain(alg: WordAlgebra, res: CheckResult, steps, rows: Perm, cols: Perm, tag: str = "") -> None:
    rels = alg.relations()
    for text, lhs, rhs, cert in steps:
        diff = add(relabel(lhs, rows, cols), relabel(rhs, rows, cols), coeffs=[1, -1])
        for k, u, key, v in cert:
            kind, idx = key
            perm = rows if kind == "row" else cols
            r = rels[(kind, perm(idx))]
            u2 = tuple((rows(i), cols(j)) for i, j in u)
            v2 = tuple((rows(i), cols(j)) for i, j in v)
            diff = add(diff, alg.mul({u2: Fraction(1)}, r, {v2: Fraction(1)}), coeffs=[1, -k])
        res.ok(not diff, f"{tag}step '{text}' leaves residual {_fmt(diff)}")


def a3_commutativity(D: int = 4) -> CheckResult:
    res = CheckResult("a3_commutativity")
    res.merge(orthogonality_check(3, 3), "orthogonality: ")
    alg = WordAlgebra(3, reduced=True)
    g = alg.gen
    ident = Perm.identity(3)
    cyc = Perm((2, 3, 1))
    steps = proof_chain(alg)
    verify_chain(alg, res, steps, ident, ident)
    # the two relabeled copies: p22 p33 = p11 p33 and p33 p11 = p22 p11
    for k, sym in enumerate((cyc, cyc * cyc), 1):
        verify_chain(alg, res, steps, sym, sym, tag=f"relabeling {k}: ")
    mul = alg.mul
    # endpoints of the three verified chains: (first, last) as elements
    proved = {}
    for k, sym in enumerate((ident, cyc, cyc * cyc)):
        proved[k] = (relabel(steps[0][1], sym, sym), relabel(steps[-1][2], sym, sym))
    chain = [mul(g(1, 1), g(2, 2)), mul(g(3, 3), g(2, 2)), adjoint(mul(g(2, 2), g(3, 3))),
             adjoint(mul(g(1, 1), g(3, 3))), mul(g(3, 3), g(1, 1)), mul(g(2, 2), g(1, 1))]
    links = [(0, 1, ("chain", 0)), (1, 2, ("adjoint",)), (2, 3, ("adjoint chain", 1)),
             (3, 4, ("adjoint",)), (4, 5, ("chain", 2))]
    for a, b, why in links:
        lhs, rhs = chain[a], chain[b]
        if why[0] == "adjoint":
            ok = lhs == rhs
        elif why[0] == "chain":
            ok = (lhs, rhs) == proved[why[1]]
        else:
            first, last = proved[why[1]]
            ok = (lhs, rhs) == (adjoint(first), adjoint(last))
        res.ok(ok, f"link {a}->{b} ({' '.join(map(str, why))}) is not justified")
    space = FreeWordSpace(3, D, reduced=True)
    comm = add(mul(g(1, 1), g(2, 2)), mul(g(2, 2), g(1, 1)), coeffs=[1, -1])
    ok, rest = space.contains(comm)
    res.ok(ok, f"commutator not in the degree-{D} ideal (residual {_fmt(rest)}); raise D")
    res.data.update(degree=D, words=len(space.basis), generators=space.generators, rank=space.dimension)
    return res


def small_n_commutativity(n: int = 2, D: int = 3) -> CheckResult:
    res = CheckResult(f"a{n}_commutativity")
    res.merge(orthogonality_check(n, 3), "orthogonality: ")
    space = FreeWordSpace(n, D, reduced=True)
    alg = space.alg
    for x, y in permutations(alg.letters, 2):
        comm = add(alg.mul(alg.gen(*x), alg.gen(*y)), alg.mul(alg.gen(*y), alg.gen(*x)), coeffs=[1, -1])
        ok, rest = space.contains(comm)
        res.ok(ok, f"[p{x[0]}{x[1]}, p{y[0]}{y[1]}] not in the degree-{D} ideal")
    return res
