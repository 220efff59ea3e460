"""Registry of verification checks, their suites and dependencies, and the runner."""
from __future__ import annotations

import time
import traceback
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Callable

from . import cone, degree, geometry, ktheory, presentations, rp3, symmetry
from .data import FixtureError, check_fixtures
from .report import CheckResult, VerificationReport

SUITES = ("pauli", "theorem-a", "theorem-b", "geometry", "ktheory", "degree", "presentations")
GEOMETRY_SAMPLES = 100_000
DEGREE_SAMPLES = 1_000_000


@dataclass
class Context:
    fixtures: str | None = None
    samples: int | None = None
    seed: int = 0
    cone_bound: int = 6
    jobs: int = 1

    @cached_property
    def P(self):
        return rp3.build_P()

    @cached_property
    def delta_data(self):
        return ktheory.load_delta_data(self.fixtures)

    def geometry_samples(self) -> int:
        return self.samples or GEOMETRY_SAMPLES

    def degree_samples(self) -> int:
        return self.samples or DEGREE_SAMPLES


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    run: Callable[[Context], CheckResult]
    claim: str
    deps: tuple = ()
    anchored: bool = True


def _degree(name: str) -> Callable[[Context], CheckResult]:
    def run(ctx: Context) -> CheckResult:
        res = degree.degree_check(ctx.degree_samples(), ctx.seed, ctx.jobs, names=[name])
        res.name = f"degree_{name}"
        return res
    return run


REGISTRY: tuple = (
    Check("pauli", "epsilon_table", lambda c: symmetry.check_epsilon_table(directory=c.fixtures),
          "the sign table equals the cocycle rule eps(i,j)"),
    Check("pauli", "pauli_relation", lambda c: symmetry.check_pauli_relation(),
          "c_i c_j = eps(i,j) c_{t_i(j)} for all 16 pairs"),
    Check("pauli", "cocycle_identity", lambda c: symmetry.check_cocycle_identity(),
          "eps satisfies the 2-cocycle identity on all 64 triples"),
    Check("pauli", "epsilon_symmetrization", lambda c: symmetry.check_epsilon_symmetrization(directory=c.fixtures),
          "eps(i,j) eps(j,i) equals the symmetrized sign table"),
    Check("pauli", "klein_group", lambda c: symmetry.check_klein_group(),
          "t_1..t_4 form the Klein four-group with t_i(j) = t_j(i)"),
    Check("pauli", "sign_homomorphism", lambda c: symmetry.check_sign_homomorphism(),
          "the permutation sign is multiplicative on S4"),
    Check("pauli", "U_display", lambda c: symmetry.check_U_display(),
          "the 16 unitaries U_{i,j} built from the Pauli matrices match their displayed entries"),
    Check("pauli", "U_twist", lambda c: symmetry.check_U_twist(),
          "U_{i,j} U_{k,l} obeys the twisted product rule in all 256 cases"),
    Check("pauli", "U_squares", lambda c: symmetry.check_U_squares(),
          "U_{i,j}^2 is +1 for i,j >= 2, -1 for the mixed pairs"),
    Check("pauli", "intertwine", lambda c: symmetry.check_intertwine(),
          "U_{i,j} intertwines the Pauli conjugations in all 16 cases"),
    Check("pauli", "scalar_inverse_identity", lambda c: symmetry.scalar_inverse_identity(),
          "the sign sums defining the inverse map equal delta_{l,1} on all 64 triples"),

    Check("theorem-a", "P_display", lambda c: rp3.check_P_display(c.P),
          "the displayed P_{i,j} matrices equal the conjugated P_{1,1}"),
    Check("theorem-a", "f_relations", lambda c: rp3.check_f_relations(),
          "the quadratic functions f_{i,j} satisfy their product relations on S^3"),
    Check("theorem-a", "P_relations", lambda c: rp3.check_P_relations(c.P),
          "every P_{i,j} is a projection, rows and columns sum to 1, and R_up holds in 256 cases"),
    Check("theorem-a", "rf_bridge", lambda c: rp3.check_rf_bridge_identity(c.P),
          "the bridge identity between the f- and P-relations holds under all S4 x S4 symmetries"),
    Check("theorem-a", "phi_psi", lambda c: rp3.check_phi_psi(),
          "Phi(E_{i,j}) = e_{i,j} and Phi(F_{i,j}) = f_{i,j} 1 for all 16 pairs"),

    Check("theorem-b", "beta_equivariance", lambda c: rp3.check_beta_equivariance(c.P),
          "every P_{i,j} is invariant under the action beta", deps=("P_relations",)),
    Check("theorem-b", "commutants", lambda c: rp3.check_commutants(),
          "pair commutants are 8-dimensional with the displayed supports; triple commutants are "
          "4-dimensional, commutative, with 4 minimal idempotents"),
    Check("theorem-b", "xi_iota_lemma", lambda c: rp3.check_xi_iota_lemma(),
          "xi(M) iota(N) = xi(MN) and its primed version, under exactly one reading of iota"),
    Check("theorem-b", "U_factorization", lambda c: rp3.check_U_factorization(P=c.P),
          "U_bar = W' iota'_4(w) V iota_4(w) W exactly, with V, W, W' unitary",
          deps=("xi_iota_lemma", "P_relations")),

    Check("geometry", "fixed_point_structure", lambda c: geometry.fixed_point_structure(),
          "each order-2 sigma_{i,j} fixes two circles given by the listed families; mixed pairs fix nothing"),
    Check("geometry", "special_orbit_check", lambda c: geometry.special_orbit_check(),
          "the six listed 4-point sets are the joint fixed sets of the triples", deps=("fixed_point_structure",)),
    Check("geometry", "papa_spot_check", lambda c: geometry.papa_spot_check(c.P),
          "at the 24 special points the P's coincide in four orthogonal groups summing to 1",
          deps=("P_relations", "special_orbit_check")),
    Check("geometry", "hexahedron_check", lambda c: geometry.hexahedron_check(c.geometry_samples(), c.seed),
          "h maps the closed domain injectively into the hexahedron, with the stated vertex images"),
    Check("geometry", "v_translate_disjointness",
          lambda c: geometry.v_translate_disjointness(c.geometry_samples(), c.seed),
          "the domain V is disjoint from its 15 nontrivial translates"),

    Check("ktheory", "delta_table", lambda c: ktheory.check_delta_table(c.delta_data),
          "the exponential map generated from the permutation rule equals its table"),
    Check("ktheory", "p_class_table", lambda c: ktheory.check_p_class_table(c.delta_data),
          "[P_{i,j}] = sum of q_sigma over sigma(j) = i equals its table"),
    Check("ktheory", "certify_kb", lambda c: ktheory.certify_kb(c.delta_data),
          "ker delta = Z^10 is spanned by the P-classes and coker delta = Z^4 + Z/2",
          deps=("delta_table", "p_class_table")),
    Check("ktheory", "certify_eta", lambda c: ktheory.certify_eta(c.delta_data),
          "eta-tilde is surjective with kernel equal to the image of delta", deps=("delta_table",)),
    Check("ktheory", "positive_cone", lambda c: cone.positive_cone_check(c.cone_bound, c.delta_data),
          "positive kernel vectors are exactly the sums of P-classes", deps=("certify_kb",)),
    Check("ktheory", "lemma_3x3", lambda c: cone.lemma_3x3_oracle(),
          "the 3x3 positivity lemma holds for all 512 sign patterns"),
    Check("ktheory", "orientation_check", lambda c: ktheory.orientation_check(),
          "all 32 maps +-U_{i,j} preserve the orientation of S^3"),

    Check("degree", "degree_w", _degree("w"), "w generates K1: degree 1"),
    Check("degree", "degree_iota4_w", _degree("iota4_w"), "iota_4(w) has degree 8", deps=("xi_iota_lemma",)),
    Check("degree", "degree_iota_prime4_w", _degree("iota_prime4_w"), "iota'_4(w) has degree 8"),
    Check("degree", "degree_U_bar", _degree("U_bar"), "the block unitary U_bar has degree 16",
          deps=("U_factorization",)),
    Check("degree", "degree_w_plus_w", _degree("w_plus_w"), "degree is additive: w + w has degree 2",
          anchored=False),

    *(Check("presentations", f"character_table_n{n}", (lambda n: lambda c: presentations.character_table(n))(n),
            f"the {n}! characters separate the minimal projections p_sigma") for n in (1, 2, 3, 4)),
    Check("presentations", "a2_commutativity", lambda c: presentations.small_n_commutativity(2, 3),
          "A(2) is commutative"),
    Check("presentations", "a3_commutativity", lambda c: presentations.a3_commutativity(4),
          "A(3) is commutative: each rewrite step of the chain, and ideal membership at degree 4"),
)

BY_NAME = {c.name: c for c in REGISTRY}


def select(suites) -> list:
    """Checks of the given suites plus their transitive dependencies, in registry order."""
    suites = set(SUITES if not suites or "all" in suites else suites)
    unknown = suites - set(SUITES)
    if unknown:
        raise ValueError(f"unknown suite(s): {', '.join(sorted(unknown))}")
    wanted = {c.name for c in REGISTRY if c.suite in suites}
    todo = list(wanted)
    while todo:
        for d in BY_NAME[todo.pop()].deps:
            if d not in wanted:
                wanted.add(d)
                todo.append(d)
    return [c for c in REGISTRY if c.name in wanted]


def _execute(check: Check, ctx: Context) -> VerificationReport:
    t0 = time.perf_counter()
    try:
        res = check.run(ctx)
        status = "pass" if res.passed else "fail"
        category = "" if res.passed else ("reference discrepancy" if check.anchored else "internal error")
        rep = VerificationReport(check.suite, check.name, status, checked=res.checked, failed=res.failed,
                                 witness="; ".join(res.witnesses), claim=check.claim, category=category,
                                 data=res.data)
    except FixtureError:
        raise
    except Exception as exc:  # noqa: BLE001 -- any crash is reported, not raised
        tb = traceback.format_exception_only(type(exc), exc)[-1].strip()
        rep = VerificationReport(check.suite, check.name, "fail", failed=1, witness=tb, claim=check.claim,
                                 category="internal error")
    rep.elapsed = time.perf_counter() - t0
    return rep


def run_checks(checks, ctx: Context, on_report: Callable | None = None) -> list:
    """Run checks in dependency waves; a check whose dependency failed is skipped."""
    check_fixtures(ctx.fixtures)
    pending = list(checks)
    done: dict = {}
    names = {c.name for c in checks}
    while pending:
        wave = [c for c in pending if all(d in done or d not in names for d in c.deps)]
        if not wave:
            raise RuntimeError("dependency cycle among checks")
        runnable, skipped = [], []
        for c in wave:
            bad = [d for d in c.deps if d in done and done[d].status != "pass"]
            (skipped if bad else runnable).append((c, bad))
        for c, bad in skipped:
            done[c.name] = VerificationReport(c.suite, c.name, "skipped", witness=f"dependency failed: {', '.join(bad)}",
                                              claim=c.claim)
        if ctx.jobs > 1 and len(runnable) > 1:
            with ThreadPoolExecutor(ctx.jobs) as ex:
                reports = list(ex.map(lambda cb: _execute(cb[0], ctx), runnable))
        else:
            reports = [_execute(c, ctx) for c, _ in runnable]
        for (c, _), rep in zip(runnable, reports):
            done[c.name] = rep
        for c in wave:
            if on_report:
                on_report(done[c.name])
        pending = [c for c in pending if c.name not in done]
    return sorted(done.values(), key=lambda r: (r.suite, r.name))
