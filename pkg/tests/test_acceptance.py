"""The ten acceptance criteria, each at its stated tolerance and time limit."""
import time

import pytest

from magic4 import cone, degree, geometry, ktheory, presentations, rp3, symmetry


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0


def _record(log, num, results, secs, limit, detail=""):
    failed = [r for r in results if not r.passed]
    ok = not failed and secs < limit
    checked = sum(r.checked for r in results)
    text = detail or f"{checked} checks"
    if failed:
        text += "; failing: " + ", ".join(f"{r.name} {r.witnesses[:2]}" for r in failed)
    log.append((num, ok, secs, limit, text))
    print(f"{'PASS' if ok else 'FAIL'} criterion {num}: {text} in {secs:.2f}s (limit {limit}s)")
    assert not failed, text
    assert secs < limit, f"took {secs:.1f}s, limit {limit}s"


def test_criterion_01_exact_relations(acceptance_log):
    with Timer() as t:
        res = [symmetry.check_pauli_relation(), symmetry.check_cocycle_identity(),
               symmetry.check_epsilon_symmetrization(), symmetry.check_U_display(), symmetry.check_U_twist(),
               symmetry.check_intertwine(), symmetry.scalar_inverse_identity(), symmetry.check_epsilon_table()]
    counts = [r.checked for r in res]
    assert counts[0] == 16 and counts[1] == 64 and counts[4] == 256 and counts[5] == 16 and counts[6] == 64
    _record(acceptance_log, 1, res, t.seconds, 1.0)


def test_criterion_02_representation(acceptance_log):
    rp3.build_P.cache_clear()
    with Timer() as t:
        P = rp3.build_P()
        res = [rp3.check_P_relations(P), rp3.check_P_display(P), rp3.check_phi_psi(),
               rp3.check_rf_bridge_identity(P), rp3.check_beta_equivariance(P), rp3.check_f_relations()]
    _record(acceptance_log, 2, res, t.seconds, 30.0)


def test_criterion_03_ktheory(acceptance_log):
    with Timer() as t:
        data = ktheory.load_delta_data()
        res = [ktheory.check_delta_table(data), ktheory.check_p_class_table(data),
               ktheory.certify_kb(data), ktheory.certify_eta(data)]
    assert data.delta.rows * data.delta.cols == 432
    assert data.p_classes.rows * data.p_classes.cols == 384
    kb = res[2].data
    assert kb["kernel_rank"] == 10 and kb["cokernel"] == [4, [2]]
    assert sorted(kb["invariant_factors"]) == [1] * 13 + [2]
    _record(acceptance_log, 3, res, t.seconds, 5.0,
            f"ker rank {kb['kernel_rank']}, coker Z^4+Z/2, ker eta = im delta (rank {res[3].data['kernel_rank']})")


def test_criterion_04_positive_cone(acceptance_log):
    with Timer() as t:
        res = cone.positive_cone_check(6)
    _record(acceptance_log, 4, [res], t.seconds, 120.0,
            f"{res.data['kernel_points']} positive kernel vectors at bound 6, all P-class sums "
            f"(full enumeration of {res.data['enumerated']} points agrees)")


def test_criterion_05_lemma_3x3(acceptance_log):
    with Timer() as t:
        res = cone.lemma_3x3_oracle()
    assert res.checked == 512
    _record(acceptance_log, 5, [res], t.seconds, 1.0, "512 patterns, no counterexample")


def test_criterion_06_structure_algebras(acceptance_log):
    with Timer() as t:
        res = rp3.check_commutants()
    _record(acceptance_log, 6, [res], t.seconds, 5.0)


def test_criterion_07_geometry(acceptance_log):
    with Timer() as t:
        res = [geometry.fixed_point_structure(), geometry.special_orbit_check(),
               geometry.papa_spot_check(rp3.build_P()), geometry.hexahedron_check(100_000, seed=0),
               geometry.v_translate_disjointness(100_000, seed=0)]
    _record(acceptance_log, 7, res, t.seconds, 60.0)


def test_criterion_08_factorization(acceptance_log):
    with Timer() as t:
        lemma = rp3.check_xi_iota_lemma()
        res = rp3.check_U_factorization(P=rp3.build_P())
    assert res.data["iota_reading"] == lemma.data["iota_reading"] == "corrected"
    _record(acceptance_log, 8, [lemma, res], t.seconds, 60.0, "exact 16x16 identity, corrected iota reading")


@pytest.mark.slow
def test_criterion_09_degrees(acceptance_log):
    with Timer() as t:
        res = degree.degree_check(1_000_000, seed=0, tolerance=0.2,
                                  names=["w", "iota4_w", "iota_prime4_w", "U_bar"])
        orient = ktheory.orientation_check()
    assert orient.checked == 32
    est = {k: v["estimate"] for k, v in res.data.items()}
    _record(acceptance_log, 9, [res, orient], t.seconds, 600.0,
            ", ".join(f"{k} {v:.4f}" for k, v in est.items()) + "; det(+-U) = 1 for all 32")


def test_criterion_10_presentations(acceptance_log):
    with Timer() as t:
        res = [presentations.character_table(4), presentations.a3_commutativity(4)]
    assert res[0].data["size"] == 24
    _record(acceptance_log, 10, res, t.seconds, 10.0, "24x24 identity; chain verified; member at degree 4")
