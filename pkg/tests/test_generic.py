"""Group action, triangularization, and the mu-generic reduction pipeline."""

import random

import pytest

from lrpairs.errors import (GenericityError, InputError, RankError,
                            RetriesExhaustedError)
from lrpairs.generic import (GroupElement, MatrixPair, act,
                             check_equation_first, check_equation_second,
                             check_equation_third, corner_invariant_check,
                             diagonalize_first, genericity_stats,
                             reset_genericity_stats, to_mu_generic,
                             triangularize_right, verify_mu_generic)
import lrpairs.generic as generic_mod
from lrpairs.matrix import (RMatrix, det, diag_from_partition,
                            invariant_partition, is_mu_admissible, mat_mul,
                            minor_order_table)
from lrpairs.realize import random_filling, realize
from lrpairs.ring import ONE, ZERO, RingElem
from lrpairs.tableaux import Partition

from golden import FILLING, LAM, MU, NU, c, golden_m, golden_n, t


def golden_pair():
    return MatrixPair(golden_m(), golden_n())


def random_unit_triangular(rng, r, lower=False):
    """Random triangular matrix with unit diagonal entries (so a unit det)."""
    rows = []
    for i in range(1, r + 1):
        row = []
        for j in range(1, r + 1):
            if i == j:
                row.append(c(rng.choice((1, -1, 2, 3))))
            elif (i > j) if lower else (i < j):
                row.append(c(rng.randint(-3, 3)) * t(rng.randint(0, 2)))
            else:
                row.append(ZERO)
        rows.append(row)
    return RMatrix(rows)


def random_invertible(rng, r):
    return mat_mul(random_unit_triangular(rng, r, lower=True),
                   random_unit_triangular(rng, r, lower=False))


def random_group_element(rng, r):
    return GroupElement(random_invertible(rng, r), random_invertible(rng, r),
                        random_invertible(rng, r))


# ---------------------------------------------------------------------------
# pairs and the group action


def test_matrix_pair_basics():
    pair = golden_pair()
    assert pair.r == 4
    assert pair.product() == mat_mul(golden_m(), golden_n())
    assert pair.invariants() == (MU, NU, LAM)
    assert MatrixPair.from_json(pair.to_json()) == pair
    with pytest.raises(InputError):
        MatrixPair(golden_m(), RMatrix.identity(3))


def test_identity_action_fixes_pair():
    pair = golden_pair()
    assert act(GroupElement.identity(4), pair) == pair


def test_action_composition_law():
    rng = random.Random(17)
    pair = golden_pair()
    for _ in range(5):
        g = random_group_element(rng, 4)
        h = random_group_element(rng, 4)
        assert act(g.compose(h), pair) == act(g, act(h, pair))


def test_action_preserves_all_three_invariants():
    rng = random.Random(29)
    for _ in range(5):
        f, mu, nu, lam = random_filling(rng, r_max=3, part_max=4)
        pair = realize(f, mu).pair()
        moved = act(random_group_element(rng, pair.r), pair)
        assert moved.invariants() == (mu, nu, lam)


def test_action_rejects_bad_elements():
    pair = golden_pair()
    with pytest.raises(InputError):
        act(GroupElement.identity(3), pair)
    not_invertible = GroupElement(
        RMatrix.identity(4),
        diag_from_partition(Partition((1,)), 4),  # det = t, not a unit
        RMatrix.identity(4))
    with pytest.raises(InputError):
        act(not_invertible, pair)


def test_group_element_json_and_invertibility():
    g = GroupElement.identity(2)
    assert set(g.to_json()) == {"p", "q", "t"}
    assert g.is_invertible_over_ring()
    bad = GroupElement(RMatrix([[t(1)]]), RMatrix([[ONE]]), RMatrix([[ONE]]))
    assert not bad.is_invertible_over_ring()


# ---------------------------------------------------------------------------
# diagonalization of the first component


def test_diagonalize_first_short_circuits_on_golden():
    pair = golden_pair()
    out, g = diagonalize_first(pair)
    assert out == pair
    assert g.p == RMatrix.identity(4) and g.q == RMatrix.identity(4)


def test_diagonalize_first_random_replay():
    rng = random.Random(41)
    base = golden_pair()
    for _ in range(3):
        pair = act(random_group_element(rng, 4), base)
        out, g = diagonalize_first(pair)
        assert out.first == golden_m()
        assert act(g, pair) == out
        assert out.invariants() == (MU, NU, LAM)


# ---------------------------------------------------------------------------
# right triangularization


def test_triangularize_upper_input_is_fixed():
    n = golden_n()
    t_l, u, t_l_inv = triangularize_right(n)
    assert t_l == RMatrix.identity(4)
    assert u == n


def test_triangularize_antidiagonal_is_column_reversal():
    anti = RMatrix([[ZERO, ZERO, ONE], [ZERO, ONE, ZERO], [ONE, ZERO, ZERO]])
    t_l, u, t_l_inv = triangularize_right(anti)
    assert u == RMatrix.identity(3)
    assert t_l == anti  # the reversal permutation is its own inverse


def test_triangularize_random_contract():
    rng = random.Random(53)
    for _ in range(20):
        r = rng.randint(1, 4)
        m = random_invertible(rng, r)
        t_l, u, t_l_inv = triangularize_right(m)
        assert mat_mul(m, t_l) == u
        assert u.is_upper_triangular()
        assert t_l.is_over_ring()
        assert det(t_l).is_unit()
        assert mat_mul(t_l, t_l_inv) == RMatrix.identity(r)
        assert invariant_partition(u) == invariant_partition(m)


def test_triangularize_singular_raises():
    with pytest.raises(RankError):
        triangularize_right(RMatrix([[ONE, ONE], [ONE, ONE]]))


# ---------------------------------------------------------------------------
# verification reports


def test_verify_mu_generic_golden():
    rep = verify_mu_generic(golden_n(), MU)
    assert rep.ok
    assert rep.mode == "full"
    names = [ch.name for ch in rep.checks]
    assert names == ["upper_triangular", "det_gap_rows", "det_gap_columns"]
    doc = rep.to_json()
    assert doc["ok"] is True and doc["failures"] == []


def test_verify_mu_generic_sampled_mode():
    rep = verify_mu_generic(golden_n(), MU, mode="sampled", rng=random.Random(1))
    assert rep.ok and rep.mode == "sampled"


def test_verify_mu_generic_detects_gap_violation():
    n = RMatrix([[ONE, ZERO], [ZERO, t(1)]])
    rep = verify_mu_generic(n, Partition((1,)))
    assert not rep.ok
    assert {ch.name for ch in rep.failures()} == {"det_gap_rows", "det_gap_columns"}


def test_verify_mu_generic_flags_non_upper():
    rep = verify_mu_generic(golden_n().transpose(), MU)
    assert not rep.ok
    assert "upper_triangular" in {ch.name for ch in rep.failures()}


def test_corner_invariant_check_golden():
    rep = corner_invariant_check(golden_n(), MU)
    assert rep.ok


def test_corner_invariant_check_detects_failure():
    n = RMatrix([[t(1), ONE], [ZERO, t(1)]])
    rep = corner_invariant_check(n, Partition(()))
    assert not rep.ok
    assert "lambda_corner_minors" in {ch.name for ch in rep.failures()}


# ---------------------------------------------------------------------------
# the reduction


def test_to_mu_generic_golden_certificate():
    pair = golden_pair()
    cert = to_mu_generic(pair, random.Random(42))
    assert cert.pair.first == golden_m()
    assert cert.pair.second == cert.n_star
    assert cert.mu == MU and cert.nu == NU and cert.lam == LAM
    assert cert.n_star.is_upper_triangular()
    assert cert.n_star.is_over_ring()
    assert cert.report.ok
    assert cert.attempts == 1
    assert len(cert.minor_orders) == 70
    assert is_mu_admissible(cert.q, MU)
    assert cert.t_inv.is_over_ring() and det(cert.t_inv).is_unit()
    # the recorded group element replays the whole reduction exactly
    assert act(cert.group, pair) == cert.pair
    # N* really is Q N T^-1
    assert mat_mul(mat_mul(cert.q, golden_n()), cert.t_inv) == cert.n_star


def test_to_mu_generic_from_scrambled_pair():
    rng = random.Random(61)
    pair = act(random_group_element(rng, 4), golden_pair())
    cert = to_mu_generic(pair, rng)
    assert cert.mu == MU and cert.nu == NU and cert.lam == LAM
    assert cert.report.ok
    assert act(cert.group, pair) == cert.pair
    assert verify_mu_generic(cert.n_star, MU, table=cert.minor_orders).ok
    assert corner_invariant_check(cert.n_star, MU).ok


def test_certificate_equations_hold_on_all_pairs():
    cert = to_mu_generic(golden_pair(), random.Random(42))
    r = 4
    u = mat_mul(mat_mul(cert.q_lower, cert.n_input), cert.t_lower)
    assert u.is_upper_triangular()
    tab_n = cert.minor_orders
    tab_right = minor_order_table(mat_mul(u, cert.t_upper))
    tab_left = minor_order_table(mat_mul(cert.q_upper, u))
    v = mat_mul(cert.q_hat_u, mat_mul(cert.n_input, cert.t_inv))
    tab_v = minor_order_table(v)
    assert check_equation_first(tab_n, tab_right, r, "full", None) == ""
    assert check_equation_second(tab_n, tab_v, cert.mu, r, "full", None) == ""
    assert check_equation_third(tab_n, tab_left, r, "full", None) == ""
    # the LU split of Q multiplies back and its factors live where required
    assert mat_mul(cert.q_hat_l, cert.q_hat_u) == cert.q
    assert is_mu_admissible(cert.q_hat_l, cert.mu)
    assert det(cert.q_hat_u).is_unit()


def test_certificate_json_shape():
    cert = to_mu_generic(golden_pair(), random.Random(42))
    doc = cert.to_json()
    assert set(doc) >= {"n_star", "mu", "nu", "lambda", "factors",
                        "verification", "attempts"}
    assert doc["mu"] == [7, 4, 2, 1]
    assert doc["verification"]["ok"] is True
    assert doc["verification"]["mode"] == "full"
    assert RMatrix.from_json(doc["n_star"]) == cert.n_star


def test_genericity_stats_counting():
    reset_genericity_stats()
    rng = random.Random(3)
    for _ in range(3):
        f, mu, _, _ = random_filling(rng, r_max=3, part_max=4)
        to_mu_generic(realize(f, mu).pair(), rng)
    stats = genericity_stats()
    assert stats.successes == 3
    assert stats.attempts == stats.successes + stats.resamples
    reset_genericity_stats()
    assert genericity_stats().attempts == 0


def test_retries_exhausted(monkeypatch):
    def always_fails(*args, **kwargs):
        raise GenericityError("forced failure")

    monkeypatch.setattr(generic_mod, "_attempt_reduction", always_fails)
    reset_genericity_stats()
    with pytest.raises(RetriesExhaustedError) as exc:
        to_mu_generic(golden_pair(), random.Random(0), max_retries=2)
    assert exc.value.attempts == 2
    assert "forced failure" in exc.value.last_failure
    assert genericity_stats().resamples == 2


def test_to_mu_generic_deterministic_per_seed():
    a = to_mu_generic(golden_pair(), random.Random(7))
    b = to_mu_generic(golden_pair(), random.Random(7))
    assert a.n_star == b.n_star
    assert a.q == b.q and a.t_inv == b.t_inv
    c2 = to_mu_generic(golden_pair(), random.Random(8))
    assert c2.report.ok  # different seed still verifies
