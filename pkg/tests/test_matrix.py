"""Exact matrix layer: minors, invariant partitions, Smith and LU transforms."""

import itertools
import random

import pytest

from lrpairs.errors import (InputError, NotInRingError, PrincipalMinorError,
                            RankError)
from lrpairs.matrix import (IndexSet, RMatrix, det, diag_from_partition,
                            index_tuples, invariant_partition,
                            invariant_partition_oracle, inverse,
                            is_mu_admissible, lu_decompose, mat_mul, minor,
                            minor_order, minor_order_table, smith_transforms)
from lrpairs.ring import INFINITY, ONE, ZERO, RingElem
from lrpairs.tableaux import Partition

from golden import (KEPT_ORDERS, LAM, MU, NU, c, golden_factors, golden_m,
                    golden_mn, golden_n, t)


def random_ring_matrix(rng, r, max_order=6, frac=False):
    """Random matrix over the ring with entry orders <= max_order."""
    rows = []
    for _ in range(r):
        row = []
        for _ in range(r):
            if rng.random() < 0.2:
                row.append(ZERO)
            else:
                num = rng.randint(-9, 9) or 1
                e = RingElem.const(num) * t(rng.randint(0, max_order))
                if frac and rng.random() < 0.3:
                    e = e / RingElem.const(rng.randint(1, 7))
                    e = e * (RingElem.const(1) + t(1) * RingElem.const(rng.randint(-3, 3)))
                row.append(e)
        rows.append(row)
    return RMatrix(rows)


def random_full_rank(rng, r, max_order=6, frac=False):
    while True:
        m = random_ring_matrix(rng, r, max_order, frac)
        if not det(m).is_zero():
            return m


def det_by_permutations(m):
    """Definition of the determinant, for cross-checking the fast paths."""
    r = m.r
    total = ZERO
    for perm in itertools.permutations(range(1, r + 1)):
        sign = 1
        for a in range(r):
            for b in range(a + 1, r):
                if perm[a] > perm[b]:
                    sign = -sign
        term = RingElem.const(sign)
        for i in range(1, r + 1):
            term = term * m.entry(i, perm[i - 1])
        total = total + term
    return total


# ---------------------------------------------------------------------------
# construction and access


def test_identity_and_diagonal():
    eye = RMatrix.identity(3)
    assert eye.is_diagonal() and eye.is_upper_triangular()
    assert eye.entry(1, 1) == ONE and eye.entry(1, 2) == ZERO
    d = diag_from_partition(MU, 4)
    assert d.entry(1, 1) == t(7) and d.entry(4, 4) == t(1)
    assert d.is_diagonal()
    # shorter partition pads with exponent zero
    d2 = diag_from_partition(Partition((2,)), 2)
    assert d2.entry(2, 2) == ONE


def test_ragged_rows_rejected():
    with pytest.raises(InputError):
        RMatrix([[ONE, ZERO], [ONE]])


def test_matmul_golden():
    n1, n2, n3, n4 = golden_factors()
    prod = mat_mul(mat_mul(n1, n2), mat_mul(n3, n4))
    assert prod == golden_n()
    assert mat_mul(golden_m(), golden_n()) == golden_mn()
    assert n1 @ n2 @ n3 @ n4 == golden_n()


def test_transpose_and_predicates():
    n = golden_n()
    assert n.is_upper_triangular()
    assert not n.is_diagonal()
    assert n.transpose().transpose() == n
    assert not n.transpose().is_upper_triangular()
    assert n.is_over_ring()
    bad = RMatrix([[ONE / t(1)]])
    assert not bad.is_over_ring()


def test_json_roundtrip():
    n = golden_n()
    assert RMatrix.from_json(n.to_json()) == n
    m = random_ring_matrix(random.Random(3), 3, frac=True)
    assert RMatrix.from_json(m.to_json()) == m


# ---------------------------------------------------------------------------
# index sets


def test_index_tuples_counts():
    assert len(index_tuples(4, 2)) == 6
    assert index_tuples(3, 0) == ((),)
    assert index_tuples(3, 3) == ((1, 2, 3),)


def test_index_set_order_and_complement():
    a = IndexSet((1, 3))
    b = IndexSet((2, 4))
    assert a <= b
    assert not b <= a
    assert a.complement(4) == (2, 4)
    assert IndexSet(()).complement(3) == (1, 2, 3)
    with pytest.raises(InputError):
        IndexSet((2, 2))


# ---------------------------------------------------------------------------
# determinants and minors


def test_det_golden():
    assert det(golden_n()) == t(19)
    assert det(golden_m()) == t(14)
    assert det(golden_mn()) == t(33)


def test_det_matches_permutation_expansion():
    rng = random.Random(11)
    for r in (2, 3, 4):
        for _ in range(6):
            m = random_ring_matrix(rng, r, max_order=3, frac=True)
            assert det(m) == det_by_permutations(m)


def test_minor_golden_kept_orders():
    n = golden_n()
    for rows, want in KEPT_ORDERS.items():
        k = len(rows)
        cols = tuple(range(4 - k + 1, 5))
        assert minor_order(n, rows, cols) == want, rows


def test_minor_empty_and_full():
    n = golden_n()
    assert minor(n, (), ()) == ONE
    assert minor(n, (1, 2, 3, 4), (1, 2, 3, 4)) == det(n)
    assert minor_order(n, (2,), (1,)) is INFINITY


def test_minor_order_table_matches_single_queries():
    rng = random.Random(5)
    for m in (golden_n(), random_ring_matrix(rng, 3, frac=True),
              random_full_rank(rng, 4)):
        table = minor_order_table(m)
        assert table[((), ())] == 0
        for k in range(0, m.r + 1):
            for rows in index_tuples(m.r, k):
                for cols in index_tuples(m.r, k):
                    assert table[(rows, cols)] == minor_order(m, rows, cols)


def test_minor_fractional_entries_are_exact():
    m = RMatrix([[c(1) / c(3), c(1) / c(2)], [c(2) / c(7), c(5)]])
    want = c(1) / c(3) * c(5) - c(1) / c(2) * c(2) / c(7)
    assert minor(m, (1, 2), (1, 2)) == want


# ---------------------------------------------------------------------------
# invariant partitions


def test_invariant_partition_golden():
    assert invariant_partition(golden_m()) == MU
    assert invariant_partition(golden_n()) == NU
    assert invariant_partition(golden_mn()) == LAM


def test_oracle_agrees_on_golden():
    for m in (golden_m(), golden_n(), golden_mn()):
        assert invariant_partition_oracle(m) == invariant_partition(m)


def test_invariant_partition_errors():
    singular = RMatrix([[ONE, ONE], [ONE, ONE]])
    with pytest.raises(RankError):
        invariant_partition(singular)
    outside = RMatrix([[ONE / t(1), ZERO], [ZERO, ONE]])
    with pytest.raises(NotInRingError):
        invariant_partition(outside)


def test_invariant_partition_random_cross_validation():
    rng = random.Random(77)
    for _ in range(40):
        r = rng.randint(1, 4)
        m = random_full_rank(rng, r)
        assert invariant_partition(m) == invariant_partition_oracle(m)


# ---------------------------------------------------------------------------
# smith transforms


def test_smith_contract_golden():
    p, q, d = smith_transforms(golden_n())
    assert mat_mul(p, golden_n()) == mat_mul(d, q)
    assert d.is_diagonal()
    assert det(p).is_unit() and det(q).is_unit()
    orders = [d.entry(i, i).valuation() for i in range(1, 5)]
    assert orders == [8, 5, 4, 2]


def test_smith_short_circuit_on_power_diagonal():
    m = golden_m()
    p, q, d = smith_transforms(m)
    assert d == m
    assert p == RMatrix.identity(4) and q == RMatrix.identity(4)


def test_smith_contract_random():
    rng = random.Random(21)
    for _ in range(25):
        r = rng.randint(1, 4)
        m = random_full_rank(rng, r)
        p, q, d = smith_transforms(m)
        assert mat_mul(p, m) == mat_mul(d, q)
        assert d.is_diagonal()
        assert p.is_over_ring() and q.is_over_ring()
        assert det(p).is_unit() and det(q).is_unit()
        orders = [d.entry(i, i).valuation() for i in range(1, r + 1)]
        assert orders == sorted(orders, reverse=True)
        assert Partition(tuple(orders)) == invariant_partition(m)


# ---------------------------------------------------------------------------
# inverse


def test_inverse_golden_and_random():
    rng = random.Random(33)
    for m in (golden_m(), golden_n(), random_full_rank(rng, 3, frac=True)):
        assert mat_mul(inverse(m), m) == RMatrix.identity(m.r)
        assert mat_mul(m, inverse(m)) == RMatrix.identity(m.r)
    with pytest.raises(RankError):
        inverse(RMatrix([[ONE, ONE], [ONE, ONE]]))


# ---------------------------------------------------------------------------
# LU decomposition


def test_lu_golden():
    rng = random.Random(13)
    for _ in range(15):
        r = rng.randint(1, 4)
        m = random_ring_matrix(rng, r, frac=True)
        try:
            b, cmat = lu_decompose(m)
        except PrincipalMinorError:
            continue
        assert mat_mul(b, cmat) == m
        for i in range(1, r + 1):
            assert b.entry(i, i) == ONE
            for j in range(i + 1, r + 1):
                assert b.entry(i, j) == ZERO
        assert cmat.is_upper_triangular()


def test_lu_of_upper_triangular_is_trivial():
    n = golden_n()
    b, cmat = lu_decompose(n)
    assert b == RMatrix.identity(4)
    assert cmat == n


def test_lu_vanishing_principal_minor():
    m = RMatrix([[ZERO, ONE], [ONE, ZERO]])
    with pytest.raises(PrincipalMinorError) as exc:
        lu_decompose(m)
    assert exc.value.k == 1


# ---------------------------------------------------------------------------
# admissibility


def test_mu_admissible_examples():
    mu = Partition((3, 1))
    ok = RMatrix([[ONE, ONE], [t(2), ONE]])          # ord(q_21) = 2 >= mu_1 - mu_2
    assert is_mu_admissible(ok, mu)
    short = RMatrix([[ONE, ONE], [t(1), ONE]])       # ord 1 < 2
    assert not is_mu_admissible(short, mu)
    not_unit = RMatrix([[t(1), ZERO], [ZERO, ONE]])  # det not a unit
    assert not is_mu_admissible(not_unit, mu)
    outside = RMatrix([[ONE, ONE / t(1)], [ZERO, ONE]])
    assert not is_mu_admissible(outside, mu)
    assert is_mu_admissible(RMatrix.identity(2), mu)


def test_mu_admissible_conjugation_stays_in_ring():
    # the defining property: D_mu Q D_mu^-1 is over the ring with unit det
    rng = random.Random(55)
    mu = Partition((4, 2, 1))
    d = diag_from_partition(mu, 3)
    for _ in range(20):
        rows = []
        for i in range(1, 4):
            row = []
            for j in range(1, 4):
                if i == j:
                    row.append(c(rng.randint(1, 5)))
                elif i > j:
                    row.append(c(rng.randint(-3, 3)) * t(mu.part(j) - mu.part(i)))
                else:
                    row.append(c(rng.randint(-3, 3)) * t(rng.randint(0, 2)))
            rows.append(row)
        q = RMatrix(rows)
        if not det(q).is_unit():
            continue
        assert is_mu_admissible(q, mu)
        conj = mat_mul(mat_mul(d, q), inverse(d))
        assert conj.is_over_ring()
        assert det(conj).is_unit()
