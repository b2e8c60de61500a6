"""Square matrices over the valued field, and the order-theoretic tools the
pair-reduction pipeline is built on.

Rows, columns and index sets are 1-based throughout the public interface.
An index set is a strictly increasing tuple of row or column indices; the
partial order I <= H compares componentwise (i_s <= h_s for every position).
The order of a minor is the valuation of its exact determinant, +infinity
when the minor vanishes.

Determinants are computed exactly: rows are first scaled by their
denominators so the work happens on polynomials, then cofactor expansion is
used for sizes below 4 and fraction-free Bareiss elimination from size 4 up.
``minor_order_table`` batches every (I, J) minor order of a matrix through a
shared-subminor expansion, which the verification and extraction code paths
rely on.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd as igcd

from .errors import InputError, NotInRingError, PrincipalMinorError, RankError
from .ring import (INFINITY, ONE, ZERO, RingElem, _padd, _pdivexact, _pmul,
                   _pscale)
from .tableaux import Partition, as_partition

_PONE = {0: 1}


# ---------------------------------------------------------------------------
# index sets


class IndexSet:
    """Strictly increasing tuple of 1-based indices."""

    __slots__ = ("indices",)

    def __init__(self, indices=()):
        idx = tuple(int(i) for i in indices)
        for i in idx:
            if i < 1:
                raise InputError(f"index sets are 1-based, got {i}")
        for a, b in zip(idx, idx[1:]):
            if a >= b:
                raise InputError(f"index set must be strictly increasing, got {idx}")
        self.indices = idx

    def __iter__(self):
        return iter(self.indices)

    def __len__(self):
        return len(self.indices)

    def __eq__(self, other):
        if isinstance(other, IndexSet):
            return self.indices == other.indices
        if isinstance(other, tuple):
            return self.indices == other
        return NotImplemented

    def __hash__(self):
        return hash(self.indices)

    def __le__(self, other):
        """Componentwise partial order; only sets of equal length compare."""
        other = IndexSet(other) if not isinstance(other, IndexSet) else other
        if len(self.indices) != len(other.indices):
            raise ValueError("only index sets of equal length are comparable")
        return all(a <= b for a, b in zip(self.indices, other.indices))

    def __repr__(self):
        return f"IndexSet({list(self.indices)})"

    def complement(self, r: int) -> "IndexSet":
        inside = set(self.indices)
        for i in self.indices:
            if i > r:
                raise InputError(f"index {i} outside range 1..{r}")
        return IndexSet(tuple(i for i in range(1, r + 1) if i not in inside))

    def meet(self, other) -> "IndexSet":
        """Componentwise minimum (the two sets must have equal length)."""
        other = IndexSet(other) if not isinstance(other, IndexSet) else other
        if len(self.indices) != len(other.indices):
            raise ValueError("componentwise minimum needs equal lengths")
        return IndexSet(tuple(min(a, b) for a, b in zip(self.indices, other.indices)))


def _as_tuple(indices) -> tuple:
    if isinstance(indices, IndexSet):
        return indices.indices
    t = tuple(int(i) for i in indices)
    for a, b in zip(t, t[1:]):
        if a >= b:
            raise InputError(f"index set must be strictly increasing, got {t}")
    if t and t[0] < 1:
        raise InputError(f"index sets are 1-based, got {t}")
    return t


def index_tuples(r: int, k: int) -> tuple:
    """All strictly increasing k-tuples inside 1..r."""
    return tuple(combinations(range(1, r + 1), k))


def tuples_below(iset) -> list:
    """All tuples H with h_s <= i_s componentwise (same length)."""
    iset = _as_tuple(iset)
    out = []

    def rec(pos, lo, prefix):
        if pos == len(iset):
            out.append(prefix)
            return
        for h in range(lo, iset[pos] + 1):
            rec(pos + 1, h + 1, prefix + (h,))

    rec(0, 1, ())
    return out


def tuples_above(iset, r: int) -> list:
    """All tuples H inside 1..r with h_s >= i_s componentwise (same length)."""
    iset = _as_tuple(iset)
    k = len(iset)
    out = []

    def rec(pos, lo, prefix):
        if pos == k:
            out.append(prefix)
            return
        hi = r - (k - pos - 1)
        for h in range(max(lo, iset[pos]), hi + 1):
            rec(pos + 1, h + 1, prefix + (h,))

    rec(0, 1, ())
    return out


# ---------------------------------------------------------------------------
# matrices


class RMatrix:
    """Immutable square matrix of exact field elements."""

    __slots__ = ("r", "entries")

    def __init__(self, rows):
        rows = tuple(tuple(_coerce_entry(e) for e in row) for row in rows)
        r = len(rows)
        if r < 1:
            raise InputError("matrices must have size at least 1")
        for row in rows:
            if len(row) != r:
                raise InputError(f"matrix must be square, got a row of length {len(row)} in size {r}")
        self.r = r
        self.entries = rows

    @staticmethod
    def identity(r: int) -> "RMatrix":
        return RMatrix([[ONE if i == j else ZERO for j in range(r)] for i in range(r)])

    @staticmethod
    def diagonal(elems) -> "RMatrix":
        elems = [_coerce_entry(e) for e in elems]
        r = len(elems)
        return RMatrix([[elems[i] if i == j else ZERO for j in range(r)] for i in range(r)])

    def entry(self, i: int, j: int) -> RingElem:
        """1-based access."""
        if not (1 <= i <= self.r and 1 <= j <= self.r):
            raise IndexError(f"entry ({i},{j}) outside 1..{self.r}")
        return self.entries[i - 1][j - 1]

    def __eq__(self, other):
        if not isinstance(other, RMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __repr__(self):
        rows = "\n ".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.entries)
        return f"RMatrix(\n {rows}\n)"

    def transpose(self) -> "RMatrix":
        return RMatrix([[self.entries[j][i] for j in range(self.r)] for i in range(self.r)])

    def is_over_ring(self) -> bool:
        """Every entry has non-negative order."""
        return all(e.in_ring() for row in self.entries for e in row)

    def is_upper_triangular(self) -> bool:
        return all(
            self.entries[i][j].is_zero() for i in range(self.r) for j in range(i)
        )

    def is_diagonal(self) -> bool:
        return all(
            self.entries[i][j].is_zero()
            for i in range(self.r) for j in range(self.r) if i != j
        )

    def to_json(self):
        return {"r": self.r, "entries": [[e.to_json() for e in row] for row in self.entries]}

    @staticmethod
    def from_json(obj) -> "RMatrix":
        if not isinstance(obj, dict) or "entries" not in obj:
            raise InputError(f"matrix must be an object with an 'entries' grid, got {obj!r}")
        grid = obj["entries"]
        if not isinstance(grid, list) or not all(isinstance(row, list) for row in grid):
            raise InputError("matrix 'entries' must be a list of rows")
        m = RMatrix([[RingElem.from_json(e) for e in row] for row in grid])
        if "r" in obj and obj["r"] != m.r:
            raise InputError(f"matrix declares r={obj['r']} but has {m.r} rows")
        return m


def _coerce_entry(e) -> RingElem:
    if isinstance(e, RingElem):
        return e
    return RingElem.const(e)


def mat_mul(a: RMatrix, b: RMatrix) -> RMatrix:
    if a.r != b.r:
        raise InputError(f"size mismatch in product: {a.r} vs {b.r}")
    r = a.r
    rows = []
    for i in range(r):
        arow = a.entries[i]
        out = []
        for j in range(r):
            acc = ZERO
            for k in range(r):
                x = arow[k]
                if x.is_zero():
                    continue
                y = b.entries[k][j]
                if y.is_zero():
                    continue
                acc = acc + x * y
            out.append(acc)
        rows.append(out)
    return RMatrix(rows)


def diag_from_partition(mu, r: int) -> RMatrix:
    """diag(t**mu_1, ..., t**mu_r); missing parts give exponent 0."""
    mu = as_partition(mu)
    if len(mu) > r:
        raise InputError(f"partition {mu.parts} does not fit in size {r}")
    return RMatrix.diagonal([RingElem.t_pow(mu.part(i)) for i in range(1, r + 1)])


# ---------------------------------------------------------------------------
# exact minors

def _cleared_grid(m: RMatrix):
    """Scale each row into integer-coefficient polynomial form.

    Returns (grid, shifts): grid[i][j] is a polynomial dict proportional to
    the row entry times the product of the row's distinct denominators (the
    whole row additionally scaled to integer coefficients, which changes no
    orders); shifts[i] is the order of the denominator product, which minor
    orders must subtract."""
    grid = []
    shifts = []
    for row in m.entries:
        uniq = []
        for e in row:
            d = e.den
            if max(d) > 0 and d not in uniq:
                uniq.append(d)
        if not uniq:
            cleared = [e.num for e in row]
            shifts.append(0)
        else:
            cleared = []
            for e in row:
                p = e.num
                for d in uniq:
                    if d != e.den:
                        p = _pmul(p, d)
                cleared.append(p)
            shifts.append(sum(min(d) for d in uniq))
        grid.append(_row_to_int(cleared))
    return grid, shifts


def _row_to_int(polys):
    """Scale a row of polynomials to integer coefficients with unit content.

    Row scalings by nonzero constants shift no orders, so minor-order grids
    may normalize freely; the smaller integers keep the expansions cheap."""
    lcm = 1
    g = 0
    for p in polys:
        for c in p.values():
            if isinstance(c, Fraction):
                d = c.denominator
                lcm = lcm * d // igcd(lcm, d)
    for p in polys:
        for c in p.values():
            g = igcd(g, int(c * lcm))
            if g == 1 and lcm == 1:
                return polys
    if g == 0 or (g == 1 and lcm == 1):
        return polys
    return [{d: int(c * lcm) // g for d, c in p.items()} for p in polys]


def _row_multiplier_poly(uniq):
    p = _PONE
    for d in uniq:
        p = _pmul(p, d)
    return p


def _poly_det_cofactor(sub):
    k = len(sub)
    if k == 1:
        return dict(sub[0][0])
    if k == 2:
        return _padd(_pmul(sub[0][0], sub[1][1]), _pmul(sub[0][1], sub[1][0]), -1)
    # k == 3
    acc: dict = {}
    for j in range(3):
        e = sub[0][j]
        if not e:
            continue
        cols = [c for c in range(3) if c != j]
        m2 = _padd(_pmul(sub[1][cols[0]], sub[2][cols[1]]),
                   _pmul(sub[1][cols[1]], sub[2][cols[0]]), -1)
        acc = _padd(acc, _pmul(e, m2), 1 if j % 2 == 0 else -1)
    return acc


def _poly_det_bareiss(sub):
    """Fraction-free elimination; exact divisions stay in the polynomial ring."""
    k = len(sub)
    a = [list(row) for row in sub]
    prev = _PONE
    sign = 1
    for col in range(k - 1):
        piv_row = None
        for i in range(col, k):
            if a[i][col]:
                piv_row = i
                break
        if piv_row is None:
            return {}
        if piv_row != col:
            a[col], a[piv_row] = a[piv_row], a[col]
            sign = -sign
        piv = a[col][col]
        for i in range(col + 1, k):
            for j in range(col + 1, k):
                num = _padd(_pmul(piv, a[i][j]), _pmul(a[i][col], a[col][j]), -1)
                a[i][j] = _pdivexact(num, prev) if num else {}
            a[i][col] = {}
        prev = piv
    out = a[k - 1][k - 1]
    return _pscale(out, sign) if sign < 0 else out


def _poly_det(sub):
    if len(sub) >= 4:
        return _poly_det_bareiss(sub)
    return _poly_det_cofactor(sub)


def _validated_minor_indices(m, rows, cols):
    rows, cols = _as_tuple(rows), _as_tuple(cols)
    if len(rows) != len(cols):
        raise InputError(f"minor needs equally long row and column sets, got {rows} and {cols}")
    if rows and rows[-1] > m.r:
        raise InputError(f"row index {rows[-1]} outside 1..{m.r}")
    if cols and cols[-1] > m.r:
        raise InputError(f"column index {cols[-1]} outside 1..{m.r}")
    return rows, cols


def minor(m: RMatrix, rows, cols) -> RingElem:
    """Exact determinant of the submatrix (empty minor = 1)."""
    rows, cols = _validated_minor_indices(m, rows, cols)
    if not rows:
        return ONE
    correction = ONE
    sub = []
    for i in rows:
        row = [m.entries[i - 1][j - 1] for j in cols]
        uniq = []
        for e in row:
            if max(e.den) > 0 and e.den not in uniq:
                uniq.append(e.den)
        if uniq:
            cleared = []
            for e in row:
                p = e.num
                for d in uniq:
                    if d != e.den:
                        p = _pmul(p, d)
                cleared.append(p)
            sub.append(cleared)
            correction = correction * RingElem(_row_multiplier_poly(uniq), _PONE)
        else:
            sub.append([e.num for e in row])
    det_poly = _poly_det(sub)
    if not det_poly:
        return ZERO
    value = RingElem(det_poly, _PONE)
    if correction == ONE:
        return value
    return value / correction


def minor_order(m: RMatrix, rows, cols):
    """Order of the minor; +infinity when it vanishes."""
    v = minor(m, rows, cols)
    return v.valuation()


def det(m: RMatrix) -> RingElem:
    full = tuple(range(1, m.r + 1))
    return minor(m, full, full)


def minor_order_table(m: RMatrix, cap=None) -> dict:
    """Orders of every square minor, keyed by (row tuple, column tuple).

    Includes the empty minor (order 0).  Shared subminors are expanded once,
    so the whole table costs little more than the single full determinant.

    With ``cap`` set, everything is computed modulo t^(cap+1): orders at most
    cap are exact, larger ones collapse to infinity.  Minors that vanish
    identically still report infinity either way, so a cap of at least the
    largest finite order that matters makes the truncated table authoritative.
    """
    r = m.r
    grid, shifts = _cleared_grid(m)
    if cap is None:
        acc_cap = None
    else:
        # row clearing multiplies minors by the denominator products, whose
        # orders are the recorded shifts; keep enough terms to see past them
        acc_cap = cap + sum(shifts)
        grid = [[{d: c for d, c in e.items() if d <= acc_cap} for e in row]
                for row in grid]
    orders = {((), ()): 0}
    prev = {((), ()): {0: 1}}
    all_idx = range(1, r + 1)
    for k in range(1, r + 1):
        cur = {}
        row_sets = list(combinations(all_idx, k))
        col_sets = row_sets
        for I in row_sets:
            i0 = I[0]
            rest = I[1:]
            row = grid[i0 - 1]
            shift_i = sum(shifts[i - 1] for i in I)
            for J in col_sets:
                acc: dict = {}
                sign = 1
                for pos in range(k):
                    j = J[pos]
                    e = row[j - 1]
                    if e:
                        sub = prev[(rest, J[:pos] + J[pos + 1:])]
                        if sub:
                            if acc_cap is None:
                                for d1, c1 in e.items():
                                    for d2, c2 in sub.items():
                                        d = d1 + d2
                                        s = acc.get(d, 0) + sign * c1 * c2
                                        if s:
                                            acc[d] = s
                                        else:
                                            del acc[d]
                            else:
                                for d1, c1 in e.items():
                                    for d2, c2 in sub.items():
                                        d = d1 + d2
                                        if d > acc_cap:
                                            continue
                                        s = acc.get(d, 0) + sign * c1 * c2
                                        if s:
                                            acc[d] = s
                                        else:
                                            del acc[d]
                    sign = -sign
                cur[(I, J)] = acc
                orders[(I, J)] = (min(acc) - shift_i) if acc else INFINITY
        prev = cur
    return orders


class _MinorValues:
    """Memoized exact minors of one matrix, for LU quotients and inverses."""

    def __init__(self, m: RMatrix):
        self.m = m
        self.memo = {((), ()): ONE}

    def value(self, rows: tuple, cols: tuple) -> RingElem:
        key = (rows, cols)
        got = self.memo.get(key)
        if got is not None:
            return got
        i0 = rows[0]
        rest = rows[1:]
        acc = ZERO
        sign = 1
        for pos, j in enumerate(cols):
            e = self.m.entries[i0 - 1][j - 1]
            if not e.is_zero():
                sub = self.value(rest, cols[:pos] + cols[pos + 1:])
                if not sub.is_zero():
                    term = e * sub
                    acc = acc + (term if sign > 0 else -term)
            sign = -sign
        self.memo[key] = acc
        return acc


def inverse(m: RMatrix) -> RMatrix:
    """Exact inverse over the field (adjugate divided by the determinant)."""
    r = m.r
    mv = _MinorValues(m)
    full = tuple(range(1, r + 1))
    d = mv.value(full, full)
    if d.is_zero():
        raise RankError("matrix is singular, no inverse")
    rows = []
    for i in range(1, r + 1):
        out = []
        for j in range(1, r + 1):
            sub = mv.value(tuple(x for x in full if x != j), tuple(x for x in full if x != i))
            c = sub / d
            if (i + j) % 2:
                c = -c
            out.append(c)
        rows.append(out)
    return RMatrix(rows)


# ---------------------------------------------------------------------------
# invariant partitions (diagonal reduction over the valuation ring)


def _require_over_ring(m: RMatrix, what: str):
    if not m.is_over_ring():
        raise NotInRingError(f"{what} must have entries of non-negative order")


def invariant_partition(m: RMatrix) -> Partition:
    """Decreasing orders of the diagonal form of m under unimodular row and
    column operations over the valuation ring.

    The classic reduction: pick an entry of minimal order (first in row-major
    order), it divides the rest of its row and column exactly, clear both and
    recurse on the remaining block.  Requires full rank and entries of
    non-negative order.
    """
    _require_over_ring(m, "matrix")
    r = m.r
    work = [list(row) for row in m.entries]
    orders = []
    for k in range(r):
        best = None
        for i in range(k, r):
            for j in range(k, r):
                e = work[i][j]
                if e.is_zero():
                    continue
                v = e.valuation()
                if best is None or v < best[0]:
                    best = (v, i, j)
        if best is None:
            raise RankError("matrix is rank deficient")
        v, bi, bj = best
        if bi != k:
            work[k], work[bi] = work[bi], work[k]
        if bj != k:
            for row in work:
                row[k], row[bj] = row[bj], row[k]
        piv = work[k][k]
        # the pivot has minimal order, so these quotients stay in the ring;
        # clearing the pivot row afterwards would not touch the trailing block
        for i in range(k + 1, r):
            f = work[i][k] / piv
            if not f.is_zero():
                work[i] = [a - f * b for a, b in zip(work[i], work[k])]
        orders.append(v)
    return Partition(tuple(reversed(orders)))


def invariant_partition_oracle(m: RMatrix) -> Partition:
    """Same partition by a different route: the minimal order among k-by-k
    minors is the k-th partial sum of the increasing invariant orders."""
    _require_over_ring(m, "matrix")
    table = minor_order_table(m)
    r = m.r
    g = [0]
    for k in range(1, r + 1):
        best = INFINITY
        for (I, J), v in table.items():
            if len(I) == k and v < best:
                best = v
        if best is INFINITY:
            raise RankError("matrix is rank deficient")
        g.append(best)
    increments = [g[k] - g[k - 1] for k in range(1, r + 1)]
    return Partition(tuple(reversed(increments)))


def _is_exact_power_diagonal_decreasing(m: RMatrix) -> bool:
    if not m.is_diagonal():
        return False
    prev = None
    for i in range(1, m.r + 1):
        e = m.entry(i, i)
        if e.is_zero():
            return False
        v = e.valuation()
        if e != RingElem.t_pow(v):
            return False
        if prev is not None and v > prev:
            return False
        prev = v
    return True


def _clearing_unit(elems) -> RingElem:
    """A valuation-zero polynomial u such that e * u has no polynomial
    denominator for every e in elems.  Such a u is a unit of the ring, so
    scaling a row or column by it is an admissible transformation."""
    u = ONE
    for e in elems:
        if e.is_zero():
            continue
        den = (e * u).den
        if len(den) == 1 and den.get(0) == 1:
            continue
        u = u * RingElem(dict(den), _PONE)
    v = u.valuation()
    if v:
        u = u / RingElem.t_pow(v)
    return u


def _content_unit(elems) -> RingElem:
    """1/g for the rational content g of the numerators of elems: the constant
    (unit) scaling that makes all coefficients integers with no common factor.
    Keeps fraction-free eliminations from blowing up coefficient sizes."""
    g_num = 0
    g_den = 1
    for e in elems:
        for coeff in e.num.values():
            f = Fraction(coeff)
            g_num = igcd(g_num, f.numerator)
            g_den = g_den * f.denominator // igcd(g_den, f.denominator)
    if g_num == 0 or (g_num == 1 and g_den == 1):
        return ONE
    return RingElem.const(Fraction(g_den, g_num))


def truncated_matrix(m: RMatrix, cap: int) -> RMatrix:
    """The matrix with polynomial entries cut off after degree cap.

    Congruent to m modulo t^(cap+1), which products with ring elements
    preserve, so minor orders up to cap may be read from products built on
    the truncation.  Entries with a non-constant denominator are kept whole.
    """
    rows = []
    for row in m.entries:
        out = []
        for e in row:
            if len(e.den) == 1 and 0 in e.den and e.num and max(e.num) > cap:
                num = {d: c for d, c in e.num.items() if d <= cap}
                out.append(RingElem(num, dict(e.den)) if num else ZERO)
            else:
                out.append(e)
        rows.append(out)
    return RMatrix(rows)


def smith_transforms(m: RMatrix):
    """Invertible P, Q over the valuation ring with P @ m = D @ Q, where D is
    the diagonal of decreasing t-powers carrying the invariant partition.

    Returns (P, Q, D) with D = diag_from_partition(invariant_partition(m)).
    A matrix that is already such a diagonal returns identity transforms.
    Shears divide by the pivot, whose unit part is invertible, so entries stay
    in reduced form and never grow past ratios of minors of the input.
    """
    _require_over_ring(m, "matrix")
    r = m.r
    if _is_exact_power_diagonal_decreasing(m):
        eye = RMatrix.identity(r)
        return eye, eye, m

    work = [list(row) for row in m.entries]
    p = [list(row) for row in RMatrix.identity(r).entries]
    q = [list(row) for row in RMatrix.identity(r).entries]

    for k in range(r):
        best = None
        for i in range(k, r):
            for j in range(k, r):
                e = work[i][j]
                if e.is_zero():
                    continue
                v = e.valuation()
                if best is None or v < best[0]:
                    best = (v, i, j)
        if best is None:
            raise RankError("matrix is rank deficient")
        _, bi, bj = best
        if bi != k:
            work[k], work[bi] = work[bi], work[k]
            p[k], p[bi] = p[bi], p[k]
        if bj != k:
            for row in work:
                row[k], row[bj] = row[bj], row[k]
            q[k], q[bj] = q[bj], q[k]
        piv = work[k][k]
        a_val = piv.valuation()
        t_a = RingElem.t_pow(a_val)
        p0 = piv / t_a  # valuation-zero part of the pivot, a unit
        for i in range(k + 1, r):
            e = work[i][k]
            if not e.is_zero():
                # row_i -= (e / piv) * row_k; the pivot has minimal valuation
                # in the submatrix, so the multiplier lies in the ring
                w = e / piv
                work[i] = [x - w * y for x, y in zip(work[i], work[k])]
                work[i][k] = ZERO
                p[i] = [x - w * y for x, y in zip(p[i], p[k])]
        if p0 != ONE:
            # col_k is zero outside the pivot now, so dividing it by the unit
            # p0 just normalizes the pivot to t^a; on q this is row_k *= p0
            work[k][k] = t_a
            q[k] = [p0 * x for x in q[k]]
        for j in range(k + 1, r):
            e = work[k][j]
            if not e.is_zero():
                # col_j -= (e / t^a) * col_k only changes row k; the inverse
                # op on q is the shear row_k += (e / t^a) * row_j
                f = e / t_a
                work[k][j] = ZERO
                q[k] = [x + f * y for x, y in zip(q[k], q[j])]

    # reverse to decreasing order: conjugate by the reversal permutation
    work = [row[::-1] for row in work[::-1]]
    p = p[::-1]
    q = q[::-1]

    return RMatrix(p), RMatrix(q), RMatrix(work)


# ---------------------------------------------------------------------------
# LU decomposition and admissibility


def lu_decompose(a: RMatrix):
    """A = B @ C with B unit lower triangular and C upper triangular.

    Entries come from quotients of bordered leading minors, so every leading
    principal minor must be nonzero; the first k where it vanishes is
    reported.  The diagonal of B is normalized to 1.
    """
    r = a.r
    mv = _MinorValues(a)
    lead = tuple(range(1, r + 1))
    d = [ONE]
    for k in range(1, r + 1):
        v = mv.value(lead[:k], lead[:k])
        if v.is_zero():
            raise PrincipalMinorError(k)
        d.append(v)
    b_rows = []
    c_rows = []
    for g in range(1, r + 1):
        b_rows.append([
            (mv.value(lead[:k - 1] + (g,), lead[:k]) / d[k]) if g >= k else ZERO
            for k in range(1, r + 1)
        ])
    for k in range(1, r + 1):
        c_rows.append([
            (mv.value(lead[:k], lead[:k - 1] + (g,)) / d[k - 1]) if g >= k else ZERO
            for g in range(1, r + 1)
        ])
    return RMatrix(b_rows), RMatrix(c_rows)


def is_mu_admissible(q: RMatrix, mu) -> bool:
    """True when q is invertible over the valuation ring and stays so after
    conjugation by the diagonal of t**mu, i.e. ord(q_ij) >= mu_j - mu_i."""
    mu = as_partition(mu)
    if len(mu) > q.r:
        return False
    r = q.r
    for i in range(1, r + 1):
        for j in range(1, r + 1):
            e = q.entry(i, j)
            if e.is_zero():
                continue
            v = e.valuation()
            if v < 0 or v + mu.part(i) - mu.part(j) < 0:
                return False
    return det(q).is_unit()
