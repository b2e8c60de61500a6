"""Partitions, triangular fillings and the Littlewood-Richardson conditions.

A filling of size r is a triangular array {k_ij : 1 <= i <= j <= r} of
integers.  Given partitions mu (inner shape), nu (content) and lam (outer
shape) it is a valid skew filling when:

  LR1  row sums match the skew rows and content sums match nu:
         mu_j + k_1j + ... + k_jj = lam_j   and   k_ii + ... + k_ir = nu_i
  LR2  all entries are non-negative
  LR3  columns are strict: the row profile after stage i fits strictly
       under the previous row's profile after stage i-1
  LR4  the reading-word (ballot) condition:
         sum_{s=i+1..j+1} k_{i+1,s} <= sum_{s=i..j} k_{i,s}

The stage profiles lam^(i)_j = mu_j + k_1j + ... + k_ij interpolate from mu
to lam; row j of the skew diagram receives its entries in rows i <= j only.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError


class Partition:
    """A weakly decreasing tuple of non-negative integers.

    Trailing zeros are stripped, so equality ignores them.  ``part(k)`` is
    1-based and returns 0 beyond the length.
    """

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        parts = tuple(int(p) for p in parts)
        for p in parts:
            if p < 0:
                raise InputError(f"partition parts must be non-negative, got {p}")
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise InputError(f"partition parts must be weakly decreasing, got {parts}")
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        self.parts = parts

    def part(self, k: int) -> int:
        if k < 1:
            raise IndexError("partition parts are 1-based")
        return self.parts[k - 1] if k <= len(self.parts) else 0

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def weight(self) -> int:
        return sum(self.parts)

    def contains(self, other: "Partition") -> bool:
        """True when other fits inside self part by part."""
        return all(other.part(k) <= self.part(k) for k in range(1, len(other) + 1))

    def padded(self, r: int) -> tuple:
        if len(self.parts) > r:
            raise InputError(f"partition {self.parts} has more than {r} parts")
        return self.parts + (0,) * (r - len(self.parts))

    def sum_over(self, indices) -> int:
        """Sum of the selected parts (1-based indices, 0 beyond the length)."""
        return sum(self.part(i) for i in indices)

    def __eq__(self, other):
        if isinstance(other, Partition):
            return self.parts == other.parts
        if isinstance(other, (tuple, list)):
            return self == Partition(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"Partition({list(self.parts)})"

    def to_json(self):
        return list(self.parts)

    @staticmethod
    def from_json(obj) -> "Partition":
        if not isinstance(obj, list) or not all(isinstance(p, int) for p in obj):
            raise InputError(f"partition must be a list of integers, got {obj!r}")
        return Partition(obj)


def as_partition(x) -> Partition:
    return x if isinstance(x, Partition) else Partition(x)


class Filling:
    """Triangular integer array; row j holds (k_1j, ..., k_jj)."""

    __slots__ = ("r", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        for j, row in enumerate(rows, start=1):
            if len(row) != j:
                raise InputError(f"filling row {j} must have {j} entries, got {len(row)}")
        self.rows = rows
        self.r = len(rows)

    def entry(self, i: int, j: int) -> int:
        """k_ij for 1 <= i <= j <= r."""
        if not (1 <= i <= j <= self.r):
            raise IndexError(f"entry ({i},{j}) outside triangular range 1 <= i <= j <= {self.r}")
        return self.rows[j - 1][i - 1]

    def row_sum(self, j: int) -> int:
        return sum(self.rows[j - 1])

    def content(self) -> tuple:
        """Total multiplicity of each label: (sum_j k_1j, sum_j k_2j, ...)."""
        return tuple(sum(self.rows[j - 1][i - 1] for j in range(i, self.r + 1))
                     for i in range(1, self.r + 1))

    def __eq__(self, other):
        if not isinstance(other, Filling):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Filling({[list(r) for r in self.rows]})"

    def to_json(self):
        return {"r": self.r, "rows": [list(row) for row in self.rows]}

    @staticmethod
    def from_json(obj) -> "Filling":
        if not isinstance(obj, dict) or "rows" not in obj:
            raise InputError(f"filling must be an object with a 'rows' list, got {obj!r}")
        rows = obj["rows"]
        if not isinstance(rows, list) or not all(
            isinstance(row, list) and all(isinstance(v, int) for v in row) for row in rows
        ):
            raise InputError("filling 'rows' must be a list of integer lists")
        f = Filling(rows)
        if "r" in obj and obj["r"] != f.r:
            raise InputError(f"filling declares r={obj['r']} but has {f.r} rows")
        return f


@dataclass(frozen=True)
class LRSequence:
    """The interpolating profiles mu = lam^(0), lam^(1), ..., lam^(r) = lam."""

    steps: tuple

    def __iter__(self):
        return iter(self.steps)

    def stage(self, i: int) -> Partition:
        return self.steps[i]


def sequence_from_filling(filling: Filling, mu) -> LRSequence:
    """Stage profiles lam^(i)_j = mu_j + k_1j + ... + k_{min(i,j),j}.

    Raises InputError when some stage is not weakly decreasing, i.e. the
    filling does not even define a chain of partitions.
    """
    mu = as_partition(mu)
    r = filling.r
    steps = []
    for i in range(0, r + 1):
        row = []
        for j in range(1, r + 1):
            v = mu.part(j) + sum(filling.entry(s, j) for s in range(1, min(i, j) + 1))
            row.append(v)
        for a, b in zip(row, row[1:]):
            if a < b:
                raise InputError(
                    f"stage {i} profile {row} is not weakly decreasing; invalid filling"
                )
        steps.append(Partition(row))
    return LRSequence(tuple(steps))


@dataclass(frozen=True)
class ConditionReport:
    ok: bool
    first_violation: tuple | None = None


@dataclass(frozen=True)
class FillingReport:
    lr1: ConditionReport
    lr2: ConditionReport
    lr3: ConditionReport
    lr4: ConditionReport

    @property
    def valid(self) -> bool:
        return self.lr1.ok and self.lr2.ok and self.lr3.ok and self.lr4.ok

    def failure_summary(self) -> str:
        parts = []
        for name in ("lr1", "lr2", "lr3", "lr4"):
            c = getattr(self, name)
            if not c.ok:
                parts.append(f"{name} at {c.first_violation}")
        return "; ".join(parts)

    def to_json(self):
        def cj(c):
            return {"ok": c.ok, "first_violation": list(c.first_violation) if c.first_violation else None}
        return {"valid": self.valid, "lr1": cj(self.lr1), "lr2": cj(self.lr2),
                "lr3": cj(self.lr3), "lr4": cj(self.lr4)}


def validate_filling(filling: Filling, mu, nu, lam) -> FillingReport:
    """Check LR1-LR4 for the triple (mu, nu, lam); reports the first
    violating cell per condition rather than stopping at the first failure."""
    mu, nu, lam = as_partition(mu), as_partition(nu), as_partition(lam)
    r = filling.r
    if len(lam) > r:
        raise InputError(f"outer shape has {len(lam)} parts but the filling has size {r}")
    if len(mu) > len(lam) or len(nu) > len(lam):
        raise InputError("inner shape and content must not be longer than the outer shape")

    # LR1: row sums then content sums
    lr1 = None
    for j in range(1, r + 1):
        if mu.part(j) + filling.row_sum(j) != lam.part(j):
            lr1 = ("row", j)
            break
    if lr1 is None:
        content = filling.content()
        for i in range(1, r + 1):
            if content[i - 1] != nu.part(i):
                lr1 = ("content", i)
                break

    lr2 = None
    for j in range(1, r + 1):
        for i in range(1, j + 1):
            if filling.entry(i, j) < 0:
                lr2 = (i, j)
                break
        if lr2:
            break

    # LR3: lam^(i)_j <= lam^(i-1)_{j-1} for 2 <= j <= r, 1 <= i <= j
    lr3 = None
    prefix = [None] + [[mu.part(j)] for j in range(1, r + 1)]  # prefix[j][i] = lam^(i)_j
    for j in range(1, r + 1):
        for i in range(1, j + 1):
            prefix[j].append(prefix[j][i - 1] + filling.entry(i, j))
    for j in range(2, r + 1):
        for i in range(1, j + 1):
            if prefix[j][min(i, j)] > prefix[j - 1][min(i - 1, j - 1)]:
                lr3 = (i, j)
                break
        if lr3:
            break

    # LR4: sum_{s=i+1..j+1} k_{i+1,s} <= sum_{s=i..j} k_{i,s} for i <= j <= r-1
    lr4 = None
    for i in range(1, r):
        for j in range(i, r):
            upper = sum(filling.entry(i, s) for s in range(i, j + 1))
            lower = sum(filling.entry(i + 1, s) for s in range(i + 1, j + 2))
            if lower > upper:
                lr4 = (i, j)
                break
        if lr4:
            break

    mk = lambda v: ConditionReport(v is None, v)
    return FillingReport(mk(lr1), mk(lr2), mk(lr3), mk(lr4))


def enumerate_fillings(mu, nu, lam) -> list:
    """All valid fillings for (mu, nu, lam), by row-wise backtracking.

    The filling size is the number of parts of lam.  Returns [] whenever the
    weights disagree or mu does not fit inside lam.
    """
    mu, nu, lam = as_partition(mu), as_partition(nu), as_partition(lam)
    r = len(lam)
    if mu.weight() + nu.weight() != lam.weight():
        return []
    if not lam.contains(mu):
        return []
    if len(nu) > r:
        return []

    mu_p = mu.padded(r)
    lam_p = lam.padded(r)
    nu_p = nu.padded(r)
    row_budget = [lam_p[j] - mu_p[j] for j in range(r)]

    rows: list[list[int]] = []
    content_left = list(nu_p)
    results: list[Filling] = []

    def _lr4_row_ok(j):
        # completing row j settles the word condition at column index j-1:
        # sum_{s=i+1..j} k_{i+1,s} <= sum_{s=i..j-1} k_{i,s}
        if j < 2:
            return True
        for i in range(1, j):
            upper = sum(rows[s - 1][i - 1] for s in range(i, j))
            lower = sum(rows[s - 1][i] for s in range(i + 1, j + 1))
            if lower > upper:
                return False
        return True

    def backtrack(j):
        if j > r:
            if all(v == 0 for v in content_left):
                results.append(Filling([tuple(row) for row in rows]))
            return
        budget = row_budget[j - 1]
        # stage profile of the previous row: prev_prefix[i] = lam^(i)_{j-1}
        prev_prefix = None
        if j >= 2:
            prev_prefix = [mu_p[j - 2]]
            for s, v in enumerate(rows[j - 2], start=1):
                prev_prefix.append(prev_prefix[s - 1] + v)
        row = [0] * j
        rows.append(row)

        def place(i, left, profile):
            # profile = mu_j + entries placed so far = lam^(i-1)_j
            if i == j:
                v = left
                ok = 0 <= v <= content_left[i - 1]
                if ok and prev_prefix is not None and profile + v > prev_prefix[i - 1]:
                    ok = False
                if ok:
                    row[i - 1] = v
                    content_left[i - 1] -= v
                    if _lr4_row_ok(j):
                        backtrack(j + 1)
                    content_left[i - 1] += v
                    row[i - 1] = 0
                return
            cap = min(left, content_left[i - 1])
            if prev_prefix is not None:
                cap = min(cap, prev_prefix[i - 1] - profile)
            for v in range(cap + 1):
                row[i - 1] = v
                content_left[i - 1] -= v
                place(i + 1, left - v, profile + v)
                content_left[i - 1] += v
                row[i - 1] = 0

        if budget >= 0:
            place(1, budget, mu_p[j - 1])
        rows.pop()

    backtrack(1)
    return results


def count_fillings(mu, nu, lam) -> int:
    return len(enumerate_fillings(mu, nu, lam))


def render_skew(filling: Filling, mu, lam) -> str:
    """Fixed-width text diagram: row j shows mu_j blank cells then the labels
    of row j in weakly increasing order."""
    mu, lam = as_partition(mu), as_partition(lam)
    r = filling.r
    width = len(str(r)) if r else 1
    blank = "." * width
    lines = []
    for j in range(1, r + 1):
        cells = [blank] * mu.part(j)
        for i in range(1, j + 1):
            cells.extend([str(i).rjust(width)] * filling.entry(i, j))
        expected = lam.part(j)
        if expected and len(cells) != expected:
            raise InputError(
                f"row {j} renders {len(cells)} cells but the outer shape has {expected}"
            )
        lines.append(" ".join(cells))
    return "\n".join(lines)


def iter_partitions(weight: int, max_len: int, max_part: int):
    """All partitions of the given weight with bounded length and part size."""
    def rec(remaining, slots, cap, prefix):
        if remaining == 0:
            yield Partition(prefix)
            return
        if slots == 0:
            return
        top = min(cap, remaining)
        for p in range(top, 0, -1):
            yield from rec(remaining - p, slots - 1, p, prefix + (p,))
    if weight < 0:
        return
    yield from rec(weight, max_len, max_part, ())


def random_partition(rng, max_len: int, max_part: int) -> Partition:
    """Quick random partition: each part uniform under the previous one."""
    parts = []
    cap = max_part
    for _ in range(max_len):
        p = rng.randint(0, cap)
        if p == 0:
            break
        parts.append(p)
        cap = p
    return Partition(parts)
