"""Forward construction: turn a valid LR filling into a factored matrix pair.

Each label i of the filling contributes one bidiagonal factor
N_i = identity_(i-1) (+) T_i, where T_i has diagonal t^k_ii, ..., t^k_ir and
ones on the superdiagonal.  With M = diag(t^mu_1, ..., t^mu_r) the partial
products satisfy

    inv(M) = mu,
    inv(N_1 ... N_i) = (nu_1, ..., nu_i),
    inv(M N_1 ... N_i) = the i-th stage of the filling's shape sequence,

which is what makes (M, N_1...N_r) a realization of the triple (mu, nu, lam).
``realize`` recomputes all of these invariant partitions and refuses to
return a pair that does not check out.
"""

from __future__ import annotations

from .errors import InputError, RetriesExhaustedError, VerificationError
from .generic import MatrixPair
from .matrix import (RMatrix, diag_from_partition, invariant_partition,
                     mat_mul)
from .ring import ONE, ZERO, RingElem
from .tableaux import (Filling, Partition, as_partition, enumerate_fillings,
                       iter_partitions, random_partition,
                       sequence_from_filling, validate_filling)


class FactoredRealization:
    """M, the factors N_1..N_r, and their product N."""

    __slots__ = ("m", "factors", "n", "mu", "nu", "lam", "filling", "stages")

    def __init__(self, m, factors, n, mu, nu, lam, filling, stages):
        self.m = m
        self.factors = tuple(factors)
        self.n = n
        self.mu = mu
        self.nu = nu
        self.lam = lam
        self.filling = filling
        self.stages = tuple(stages)

    @property
    def r(self) -> int:
        return self.m.r

    def pair(self) -> MatrixPair:
        return MatrixPair(self.m, self.n)

    def to_json(self):
        return {
            "M": self.m.to_json(),
            "factors": [f.to_json() for f in self.factors],
            "N": self.n.to_json(),
            "mu": self.mu.to_json(),
            "nu": self.nu.to_json(),
            "lambda": self.lam.to_json(),
            "filling": self.filling.to_json(),
            "stages": [s.to_json() for s in self.stages],
        }


def build_factor(filling: Filling, i: int, r: int) -> RMatrix:
    """The block factor for label i: identity above, T_i from row position i."""
    if not 1 <= i <= r:
        raise InputError(f"factor index {i} outside 1..{r}")
    if filling.r != r:
        raise InputError(f"filling has {filling.r} rows, expected {r}")
    rows = []
    for a in range(1, r + 1):
        row = []
        for b in range(1, r + 1):
            if a < i or b < i:
                row.append(ONE if a == b else ZERO)
            elif a == b:
                row.append(RingElem.t_pow(filling.entry(i, a)))
            elif b == a + 1:
                row.append(ONE)
            else:
                row.append(ZERO)
        rows.append(row)
    return RMatrix(rows)


def realize(filling: Filling, mu, verify: bool = True) -> FactoredRealization:
    """Build (M, N_1..N_r) for the filling over the base shape mu.

    With verify on (the default), every partial-product invariant partition
    is recomputed exactly; a mismatch raises VerificationError, since it can
    only come from an arithmetic bug, not from valid input.
    """
    mu = as_partition(mu)
    r = filling.r
    if r == 0:
        raise InputError("filling must have at least one row")
    if len(mu) > r:
        raise InputError(f"mu has {len(mu)} parts but the filling only {r} rows")

    try:
        nu = Partition(filling.content())
    except InputError as exc:
        raise InputError(f"filling content is not a partition: {exc}") from exc
    seq = sequence_from_filling(filling, mu)
    lam = seq.stage(r)
    report = validate_filling(filling, mu, nu, lam)
    if not report.valid:
        raise InputError(f"not a valid LR filling: {report.failure_summary()}")

    factors = [build_factor(filling, i, r) for i in range(1, r + 1)]
    m = diag_from_partition(mu, r)
    n = factors[0]
    prefixes = [n]
    for f in factors[1:]:
        n = mat_mul(n, f)
        prefixes.append(n)

    if verify:
        if invariant_partition(m) != mu:
            raise VerificationError("diagonal first component lost its invariant partition")
        content = nu.padded(r)
        for i in range(1, r + 1):
            got_n = invariant_partition(prefixes[i - 1])
            want_n = Partition(content[:i])
            if got_n != want_n:
                raise VerificationError(
                    f"partial product {i}: invariant partition {got_n} != {want_n}")
            got_mn = invariant_partition(mat_mul(m, prefixes[i - 1]))
            if got_mn != seq.stage(i):
                raise VerificationError(
                    f"partial product {i} with M: invariant partition {got_mn} "
                    f"!= stage {seq.stage(i)}")

    return FactoredRealization(m, factors, n, mu, nu, lam, filling,
                               [seq.stage(i) for i in range(0, r + 1)])


def random_filling(rng, r_max: int = 4, part_max: int = 6):
    """Sample (filling, mu, nu, lam): random mu and nu within the bounds,
    then a random compatible lam, then a uniform filling of that triple."""
    if r_max < 1 or part_max < 1:
        raise InputError("sampling bounds must be at least 1")
    for _ in range(200):
        mu = random_partition(rng, r_max, part_max)
        nu = random_partition(rng, r_max, part_max)
        w = mu.weight() + nu.weight()
        if w == 0:
            continue
        candidates = [lam for lam in iter_partitions(w, r_max, w)
                      if lam.contains(mu) and len(lam) >= len(nu)]
        rng.shuffle(candidates)
        for lam in candidates:
            fillings = enumerate_fillings(mu, nu, lam)
            if fillings:
                return rng.choice(fillings), mu, nu, lam
    raise RetriesExhaustedError(200, "no triple with a valid filling found")
