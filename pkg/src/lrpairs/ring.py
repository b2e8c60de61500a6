"""Exact scalar arithmetic valued by the order of vanishing at t = 0.

The working field is Q(t), rational functions in one variable with rational
coefficients.  Elements with non-negative order form a discrete valuation
ring with uniformizer t and residue field Q; ``valuation`` is the order, the
zero element gets the sentinel +infinity.  ``RingElem`` stores a reduced
fraction of polynomials with a monic denominator, so equality, order and
residue are canonical and every operation is exact.

Polynomials are plain dicts mapping degree -> nonzero coefficient (int or
Fraction); sparse on purpose, since most matrix entries in this package are
short sums of t-powers.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import gcd as _igcd

from .errors import InputError, NotInRingError

INFINITY = math.inf

_PZERO: dict = {}
_PONE = {0: 1}


# ---------------------------------------------------------------------------
# polynomial helpers (dicts degree -> coefficient, zero coefficients removed)

def _padd(a, b, sign=1):
    out = dict(a)
    for d, c in b.items():
        s = out.get(d, 0) + sign * c
        if s:
            out[d] = s
        else:
            out.pop(d, None)
    return out


def _pmul(a, b):
    if not a or not b:
        return {}
    if len(b) < len(a):
        a, b = b, a
    out = {}
    for d1, c1 in a.items():
        for d2, c2 in b.items():
            d = d1 + d2
            s = out.get(d, 0) + c1 * c2
            if s:
                out[d] = s
            else:
                del out[d]
    return out


def _pscale(a, c):
    if not c:
        return {}
    return {d: cc * c for d, cc in a.items()}


def _pord(a):
    return min(a) if a else None


def _pdeg(a):
    return max(a) if a else None


def _pshift(a, k):
    """Multiply by t**k (k may be negative when divisibility is known)."""
    return {d + k: c for d, c in a.items()}


def _pdivmod(a, b):
    """Long division over Q; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = dict(a)
    quo: dict = {}
    db = max(b)
    lb = b[db]
    while rem:
        dr = max(rem)
        if dr < db:
            break
        c = Fraction(rem[dr]) / Fraction(lb)
        shift = dr - db
        quo[shift] = c
        for d, cb in b.items():
            dd = d + shift
            s = rem.get(dd, 0) - c * cb
            if s:
                rem[dd] = s
            else:
                rem.pop(dd, None)
    return quo, rem


def _pdivexact(a, b):
    q, r = _pdivmod(a, b)
    if r:
        raise ArithmeticError("polynomial division was not exact")
    return q


def _pmonic(a):
    if not a:
        return a
    lc = a[max(a)]
    if lc == 1:
        return a
    inv = Fraction(1) / Fraction(lc)
    return {d: c * inv for d, c in a.items()}


def _pint_primitive(a):
    """Clear coefficient denominators and divide out the integer content."""
    lcm = 1
    for c in a.values():
        if isinstance(c, Fraction):
            d = c.denominator
            lcm = lcm * d // _igcd(lcm, d)
    out = {}
    g = 0
    for d, c in a.items():
        v = int(c * lcm)
        out[d] = v
        g = _igcd(g, v)
    if g > 1:
        out = {d: v // g for d, v in out.items()}
    return out


def _pprem(a, b):
    """Pseudo-remainder lb^(deg a - deg b + 1) * a mod b over the integers."""
    db = max(b)
    lb = b[db]
    steps = max(a) - db + 1
    rem = dict(a)
    while rem:
        dr = max(rem)
        if dr < db:
            break
        lr = rem.pop(dr)
        steps -= 1
        rem = {d: c * lb for d, c in rem.items()}
        shift = dr - db
        for d, c in b.items():
            if d == db:
                continue
            dd = d + shift
            s = rem.get(dd, 0) - lr * c
            if s:
                rem[dd] = s
            else:
                rem.pop(dd, None)
    if steps > 0 and rem:
        m = lb ** steps
        rem = {d: c * m for d, c in rem.items()}
    return rem


def _phorner(a, xi):
    """Evaluate an integer polynomial at the integer point xi."""
    val = 0
    prev = None
    for d in sorted(a, reverse=True):
        if prev is not None:
            val *= xi ** (prev - d)
        val += a[d]
        prev = d
    if prev:
        val *= xi ** prev
    return val


def _pfromint(n, xi):
    """Rebuild a polynomial from its value at xi using balanced digits.

    Any polynomial with coefficients in (-xi/2, xi/2] is recovered exactly
    from its value, since the balanced base-xi expansion is unique."""
    out = {}
    d = 0
    while n:
        c = n % xi
        if 2 * c > xi:
            c -= xi
        if c:
            out[d] = c
        n = (n - c) // xi
        d += 1
    return out


def _pdivexact_int(a, b):
    """Quotient of a by b when the division is exact over the integers.

    Returns None as soon as a leading coefficient fails to divide or a
    remainder survives, so callers can use it as a divisibility test."""
    db = max(b)
    lb = b[db]
    rem = dict(a)
    quo = {}
    while rem:
        dr = max(rem)
        if dr < db:
            return None
        lr = rem.pop(dr)
        if lr % lb:
            return None
        c = lr // lb
        shift = dr - db
        quo[shift] = c
        for d, cb in b.items():
            if d == db:
                continue
            dd = d + shift
            s = rem.get(dd, 0) - c * cb
            if s:
                rem[dd] = s
            else:
                rem.pop(dd, None)
    return quo


def _pheu(a, b):
    """Heuristic gcd of two primitive integer polynomials, or None.

    Evaluates both at a large integer, takes the integer gcd, lifts it back
    with balanced digits and certifies the candidate by exact trial division
    (a certified candidate is the gcd: any proper multiple of it dividing
    both inputs would need a cofactor whose value at xi divides the lifted
    content, impossible once xi dwarfs every coefficient involved)."""
    na = max(abs(c) for c in a.values())
    nb = max(abs(c) for c in b.values())
    xi = 2 * min(na, nb) + 29
    for _ in range(6):
        g = _igcd(_phorner(a, xi), _phorner(b, xi))
        cand = _pint_primitive(_pfromint(g, xi))
        if cand:
            if max(cand) == 0:
                return dict(_PONE)
            if (_pdivexact_int(a, cand) is not None
                    and _pdivexact_int(b, cand) is not None):
                return cand
        xi = xi * 73794 // 27011
    return None


def _pgcd_subresultant(a, b):
    """Gcd of two primitive integer polynomials by the subresultant sequence.

    Remainders are divided by the predicted g * h^d factors, which keeps the
    integer coefficients polynomially bounded (plain rational Euclid and the
    primitive sequence both blow up on the sizes seen here)."""
    if max(a) < max(b):
        a, b = b, a
    g = 1
    h = 1
    while True:
        delta = max(a) - max(b)
        rem = _pprem(a, b)
        if not rem:
            break
        if max(rem) == 0:
            return dict(_PONE)
        divisor = g * h ** delta
        a, b = b, {d: c // divisor for d, c in rem.items()}
        g = a[max(a)]
        if delta:
            h = g ** delta // h ** (delta - 1)
    return _pint_primitive(b)


def _pgcd(a, b):
    """Monic gcd over Q, heuristic first with a subresultant fallback.

    Shared powers of t are split off up front (typical inputs have positive
    order), leaving operands with nonzero constant terms."""
    if not a:
        return _pmonic(dict(b))
    if not b:
        return _pmonic(dict(a))
    a = _pint_primitive(a)
    b = _pint_primitive(b)
    ord_a = min(a)
    ord_b = min(b)
    shared = min(ord_a, ord_b)
    if ord_a:
        a = {d - ord_a: c for d, c in a.items()}
    if ord_b:
        b = {d - ord_b: c for d, c in b.items()}
    if max(a) == 0 or max(b) == 0:
        g = dict(_PONE)
    else:
        g = _pheu(a, b)
        if g is None:
            g = _pgcd_subresultant(a, b)
    if shared:
        g = {d + shared: c for d, c in g.items()}
    return _pmonic(g)


def _pnormal(a):
    """Canonicalize coefficients: integral Fractions become ints."""
    out = {}
    for d, c in a.items():
        if isinstance(c, Fraction) and c.denominator == 1:
            c = c.numerator
        if c:
            out[d] = c
    return out


# ---------------------------------------------------------------------------


class RingElem:
    """An exact element of Q(t), stored as a reduced num/den pair.

    Canonical form: gcd(num, den) = 1, den monic, shared powers of t
    cancelled; a constant denominator is folded away, so den is either 1 or
    a genuine monic polynomial of positive degree.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den, _raw=False):
        if _raw:
            self.num = num
            self.den = den
        else:
            e = _make(num, den)
            self.num = e.num
            self.den = e.den

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "RingElem":
        return _ZERO

    @staticmethod
    def one() -> "RingElem":
        return _ONE

    @staticmethod
    def const(c) -> "RingElem":
        """Constant polynomial from an int, Fraction or fraction string."""
        if isinstance(c, RingElem):
            return c
        if isinstance(c, str):
            c = Fraction(c)
        if not isinstance(c, (int, Fraction)):
            raise TypeError(f"cannot build a ring constant from {type(c).__name__}")
        if c == 0:
            return _ZERO
        if isinstance(c, Fraction) and c.denominator == 1:
            c = c.numerator
        return RingElem({0: c}, _PONE, _raw=True)

    @staticmethod
    def t_pow(k: int) -> "RingElem":
        """The monomial t**k; negative k gives 1/t**(-k)."""
        if k >= 0:
            return RingElem({k: 1}, _PONE, _raw=True)
        return RingElem(_PONE, {-k: 1}, _raw=True)

    @staticmethod
    def from_terms(terms) -> "RingElem":
        """Polynomial from (coefficient, degree) pairs."""
        num: dict = {}
        for c, d in terms:
            if isinstance(c, str):
                c = Fraction(c)
            s = num.get(d, 0) + c
            if s:
                num[d] = s
            else:
                num.pop(d, None)
        return _make(_pnormal(num), _PONE)

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def valuation(self):
        """Order of vanishing at t = 0; +infinity for the zero element."""
        if not self.num:
            return INFINITY
        return min(self.num) - (min(self.den) if self.den is not _PONE else 0)

    def is_unit(self) -> bool:
        """Unit of the valuation ring, i.e. order exactly zero."""
        return bool(self.num) and self.valuation() == 0

    def in_ring(self) -> bool:
        """True when the order is non-negative."""
        return not self.num or self.valuation() >= 0

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den is _PONE and other.den is _PONE:
            return _make(_padd(self.num, other.num), _PONE)
        if self.den == other.den:
            return _make(_padd(self.num, other.num), self.den)
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        return _make(num, _pmul(self.den, other.den))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den is _PONE and other.den is _PONE:
            return _make(_padd(self.num, other.num, -1), _PONE)
        if self.den == other.den:
            return _make(_padd(self.num, other.num, -1), self.den)
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den), -1)
        return _make(num, _pmul(self.den, other.den))

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return RingElem(_pscale(self.num, -1), self.den, _raw=True)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den is _PONE and other.den is _PONE:
            return _make(_pmul(self.num, other.num), _PONE)
        return _make(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by the zero element")
        return _make(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return _ONE / self ** (-n)
        out = _ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        num = tuple(sorted((d, Fraction(c)) for d, c in self.num.items()))
        den = tuple(sorted((d, Fraction(c)) for d, c in self.den.items()))
        return hash((num, den))

    # -- presentation --------------------------------------------------------

    def __repr__(self):
        return f"RingElem({self})"

    def __str__(self):
        if not self.num:
            return "0"
        num = _poly_str(self.num)
        if self.den is _PONE or self.den == _PONE:
            return num
        return f"({num})/({_poly_str(self.den)})"

    # -- JSON ----------------------------------------------------------------

    def to_json(self):
        """Monomial-list encoding; den omitted when it equals 1."""
        out = {"num": [[_coeff_str(c), d] for d, c in sorted(self.num.items())]}
        if self.den != _PONE:
            out["den"] = [[_coeff_str(c), d] for d, c in sorted(self.den.items())]
        return out

    @staticmethod
    def from_json(obj) -> "RingElem":
        if not isinstance(obj, dict) or "num" not in obj:
            raise InputError(f"ring element must be an object with a 'num' list, got {obj!r}")
        num = _poly_from_json(obj["num"], "num")
        den = _poly_from_json(obj["den"], "den") if "den" in obj else _PONE
        if not den:
            raise InputError("ring element denominator is zero")
        return _make(num, den)


def _coerce(x):
    if isinstance(x, RingElem):
        return x
    if isinstance(x, (int, Fraction)):
        return RingElem.const(x)
    return NotImplemented


def _coeff_str(c) -> str:
    return str(Fraction(c))


def _poly_from_json(items, label):
    if not isinstance(items, list):
        raise InputError(f"'{label}' must be a list of [coefficient, degree] pairs")
    poly: dict = {}
    last = -1
    for it in items:
        if not (isinstance(it, list) and len(it) == 2):
            raise InputError(f"'{label}' entries must be [coefficient, degree] pairs, got {it!r}")
        cs, d = it
        if not isinstance(d, int) or d < 0:
            raise InputError(f"'{label}' degree must be a non-negative integer, got {d!r}")
        if d <= last:
            raise InputError(f"'{label}' degrees must be strictly ascending")
        last = d
        try:
            c = Fraction(cs)
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise InputError(f"bad coefficient {cs!r} in '{label}'") from exc
        if c == 0:
            raise InputError(f"zero coefficient not allowed in '{label}'")
        poly[d] = c.numerator if c.denominator == 1 else c
    return poly


def _poly_str(p) -> str:
    parts = []
    for d in sorted(p, reverse=True):
        c = p[d]
        if d == 0:
            parts.append(str(c))
        else:
            t = "t" if d == 1 else f"t^{d}"
            if c == 1:
                parts.append(t)
            elif c == -1:
                parts.append(f"-{t}")
            else:
                parts.append(f"{c}*{t}")
    out = parts[0]
    for piece in parts[1:]:
        out += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
    return out


def _make(num, den) -> RingElem:
    """Reduce num/den to canonical form."""
    if not num:
        return _ZERO
    if not den:
        raise ZeroDivisionError("zero denominator")
    # cancel the shared power of t first: cheap and very common
    on, od = min(num), min(den)
    shift = min(on, od)
    if shift:
        num = _pshift(num, -shift)
        den = _pshift(den, -shift)
    if len(den) == 1 and min(den) == 0:
        c = den[0]
        if c != 1:
            inv = Fraction(1) / Fraction(c)
            num = _pnormal(_pscale(num, inv))
        return RingElem(_pnormal(num), _PONE, _raw=True)
    g = _pgcd(num, den)
    if max(g) > 0:
        num = _pdivexact(num, g)
        den = _pdivexact(den, g)
        if len(den) == 1 and min(den) == 0:
            c = den[0]
            if c != 1:
                inv = Fraction(1) / Fraction(c)
                num = _pscale(num, inv)
            return RingElem(_pnormal(num), _PONE, _raw=True)
    lc = den[max(den)]
    if lc != 1:
        inv = Fraction(1) / Fraction(lc)
        num = _pscale(num, inv)
        den = _pscale(den, inv)
    return RingElem(_pnormal(num), _pnormal(den), _raw=True)


_ZERO = RingElem(_PZERO, _PONE, _raw=True)
_ONE = RingElem(_PONE, _PONE, _raw=True)


# ---------------------------------------------------------------------------
# module-level operations


def valuation(x: RingElem):
    """Order of x at t = 0: the k with x = unit * t**k; +infinity for 0."""
    return _coerce_strict(x).valuation()


def residue(x: RingElem) -> Fraction:
    """Image of x in the residue field: num(0)/den(0) when the order is 0.

    Elements of positive order map to 0; negative order is outside the ring.
    """
    x = _coerce_strict(x)
    v = x.valuation()
    if v is not INFINITY and v < 0:
        raise NotInRingError(f"residue undefined for order {v} < 0")
    if v != 0:
        return Fraction(0)
    return Fraction(x.num[min(x.num)]) / Fraction(x.den[min(x.den)])


def residue_shift(x: RingElem, m0: int) -> Fraction:
    """Residue of x / t**m0: the leading coefficient when the order is
    exactly m0, and 0 otherwise (including x = 0)."""
    x = _coerce_strict(x)
    if x.valuation() != m0:
        return Fraction(0)
    return Fraction(x.num[min(x.num)]) / Fraction(x.den[min(x.den)])


def detect_cancellation(terms) -> bool:
    """True when the order of the exact sum exceeds the minimum order of the
    terms, i.e. the leading parts cancelled catastrophically."""
    terms = [_coerce_strict(t) for t in terms]
    if not terms:
        raise ValueError("detect_cancellation needs at least one term")
    m0 = min(t.valuation() for t in terms)
    total = _ZERO
    for t in terms:
        total = total + t
    return total.valuation() > m0


def random_unit(rng) -> RingElem:
    """Random unit: a nonzero integer constant in [-10**4, 10**4]."""
    v = 0
    while v == 0:
        v = rng.randint(-10000, 10000)
    return RingElem.const(v)


def _coerce_strict(x) -> RingElem:
    e = _coerce(x)
    if e is NotImplemented:
        raise TypeError(f"expected a ring element, got {type(x).__name__}")
    return e


ZERO = _ZERO
ONE = _ONE
T = RingElem.t_pow(1)
