"""Truncated Laurent series over finite fields.

A :class:`FieldContext` models a tamely ramified extension E/k of
k = F_q((t)), q = p^f, with residue field F_{q^m} and ramification index e.
Elements of E are series in s = t^(1/e); exponents are stored as integer
indices into (1/e)Z and reported as exact fractions.

Every element knows how far its terms are known (``prec``, an exclusive index
bound, or ``None`` for an exact finite sum). All arithmetic propagates that
bound pessimistically and the whole context is capped at ``precision``.
"""

from fractions import Fraction
from functools import cached_property, lru_cache
from math import ceil, gcd

import numpy as np

from .errors import DomainError, IndeterminateError
from .lattice import is_prime


class _Infinity:
    """+infinity for valuations; compares above every rational."""

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("+inf")

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"


INF = _Infinity()


def _poly_mod(a, mod, p):
    a = list(a)
    d = len(mod) - 1
    for k in range(len(a) - 1, d - 1, -1):
        c = a[k] % p
        if c:
            for i in range(d + 1):
                a[k - d + i] = (a[k - d + i] - c * mod[i]) % p
    return [x % p for x in a[:d]] + [0] * max(0, d - len(a))


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _is_irreducible(mod, p):
    d = len(mod) - 1
    for k in range(1, d // 2 + 1):
        for code in range(p ** k):
            low = [(code // p ** i) % p for i in range(k)]
            if _divides(low + [1], mod, p):
                return False
    return True


def _divides(div, poly, p):
    rem = list(poly)
    d = len(div) - 1
    inv = pow(div[-1], -1, p)
    for k in range(len(rem) - 1, d - 1, -1):
        c = rem[k] * inv % p
        if c:
            for i in range(d + 1):
                rem[k - d + i] = (rem[k - d + i] - c * div[i]) % p
    return not any(rem[:d])


@lru_cache(maxsize=None)
def smallest_irreducible(p, d):
    """Monic irreducible of degree d over F_p with the smallest coefficient
    encoding sum c_i p^i (lexicographic from the top coefficient down)."""
    for code in range(p ** d):
        low = [(code // p ** i) % p for i in range(d)]
        if d > 1 and low[0] == 0:
            continue
        mod = low + [1]
        if _is_irreducible(mod, p):
            return tuple(mod)
    raise AssertionError("no irreducible polynomial found")


class ResidueField:
    """F_{p^d} = F_p[x]/(modulus). Elements are length-d coefficient tuples."""

    def __init__(self, p, degree=1):
        if not is_prime(p):
            raise DomainError("residue characteristic must be prime", p=p)
        if degree < 1:
            raise DomainError("residue degree must be positive", degree=degree)
        self.p = p
        self.degree = degree
        self.order = p ** degree
        self.modulus = smallest_irreducible(p, degree)
        red = []
        for k in range(2 * degree - 1):
            mono = [0] * k + [1]
            red.append(_poly_mod(mono, self.modulus, p))
        # x^k reduced, rows indexed by k
        self.reduction = np.array(red, dtype=np.int64)

    def __eq__(self, other):
        return isinstance(other, ResidueField) and (self.p, self.degree) == (other.p, other.degree)

    def __hash__(self):
        return hash((self.p, self.degree))

    def __repr__(self):
        return f"GF({self.p}^{self.degree})"

    def zero(self):
        return (0,) * self.degree

    def one(self):
        return (1,) + (0,) * (self.degree - 1)

    def from_int(self, n):
        return (n % self.p,) + (0,) * (self.degree - 1)

    def element(self, coeffs):
        coeffs = [int(c) % self.p for c in coeffs]
        if len(coeffs) > self.degree:
            coeffs = _poly_mod(coeffs, self.modulus, self.p)
        return tuple(coeffs + [0] * (self.degree - len(coeffs)))

    def mul(self, a, b):
        return tuple(_poly_mod(_poly_mul(a, b, self.p), self.modulus, self.p))

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero in residue field")
        # a^(Q-2)
        return self.pow(a, self.order - 2)

    def pow(self, a, n):
        out = self.one()
        base = a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def elements(self):
        for code in range(self.order):
            yield tuple((code // self.p ** i) % self.p for i in range(self.degree))

    def random(self, rng, nonzero=False):
        while True:
            a = tuple(int(x) for x in rng.integers(0, self.p, self.degree))
            if any(a) or not nonzero:
                return a

    def embedding_from(self, sub):
        """Matrix (sub.degree x degree) sending x^i of ``sub`` to rho^i,
        rho the smallest root of sub's modulus in this field."""
        if sub.p != self.p or self.degree % sub.degree:
            raise DomainError("no embedding between these residue fields")
        for rho in self.elements():
            val = self.zero()
            power = self.one()
            for c in sub.modulus:
                val = tuple((v + c * w) % self.p for v, w in zip(val, power))
                power = self.mul(power, rho)
            if not any(val):
                rows = []
                power = self.one()
                for _ in range(sub.degree):
                    rows.append(power)
                    power = self.mul(power, rho)
                return np.array(rows, dtype=np.int64)
        raise AssertionError("modulus has no root in extension")


class FieldContext:
    """E = F_{p^(f m)}((t^(1/e))) over k = F_{p^f}((t)), truncated below
    exponent ``precision``."""

    def __init__(self, p, f=1, m=1, e=1, precision=20):
        if not is_prime(p):
            raise DomainError("p must be prime", p=p)
        if f < 1 or m < 1 or e < 1:
            raise DomainError("f, m, e must be positive", f=f, m=m, e=e)
        if gcd(e, p) != 1:
            raise DomainError("ramification index must be prime to p (tame)", p=p, e=e)
        precision = Fraction(precision)
        if precision <= 0:
            raise DomainError("precision must be positive", precision=str(precision))
        self.p, self.f, self.m, self.e = p, f, m, e
        self.precision = precision
        self.q = p ** f
        self.residue = ResidueField(p, f * m)
        self.cap = ceil(precision * e)

    @property
    def key(self):
        return (self.p, self.f, self.m, self.e, self.precision)

    def __eq__(self, other):
        return isinstance(other, FieldContext) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return (f"FieldContext(p={self.p}, f={self.f}, m={self.m}, e={self.e}, "
                f"precision={self.precision})")

    def with_precision(self, precision):
        return FieldContext(self.p, self.f, self.m, self.e, precision)

    @cached_property
    def base(self):
        """The context of k itself (m = e = 1), same precision."""
        return FieldContext(self.p, self.f, 1, 1, self.precision)

    @cached_property
    def _base_embedding(self):
        return self.residue.embedding_from(ResidueField(self.p, self.f))

    def lift(self, x):
        """View an element of the base field k inside E."""
        if x.ctx != self.base:
            raise DomainError("element does not live in the base field")
        coeffs = (x.coeffs @ self._base_embedding) % self.p if len(x.coeffs) else x.coeffs
        n = len(coeffs)
        out = np.zeros(((n - 1) * self.e + 1 if n else 0, self.residue.degree), dtype=np.int64)
        out[::self.e] = coeffs
        prec = None if x.prec is None else x.prec * self.e
        return FieldElement(self, x.start * self.e, out, prec)

    # constructors

    def zero(self):
        return FieldElement(self, 0, _empty(self), None)

    def one(self):
        return self.constant(self.residue.one())

    def constant(self, c):
        c = self.residue.element(c) if not isinstance(c, int) else self.residue.from_int(c)
        return FieldElement(self, 0, np.array([c], dtype=np.int64), None)

    def monomial(self, exponent, coeff=1):
        """coeff * t^exponent with exponent in (1/e)Z."""
        idx = self.index(exponent)
        c = self.residue.from_int(coeff) if isinstance(coeff, int) else self.residue.element(coeff)
        return FieldElement(self, idx, np.array([c], dtype=np.int64), None)

    def uniformizer(self):
        return self.monomial(Fraction(1, self.e))

    def index(self, exponent):
        x = Fraction(exponent) * self.e
        if x.denominator != 1:
            raise DomainError("exponent not in (1/e)Z", exponent=str(exponent), e=self.e)
        return int(x)

    def from_terms(self, terms, known_up_to=None):
        """Build from ``{exponent: coefficient}``; coefficient an int or a
        residue coefficient sequence."""
        items = []
        for exp, c in dict(terms).items():
            c = self.residue.from_int(c) if isinstance(c, int) else self.residue.element(c)
            items.append((self.index(exp), c))
        prec = None if known_up_to is None or known_up_to is INF else self.index_ceil(known_up_to)
        if not items:
            return FieldElement(self, 0, _empty(self), prec)
        lo = min(i for i, _ in items)
        hi = max(i for i, _ in items)
        arr = np.zeros((hi - lo + 1, self.residue.degree), dtype=np.int64)
        for i, c in items:
            arr[i - lo] = (arr[i - lo] + np.array(c)) % self.p
        return FieldElement(self, lo, arr, prec)

    def index_ceil(self, bound):
        return ceil(Fraction(bound) * self.e)

    def random_element(self, rng, low, high, zero_prob=0.0):
        """Random exact element with exponents in [low, high) (rationals)."""
        a, b = self.index_ceil(low), self.index_ceil(high)
        b = min(b, self.cap)
        if b <= a:
            return self.zero()
        arr = rng.integers(0, self.p, (b - a, self.residue.degree)).astype(np.int64)
        if zero_prob:
            mask = rng.random(b - a) < zero_prob
            arr[mask] = 0
        return FieldElement(self, a, arr, None)


def _empty(ctx):
    return np.zeros((0, ctx.residue.degree), dtype=np.int64)


def _min_prec(*xs):
    vals = [x for x in xs if x is not None]
    return min(vals) if vals else None


class FieldElement:
    """sum_i coeffs[i] * t^((start + i)/e), terms known below index ``prec``."""

    __slots__ = ("ctx", "start", "coeffs", "prec")

    def __init__(self, ctx, start, coeffs, prec=None):
        coeffs = np.asarray(coeffs, dtype=np.int64) % ctx.p
        if coeffs.ndim != 2 or coeffs.shape[1] != ctx.residue.degree:
            raise DomainError("coefficient array has the wrong shape")
        if prec is not None:
            prec = min(prec, ctx.cap)
        if len(coeffs) and start + len(coeffs) > ctx.cap:
            coeffs = coeffs[:max(0, ctx.cap - start)]
            prec = ctx.cap if prec is None else min(prec, ctx.cap)
        if prec is not None and len(coeffs) and start + len(coeffs) > prec:
            coeffs = coeffs[:max(0, prec - start)]
        nz = np.flatnonzero(coeffs.any(axis=1))
        if len(nz) == 0:
            coeffs = coeffs[:0]
            start = 0
        else:
            start += int(nz[0])
            coeffs = coeffs[nz[0]:nz[-1] + 1]
        coeffs.flags.writeable = False
        self.ctx = ctx
        self.start = start
        self.coeffs = coeffs
        self.prec = prec

    # inspection

    @property
    def is_exact(self):
        return self.prec is None

    def vanishes(self):
        """No terms below the known bound."""
        return len(self.coeffs) == 0

    def is_exact_zero(self):
        return len(self.coeffs) == 0 and self.prec is None

    def known_up_to(self):
        return INF if self.prec is None else Fraction(self.prec, self.ctx.e)

    def val(self):
        if len(self.coeffs):
            return Fraction(self.start, self.ctx.e)
        if self.prec is None:
            return INF
        raise IndeterminateError("valuation not determined at this precision",
                                 known_up_to=str(self.known_up_to()))

    def val_or_bound(self):
        """(value, determinate): the valuation, or the precision bound below
        which the element is known to vanish."""
        if len(self.coeffs) or self.prec is None:
            return self.val(), True
        return self.known_up_to(), False

    def _lower_index(self):
        if len(self.coeffs):
            return self.start
        return self.prec

    def leading_coefficient(self):
        if not len(self.coeffs):
            raise IndeterminateError("no leading term")
        return tuple(int(x) for x in self.coeffs[0])

    def terms(self):
        """Sorted list of (exponent, residue coefficient tuple)."""
        e = self.ctx.e
        return [(Fraction(self.start + i, e), tuple(int(x) for x in c))
                for i, c in enumerate(self.coeffs) if c.any()]

    def coefficient(self, exponent):
        i = self.ctx.index(exponent)
        if self.prec is not None and i >= self.prec:
            raise IndeterminateError("coefficient beyond known precision",
                                     exponent=str(exponent))
        j = i - self.start
        if 0 <= j < len(self.coeffs):
            return tuple(int(x) for x in self.coeffs[j])
        return self.ctx.residue.zero()

    def __repr__(self):
        body = " + ".join(f"{c}*t^{x}" for x, c in self.terms()) or "0"
        tail = "" if self.prec is None else f" + O(t^{self.known_up_to()})"
        return f"<{body}{tail}>"

    def _check(self, other):
        if isinstance(other, int):
            return self.ctx.constant(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.ctx != self.ctx:
            raise DomainError("field context mismatch")
        return other

    # arithmetic

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return _add(self, other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return _add(self, other, -1)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FieldElement(self.ctx, self.start, -self.coeffs, self.prec)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._check(other)
        if other is NotImplemented:
            return other
        return _mul(self, other)

    __rmul__ = __mul__

    def scale(self, n):
        """Multiply by the image of an integer (or Z_(p) fraction)."""
        n = Fraction(n)
        if n.denominator % self.ctx.p == 0:
            raise DomainError("denominator divisible by p", value=str(n))
        c = n.numerator * pow(n.denominator, -1, self.ctx.p) % self.ctx.p
        if c == 0:
            return self.ctx.zero()
        return FieldElement(self.ctx, self.start, self.coeffs * c, self.prec)

    def times_residue(self, c):
        """Multiply by a constant residue field element."""
        return self * self.ctx.constant(c)

    def invert(self):
        return _invert(self)

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.invert()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.invert() ** (-n)
        out = self.ctx.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def truncate(self, prec_index):
        prec = prec_index if self.prec is None else min(self.prec, prec_index)
        return FieldElement(self.ctx, self.start, self.coeffs, prec)

    def agrees_with(self, other):
        """Equal as far as both are known."""
        return (self - other).vanishes()

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return (self.ctx == other.ctx and self.start == other.start
                and self.prec == other.prec and np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.start, self.prec, self.coeffs.tobytes()))


def _add(x, y, sign):
    ctx = x.ctx
    prec = _min_prec(x.prec, y.prec)
    if not len(x.coeffs) and not len(y.coeffs):
        return FieldElement(ctx, 0, _empty(ctx), prec)
    starts = [z.start for z in (x, y) if len(z.coeffs)]
    ends = [z.start + len(z.coeffs) for z in (x, y) if len(z.coeffs)]
    lo, hi = min(starts), max(ends)
    if prec is not None:
        hi = min(hi, prec)
    if hi <= lo:
        return FieldElement(ctx, 0, _empty(ctx), prec)
    out = np.zeros((hi - lo, ctx.residue.degree), dtype=np.int64)
    for z, s in ((x, 1), (y, sign)):
        if len(z.coeffs):
            a = z.start - lo
            b = min(len(z.coeffs), hi - z.start)
            if b > 0:
                out[a:a + b] += s * z.coeffs[:b]
    return FieldElement(ctx, lo, out, prec)


def _poly_product(ctx, a, b):
    """Product of coefficient arrays (n, d) and (m, d)."""
    d = ctx.residue.degree
    p = ctx.p
    if d == 1:
        return (np.convolve(a[:, 0], b[:, 0]) % p).reshape(-1, 1)
    full = np.zeros((len(a) + len(b) - 1, 2 * d - 1), dtype=np.int64)
    for i in range(d):
        ai = a[:, i]
        if not ai.any():
            continue
        for j in range(d):
            full[:, i + j] += np.convolve(ai, b[:, j])
    return (full % p) @ ctx.residue.reduction % p


def _mul(x, y):
    ctx = x.ctx
    if x.is_exact_zero() or y.is_exact_zero():
        return ctx.zero()
    lx, ly = x._lower_index(), y._lower_index()
    bounds = []
    if x.prec is not None:
        bounds.append(x.prec + ly)
    if y.prec is not None:
        bounds.append(y.prec + lx)
    prec = min(bounds) if bounds else None
    if not len(x.coeffs) or not len(y.coeffs):
        return FieldElement(ctx, 0, _empty(ctx), prec)
    n = len(x.coeffs) + len(y.coeffs) - 1
    limit = min(n, ctx.cap - (x.start + y.start))
    if prec is not None:
        limit = min(limit, prec - (x.start + y.start))
    if limit <= 0:
        if prec is None:
            prec = ctx.cap
        return FieldElement(ctx, 0, _empty(ctx), prec)
    if limit < n and prec is None:
        # terms past the cap are dropped, so the product is no longer exact
        prec = x.start + y.start + limit
    a = x.coeffs[:limit]
    b = y.coeffs[:limit]
    return FieldElement(ctx, x.start + y.start, _poly_product(ctx, a, b)[:limit], prec)


def _invert(x):
    ctx = x.ctx
    if not len(x.coeffs):
        raise (IndeterminateError if x.prec is not None else DomainError)(
            "cannot invert (possible) zero", known_up_to=str(x.known_up_to()))
    v = x.start
    lead = tuple(int(c) for c in x.coeffs[0])
    c_inv = np.array([ctx.residue.inv(lead)], dtype=np.int64)
    if x.prec is None and len(x.coeffs) == 1:
        return FieldElement(ctx, -v, c_inv, None)
    rel = ctx.cap + v if x.prec is None else min(x.prec - v, ctx.cap + v)
    if rel <= 0:
        return FieldElement(ctx, 0, _empty(ctx), ctx.cap)
    u = x.coeffs[:rel]
    w = c_inv
    k = 1
    while k < rel:
        k = min(2 * k, rel)
        uw = _poly_product(ctx, u[:k], w)[:k]
        corr = -uw
        corr[0] = (corr[0] + 2 * np.array(ctx.residue.one())) % ctx.p
        w = _poly_product(ctx, w, corr)[:k]
    return FieldElement(ctx, -v, w, -v + rel)


# one-units


@lru_cache(maxsize=4096)
def binomial_mod_p(a, k, p):
    """C(a, k) reduced mod p, for a in Z_(p)."""
    c = Fraction(1)
    for i in range(k):
        c = c * (a - i) / (i + 1)
    if c.denominator % p == 0:
        raise AssertionError("binomial coefficient not p-integral")
    return c.numerator * pow(c.denominator, -1, p) % p


def one_unit_depth(x):
    """val(x - 1), requiring it to be positive (or exactly infinite)."""
    u = x - 1
    if u.vanishes():
        if u.prec is None:
            return INF
        return u.known_up_to()
    v = u.val()
    if v <= 0:
        raise DomainError("not a one-unit", valuation_of_x_minus_1=str(v))
    return v


def is_one_unit(x):
    try:
        one_unit_depth(x)
    except DomainError:
        return False
    return True


def binomial_power(x, a):
    """x^a for a one-unit x and a in Z_(p), via sum_k C(a,k) (x-1)^k."""
    ctx = x.ctx
    a = Fraction(a)
    if a.denominator % ctx.p == 0:
        raise DomainError("exponent not in Z_(p)", exponent=str(a), p=ctx.p)
    u = x - 1
    if len(u.coeffs) and u.start <= 0:
        raise DomainError("not a one-unit")
    if u.vanishes():
        if u.prec is None:
            return ctx.one()
        return ctx.one().truncate(u.prec)
    target = ctx.cap if u.prec is None else min(u.prec, ctx.cap)
    result = ctx.one()
    term = ctx.one()
    k = 0
    while True:
        k += 1
        term = term * u
        if term.vanishes() or term.start >= target:
            break
        c = binomial_mod_p(a, k, ctx.p)
        if c:
            result = result + term.scale(c)
    if a.denominator == 1 and a >= 0 and k > a:
        return result if u.prec is None else result.truncate(target)
    return result.truncate(target)


def nth_root_one_unit(x, n):
    """The unique n-th root of a one-unit x lying in 1 + P."""
    ctx = x.ctx
    if n <= 0 or n % ctx.p == 0:
        raise DomainError("root degree must be positive and prime to p", n=n, p=ctx.p)
    one_unit_depth(x)
    if n == 1:
        return x
    return binomial_power(x, Fraction(1, n))


def zp_power(x, a):
    """x^a for a one-unit x and a in Z_(p) (fraction with denominator prime to p)."""
    a = Fraction(a)
    if a.denominator % x.ctx.p == 0:
        raise DomainError("exponent not in Z_(p)", exponent=str(a), p=x.ctx.p)
    one_unit_depth(x)
    if a.denominator == 1:
        return x ** int(a)
    return binomial_power(x, a)

