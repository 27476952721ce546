"""Split tori over a truncated local field.

A Lie algebra element X is a vector of field elements in the coordinates of
X_* (x) E dual to the stored basis of X*, so d(chi)(X) is the integer-linear
pairing. A group element gamma is stored by its values chi_i(gamma) on the
basis of X*; only the positive-depth part of the filtration is modelled, so
these values are one-units.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, IndeterminateError
from .lattice import inverse
from .localfield import INF, zp_power


def _check_char(datum, chi):
    chi = tuple(int(x) for x in chi)
    if len(chi) != datum.rank:
        raise DomainError("character has the wrong length", rank=datum.rank)
    return chi


class TorusLieElement:
    """X in Lie(T)(E) = X_* (x) E."""

    __slots__ = ("datum", "field", "coords")

    def __init__(self, datum, field, coords):
        coords = tuple(coords)
        if len(coords) != datum.rank:
            raise DomainError("coordinate vector has the wrong length", rank=datum.rank)
        if any(c.ctx != field for c in coords):
            raise DomainError("coordinate from another field context")
        self.datum = datum
        self.field = field
        self.coords = coords

    @classmethod
    def zero(cls, datum, field):
        return cls(datum, field, [field.zero()] * datum.rank)

    @classmethod
    def from_root_values(cls, datum, field, values):
        """The element with d(alpha_i)(X) = values[i] on the simple roots."""
        rows = [datum.roots[i] for i in datum.simple]
        inv = inverse(rows)
        coords = []
        for i in range(datum.rank):
            acc = field.zero()
            for j in range(datum.rank):
                if inv[i][j]:
                    acc = acc + values[j].scale(inv[i][j])
            coords.append(acc)
        return cls(datum, field, coords)

    @classmethod
    def from_cocharacter(cls, datum, field, vector, scalar):
        """scalar times a (rational, p-integral) cocharacter vector."""
        return cls(datum, field, [scalar.scale(Fraction(v)) for v in vector])

    def __add__(self, other):
        return TorusLieElement(self.datum, self.field,
                               [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        return TorusLieElement(self.datum, self.field,
                               [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return TorusLieElement(self.datum, self.field, [-a for a in self.coords])

    def scale(self, c):
        """Multiply by a field element (or an integer)."""
        return TorusLieElement(self.datum, self.field, [c * a for a in self.coords])

    def agrees_with(self, other):
        return all(a.agrees_with(b) for a, b in zip(self.coords, other.coords))

    def is_exact_zero(self):
        return all(c.is_exact_zero() for c in self.coords)

    def __repr__(self):
        return f"TorusLieElement({self.datum.type_tag}, {list(self.coords)})"


class TorusGroupElement:
    """gamma in T(E)_{0+}, given by chi_i(gamma) on the basis of X*."""

    __slots__ = ("datum", "field", "values")

    def __init__(self, datum, field, values):
        values = tuple(values)
        if len(values) != datum.rank:
            raise DomainError("value vector has the wrong length", rank=datum.rank)
        for v in values:
            if v.ctx != field:
                raise DomainError("value from another field context")
            u = v - 1
            if len(u.coeffs) and u.start <= 0:
                raise DomainError("basis value is not a one-unit",
                                  valuation=str(u.val()))
        self.datum = datum
        self.field = field
        self.values = values

    @classmethod
    def identity(cls, datum, field):
        return cls(datum, field, [field.one()] * datum.rank)

    @classmethod
    def from_cocharacter(cls, datum, field, vector, x):
        """lambda(x) for an integral cocharacter lambda (X_* coordinates)."""
        return cls(datum, field, [x ** int(v) for v in vector])

    def __mul__(self, other):
        return TorusGroupElement(self.datum, self.field,
                                 [a * b for a, b in zip(self.values, other.values)])

    def inverse(self):
        return TorusGroupElement(self.datum, self.field, [a.invert() for a in self.values])

    def agrees_with(self, other):
        return all(a.agrees_with(b) for a, b in zip(self.values, other.values))

    def is_identity(self):
        return all((v - 1).is_exact_zero() for v in self.values)

    def __repr__(self):
        return f"TorusGroupElement({self.datum.type_tag}, {list(self.values)})"


def eval_char_lie(X, chi):
    """d(chi)(X) = sum chi_i X_i."""
    chi = _check_char(X.datum, chi)
    out = X.field.zero()
    for c, x in zip(chi, X.coords):
        if c:
            out = out + x.scale(c)
    return out


def eval_char_group(gamma, chi):
    """chi(gamma) = prod chi_i(gamma)^(m_i)."""
    chi = _check_char(gamma.datum, chi)
    out = gamma.field.one()
    for m, v in zip(chi, gamma.values):
        if m:
            out = out * zp_power(v, m)
    return out


def eval_chars_group(gamma, chars):
    """chi(gamma) for many characters, sharing inverses and powers of the
    basis values."""
    ctx = gamma.field
    inverses = {}
    powers = {}

    def power(i, m):
        key = (i, m)
        if key not in powers:
            if m == 1:
                powers[key] = gamma.values[i]
            elif m == -1:
                if i not in inverses:
                    inverses[i] = gamma.values[i].invert()
                powers[key] = inverses[i]
            else:
                step = 1 if m > 0 else -1
                powers[key] = power(i, m - step) * power(i, step)
        return powers[key]

    out = []
    for chi in chars:
        chi = _check_char(gamma.datum, chi)
        acc = ctx.one()
        for i, m in enumerate(chi):
            if m:
                acc = acc * power(i, m)
        out.append(acc)
    return out


def min_valuation(elements):
    """Minimum valuation over ``elements``; INF if all vanish exactly.

    Raises IndeterminateError when an element that vanishes only up to its
    known precision could be the minimiser.
    """
    best = INF
    bound = INF
    for x in elements:
        v, determinate = x.val_or_bound()
        if determinate:
            best = min(best, v)
        else:
            bound = min(bound, v)
    if bound is not INF and not best <= bound:
        raise IndeterminateError("depth not determined at this precision",
                                 known_up_to=str(bound))
    return best


def depth_lie(X):
    """Largest r with X in t(E)_r: minimum valuation over a basis of X*."""
    return min_valuation(X.coords)


def depth_group(gamma):
    """Largest r > 0 with gamma in T(E)_r."""
    return min_valuation([v - 1 for v in gamma.values])


@dataclass
class GoodnessReport:
    good: bool
    certain: bool
    depth: object
    vanishing: list = field(default_factory=list)
    vanishing_to_precision: list = field(default_factory=list)
    violating: list = field(default_factory=list)
    valuations: dict = field(default_factory=dict)


def _goodness(datum, depth, root_values):
    """Classify roots given d(alpha)(X) (or alpha(gamma) - 1) per root."""
    rep = GoodnessReport(good=True, certain=True, depth=depth)
    for i, v in enumerate(root_values):
        if v.is_exact_zero():
            rep.vanishing.append(i)
            rep.valuations[i] = INF
        elif v.vanishes():
            bound = v.known_up_to()
            if not bound > depth:
                raise IndeterminateError("root value vanishes only below the depth",
                                         root=i, known_up_to=str(bound))
            rep.vanishing_to_precision.append(i)
            rep.valuations[i] = ("zero-to", bound)
        else:
            val = v.val()
            rep.valuations[i] = val
            if val != depth:
                rep.violating.append(i)
    rep.good = not rep.violating
    rep.certain = rep.good and not rep.vanishing_to_precision
    return rep


def is_good_lie(X):
    """Each d(alpha)(X) is zero or has valuation exactly the depth."""
    r = depth_lie(X)
    return _goodness(X.datum, r, [eval_char_lie(X, a) for a in X.datum.roots])


def is_good_group(gamma):
    """Each alpha(gamma) is 1 or alpha(gamma) - 1 has valuation the depth."""
    r = depth_group(gamma)
    return _goodness(gamma.datum, r,
                     [v - 1 for v in eval_chars_group(gamma, gamma.datum.roots)])
