"""Root data of reduced root systems and their lattice combinatorics.

Simple roots follow Bourbaki numbering. The Cartan matrix convention is
``A[i][j] = <coroot_i, root_j>``. A root datum stores roots in coordinates of
a Z-basis of the character lattice X* and coroots in the dual basis of the
cocharacter lattice X_*, so the pairing is the ordinary dot product.

>>> d = RootDatum([("A", 2)])
>>> len(d.roots)
6
>>> connection_index(d)
3
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm

from .errors import DomainError
from .lattice import (IntegerLattice, RationalSpan, det, hermite_rows,
                      inverse, prime_factors, rank, smith_invariants)

MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3, "E": 6, "F": 4, "G": 2}
MAX_RANK = {"E": 8, "F": 4, "G": 2}

# Bad primes and index of connection of the irreducible types.
TYPE_TABLE = {
    "A": (frozenset(), lambda n: n + 1),
    "B": (frozenset({2}), lambda n: 2),
    "C": (frozenset({2}), lambda n: 2),
    "D": (frozenset({2}), lambda n: 4),
    "E6": (frozenset({2, 3}), lambda n: 3),
    "E7": (frozenset({2, 3}), lambda n: 2),
    "E8": (frozenset({2, 3, 5}), lambda n: 1),
    "F": (frozenset({2, 3}), lambda n: 1),
    "G": (frozenset({2, 3}), lambda n: 1),
}


def tabulated_type_data(kind, n):
    """Tabulated (bad primes, index of connection) for an irreducible type."""
    key = kind + str(n) if kind == "E" else kind
    primes, index = TYPE_TABLE[key]
    if kind == "D" and n == 3:
        # D3 = A3: no bad primes
        primes = frozenset()
    return set(primes), index(n)


def check_type(kind, n):
    kind = str(kind).upper()
    if kind not in MIN_RANK:
        raise DomainError(f"unknown type {kind!r}", type=kind, rank=n)
    if not isinstance(n, int) or n < MIN_RANK[kind] or n > MAX_RANK.get(kind, n):
        raise DomainError(f"invalid rank {n!r} for type {kind}", type=kind, rank=n)
    return kind, n


def cartan_matrix(kind, n):
    """Cartan matrix ``<coroot_i, root_j>`` of an irreducible type."""
    kind, n = check_type(kind, n)
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if kind in "ABCD":
        chain = n - 1 if kind != "D" else n - 2
        for i in range(chain):
            link(i, i + 1)
        if kind == "B":
            link(n - 2, n - 1, -1, -2)
        elif kind == "C":
            link(n - 2, n - 1, -2, -1)
        elif kind == "D":
            link(n - 3, n - 1)
    elif kind == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif kind == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif kind == "G":
        link(0, 1, -3, -1)
    return a


def block_diagonal(blocks):
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            out[off + i][off:off + len(row)] = row
        off += len(b)
    return out


def positive_root_coefficients(cartan):
    """Positive roots as simple-root coefficient tuples, by root strings."""
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simple)
    level = list(simple)
    while level:
        nxt = []
        for beta in level:
            for i in range(n):
                down = 0
                v = list(beta)
                while True:
                    v[i] -= 1
                    if tuple(v) in found:
                        down += 1
                    else:
                        break
                pair = sum(cartan[i][j] * beta[j] for j in range(n))
                if down - pair > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in found:
                        found.add(up)
                        nxt.append(up)
        level = nxt
    return sorted(found, key=lambda c: (sum(c), c))


def symmetrizer(cartan):
    """Positive integers d with d_i A_ij = d_j A_ji (half squared root lengths)."""
    n = len(cartan)
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        comp = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if cartan[i][j] and d[j] is None:
                    d[j] = d[i] * cartan[i][j] / cartan[j][i]
                    stack.append(j)
                    comp.append(j)
        m = min(d[i] for i in comp)
        for i in comp:
            d[i] /= m
    return [int(x) for x in d]


@dataclass(frozen=True)
class Component:
    kind: str
    rank: int
    offset: int

    @property
    def label(self):
        return f"{self.kind}{self.rank}"


def _normalize_components(components):
    if isinstance(components, str):
        components = [(s.strip()[0], int(s.strip()[1:])) for s in components.split("x")]
    out = []
    off = 0
    for item in components:
        if isinstance(item, dict):
            kind, n = item["type"], item["rank"]
        else:
            kind, n = item
        kind, n = check_type(kind, n)
        out.append(Component(kind, n, off))
        off += n
    if not out:
        raise DomainError("root datum needs at least one component")
    return tuple(out)


class RootDatum:
    """Root datum of a (product of) irreducible reduced root system(s).

    ``lattice`` is ``"adjoint"`` (X* = ZPhi), ``"sc"`` (X* = weight lattice)
    or an integer matrix whose rows, in fundamental-weight coordinates,
    generate an intermediate lattice.
    """

    def __init__(self, components, lattice="adjoint"):
        self.components = _normalize_components(components)
        self.rank = sum(c.rank for c in self.components)
        self.cartan = block_diagonal([cartan_matrix(c.kind, c.rank)
                                      for c in self.components])
        self.type_tag = "x".join(c.label for c in self.components)
        self.lattice, self.char_basis = self._char_basis(lattice)
        self._build()

    def _char_basis(self, lattice):
        r = self.rank
        if lattice in ("adjoint", "ad"):
            return "adjoint", [[self.cartan[i][j] for i in range(r)] for j in range(r)]
        if lattice in ("sc", "simply-connected"):
            return "sc", [[int(i == j) for j in range(r)] for i in range(r)]
        gens = lattice["generators"] if isinstance(lattice, dict) else lattice
        try:
            gens = [[int(x) for x in row] for row in gens]
        except (TypeError, ValueError):
            raise DomainError("lattice generators must be integer vectors")
        if any(len(row) != r for row in gens):
            raise DomainError("lattice generators have the wrong length", rank=r)
        basis = hermite_rows(gens)
        if len(basis) != r:
            raise DomainError("lattice generators do not span a full-rank lattice")
        lat = IntegerLattice(basis)
        for j in range(r):
            if [self.cartan[i][j] for i in range(r)] not in lat:
                raise DomainError("lattice does not contain the root lattice",
                                  simple_root=j + 1)
        return "custom", basis

    def _build(self):
        r = self.rank
        a = self.cartan
        d = symmetrizer(a)
        pos = positive_root_coefficients(a)
        coeffs = pos + [tuple(-x for x in c) for c in pos]

        def norm(c):
            return sum(c[i] * c[j] * d[i] * a[i][j] for i in range(r) for j in range(r))

        def coroot_coeffs(c):
            scale = Fraction(2, norm(c))
            out = [scale * c[j] * d[j] for j in range(r)]
            assert all(x.denominator == 1 for x in out)
            return tuple(int(x) for x in out)

        basis_t = [[self.char_basis[k][i] for k in range(r)] for i in range(r)]
        basis_inv = inverse(basis_t)
        entries = []
        for c in coeffs:
            weight = [sum(a[i][j] * c[j] for j in range(r)) for i in range(r)]
            x = [sum(basis_inv[i][k] * weight[k] for k in range(r)) for i in range(r)]
            if any(v.denominator != 1 for v in x):
                raise DomainError("root not in the character lattice")
            cc = coroot_coeffs(c)
            y = [sum(self.char_basis[k][i] * cc[i] for i in range(r)) for k in range(r)]
            entries.append((tuple(int(v) for v in x), tuple(y), c, cc))
        entries.sort()
        self.roots = tuple(e[0] for e in entries)
        self.coroots = tuple(e[1] for e in entries)
        self.root_coeffs = tuple(e[2] for e in entries)
        self.coroot_coeffs = tuple(e[3] for e in entries)
        self.index = {c: i for i, c in enumerate(self.root_coeffs)}
        self.root_index = {x: i for i, x in enumerate(self.roots)}
        self.simple = tuple(self.index[tuple(int(i == j) for j in range(r))]
                            for i in range(r))
        self.positive = tuple(lex_positive(c) for c in self.root_coeffs)
        self.negation = tuple(self.index[tuple(-x for x in c)] for c in self.root_coeffs)
        self.symmetrizer = d
        self.component_of = tuple(self._component(c) for c in self.root_coeffs)

    def _component(self, c):
        j = next(i for i, x in enumerate(c) if x)
        return next(k for k, comp in enumerate(self.components)
                    if comp.offset <= j < comp.offset + comp.rank)

    @cached_property
    def pairing(self):
        """``pairing[i][j] = <coroot_i, root_j>``."""
        return [[sum(x * y for x, y in zip(cv, rv)) for rv in self.roots]
                for cv in self.coroots]

    @cached_property
    def reflection_table(self):
        """``table[i][j]`` is the index of s_{root_i}(root_j)."""
        out = []
        for i, ci in enumerate(self.root_coeffs):
            row = []
            for j, cj in enumerate(self.root_coeffs):
                n = self.pairing[i][j]
                row.append(self.index[tuple(y - n * x for x, y in zip(ci, cj))])
            out.append(tuple(row))
        return tuple(out)

    def reflect(self, i, vector):
        """Apply s_{root_i} to a character (X* coordinates)."""
        n = sum(x * y for x, y in zip(self.coroots[i], vector))
        return tuple(v - n * a for v, a in zip(vector, self.roots[i]))

    def coreflect(self, i, vector):
        """Apply s_{root_i} to a cocharacter (X_* coordinates)."""
        n = sum(x * y for x, y in zip(vector, self.roots[i]))
        return tuple(v - n * a for v, a in zip(vector, self.coroots[i]))

    def highest_root(self, component=0):
        comp = self.components[component]
        best = max((c for k, c in zip(self.component_of, self.root_coeffs)
                    if k == component), key=sum)
        return best[comp.offset:comp.offset + comp.rank]

    def __repr__(self):
        return f"RootDatum({self.type_tag}, {self.lattice})"

    def __eq__(self, other):
        return (isinstance(other, RootDatum) and self.type_tag == other.type_tag
                and self.char_basis == other.char_basis)

    def __hash__(self):
        return hash((self.type_tag, tuple(map(tuple, self.char_basis))))


def build_root_datum(components, lattice="adjoint"):
    return RootDatum(components, lattice)


def lex_positive(coeffs):
    """Sign of the first nonzero entry: pairing with (1, eps, eps^2, ...)."""
    for x in coeffs:
        if x:
            return x > 0
    raise ValueError("zero vector has no sign")


def bad_primes(d):
    """Primes dividing a coefficient of the highest root of some component."""
    out = set()
    for k in range(len(d.components)):
        for c in d.highest_root(k):
            out |= prime_factors(c)
    return out


def _subsystem_cartan(d, basis):
    return [[d.pairing[i][j] for j in basis] for i in basis]


def connection_index(obj):
    """Index of the root lattice in the weight lattice (|det Cartan|)."""
    if isinstance(obj, Subsystem):
        return abs(det(_subsystem_cartan(obj.ambient, obj.basis)))
    return abs(det(obj.cartan))


def char_quotient_invariants(d):
    """Invariant factors of X*/ZPhi."""
    return [x for x in smith_invariants([d.roots[i] for i in d.simple]) if x != 1]


def torsion_primes_of_char_quotient(d):
    out = set()
    for x in char_quotient_invariants(d):
        out |= prime_factors(x)
    return out


@dataclass(frozen=True, eq=False)
class Subsystem:
    """A subset of the roots of ``ambient``, given by root indices."""

    ambient: RootDatum
    members: frozenset = field(default_factory=frozenset)

    def __eq__(self, other):
        return (isinstance(other, Subsystem) and self.ambient == other.ambient
                and self.members == other.members)

    def __hash__(self):
        return hash(self.members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    @cached_property
    def basis(self):
        return subsystem_basis(self)

    @cached_property
    def fundamental_coweights(self):
        return fundamental_coweights(self)[0]

    @cached_property
    def connection_index(self):
        return connection_index(self)

    def is_closed(self):
        return closure(self.ambient, self.members).members == self.members

    def is_rationally_closed(self):
        return rational_closure(self.ambient, self.members).members == self.members

    def coefficient_rows(self):
        return [self.ambient.root_coeffs[i] for i in sorted(self.members)]


def _indices(d, subset):
    if isinstance(subset, Subsystem):
        return set(subset.members)
    out = set()
    for s in subset:
        if isinstance(s, int):
            if not 0 <= s < len(d.roots):
                raise DomainError("root index out of range", index=s)
            out.add(s)
        else:
            s = tuple(s)
            if s not in d.index:
                raise DomainError("not a root", coefficients=list(s))
            out.add(d.index[s])
    return out


def closure(d, subset):
    """Smallest closed subsystem containing ``subset``: ZS meet Phi."""
    s = _indices(d, subset)
    if not s:
        return Subsystem(d, frozenset())
    lat = IntegerLattice([d.root_coeffs[i] for i in s])
    return Subsystem(d, frozenset(i for i, c in enumerate(d.root_coeffs) if c in lat))


def rational_closure(d, subset):
    """QS meet Phi."""
    s = _indices(d, subset)
    if not s:
        return Subsystem(d, frozenset())
    span = RationalSpan([d.root_coeffs[i] for i in s])
    return Subsystem(d, frozenset(i for i, c in enumerate(d.root_coeffs) if c in span))


def subsystem_basis(s, functional=None):
    """Indecomposable positive members of ``s``.

    Positivity is the lexicographic sign of simple-root coefficients unless a
    rational ``functional`` (simple-root coordinates) is given, in which case
    it must not vanish on any member.
    """
    d = s.ambient
    if not s.members:
        raise DomainError("empty subsystem has no basis")
    if functional is None:
        pos = [i for i in s.members if d.positive[i]]
    else:
        vals = {i: sum(Fraction(f) * c for f, c in zip(functional, d.root_coeffs[i]))
                for i in s.members}
        if any(v == 0 for v in vals.values()):
            raise DomainError("functional vanishes on a root of the subsystem")
        pos = [i for i, v in vals.items() if v > 0]
    pset = {d.root_coeffs[i] for i in pos}
    basis = []
    for i in sorted(pos):
        ci = d.root_coeffs[i]
        if not any(tuple(x - y for x, y in zip(ci, d.root_coeffs[j])) in pset
                   for j in pos if j != i):
            basis.append(i)
    if rank([d.root_coeffs[i] for i in basis]) != len(basis):
        raise AssertionError("subsystem basis is not linearly independent")
    return tuple(basis)


def fundamental_coweights(s, basis=None):
    """Rational coweights dual to a basis of ``s``.

    Returns ``(vectors, coefficients, denominator_primes)``: ``vectors[a]`` is
    the coweight for basis root ``a`` in X_* coordinates, ``coefficients[a]``
    maps each basis root ``b`` to the coefficient of its coroot.
    """
    d = s.ambient
    basis = tuple(basis) if basis is not None else s.basis
    if not basis:
        return {}, {}, set()
    cm = _subsystem_cartan(d, basis)
    try:
        inv = inverse(cm)
    except ZeroDivisionError:
        raise AssertionError("singular Cartan matrix for a subsystem basis")
    vectors, coefficients, primes = {}, {}, set()
    for i, a in enumerate(basis):
        coeff = {b: inv[i][k] for k, b in enumerate(basis)}
        coefficients[a] = coeff
        vectors[a] = tuple(sum(coeff[b] * d.coroots[b][m] for b in basis)
                           for m in range(d.rank))
        for x in coeff.values():
            primes |= prime_factors(x.denominator)
    return vectors, coefficients, primes


def coweight_multiplier(coefficients):
    """Least positive n with n * coweight in the coroot lattice of the basis."""
    return lcm(*(x.denominator for x in coefficients.values()))


def subsystem_from_simple(d, subset):
    """Closed subsystem generated by simple roots (0-based simple indices)."""
    return closure(d, [d.simple[i] for i in subset])

