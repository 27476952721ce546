"""Weyl groups as permutation groups on the roots.

An element is stored as the permutation it induces on the root list of its
datum (``perm[j]`` is the index of ``w(root_j)``); since the roots span, this
determines the linear action, and it doubles as a canonical hash key.
"""

from functools import cached_property
from math import factorial, lcm

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import CapExceeded, DomainError
from .lattice import inverse
from .rootsys import RootDatum, check_type

DEFAULT_CAP = 60000

_EXCEPTIONAL_ORDERS = {
    ("E", 6): 2 ** 7 * 3 ** 4 * 5,
    ("E", 7): 2 ** 10 * 3 ** 4 * 5 * 7,
    ("E", 8): 2 ** 14 * 3 ** 5 * 5 ** 2 * 7,
    ("F", 4): 2 ** 7 * 3 ** 2,
    ("G", 2): 2 ** 2 * 3,
}


def _components(obj):
    if isinstance(obj, RootDatum):
        return [(c.kind, c.rank) for c in obj.components]
    if isinstance(obj, str):
        return [(s.strip()[0].upper(), int(s.strip()[1:])) for s in obj.split("x")]
    if isinstance(obj, tuple) and len(obj) == 2 and isinstance(obj[0], str):
        return [obj]
    return list(obj)


def weyl_order_formula(type_tag):
    """Order of the Weyl group from closed formulas, multiplied over factors."""
    out = 1
    for kind, n in _components(type_tag):
        kind, n = check_type(kind, n)
        if kind == "A":
            out *= factorial(n + 1)
        elif kind in "BC":
            out *= 2 ** n * factorial(n)
        elif kind == "D":
            out *= 2 ** (n - 1) * factorial(n)
        else:
            out *= _EXCEPTIONAL_ORDERS[(kind, n)]
    return out


def contains_minus_one(type_tag):
    """Whether -1 lies in W: false exactly for A_n (n >= 2), D_odd, E6."""
    for kind, n in _components(type_tag):
        kind, n = check_type(kind, n)
        if kind == "A" and n >= 2:
            return False
        if kind == "D" and n % 2 == 1:
            return False
        if kind == "E" and n == 6:
            return False
    return True


def char_poly_of_matrix(m):
    """Characteristic polynomial det(tI - M) of an integer matrix, highest
    degree first (Faddeev-LeVerrier; the divisions are exact)."""
    n = len(m)
    coeffs = [1]
    acc = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[-1]
        for i in range(n):
            acc[i][i] += c_prev
        acc = [[sum(m[i][l] * acc[l][j] for l in range(n)) for j in range(n)]
               for i in range(n)]
        tr = sum(acc[i][i] for i in range(n))
        assert tr % k == 0
        coeffs.append(-tr // k)
    return coeffs


def poly_eval(coeffs, x):
    out = 0
    for c in coeffs:
        out = out * x + c
    return out


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def t_pow_plus_one(n):
    """Coefficients of t^n + 1, highest degree first."""
    return [1] + [0] * (n - 1) + [1]


class WeylElement:
    __slots__ = ("group", "perm")

    def __init__(self, group, perm):
        self.group = group
        self.perm = np.asarray(perm, dtype=group.dtype)

    @property
    def key(self):
        return self.perm.tobytes()

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __mul__(self, other):
        return WeylElement(self.group, self.perm[other.perm])

    def inverse(self):
        inv = np.empty_like(self.perm)
        inv[self.perm] = np.arange(len(self.perm), dtype=self.perm.dtype)
        return WeylElement(self.group, inv)

    def __pow__(self, n):
        out = self.group.identity()
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_identity(self):
        return bool((self.perm == np.arange(len(self.perm))).all())

    def apply_root(self, j):
        return int(self.perm[j])

    def order(self):
        return element_order(self)

    def char_poly(self):
        return char_poly(self)

    def is_elliptic(self):
        return is_elliptic(self)

    def coroot_basis_matrix(self):
        """Integer matrix of w on X_* (x) Q in the basis of simple coroots."""
        d = self.group.datum
        cols = [d.coroot_coeffs[int(self.perm[i])] for i in d.simple]
        return [[cols[j][i] for j in range(d.rank)] for i in range(d.rank)]

    @property
    def matrix(self):
        """Integer matrix of w on the cocharacter lattice X_* (dual-basis
        coordinates)."""
        d = self.group.datum
        src = [list(d.coroots[i]) for i in d.simple]
        dst = [list(d.coroots[int(self.perm[i])]) for i in d.simple]
        # columns: M @ src_col = dst_col  =>  M = Dst @ Src^{-1}
        src_cols = [[src[j][i] for j in range(d.rank)] for i in range(d.rank)]
        dst_cols = [[dst[j][i] for j in range(d.rank)] for i in range(d.rank)]
        inv = inverse(src_cols)
        out = [[sum(dst_cols[i][k] * inv[k][j] for k in range(d.rank))
                for j in range(d.rank)] for i in range(d.rank)]
        assert all(x.denominator == 1 for row in out for x in row)
        return [[int(x) for x in row] for row in out]

    def __repr__(self):
        return f"WeylElement({self.group.datum.type_tag}, order={self.order()})"


class WeylGroup:
    """Weyl group of a root datum, generated by simple reflections."""

    def __init__(self, datum):
        self.datum = datum
        n = len(datum.roots)
        self.dtype = np.uint8 if n < 256 else np.uint16
        table = datum.reflection_table
        self.gens = [np.array(table[i], dtype=self.dtype) for i in datum.simple]
        self.order = weyl_order_formula(datum)
        self._elements = None
        self._lookup = None

    def identity(self):
        return WeylElement(self, np.arange(len(self.datum.roots)))

    def reflection(self, root_index):
        return WeylElement(self, self.datum.reflection_table[root_index])

    def simple_reflection(self, i):
        """Reflection in the i-th simple root (0-based Bourbaki index)."""
        return WeylElement(self, self.gens[i])

    @property
    def enumerated(self):
        return self._elements is not None

    def enumerate(self, cap=DEFAULT_CAP):
        """Breadth-first closure over right multiplication by generators."""
        if self._elements is not None:
            return self
        if self.order > cap:
            raise CapExceeded("Weyl group larger than the enumeration cap",
                              order=self.order, cap=cap)
        ident = np.arange(len(self.datum.roots), dtype=self.dtype)
        seen = {ident.tobytes(): 0}
        rows = [ident]
        frontier = ident[None, :]
        while len(frontier):
            fresh = []
            for s in self.gens:
                for row in frontier[:, s]:
                    key = row.tobytes()
                    if key not in seen:
                        seen[key] = len(rows)
                        rows.append(row)
                        fresh.append(row)
            frontier = np.array(fresh, dtype=self.dtype) if fresh else frontier[:0]
        self._elements = np.array(rows, dtype=self.dtype)
        self._lookup = seen
        if len(rows) != self.order:
            raise AssertionError(f"enumerated {len(rows)} elements, expected {self.order}")
        return self

    @property
    def elements(self):
        if self._elements is None:
            raise DomainError("group not enumerated")
        return self._elements

    def __len__(self):
        return self.order

    def __getitem__(self, i):
        return WeylElement(self, self.elements[i])

    def __iter__(self):
        for row in self.elements:
            yield WeylElement(self, row)

    def index_of(self, w):
        return self._lookup[w.key]

    def indices_of_rows(self, rows):
        return np.fromiter((self._lookup[r.tobytes()] for r in rows),
                           dtype=np.int64, count=len(rows))

    def coxeter_element(self):
        return coxeter_element(self)

    @cached_property
    def classes(self):
        """Conjugacy classes as arrays of element indices, ordered by their
        smallest element."""
        els = self.elements
        n = len(els)
        src, dst = [], []
        for s in self.gens:
            conj = s[els[:, s]]
            src.append(np.arange(n))
            dst.append(self.indices_of_rows(conj))
        src = np.concatenate(src)
        dst = np.concatenate(dst)
        graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n))
        _, labels = connected_components(graph, directed=True, connection="weak")
        order = {}
        for idx, lab in enumerate(labels):
            order.setdefault(int(lab), idx)
        ranked = sorted(order, key=order.get)
        return [np.flatnonzero(labels == lab) for lab in ranked]

    @cached_property
    def class_of(self):
        out = np.empty(self.order, dtype=np.int64)
        for k, members in enumerate(self.classes):
            out[members] = k
        return out

    @cached_property
    def class_data(self):
        """Per class: representative index, size, order, char poly."""
        out = []
        for members in self.classes:
            rep = self[int(members[0])]
            out.append({
                "representative": int(members[0]),
                "size": int(len(members)),
                "order": rep.order(),
                "centralizer_order": self.order // len(members),
                "char_poly": rep.char_poly(),
            })
        return out

    def element_orders(self):
        """Order of every enumerated element (via its class)."""
        orders = np.array([c["order"] for c in self.class_data], dtype=np.int64)
        return orders[self.class_of]


def generate_group(datum, cap=DEFAULT_CAP):
    return WeylGroup(datum).enumerate(cap)


def element_order(w):
    perm = w.perm
    seen = np.zeros(len(perm), dtype=bool)
    out = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = int(perm[j])
            length += 1
        out = lcm(out, length)
    return out


def char_poly(w):
    return char_poly_of_matrix(w.coroot_basis_matrix())


def is_elliptic(w):
    """No nonzero fixed vector: char_poly(1) != 0."""
    return poly_eval(char_poly(w), 1) != 0


def coxeter_element(group):
    """s_1 s_2 ... s_r in Bourbaki order."""
    out = group.identity()
    for i in range(group.datum.rank):
        out = out * group.simple_reflection(i)
    return out


def minus_one(group):
    """The element acting as -1, if it exists (None otherwise)."""
    w = WeylElement(group, group.datum.negation)
    if group.enumerated:
        return w if w.key in group._lookup else None
    raise DomainError("group not enumerated")


def longest_element(group):
    """The unique element sending every positive root to a negative root."""
    d = group.datum
    pos = np.array([i for i in range(len(d.roots)) if d.positive[i]])
    negmask = ~np.array(d.positive)
    hits = np.flatnonzero(negmask[group.elements[:, pos]].all(axis=1))
    if len(hits) != 1:
        raise AssertionError("longest element not unique")
    w0 = group[int(hits[0])]
    simple = set(d.simple)
    neg_simple = {d.negation[i] for i in simple}
    assert {w0.apply_root(i) for i in simple} == neg_simple
    assert (w0 * w0).is_identity()
    return w0


def conjugacy_report(group, predicate=None):
    """Classes (as dicts) whose data satisfy ``predicate``."""
    data = group.class_data
    return [dict(c) for c in data if predicate is None or predicate(c)]


def order_divisible_by(n):
    return lambda c: c["order"] % n == 0


def no_order_multiple(group, p):
    """True iff no element has order N*p with N > 1."""
    for c in group.class_data:
        o = c["order"]
        if o % p == 0 and o // p > 1:
            return False
    return True


def diagram_automorphism(datum, sigma):
    """Root permutation induced by a permutation ``sigma`` of the simple
    roots (0-based: simple i goes to simple sigma[i])."""
    r = datum.rank
    sigma = [int(x) for x in sigma]
    if sorted(sigma) != list(range(r)):
        raise DomainError("not a permutation of the simple roots", sigma=sigma)
    a = datum.cartan
    if any(a[sigma[i]][sigma[j]] != a[i][j] for i in range(r) for j in range(r)):
        raise DomainError("permutation does not preserve the Cartan matrix", sigma=sigma)
    out = []
    for c in datum.root_coeffs:
        img = [0] * r
        for i in range(r):
            img[sigma[i]] = c[i]
        out.append(datum.index[tuple(img)])
    return np.array(out)


def diagram_fixed_elements(group, sigma):
    """Indices of elements commuting with the diagram automorphism."""
    s = diagram_automorphism(group.datum, sigma).astype(group.dtype)
    s_inv = np.empty_like(s)
    s_inv[s] = np.arange(len(s), dtype=s.dtype)
    els = group.elements
    conj = s[els[:, s_inv]]
    return np.flatnonzero((conj == els).all(axis=1))


def diagram_fixed_subgroup(group, sigma):
    return len(diagram_fixed_elements(group, sigma))

