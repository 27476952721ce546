"""Brute-force verifiers.

Nothing here uses coweights, Smith forms, the class machinery or the
construction's own evaluation helpers: roots are evaluated by raw field
arithmetic, lattices are compared through gcds of minors, and group facts
come from scanning every element.
"""

import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import gcd

import numpy as np

from .errors import DomainError
from .localfield import INF


@dataclass
class OracleReport:
    claim: str
    method: str
    result: object
    passed: bool
    elapsed: float


def run_claim(claim, method, fn):
    """Time ``fn``; it returns (result, passed)."""
    start = time.perf_counter()
    result, passed = fn()
    return OracleReport(claim, method, result, bool(passed), time.perf_counter() - start)


# goodness by direct evaluation


def _lie_root_value(X, root):
    ctx = X.field
    acc = ctx.zero()
    for c, x in zip(root, X.coords):
        for _ in range(abs(c)):
            acc = acc + x if c > 0 else acc - x
    return acc


def _group_root_value(gamma, root):
    ctx = gamma.field
    acc = ctx.one()
    for c, v in zip(root, gamma.values):
        if c < 0:
            v = ctx.one() / v
        for _ in range(abs(c)):
            acc = acc * v
    return acc


def _classify(values, basis_values):
    """Shared verdict logic: r from roots and basis together."""
    best, bound = INF, INF
    for x in list(values) + list(basis_values):
        if len(x.coeffs):
            best = min(best, Fraction(x.start, x.ctx.e))
        elif x.prec is not None:
            bound = min(bound, Fraction(x.prec, x.ctx.e))
    if bound is not INF and not best <= bound:
        return {"determinate": False, "known_up_to": bound}
    per_root, good, certain = [], True, True
    for x in values:
        if len(x.coeffs):
            v = Fraction(x.start, x.ctx.e)
            per_root.append(v)
            good = good and v == best
        elif x.prec is None:
            per_root.append(INF)
        else:
            per_root.append(("zero-to", Fraction(x.prec, x.ctx.e)))
            if not Fraction(x.prec, x.ctx.e) > best:
                return {"determinate": False, "known_up_to": Fraction(x.prec, x.ctx.e)}
            certain = False
    return {"determinate": True, "good": good, "certain": good and certain,
            "depth": best, "per_root": per_root}


def exhaustive_goodness(element):
    """Goodness verdict for a Lie or group torus element."""
    d = element.datum
    if hasattr(element, "coords"):
        vals = [_lie_root_value(element, a) for a in d.roots]
        basis = list(element.coords)
    else:
        vals = [_group_root_value(element, a) - 1 for a in d.roots]
        basis = [v - 1 for v in element.values]
    return _classify(vals, basis)


def verify_root(y, x, n):
    """y is an n-th root of x, checked by direct powering."""
    acc = y.ctx.one()
    for _ in range(n):
        acc = acc * y
    return acc.agrees_with(x)


# lattices via determinantal divisors


def _det(m):
    """Integer determinant by cofactor expansion (small matrices)."""
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * _det([row[:j] + row[j + 1:] for row in m[1:]])
               for j in range(len(m)) if m[0][j])


def _lattice_signature(rows):
    """(rank, gcd of maximal nonzero minors) for the span of ``rows``."""
    rows = [list(r) for r in rows]
    if not rows:
        return 0, 1
    n = len(rows[0])
    for k in range(min(len(rows), n), 0, -1):
        g = 0
        for rs in combinations(range(len(rows)), k):
            for cs in combinations(range(n), k):
                g = gcd(g, _det([[rows[i][j] for j in cs] for i in rs]))
        if g:
            return k, g
    return 0, 1


def _primes(n):
    out, q = set(), 2
    while q * q <= n:
        while n % q == 0:
            out.add(q)
            n //= q
        q += 1
    if n > 1:
        out.add(n)
    return out


def enumerate_closed_subsystems(d):
    """All closed subsystems with the torsion primes of ZPhi/ZPhi0.

    Subsets are symmetric unions of root pairs; closedness means every root in
    the integer span already belongs to the subset.
    """
    if d.rank > 3:
        raise DomainError("closed-subsystem enumeration limited to rank <= 3", rank=d.rank)
    coeffs = d.root_coeffs
    pos = [i for i in range(len(coeffs)) if d.positive[i]]
    out = []
    for choice in product((False, True), repeat=len(pos)):
        chosen = [i for i, c in zip(pos, choice) if c]
        rows = [coeffs[i] for i in chosen]
        sig = _lattice_signature(rows)
        closed = True
        for i in pos:
            if i in chosen:
                continue
            if _lattice_signature(rows + [coeffs[i]]) == sig:
                closed = False
                break
        if closed:
            members = frozenset(chosen) | {d.negation[i] for i in chosen}
            out.append((members, _primes(sig[1])))
    return out


def bad_primes_by_enumeration(d):
    out = set()
    for _, primes in enumerate_closed_subsystems(d):
        out |= primes
    return out


# Weyl group scans


def _simple_root_matrices(group):
    """Matrices of every element on the simple-root coordinates."""
    d = group.datum
    coeffs = np.array(d.root_coeffs, dtype=np.int64)
    images = group.elements[:, list(d.simple)].astype(np.int64)
    return np.transpose(coeffs[images], (0, 2, 1))


def batched_char_polys(mats):
    """Faddeev-LeVerrier on a stack of integer matrices, highest degree first."""
    n_el, n, _ = mats.shape
    eye = np.broadcast_to(np.eye(n, dtype=np.int64), mats.shape)
    coeffs = np.zeros((n_el, n + 1), dtype=np.int64)
    coeffs[:, 0] = 1
    m = np.zeros_like(mats)
    for k in range(1, n + 1):
        m = mats @ m + coeffs[:, k - 1, None, None] * eye
        tr = np.trace(mats @ m, axis1=1, axis2=2)
        coeffs[:, k] = -tr // k
    return coeffs


def search_char_poly(group, target):
    """Index of the first element whose characteristic polynomial is ``target``."""
    target = np.array(target, dtype=np.int64)
    polys = batched_char_polys(_simple_root_matrices(group))
    hits = np.flatnonzero((polys == target).all(axis=1))
    return int(hits[0]) if len(hits) else None


def minus_one_by_search(group):
    """Whether some element sends every root to its negative."""
    neg = np.array(group.datum.negation, dtype=group.elements.dtype)
    return bool((group.elements == neg).all(axis=1).any())


def orders_by_powering(group):
    """Order of each element by repeated composition."""
    els = group.elements.astype(np.int64)
    ident = np.arange(els.shape[1])
    orders = np.zeros(len(els), dtype=np.int64)
    cur = els.copy()
    k = 1
    while (orders == 0).any():
        done = (cur == ident).all(axis=1) & (orders == 0)
        orders[done] = k
        cur = np.take_along_axis(els, cur, axis=1)
        k += 1
    return orders


def fixed_vector_free(mats):
    """Elliptic test: det(w - 1) != 0 for each matrix."""
    n = mats.shape[1]
    return np.round(np.linalg.det((mats - np.eye(n)).astype(float))) != 0
