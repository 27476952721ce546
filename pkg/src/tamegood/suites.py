"""Acceptance criteria as runnable checks.

Each ``criterion_*`` function returns an OracleReport whose ``result`` holds
the compared values. Construction-side answers are always compared against
an independent route: closed formulas, brute-force scans in ``oracle`` or
tabulated constants.
"""

import time
from fractions import Fraction
from math import lcm

import numpy as np

from . import oracle
from .errors import DomainError
from .goodcore import goodify_group, goodify_lie, hypothesis_soundness, tame_prime_bounds
from .lattice import prime_factors
from .localfield import FieldContext, FieldElement
from .rootsys import RootDatum, bad_primes, connection_index, tabulated_type_data
from .torus import (
    TorusGroupElement, TorusLieElement, eval_char_group, is_good_group, is_good_lie,
)
from .weyl import (
    WeylGroup, coxeter_element, diagram_fixed_subgroup, no_order_multiple,
    order_divisible_by, conjugacy_report, poly_mul, t_pow_plus_one,
    weyl_order_formula,
)

RANK_LE_6 = ([("A", n) for n in range(1, 7)] + [("B", n) for n in range(2, 7)]
             + [("C", n) for n in range(3, 7)] + [("D", n) for n in range(4, 7)]
             + [("E", 6), ("F", 4), ("G", 2)])

TABULATED_TYPES = ([("A", n) for n in range(1, 9)] + [("B", n) for n in range(2, 9)]
                + [("C", n) for n in range(2, 9)] + [("D", n) for n in range(4, 9)]
                + [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)])

RANK_LE_3 = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("G", 2)]

RANK_LE_4 = ([("A", n) for n in range(1, 5)] + [("B", n) for n in range(2, 5)]
             + [("C", n) for n in range(3, 5)] + [("D", 4), ("F", 4), ("G", 2)])

# (type, rank) -> (primes dividing |W|, upper bound set), transcribed
TAME_EXPECTED = {
    ("A", 2): ({2, 3}, {3}),
    ("A", 3): ({2, 3}, {2}),
    ("A", 4): ({2, 3, 5}, {5}),
    ("A", 5): ({2, 3, 5}, {2, 3}),
    ("A", 6): ({2, 3, 5, 7}, {7}),
    ("D", 4): ({2, 3}, {2, 3}),
    ("D", 5): ({2, 3, 5}, {2, 3}),
    ("E", 6): ({2, 3, 5}, {2, 3}),
}

GOODIFY_DATA = [("A", 2), ("B", 2), ("G", 2), ("A", 3), ("D", 4)]
GOODIFY_FIELDS = [(7, 1), (11, 1), (7, 2)]


def _minus_one_expected(kind, n):
    """-1 is absent exactly for A_n, D_(2m+1) (n, m >= 2) and E6."""
    if kind == "A" and n >= 2:
        return False
    if kind == "D" and n % 2 == 1 and n >= 5:
        return False
    return not (kind == "E" and n == 6)


def criterion_1():
    def run():
        rows, ok = [], True
        for kind, n in RANK_LE_6:
            start = time.perf_counter()
            group = WeylGroup(RootDatum([(kind, n)])).enumerate()
            size = len(group.elements)
            formula = weyl_order_formula(f"{kind}{n}")
            elapsed = time.perf_counter() - start
            good = size == formula and (kind != "E" or elapsed < 60)
            ok &= good
            rows.append({"type": f"{kind}{n}", "generated": size, "formula": formula,
                         "seconds": round(elapsed, 3)})
        return rows, ok
    return oracle.run_claim("1", "breadth-first generation vs closed order formula", run)


def criterion_2():
    def run():
        rows, ok = [], True
        for kind, n in TABULATED_TYPES:
            d = RootDatum([(kind, n)])
            primes, index = tabulated_type_data(kind, n)
            got = (bad_primes(d), connection_index(d))
            good = got == (primes, index)
            if (kind, n) in RANK_LE_3:
                enum = oracle.bad_primes_by_enumeration(d)
                good &= enum == primes
            else:
                enum = None
            ok &= good
            rows.append({"type": f"{kind}{n}", "bad_primes": sorted(got[0]),
                         "index": got[1], "table": [sorted(primes), index],
                         "enumerated": None if enum is None else sorted(enum)})
        return rows, ok
    return oracle.run_claim("2", "highest-root coefficients and Cartan determinant vs "
                            "table; closed-subsystem enumeration for rank <= 3", run)


def criterion_3():
    def run():
        rows, ok = [], True
        for kind, n in RANK_LE_6:
            group = WeylGroup(RootDatum([(kind, n)])).enumerate()
            found = oracle.minus_one_by_search(group)
            good = found == _minus_one_expected(kind, n)
            ok &= good
            rows.append({"type": f"{kind}{n}", "found": found})
        return rows, ok
    return oracle.run_claim("3", "scan of all elements for the negation permutation", run)


def criterion_4():
    def run():
        group = WeylGroup(RootDatum([("E", 6)])).enumerate()
        classes = conjugacy_report(group, order_divisible_by(5))
        orders = oracle.orders_by_powering(group)
        five = [c for c in classes if c["order"] == 5]
        cox = coxeter_element(group)
        mats = oracle._simple_root_matrices(group)
        cox_idx = group.index_of(cox)
        result = {
            "classes_divisible_by_5": [(c["order"], c["size"], c["centralizer_order"])
                                       for c in classes],
            "order_5_elements_by_powering": int((orders == 5).sum()),
            "coxeter_order": cox.order(),
            "coxeter_order_by_powering": int(orders[cox_idx]),
            "coxeter_elliptic": cox.is_elliptic(),
            "coxeter_elliptic_by_det": bool(oracle.fixed_vector_free(mats[cox_idx:cox_idx + 1])[0]),
        }
        ok = (len(classes) == 2 and len(five) == 1 and five[0]["size"] == 5184
              and five[0]["centralizer_order"] == 10
              and result["order_5_elements_by_powering"] == 5184
              and result["coxeter_order"] == 12 == result["coxeter_order_by_powering"]
              and result["coxeter_elliptic"] and result["coxeter_elliptic_by_det"])
        return result, ok
    return oracle.run_claim("4", "class sizes from orbits vs element orders by powering", run)


def criterion_5():
    def run():
        group = WeylGroup(RootDatum([("D", 5)])).enumerate()
        mats = oracle._simple_root_matrices(group)
        orders = oracle.orders_by_powering(group)
        rows, ok = [], True
        for i, target in ((4, poly_mul(t_pow_plus_one(4), t_pow_plus_one(1))),
                          (3, poly_mul(t_pow_plus_one(3), t_pow_plus_one(2)))):
            idx = oracle.search_char_poly(group, target)
            if idx is None:
                rows.append({"char_poly": target, "found": False})
                ok = False
                continue
            w = group[idx]
            expected = lcm(2 * (5 - i), 2 * i)
            good = (w.char_poly() == target and w.order() == expected == orders[idx]
                    and w.is_elliptic() and bool(oracle.fixed_vector_free(mats[idx:idx + 1])[0]))
            ok &= good
            rows.append({"char_poly": target, "found": True, "order": w.order(),
                         "expected_order": expected})
        no_5n = no_order_multiple(group, 5)
        scan = not any(o % 5 == 0 and o > 5 for o in orders)
        ok &= no_5n and scan
        return {"witnesses": rows, "no_order_5N": no_5n, "no_order_5N_scan": scan}, ok
    return oracle.run_claim("5", "char-poly search, orders by powering, det(w - 1)", run)


def _fixed_by_matrices(group, sigma):
    """Count elements commuting with the diagram permutation, via matrices."""
    mats = oracle._simple_root_matrices(group)
    n = mats.shape[1]
    perm = np.zeros((n, n), dtype=np.int64)
    for i, j in enumerate(sigma):
        perm[j, i] = 1
    return int((np.einsum("ij,njk->nik", perm, mats)
                == np.einsum("nij,jk->nik", mats, perm)).all(axis=(1, 2)).sum())


def criterion_6():
    def run():
        group = WeylGroup(RootDatum([("D", 4)])).enumerate()
        swap, triality = [0, 1, 3, 2], [2, 1, 3, 0]
        result = {
            "swap": diagram_fixed_subgroup(group, swap),
            "swap_by_matrices": _fixed_by_matrices(group, swap),
            "triality": diagram_fixed_subgroup(group, triality),
            "triality_by_matrices": _fixed_by_matrices(group, triality),
        }
        ok = (result["swap"] == 48 == result["swap_by_matrices"]
              and result["triality"] == 12 == result["triality_by_matrices"])
        return result, ok
    return oracle.run_claim("6", "root-permutation conjugation vs matrix commutation", run)


def criterion_7():
    def run():
        rows, ok = [], True
        for (kind, n), (lower, upper) in TAME_EXPECTED.items():
            rep = tame_prime_bounds(kind, n)
            good = (set(rep.excluded_lower) == lower and set(rep.excluded_upper) == upper
                    and set(rep.excluded_upper) <= set(rep.excluded_lower))
            ok &= good
            rows.append({"type": rep.type_tag, "lower": rep.excluded_lower,
                         "upper": rep.excluded_upper})
        return rows, ok
    return oracle.run_claim("7", "prime sets vs transcribed statements", run)


# random torus elements


def _kernel_mod_p(rows, n, p):
    """Basis of {y in F_p^n : r . y = 0 for all r in rows}."""
    m = [[x % p for x in r] for r in rows]
    pivots, row = [], 0
    for col in range(n):
        piv = next((i for i in range(row, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = pow(m[row][col], -1, p)
        m[row] = [x * inv % p for x in m[row]]
        for i in range(len(m)):
            if i != row and m[i][col]:
                f = m[i][col]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc] % p
        basis.append(v)
    return basis


def _random_leading(d, ctx, rng, group):
    """Residue vector (per X_* coordinate) killed by a random conjugate of a
    random set of simple roots, so that the higher-valuation roots form a
    nontrivial subsystem most of the time."""
    chosen = [i for i in range(d.rank) if rng.random() < 0.5]
    if group is not None and len(chosen):
        w = group[int(rng.integers(len(group.elements)))]
        rows = [d.roots[w.apply_root(d.simple[i])] for i in chosen]
    else:
        rows = [d.roots[d.simple[i]] for i in chosen]
    kernel = _kernel_mod_p(rows, d.rank, ctx.p)
    deg = ctx.residue.degree
    lead = np.zeros((d.rank, deg), dtype=np.int64)
    for v in kernel:
        c = rng.integers(0, ctx.p, deg)
        lead += np.outer(v, c)
    return lead % ctx.p


def _series(ctx, r, lead, rng, precision):
    """lead * t^r + random higher terms below ``precision``."""
    head = FieldElement(ctx, ctx.index(r), lead[None, :], None)
    tail = ctx.random_element(rng, r + Fraction(1, ctx.e), precision, zero_prob=0.3)
    return head + tail


def random_field(rng):
    p, m = GOODIFY_FIELDS[int(rng.integers(len(GOODIFY_FIELDS)))]
    e = int(rng.choice([x for x in (1, 2, 3) if x % p]))
    return p, m, e


def random_lie_element(d, rng, group=None):
    p, m, e = random_field(rng)
    r = Fraction(int(rng.integers(-2 * e, 3 * e + 1)), e)
    precision = r + 3
    ctx = FieldContext(p, 1, m, e, precision)
    while True:
        lead = _random_leading(d, ctx, rng, group)
        if lead.any():
            break
    coords = [_series(ctx, r, lead[i], rng, precision) for i in range(d.rank)]
    return TorusLieElement(d, ctx, coords)


def random_group_element(d, rng, group=None):
    p, m, e = random_field(rng)
    r = Fraction(int(rng.integers(1, 3 * e + 1)), e)
    ctx = FieldContext(p, 1, m, e, r + 3)
    while True:
        lead = _random_leading(d, ctx, rng, group)
        if lead.any():
            break
    values = [1 + _series(ctx, r, lead[i], rng, r + 3) for i in range(d.rank)]
    return TorusGroupElement(d, ctx, values)


def _alternative_functional(d, rng):
    """Random generic functional on simple-root coordinates."""
    while True:
        f = [Fraction(int(x), int(y)) for x, y in
             zip(rng.integers(-50, 51, d.rank), rng.integers(1, 7, d.rank))]
        if all(sum(a * b for a, b in zip(f, c)) for c in d.root_coeffs):
            return f


def _check_lie(X, rng):
    res = goodify_lie(X)
    r = res.depth
    verdict = oracle.exhaustive_goodness(res.X2)
    if not (verdict["determinate"] and verdict["good"] and verdict["depth"] == r):
        return "oracle does not certify X2"
    if is_good_lie(res.X2).good != verdict["good"]:
        return "construction and oracle disagree"
    diff = X - res.X2
    if not all(c.val_or_bound()[0] > r for c in diff.coords):
        return "X - X2 not of depth > r"
    again = goodify_lie(res.X2)
    if not again.X2.agrees_with(res.X2):
        return "not idempotent"
    if res.phi0.members and len(res.phi0) < len(X.datum.roots):
        alt = goodify_lie(X, functional=_alternative_functional(X.datum, rng))
        if not alt.X2.agrees_with(res.X2):
            return "X2 depends on the choice of basis"
    return None if res.phi0.members else ""



def _check_group(g, rng):
    res = goodify_group(g)
    r = res.depth
    d = g.datum
    verdict = oracle.exhaustive_goodness(res.gamma2)
    if not (verdict["determinate"] and verdict["good"] and verdict["depth"] == r):
        return "oracle does not certify gamma2"
    if is_good_group(res.gamma2).good != verdict["good"]:
        return "construction and oracle disagree"
    for b in res.phi0.members:
        if not (oracle._group_root_value(res.gamma2, d.roots[b]) - 1).vanishes():
            return "beta(gamma2) != 1 on Phi0"
    for a, n in res.n_map.items():
        y_n = oracle._group_root_value(res.gamma1, d.roots[a])
        if not y_n.agrees_with(eval_char_group(g, d.roots[a])):
            return "alpha(gamma1) != alpha(gamma) on the basis"
    if not all((v - 1).val_or_bound()[0] > r for v in res.gamma1.values):
        return "gamma1 not of depth > r"
    again = goodify_group(res.gamma2)
    if not again.gamma2.agrees_with(res.gamma2):
        return "not idempotent"
    if res.phi0.members:
        alt = goodify_group(g, functional=_alternative_functional(d, rng))
        if not alt.gamma2.agrees_with(res.gamma2):
            return "gamma2 depends on the choice of basis"
    return None if res.phi0.members else ""



def _goodify_suite(claim, make, check, count, seed):
    def run():
        rng = np.random.default_rng(seed)
        rows, failures = [], []
        for kind, n in GOODIFY_DATA:
            for lattice in ("sc", "adjoint"):
                d = RootDatum([(kind, n)], lattice)
                group = WeylGroup(d).enumerate()
                nontrivial = 0
                for k in range(count):
                    x = make(d, rng, group)
                    try:
                        msg = check(x, rng)
                    except (DomainError, AssertionError) as exc:
                        msg = f"{type(exc).__name__}: {exc}"
                    if msg:
                        failures.append({"datum": f"{d.type_tag}/{lattice}", "sample": k,
                                         "field": repr(x.field), "reason": msg})
                    elif msg is None:
                        nontrivial += 1
                rows.append({"datum": f"{d.type_tag}/{lattice}", "samples": count,
                             "nonempty_phi0": nontrivial})
        return {"data": rows, "failures": failures[:20], "failure_count": len(failures)}, \
            not failures
    return oracle.run_claim(claim, "random elements, exhaustive root evaluation", run)


def criterion_8(count=500, seed=8):
    return _goodify_suite("8", random_lie_element, _check_lie, count, seed)


def criterion_9(count=500, seed=9):
    return _goodify_suite("9", random_group_element, _check_group, count, seed)


def criterion_10(max_p=23):
    def run():
        rows, ok = [], True
        for kind, n in RANK_LE_4:
            d = RootDatum([(kind, n)])
            order = weyl_order_formula(d)
            for p in range(2, max_p + 1):
                if not prime_factors(p) == {p} or order % p == 0:
                    continue
                try:
                    results = hypothesis_soundness(d, p)
                    good = all(flag for _, flag in results)
                except AssertionError:
                    good = False
                ok &= good
                rows.append({"type": d.type_tag, "p": p, "subsets": len(results), "ok": good})
        return rows, ok
    return oracle.run_claim("10", "check_hypotheses over all simple-root subsets", run)


def criterion_11(previous):
    """Existence claims over actual local fields are not computable here; the
    finite facts their proofs consume are criteria 3 to 7."""
    def run():
        feeds = {k: previous[k].passed for k in ("3", "4", "5", "6", "7") if k in previous}
        return {"reproducible": False, "compensating": feeds}, \
            len(feeds) == 5 and all(feeds.values())
    return oracle.run_claim("11", "not reproducible; compensated by finite checks", run)


CRITERIA = {
    "1": criterion_1, "2": criterion_2, "3": criterion_3, "4": criterion_4,
    "5": criterion_5, "6": criterion_6, "7": criterion_7, "8": criterion_8,
    "9": criterion_9, "10": criterion_10,
}


def run_suite(which="all"):
    keys = list(CRITERIA) + ["11"] if which == "all" else [which]
    reports = {}
    for k in keys:
        if k == "11":
            reports[k] = criterion_11(reports)
        elif k in CRITERIA:
            reports[k] = CRITERIA[k]()
        else:
            raise DomainError("unknown suite", suite=which)
    return reports
