"""Tame-prime criteria and the construction of good elements in a coset."""

from dataclasses import dataclass, field
from itertools import combinations
from math import factorial

from .errors import DomainError, HypothesisError, IndeterminateError
from .lattice import prime_factors, smith_invariants
from .localfield import INF, nth_root_one_unit
from .rootsys import (
    Subsystem, bad_primes, char_quotient_invariants, check_type,
    closure, connection_index, coweight_multiplier, fundamental_coweights,
    rational_closure, subsystem_basis, subsystem_from_simple,
    torsion_primes_of_char_quotient,
)
from .torus import (
    TorusGroupElement, TorusLieElement, depth_group, depth_lie,
    eval_chars_group, eval_char_lie,
)
from .weyl import weyl_order_formula


def tame_sufficient(p, d, split_over_tame=True):
    """Every maximal torus splits over a tame extension when G does and p does not divide |W|."""
    return bool(split_over_tame) and weyl_order_formula(d) % p != 0


@dataclass
class TamePrimeReport:
    type_tag: str
    excluded_lower: list
    excluded_upper: list
    form_note: str
    open_cases: list = field(default_factory=list)


def tame_prime_bounds(kind, n):
    kind = kind.upper()
    check_type(kind, n)
    tag = f"{kind}{n}"
    lower = sorted(prime_factors(weyl_order_formula(tag)))
    open_cases = []
    if kind == "A" and n >= 2:
        upper = sorted(prime_factors(n + 1))
        note = ("upper bound valid for inner forms: p must not divide n+1; "
                "equality with the lower bound for split groups")
        open_cases = [q for q in lower if q not in upper]
    elif kind == "D" and n >= 4:
        upper = sorted(prime_factors(2 ** (n - 1) * factorial(n - 1)))
        note = ("upper bound |W|/l = 2^(l-1)(l-1)!; l itself is excluded only "
                "from the lower bound")
        open_cases = [q for q in lower if q not in upper]
    elif kind == "E" and n == 6:
        upper = [2, 3]
        note = "upper bound |W|/5 = 2^7 3^4; p = 5 is excluded only from the lower bound"
        open_cases = [5]
    else:
        upper = lower
        note = "exactly the primes dividing |W|"
    return TamePrimeReport(tag, lower, upper, note, open_cases)


@dataclass
class HypothesisReport:
    p: int
    bad_prime_ok: bool
    char_torsion_ok: bool
    subsystem_index_ok: bool
    witnesses: dict

    @property
    def ok(self):
        return self.bad_prime_ok and self.char_torsion_ok and self.subsystem_index_ok


def check_hypotheses(p, d, phi0):
    """Conditions on p needed by the construction, each with a witness."""
    bad = sorted(bad_primes(d))
    char_inv = char_quotient_invariants(d)
    char_primes = sorted(torsion_primes_of_char_quotient(d))
    if phi0.members:
        quotient = [x for x in smith_invariants(phi0.coefficient_rows()) if x != 1]
        index = connection_index(phi0)
    else:
        quotient, index = [], 1
    rep = HypothesisReport(
        p=p,
        bad_prime_ok=p not in bad,
        char_torsion_ok=p not in char_primes,
        subsystem_index_ok=index % p != 0,
        witnesses={
            "bad_primes": bad,
            "root_quotient_invariants": quotient,
            "char_quotient_invariants": char_inv,
            "subsystem_connection_index": index,
        },
    )
    if not rep.ok and weyl_order_formula(d) % p != 0:
        raise AssertionError("hypothesis fails although p does not divide |W|")
    return rep


def _require(rep):
    if not rep.ok:
        raise HypothesisError("p violates a hypothesis of the construction",
                              p=rep.p, **rep.witnesses)


def _phi0(datum, depth, values):
    """Roots whose value (from ``values``) has valuation beyond ``depth``."""
    members = []
    for i, v in enumerate(values):
        val, determinate = v.val_or_bound()
        if not determinate and not val > depth:
            raise IndeterminateError("root value vanishes only up to the depth",
                                     root=i, known_up_to=str(val))
        if val > depth:
            members.append(i)
    phi0 = Subsystem(datum, frozenset(members))
    if members:
        if closure(datum, phi0) != phi0 or rational_closure(datum, phi0) != phi0:
            raise AssertionError("root subset of higher valuation is not closed")
    return phi0


def _check_p(ctx, p):
    if p is not None and p != ctx.p:
        raise DomainError("p does not match the field", p=p, field_p=ctx.p)
    return ctx.p


def _beyond(elements, r):
    """Every element is known to have valuation > r (a lower bound suffices)."""
    return all(x.val_or_bound()[0] > r for x in elements)


def _val(x):
    v, determinate = x.val_or_bound()
    if determinate:
        return v
    return ("zero-to", v)


@dataclass
class LieGoodification:
    X2: TorusLieElement
    X1: TorusLieElement
    phi0: Subsystem
    depth: object
    basis: tuple
    coweights: dict
    hypotheses: HypothesisReport
    before: list
    after: list


@dataclass
class GroupGoodification:
    gamma2: TorusGroupElement
    gamma1: TorusGroupElement
    phi0: Subsystem
    depth: object
    basis: tuple
    coweights: dict
    n_map: dict
    hypotheses: HypothesisReport
    before: list
    after: list


def goodify_lie(X, p=None, functional=None):
    """Split X = X1 + X2 with X1 of depth > r and X2 good of depth r."""
    d, ctx = X.datum, X.field
    p = _check_p(ctx, p)
    r = depth_lie(X)
    before = [eval_char_lie(X, a) for a in d.roots]
    if r is INF:
        zero = TorusLieElement.zero(d, ctx)
        return LieGoodification(X, zero, Subsystem(d, frozenset(range(len(d.roots)))),
                                r, (), {}, check_hypotheses(p, d, Subsystem(d)),
                                [_val(v) for v in before], [_val(v) for v in before])
    phi0 = _phi0(d, r, before)
    hyp = check_hypotheses(p, d, phi0)
    _require(hyp)
    if not phi0.members:
        return LieGoodification(X, TorusLieElement.zero(d, ctx), phi0, r, (), {}, hyp,
                                [_val(v) for v in before], [_val(v) for v in before])
    basis = subsystem_basis(phi0, functional)
    vectors, _, _ = fundamental_coweights(phi0, basis)
    X1 = TorusLieElement.zero(d, ctx)
    for a in basis:
        X1 = X1 + TorusLieElement.from_cocharacter(d, ctx, vectors[a], before[a])
    if len(phi0) == len(d.roots):
        # Phi0 = Phi: the coset contains 0
        X2 = TorusLieElement.zero(d, ctx)
        X1 = X
    else:
        X2 = X - X1
    after = [eval_char_lie(X2, a) for a in d.roots]
    for i, v in enumerate(after):
        if i in phi0.members:
            if not v.vanishes():
                raise AssertionError("root of Phi0 does not vanish on X2")
        elif v.vanishes() or v.val() != r:
            raise AssertionError("root outside Phi0 changed valuation")
    if not _beyond(X1.coords, r):
        raise AssertionError("X1 does not have depth > r")
    return LieGoodification(X2, X1, phi0, r, basis, vectors, hyp,
                            [_val(v) for v in before], [_val(v) for v in after])


def goodify_group(gamma, p=None, functional=None):
    """Split gamma = gamma1 gamma2 with gamma1 of depth > r and gamma2 good of depth r."""
    d, ctx = gamma.datum, gamma.field
    p = _check_p(ctx, p)
    r = depth_group(gamma)
    before = [v - 1 for v in eval_chars_group(gamma, d.roots)]
    ident = TorusGroupElement.identity(d, ctx)
    if r is INF:
        return GroupGoodification(gamma, ident, Subsystem(d, frozenset(range(len(d.roots)))),
                                  r, (), {}, {}, check_hypotheses(p, d, Subsystem(d)),
                                  [_val(v) for v in before], [_val(v) for v in before])
    if not r > 0:
        raise DomainError("depth must be positive", depth=str(r))
    phi0 = _phi0(d, r, before)
    hyp = check_hypotheses(p, d, phi0)
    _require(hyp)
    if not phi0.members:
        return GroupGoodification(gamma, ident, phi0, r, (), {}, {}, hyp,
                                  [_val(v) for v in before], [_val(v) for v in before])
    if len(phi0) == len(d.roots):
        raise AssertionError("all roots have valuation beyond the depth")
    basis = subsystem_basis(phi0, functional)
    vectors, coefficients, _ = fundamental_coweights(phi0, basis)
    n_map = {}
    gamma1 = ident
    for a in basis:
        n = coweight_multiplier(coefficients[a])
        if n % p == 0:
            raise HypothesisError("p divides a coweight multiplier", p=p, n=n, root=a)
        n_map[a] = n
        lam = [n * x for x in vectors[a]]
        if any(x.denominator != 1 for x in lam):
            raise AssertionError("multiple of a coweight is not a cocharacter")
        y = nth_root_one_unit(before[a] + 1, n)
        gamma1 = gamma1 * TorusGroupElement.from_cocharacter(d, ctx, lam, y)
    gamma2 = gamma * gamma1.inverse()
    after = [v - 1 for v in eval_chars_group(gamma2, d.roots)]
    for i, v in enumerate(after):
        if i in phi0.members:
            if not v.vanishes():
                raise AssertionError("root of Phi0 is not trivial on gamma2")
        elif v.vanishes() or v.val() != r:
            raise AssertionError("root outside Phi0 changed valuation")
    if not _beyond([v - 1 for v in eval_chars_group(gamma1, d.roots)], r):
        raise AssertionError("gamma1 is not of depth > r on every root")
    if not _beyond([v - 1 for v in gamma1.values], r):
        raise AssertionError("gamma1 does not have depth > r")
    return GroupGoodification(gamma2, gamma1, phi0, r, basis, vectors, n_map, hyp,
                              [_val(v) for v in before], [_val(v) for v in after])


def hypothesis_soundness(d, p):
    """check_hypotheses over every subsystem generated by simple roots."""
    results = []
    for k in range(d.rank + 1):
        for subset in combinations(range(d.rank), k):
            phi0 = subsystem_from_simple(d, subset)
            results.append((subset, check_hypotheses(p, d, phi0).ok))
    return results

