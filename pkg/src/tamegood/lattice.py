"""Exact linear algebra over Z and Q.

Matrices are lists of rows. Integer routines never leave Z; rational routines
work with :class:`fractions.Fraction` throughout.
"""

from fractions import Fraction


def as_fraction_rows(rows):
    return [[Fraction(x) for x in row] for row in rows]


def det(matrix):
    """Determinant of a square integer matrix (Bareiss, fraction free)."""
    n = len(matrix)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def row_echelon(rows):
    """Reduced row echelon form over Q. Returns (echelon rows, pivot columns)."""
    m = as_fraction_rows(rows)
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows):
    return len(row_echelon(rows)[0])


class RationalSpan:
    """Q-span of a set of vectors with fast membership tests."""

    def __init__(self, rows, dim=None):
        self.dim = dim if dim is not None else (len(rows[0]) if rows else 0)
        self.basis, self.pivots = row_echelon(rows)

    def __contains__(self, v):
        w = [Fraction(x) for x in v]
        for row, c in zip(self.basis, self.pivots):
            if w[c] != 0:
                f = w[c]
                w = [x - f * y for x, y in zip(w, row)]
        return not any(w)

    @property
    def rank(self):
        return len(self.basis)


def solve(matrix, rhs):
    """Solve ``matrix @ x = rhs`` for square nonsingular ``matrix`` over Q."""
    n = len(matrix)
    aug = [list(row) + [b] for row, b in zip(as_fraction_rows(matrix), rhs)]
    ech, piv = row_echelon(aug)
    if piv[:n] != list(range(n)) or len(ech) != n:
        raise ZeroDivisionError("singular matrix")
    return [ech[i][n] for i in range(n)]


def inverse(matrix):
    n = len(matrix)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(as_fraction_rows(matrix))]
    ech, piv = row_echelon(aug)
    if len(ech) != n or piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in ech]


def transpose(matrix):
    return [list(col) for col in zip(*matrix)]


def matmul(a, b):
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def hermite_rows(rows):
    """Row-style Hermite normal form: a Z-basis (echelon, positive pivots)
    of the lattice spanned by ``rows``."""
    m = [list(map(int, row)) for row in rows if any(row)]
    if not m:
        return []
    ncols = len(m[0])
    out = []
    for c in range(ncols):
        live = [row for row in m if row[c] != 0]
        rest = [row for row in m if row[c] == 0]
        if not live:
            continue
        # Euclid down the column until one row carries the gcd.
        while len(live) > 1:
            live.sort(key=lambda row: abs(row[c]))
            head = live[0]
            nxt = [head]
            for row in live[1:]:
                q = row[c] // head[c]
                row = [x - q * y for x, y in zip(row, head)]
                (nxt if row[c] != 0 else rest).append(row)
            live = nxt
        head = live[0]
        if head[c] < 0:
            head = [-x for x in head]
        out.append(head)
        m = [row for row in rest if any(row)]
    # Reduce entries above each pivot into [0, pivot).
    for i in range(len(out)):
        c = next(j for j, x in enumerate(out[i]) if x)
        for k in range(i):
            q = out[k][c] // out[i][c]
            if q:
                out[k] = [x - q * y for x, y in zip(out[k], out[i])]
    return out


class IntegerLattice:
    """Z-span of integer vectors, held in Hermite form."""

    def __init__(self, rows, dim=None):
        self.dim = dim if dim is not None else (len(rows[0]) if rows else 0)
        self.basis = hermite_rows(rows)
        self.pivots = [next(j for j, x in enumerate(row) if x)
                       for row in self.basis]

    def __contains__(self, v):
        w = list(map(int, v))
        for row, c in zip(self.basis, self.pivots):
            if w[c] % row[c]:
                return False
            q = w[c] // row[c]
            if q:
                w = [x - q * y for x, y in zip(w, row)]
        return not any(w)

    @property
    def rank(self):
        return len(self.basis)


def smith_invariants(rows):
    """Nonzero invariant factors d1 | d2 | ... of an integer matrix."""
    a = [list(map(int, row)) for row in rows]
    if not a or not a[0]:
        return []
    nr, nc = len(a), len(a[0])
    out = []
    t = 0
    while t < min(nr, nc):
        entries = [(abs(a[i][j]), i, j) for i in range(t, nr)
                   for j in range(t, nc) if a[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // p
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        done = False
            if not done:
                entries = [(abs(a[i][t]), i, t) for i in range(t, nr) if a[i][t]]
                entries += [(abs(a[t][j]), t, j) for j in range(t, nc) if a[t][j]]
                _, i, j = min(entries)
                a[t], a[i] = a[i], a[t]
                for row in a:
                    row[t], row[j] = row[j], row[t]
                continue
            # Enforce divisibility of the remaining block by the pivot.
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                        if a[i][j] % p), None)
            if bad is None:
                break
            i, _ = bad
            a[t] = [x + y for x, y in zip(a[t], a[i])]
        out.append(abs(a[t][t]))
        t += 1
    return out


def prime_factors(n):
    n = abs(int(n))
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def is_prime(n):
    return n >= 2 and prime_factors(n) == {n}

