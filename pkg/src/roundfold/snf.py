"""Smith normal form over the integers, with transforms.

Matrices are lists of rows of Python ints, so entries never overflow.
"""
from __future__ import annotations

IntMatrix = list[list[int]]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


def determinant(a: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    m = [list(r) for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def _combo(a: int, b: int) -> tuple[int, int, int, int]:
    """(s, t, x, y) such that s*a + t*b = gcd and x*b - y*a = 0, with s*x + t*y = 1.

    When a already divides b the pivot is left alone, which is what makes the
    elimination loop terminate.
    """
    if b % a == 0:
        return 1, 0, 1, b // a
    g, s, t = _egcd(a, b)
    return s, t, a // g, b // g


def smith_normal_form(a: IntMatrix, transforms: bool = True):
    """Return ``(D, U, V)`` with ``U @ A @ V == D``.

    ``D`` is diagonal with non-negative entries d_1 | d_2 | ... and trailing
    zeros; ``U`` and ``V`` are unimodular.  With ``transforms=False`` the
    transforms are not tracked and come back as None.  For large sparse
    relation matrices prefer ``cokernel_factors``.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    d = [list(map(int, r)) for r in a]
    u = identity(rows) if transforms else []
    v = identity(cols) if transforms else []

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        if u:
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, q):
        # row dst += q * row src
        d[dst] = [x + q * y for x, y in zip(d[dst], d[src])]
        if u:
            u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def mix_rows(i, j, s, t, x, y):
        # (row i, row j) <- (s*i + t*j, -y*i + x*j); unimodular since s*x + t*y = 1
        for m in (d, u) if u else (d,):
            ri, rj = m[i], m[j]
            m[i] = [s * a + t * b for a, b in zip(ri, rj)]
            m[j] = [x * b - y * a for a, b in zip(ri, rj)]

    def mix_cols(i, j, s, t, x, y):
        for m in (d, v) if v else (d,):
            for r in m:
                a, b = r[i], r[j]
                r[i], r[j] = s * a + t * b, x * b - y * a

    for t in range(min(rows, cols)):
        nonzero = [(abs(d[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if d[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            for i in range(t + 1, rows):
                if d[i][t]:
                    mix_rows(t, i, *_combo(d[t][t], d[i][t]))
            for j in range(t + 1, cols):
                if d[t][j]:
                    mix_cols(t, j, *_combo(d[t][t], d[t][j]))
            if any(d[i][t] for i in range(t + 1, rows)):
                continue
            # pivot must divide the rest of the block
            bad = next((i for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if d[i][j] % d[t][t]), None)
            if bad is None:
                break
            add_row(bad, t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            if u:
                u[t] = [-x for x in u[t]]
    if not transforms:
        return d, None, None
    return d, u, v


def invariant_factors(a: IntMatrix) -> list[int]:
    """Diagonal of the Smith form, zeros included, length min(rows, cols)."""
    d, _, _ = smith_normal_form(a, transforms=False)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def hermite_rows(a: IntMatrix, cols: int) -> IntMatrix:
    """Row-style Hermite normal form of the lattice spanned by the rows of ``a``.

    Rows are inserted one at a time; every entry above a pivot is kept in
    [0, pivot), which bounds the numbers by the pivots themselves instead of
    letting them grow with the elimination history.
    """
    basis: dict[int, list[int]] = {}  # pivot column -> row

    def reduce(c):
        row = basis[c]
        for c2 in sorted(k for k in basis if k > c):
            if row[c2]:
                q = row[c2] // basis[c2][c2]
                if q:
                    row = [u - q * w for u, w in zip(row, basis[c2])]
        basis[c] = row

    for raw in a:
        r = list(map(int, raw))
        touched = []
        for c in range(cols):
            if not r[c]:
                continue
            if c not in basis:
                basis[c] = [-x for x in r] if r[c] < 0 else r
                touched.append(c)
                break
            b = basis[c]
            g, s, t = _egcd(b[c], r[c])
            x, y = b[c] // g, r[c] // g
            basis[c] = [s * u + t * w for u, w in zip(b, r)]
            r = [x * w - y * u for u, w in zip(b, r)]
            touched.append(c)
        for c in reversed(touched):
            reduce(c)
    for c in sorted(basis, reverse=True):
        reduce(c)
    return [basis[c] for c in sorted(basis)]


def cokernel_factors(relations: IntMatrix, generators: int) -> tuple[int, list[int]]:
    """(free rank, invariant factors > 1) of Z^generators / rowspan(relations)."""
    h = hermite_rows(relations, generators)
    pivots = [next(c for c, x in enumerate(row) if x) for row in h]
    unit = {c for c, row in zip(pivots, h) if row[c] == 1}
    # a unit-pivot row solves for its generator, and no other row uses it
    keep_cols = [c for c in range(generators) if c not in unit]
    rest = [[row[c] for c in keep_cols] for c2, row in zip(pivots, h) if c2 not in unit]
    free = generators - len(h)
    if not rest:
        return free, []
    factors = invariant_factors(rest)
    return free, [x for x in factors if x > 1]
