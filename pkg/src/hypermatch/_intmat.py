"""Exact integer row reduction: Hermite basis, Smith form, finite quotients.

Matrices are small (dimension at most k-1), so everything is plain Python
integers; no floating point anywhere.
"""

from __future__ import annotations


def hermite_rows(rows, d: int) -> tuple:
    """Canonical row-style Hermite basis of the lattice spanned by ``rows``.

    Pivots strictly increase left to right, are positive, and every entry
    above a pivot lies in ``[0, pivot)``.  Two generating sets span the same
    lattice iff their Hermite bases are equal.
    """
    pool = [list(r) for r in rows if any(r)]
    for r in pool:
        if len(r) != d:
            raise ValueError(f"row {r} does not have dimension {d}")
    basis = []
    pivots = []
    for col in range(d):
        while True:
            live = [r for r in pool if r[col]]
            if len(live) <= 1:
                break
            piv = min(live, key=lambda r: abs(r[col]))
            for r in live:
                if r is piv:
                    continue
                q = r[col] // piv[col]
                for j in range(col, d):
                    r[j] -= q * piv[j]
        live = [r for r in pool if r[col]]
        if not live:
            continue
        piv = live[0]
        pool.remove(piv)
        if piv[col] < 0:
            piv[:] = [-x for x in piv]
        basis.append(piv)
        pivots.append(col)
        pool = [r for r in pool if any(r)]
    for i, ci in enumerate(pivots):
        p = basis[i][ci]
        for j in range(i):
            q = basis[j][ci] // p
            if q:
                row_j, row_i = basis[j], basis[i]
                for c in range(ci, d):
                    row_j[c] -= q * row_i[c]
    return tuple(tuple(r) for r in basis)


def pivot_columns(basis) -> tuple:
    return tuple(next(j for j, x in enumerate(r) if x) for r in basis)


def reduce_vector(basis, v) -> tuple:
    """Reduce ``v`` against a Hermite basis to its canonical coset representative."""
    v = list(v)
    for row in basis:
        c = next(j for j, x in enumerate(row) if x)
        q = v[c] // row[c]
        if q:
            for j in range(c, len(v)):
                v[j] -= q * row[j]
    return tuple(v)


def in_span(basis, v) -> bool:
    """Membership of ``v`` in the lattice with Hermite basis ``basis``."""
    v = list(v)
    d = len(v)
    start = 0
    for row in basis:
        c = next(j for j, x in enumerate(row) if x)
        if any(v[start:c]):
            return False
        q, r = divmod(v[c], row[c])
        if r:
            return False
        if q:
            for j in range(c, d):
                v[j] -= q * row[j]
        start = c + 1
    return not any(v[start:])


def coordinates(basis, v) -> tuple:
    """Integer coefficients c with v = sum c_i basis_i; ValueError if none."""
    v = list(v)
    d = len(v)
    coeffs = []
    for row in basis:
        c = next(j for j, x in enumerate(row) if x)
        q, r = divmod(v[c], row[c])
        if r:
            raise ValueError("vector is not in the lattice")
        coeffs.append(q)
        for j in range(c, d):
            v[j] -= q * row[j]
    if any(v):
        raise ValueError("vector is not in the lattice")
    return tuple(coeffs)


def smith_form(matrix, ncols: int):
    """Smith normal form D = U A V, returning (diagonal, V).

    Only the column transform V is tracked; the diagonal has one entry per
    row of the rank, each dividing the next.
    """
    a = [list(r) for r in matrix]
    m = len(a)
    n = ncols
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_col(dst, src, q):
        # col_dst -= q * col_src
        for row in a:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    diag = []
    t = 0
    while t < min(m, n):
        entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        a[t], a[pi] = a[pi], a[t]
        if pj != t:
            swap_cols(t, pj)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    for j in range(t, n):
                        a[i][j] -= q * a[t][j]
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, a[t][j] // p)
                    if a[t][j]:
                        dirty = True
            if not dirty:
                bad = next(
                    (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                for j in range(t, n):
                    a[t][j] += a[bad][j]
                dirty = True
            entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n)
                       if a[i][j] and (i == t or j == t)]
            _, pi, pj = min(entries)
            if (pi, pj) != (t, t):
                a[t], a[pi] = a[pi], a[t]
                if pj != t:
                    swap_cols(t, pj)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
        diag.append(a[t][t])
        t += 1
    return diag, v


def finite_quotient(relations, dim: int):
    """Present Z^dim / <relations> as a finite group.

    Returns ``(factors, transform, keep)`` where ``factors`` are the invariant
    factors (all > 1, each dividing the next) and the projection of an integer
    vector x is ``tuple((x @ transform)[j] % s for the kept columns j)``.
    Raises ValueError if the quotient is infinite.
    """
    diag, v = smith_form(relations, dim)
    if len(diag) < dim:
        raise ValueError("quotient is infinite")
    keep = tuple(j for j, s in enumerate(diag) if s != 1)
    factors = tuple(diag[j] for j in keep)
    return factors, v, keep


def project(x, transform, keep, factors) -> tuple:
    y = [sum(xi * transform[i][j] for i, xi in enumerate(x)) for j in keep]
    return tuple(yj % s for yj, s in zip(y, factors))
