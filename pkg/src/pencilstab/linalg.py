"""Gaussian elimination over a coefficient field (Q or F_p)."""

from __future__ import annotations


class SingularMatrix(ValueError):
    pass


def row_reduce(F, rows):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    m = [[F(x) for x in row] for row in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.mul(x, inv) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(F, rows):
    if not rows:
        return 0
    return len(row_reduce(F, rows)[1])


def det(F, rows):
    m = [[F(x) for x in row] for row in rows]
    n = len(m)
    out = F.one()
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return F.zero()
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = F.neg(out)
        out = F.mul(out, m[c][c])
        inv = F.inv(m[c][c])
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = F.mul(m[i][c], inv)
                m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], m[c])]
    return out


def mat_inverse(F, rows):
    n = len(rows)
    aug = [list(row) + [F(int(i == j)) for j in range(n)] for i, row in enumerate(rows)]
    red, pivots = row_reduce(F, aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is not invertible")
    return [row[n:] for row in red]


def kernel(F, rows, ncols):
    """Basis of {x : rows . x = 0}."""
    if not rows:
        return [[F(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    red, pivots = row_reduce(F, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [F.zero()] * ncols
        v[fc] = F.one()
        for r, pc in enumerate(pivots):
            v[pc] = F.neg(red[r][fc])
        basis.append(v)
    return basis


def matmul(F, a, b):
    return [
        [
            sum_field(F, (F.mul(a[i][k], b[k][j]) for k in range(len(b))))
            for j in range(len(b[0]))
        ]
        for i in range(len(a))
    ]


def sum_field(F, items):
    acc = F.zero()
    for x in items:
        acc = F.add(acc, x)
    return acc


def complete_basis(F, vectors, n):
    """Extend independent vectors to a basis of k^n with standard vectors."""
    basis = [list(v) for v in vectors]
    for i in range(n):
        if len(basis) == n:
            break
        e = [F(int(i == j)) for j in range(n)]
        if rank(F, basis + [e]) > len(basis):
            basis.append(e)
    return basis
