"""Exact Gaussian elimination over Q(sqrt2).

Matrices are lists of lists of Scalar.  Everything here is small (ambient
dimensions are binomial(6, k) <= 20), so plain row reduction is enough; no
pivoting heuristics are needed because arithmetic is exact.

The elimination kernels unpack scalars into raw (rational, surd) Fraction
pairs: the inner loops run hot under the randomized suites and the catalog
drivers, and the unpacked form skips several layers of operator dispatch.
"""

from __future__ import annotations

from .scalar import ONE, ZERO, Scalar, _new


def zeros(rows: int, cols: int) -> list[list[Scalar]]:
    return [[ZERO] * cols for _ in range(rows)]


def identity(n: int) -> list[list[Scalar]]:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = ONE
    return out


def mat_mul(a, b) -> list[list[Scalar]]:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = zeros(rows, cols)
    for i in range(rows):
        ai = a[i]
        for k in range(inner):
            x = ai[k]
            if not x:
                continue
            bk = b[k]
            oi = out[i]
            for j in range(cols):
                if bk[j]:
                    oi[j] = oi[j] + x * bk[j]
    return out


def is_zero_matrix(a) -> bool:
    return all(not x for row in a for x in row)


def _pack(pairs_row) -> list[Scalar]:
    return [_new(a, b) for a, b in pairs_row]


def _rref_pairs(m: list[list[tuple]], ncols: int):
    """Row reduction on raw (a, b) pairs; mutates and trims m in place.

    Multiplication uses (a + b r)(c + d r) = ac + 2bd + (ad + bc) r and the
    inverse of a pivot (p, q) is (p, -q)/(p^2 - 2 q^2).
    """
    pivots: list[int] = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            e = m[i][c]
            if e[0] or e[1]:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pa, pb = m[r][c]
        if pb or pa != 1:
            norm = pa * pa - 2 * pb * pb
            ia, ib = pa / norm, -pb / norm
            new_row = []
            for xa, xb in m[r]:
                if xa or xb:
                    new_row.append((xa * ia + 2 * xb * ib, xa * ib + xb * ia))
                else:
                    new_row.append((xa, xb))
            m[r] = new_row
        row_r = m[r]
        for i in range(nrows):
            if i == r:
                continue
            fa, fb = m[i][c]
            if fa or fb:
                row_i = m[i]
                new_row = []
                for (xa, xb), (ya, yb) in zip(row_i, row_r):
                    if ya or yb:
                        new_row.append(
                            (xa - fa * ya - 2 * fb * yb, xb - fa * yb - fb * ya)
                        )
                    else:
                        new_row.append((xa, xb))
                m[i] = new_row
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    del m[r:]
    return pivots


def rref(rows: list[list[Scalar]]) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form.

    Returns (reduced nonzero rows, pivot column indices).  Pivot entries are
    normalized to 1 with zeros above and below, so the output is a canonical
    representative of the row space.
    """
    ncols = len(rows[0]) if rows else 0
    m = [[(s.a, s.b) for s in row] for row in rows]
    pivots = _rref_pairs(m, ncols)
    return [_pack(row) for row in m], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows: list[list[Scalar]], ncols: int) -> list[list[Scalar]]:
    """Canonical basis of {x : rows . x = 0}, returned in RREF."""
    red, pivots = rref(rows) if rows else ([], [])
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(v)
    return rref(basis)[0] if basis else []


def reduce_against(vec: list[Scalar], red_rows, pivots) -> list[Scalar]:
    """Residual of vec after elimination against an RREF basis."""
    v = [(s.a, s.b) for s in vec]
    for r, p in enumerate(pivots):
        fa, fb = v[p]
        if fa or fb:
            row = red_rows[r]
            new_v = []
            for (xa, xb), y in zip(v, row):
                ya, yb = y.a, y.b
                if ya or yb:
                    new_v.append(
                        (xa - fa * ya - 2 * fb * yb, xb - fa * yb - fb * ya)
                    )
                else:
                    new_v.append((xa, xb))
            v = new_v
    return _pack(v)


def solve(a: list[list[Scalar]], b: list[Scalar]) -> list[Scalar] | None:
    """One exact solution of a . x = b, or None if inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    ncols = len(a[0]) if a else 0
    aug = [row[:] + [b[i]] for i, row in enumerate(a)]
    red, pivots = rref(aug)
    x = [ZERO] * ncols
    for r, p in enumerate(pivots):
        if p == ncols:
            return None  # pivot in the constant column
        x[p] = red[r][ncols]
    return x


def invert(a: list[list[Scalar]]) -> list[list[Scalar]] | None:
    """Exact inverse of a square matrix, or None if singular."""
    n = len(a)
    aug = [a[i][:] + identity(n)[i] for i in range(n)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in red]


def transpose(a) -> list[list[Scalar]]:
    return [list(col) for col in zip(*a)] if a else []
