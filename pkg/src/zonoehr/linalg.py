"""Exact integer linear algebra for lattice zonotopes.

Vectors are tuples of Python ints. A matrix handed to these functions is a
sequence of *columns* (the generator convention used throughout the package),
except for square transforms returned by :func:`unimodular_complement`, which
are tuples of *rows* so that ``matvec(U, x)`` reads naturally.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Sequence

IntVector = tuple[int, ...]
Columns = Sequence[Sequence[int]]
Rows = tuple[tuple[int, ...], ...]


class NotALatticeBasis(ValueError):
    """Raised when vectors that should form a basis of Z^d do not."""


def _shape(cols: Columns) -> tuple[int, int]:
    cols = list(cols)
    if not cols:
        return 0, 0
    d = len(cols[0])
    if any(len(c) != d for c in cols):
        raise ValueError("columns have different lengths")
    return d, len(cols)


def det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    if any(len(r) != n for r in a):
        raise ValueError("matrix is not square")
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
                # exact by Sylvester's identity
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(cols: Columns) -> int:
    """Rank over Q, computed with fraction-free elimination."""
    d, m = _shape(cols)
    if m == 0:
        return 0
    # work on rows of the d x m matrix
    a = [[cols[j][i] for j in range(m)] for i in range(d)]
    r = 0
    prev = 1
    for c in range(m):
        piv = next((i for i in range(r, d) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, d):
            for j in range(c + 1, m):
                a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == d:
            break
    return r


def minors(cols: Columns, k: int):
    """Yield every k x k minor of the matrix with the given columns."""
    d, m = _shape(cols)
    for rsub in itertools.combinations(range(d), k):
        for csub in itertools.combinations(range(m), k):
            yield det([[cols[j][i] for j in csub] for i in rsub])


def gcd_of_minors(cols: Columns, k: int) -> int:
    """gcd of the absolute values of all k x k minors; 0 iff rank < k."""
    d, m = _shape(cols)
    if not 1 <= k <= min(d, m):
        raise ValueError(f"minor size {k} out of range for a {d}x{m} matrix")
    g = 0
    for mi in minors(cols, k):
        g = math.gcd(g, mi)
        if g == 1:
            break
    return g


def _check_nonzero(v: Sequence[int]) -> None:
    if not any(v):
        raise ValueError("zero vector")


def segment_length(v: Sequence[int]) -> int:
    """Lattice length of the segment [0, v], i.e. the gcd of the entries."""
    _check_nonzero(v)
    return math.gcd(*v)


def primitive_part(v: Sequence[int]) -> IntVector:
    _check_nonzero(v)
    g = math.gcd(*v)
    return tuple(x // g for x in v)


def is_primitive(v: Sequence[int]) -> bool:
    return any(v) and math.gcd(*v) == 1


def canonical_sign(v: Sequence[int]) -> IntVector:
    """Return +v or -v, whichever has a positive first nonzero entry."""
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def independent_subsets(cols: Columns) -> list[tuple[int, ...]]:
    """All index subsets (including the empty one) of linearly independent
    columns, ordered by size and then lexicographically."""
    d, m = _shape(cols)
    out: list[tuple[int, ...]] = [()]
    for k in range(1, min(d, m) + 1):
        for sub in itertools.combinations(range(m), k):
            if rank([cols[j] for j in sub]) == k:
                out.append(sub)
    return out


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def matvec(rows: Sequence[Sequence], x: Sequence):
    return tuple(dot(r, x) for r in rows)


def transpose(m: Sequence[Sequence]) -> tuple[tuple, ...]:
    return tuple(zip(*m))


def adjugate(rows: Sequence[Sequence[int]]) -> Rows:
    """Classical adjoint, so that adjugate(A) @ A = det(A) * I."""
    n = len(rows)
    if n == 1:
        return ((1,),)
    cof = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = [[rows[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            cof[i][j] = (-1) ** (i + j) * det(sub)
    return tuple(tuple(cof[j][i] for j in range(n)) for i in range(n))


def normal_vector(cols: Columns, d: int) -> IntVector:
    """Integer vector orthogonal to d-1 columns in Z^d (generalised cross
    product). Zero iff the columns are dependent."""
    cols = [tuple(c) for c in cols]
    if len(cols) != d - 1:
        raise ValueError("need exactly d-1 columns")
    out = []
    for i in range(d):
        sub = [[c[r] for c in cols] for r in range(d) if r != i]
        out.append((-1) ** i * det(sub))
    return tuple(out)


def hnf_columns(cols: Columns) -> list[IntVector]:
    """Column-style Hermite normal form of the lattice spanned by ``cols``.

    Column operations only. The result is lower triangular in the echelon
    sense: the pivot row of each column is strictly below the previous one,
    pivots are positive, and the entries to the left of a pivot (in its row)
    are reduced into ``[0, pivot)``. Zero columns are dropped.
    """
    d, m = _shape(cols)
    a = [list(c) for c in cols]
    out: list[list[int]] = []
    row = 0
    while a and row < d:
        nz = [c for c in a if c[row] != 0]
        if not nz:
            row += 1
            continue
        rest = [c for c in a if c[row] == 0]
        # Euclid on the pivot row across the nonzero columns
        while len(nz) > 1:
            nz.sort(key=lambda c: abs(c[row]))
            p = nz[0]
            nxt = [p]
            for c in nz[1:]:
                q = c[row] // p[row]
                c = [x - q * y for x, y in zip(c, p)]
                if c[row] != 0:
                    nxt.append(c)
                elif any(c):
                    rest.append(c)
            nz = nxt
        p = nz[0]
        if p[row] < 0:
            p = [-x for x in p]
        out.append(p)
        a = rest
        row += 1
    # reduce entries left of each pivot
    for j, p in enumerate(out):
        prow = next(i for i, x in enumerate(p) if x != 0)
        for k in range(j):
            q = out[k][prow] // p[prow]
            if q:
                out[k] = [x - q * y for x, y in zip(out[k], p)]
    return [tuple(c) for c in out]


def kernel_basis(rows: Sequence[Sequence[int]], d: int) -> list[IntVector]:
    """Integer basis of the lattice {x in Z^d : r.x = 0 for all rows r}.

    Uses unimodular column reduction of the row matrix, tracking the
    transform; the trailing transform columns span the kernel lattice.
    """
    rows = [list(r) for r in rows if any(r)]
    # columns of the (len(rows) x d) matrix augmented with the identity
    aug = [[r[j] for r in rows] + [int(i == j) for i in range(d)] for j in range(d)]
    k = len(rows)
    done = 0
    for r in range(k):
        live = aug[done:]
        nz = [c for c in live if c[r] != 0]
        zero = [c for c in live if c[r] == 0]
        while len(nz) > 1:
            nz.sort(key=lambda c: abs(c[r]))
            p = nz[0]
            nxt = [p]
            for c in nz[1:]:
                q = c[r] // p[r]
                c = [x - q * y for x, y in zip(c, p)]
                (nxt if c[r] != 0 else zero).append(c)
            nz = nxt
        aug = aug[:done] + nz + zero
        done += len(nz)
    basis = [tuple(c[k:]) for c in aug[done:]]
    return hnf_columns(basis) if basis else []


def hyperplane_lattice_basis(v: Sequence[int]) -> list[IntVector]:
    """Basis of {x in Z^d : v.x = 0} for primitive v, in column HNF."""
    d = len(v)
    if d < 2:
        raise ValueError("need d >= 2")
    if not is_primitive(v):
        raise ValueError(f"{tuple(v)} is not a primitive vector")
    basis = kernel_basis([v], d)
    assert len(basis) == d - 1
    return basis


def unimodular_complement(basis: Sequence[Sequence[int]], w: Sequence[int]) -> Rows:
    """Integer matrix U (rows) with U b_i = e_i and U w = e_d.

    ``basis`` holds d-1 vectors; together with ``w`` they must form a basis
    of Z^d.
    """
    cols = [tuple(b) for b in basis] + [tuple(w)]
    d = len(w)
    if len(cols) != d:
        raise ValueError("need d-1 basis vectors plus w")
    m_rows = transpose(cols)
    dt = det(m_rows)
    if abs(dt) != 1:
        raise NotALatticeBasis(f"determinant {dt}, not a lattice basis")
    adj = adjugate(m_rows)
    return tuple(tuple(x * dt for x in r) for r in adj)


def inverse_unimodular(rows: Sequence[Sequence[int]]) -> Rows:
    dt = det(rows)
    if abs(dt) != 1:
        raise NotALatticeBasis(f"determinant {dt}, not unimodular")
    return tuple(tuple(x * dt for x in r) for r in adjugate(rows))


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple[tuple, ...]:
    bt = transpose(b)
    return tuple(tuple(dot(r, c) for c in bt) for r in a)


def solve_rational(rows: Sequence[Sequence], rhs: Sequence) -> tuple[Fraction, ...]:
    """Solve a square nonsingular system exactly over Q."""
    n = len(rows)
    a = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(r[n] for r in a)
