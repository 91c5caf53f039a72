"""Independent reference implementations used as test oracles.

Nothing here imports the package's algorithms; these are deliberately naive
versions (Leibniz determinants, Fraction elimination, LP feasibility by
vertex enumeration, sup-norm direction search) to cross-check against.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction


def leibniz_det(rows):
    n = len(rows)
    if n == 0:
        return 1
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = 1
        for i in range(n):
            prod *= rows[i][perm[i]]
        total += -prod if inv % 2 else prod
    return total


def rational_rank(cols):
    """Rank of a matrix given by columns, by plain Fraction elimination."""
    if not cols:
        return 0
    m = [[Fraction(x) for x in col] for col in cols]  # work on rows of M^T
    r = 0
    ncol = len(m[0])
    for c in range(ncol):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def minors_gcd(cols, k):
    d = len(cols[0])
    g = 0
    for cs in itertools.combinations(range(len(cols)), k):
        for rs in itertools.combinations(range(d), k):
            g = math.gcd(g, leibniz_det([[cols[c][r] for c in cs] for r in rs]))
    return g


def solve_exact(a, b):
    """Some solution of a x = b over Q (a: list of rows), or None if none."""
    rows = [[Fraction(x) for x in r] + [Fraction(y)] for r, y in zip(a, b)]
    n = len(a[0]) if a else 0
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(row[-1] != 0 for row in rows[r:]):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        x[c] = rows[i][-1]
    return x


def in_zonotope_lp(gens, translate, x):
    """Exact feasibility of x = t + sum lam_i v_i with 0 <= lam_i <= 1.

    The feasible set in lambda-space is a polytope; if nonempty it has a
    vertex, where at least m - r box constraints are tight (r = rank) and the
    free coordinates are determined by r independent columns. Enumerate all
    such choices.
    """
    m = len(gens)
    d = len(x)
    rhs0 = [Fraction(xi) - Fraction(ti) for xi, ti in zip(x, translate)]
    if m == 0:
        return all(v == 0 for v in rhs0)
    r = rational_rank(gens)
    for free in itertools.combinations(range(m), r):
        if rational_rank([gens[i] for i in free]) != r:
            continue
        fixed = [i for i in range(m) if i not in free]
        for bits in itertools.product((0, 1), repeat=len(fixed)):
            rhs = list(rhs0)
            for i, b in zip(fixed, bits):
                if b:
                    rhs = [y - v for y, v in zip(rhs, gens[i])]
            a = [[gens[i][row] for i in free] for row in range(d)]
            sol = solve_exact(a, rhs) if free else ([] if all(y == 0 for y in rhs) else None)
            if sol is None:
                continue
            # r independent columns: the solution is unique, check it fully
            if any(
                sum(a[row][k] * sol[k] for k in range(len(free))) != rhs[row] for row in range(d)
            ):
                continue
            if all(0 <= s <= 1 for s in sol):
                return True
    return False


def naive_box(gens, translate, n=1):
    d = len(translate)
    lo = [n * Fraction(t) + sum(min(0, n * v[i]) for v in gens) for i, t in enumerate(translate)]
    hi = [n * Fraction(t) + sum(max(0, n * v[i]) for v in gens) for i, t in enumerate(translate)]
    return [range(math.ceil(lo[i]), math.floor(hi[i]) + 1) for i in range(d)]


def is_primitive_dir(u):
    return any(u) and math.gcd(*u) == 1


def brute_lattice_width(gens, bound):
    """Minimum of sum |u.v| over primitive u with |u|_inf <= bound,
    lexicographically smallest canonical witness."""
    d = len(gens[0])
    best = None
    for u in itertools.product(range(-bound, bound + 1), repeat=d):
        if not is_primitive_dir(u):
            continue
        lead = next(x for x in u if x)
        if lead < 0:
            continue
        w = sum(abs(sum(a * b for a, b in zip(u, v))) for v in gens)
        if best is None or (w, u) < best:
            best = (w, u)
    return best


def counts_fit_degree(values, k):
    """True iff the sequence values(0), values(1), ... agrees with a polynomial
    of degree exactly k (checked through finite differences)."""
    diffs = list(values)
    for _ in range(k):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    return len(diffs) >= 2 and len(set(diffs)) == 1 and diffs[0] != 0


def descents(p):
    return sum(1 for a, b in zip(p, p[1:]) if a > b)


def eulerian_number_closed_form(d, k):
    """Number of permutations of d letters with k descents."""
    return sum((-1) ** i * math.comb(d + 1, i) * (k + 1 - i) ** d for i in range(k + 2))
