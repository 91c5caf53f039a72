"""Lattice zonotopes: construction, H-description, lattice points, widths.

A zonotope here is ``t + Z(v_1, ..., v_m)`` with integer generators and an
exact rational translate ``t``. All incidence decisions are exact; floating
point only appears in the final angle evaluation of
:func:`solid_angle_sum_2d`.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from zonoehr import linalg
from zonoehr.linalg import IntVector, Rows

DEFAULT_BUDGET = 10**8


class DegenerateZonotope(ValueError):
    """Raised when an operation needs a full-dimensional zonotope."""


class BudgetExceeded(RuntimeError):
    """Raised when a lattice-point enumeration box exceeds its cell budget."""


@dataclass(frozen=True)
class Zonotope:
    generators: tuple[IntVector, ...]
    translate: tuple[Fraction, ...]
    dim_ambient: int

    @functools.cached_property
    def rank(self) -> int:
        return linalg.rank(self.generators)

    @property
    def full_dimensional(self) -> bool:
        return self.rank == self.dim_ambient

    @property
    def has_integer_translate(self) -> bool:
        return all(x.denominator == 1 for x in self.translate)

    def dilate(self, n: int) -> "Zonotope":
        """The dilate nZ; generators and translate both scale."""
        return Zonotope(
            tuple(tuple(n * x for x in v) for v in self.generators),
            tuple(n * x for x in self.translate),
            self.dim_ambient,
        )

    def translated(self, t: Sequence) -> "Zonotope":
        t = tuple(Fraction(x) for x in t)
        if len(t) != self.dim_ambient:
            raise ValueError("translate has wrong dimension")
        return Zonotope(
            self.generators,
            tuple(a + b for a, b in zip(self.translate, t)),
            self.dim_ambient,
        )

    def at_origin(self) -> "Zonotope":
        return Zonotope(self.generators, (Fraction(0),) * self.dim_ambient, self.dim_ambient)


@dataclass(frozen=True)
class FacetDirection:
    normal: IntVector
    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


def make_zonotope(
    generators: Sequence[Sequence[int]],
    translate: Optional[Sequence] = None,
    *,
    dim: Optional[int] = None,
    merge_parallel: bool = False,
) -> Zonotope:
    """Build a zonotope, dropping zero generators.

    With ``merge_parallel`` each class of parallel generators is replaced by
    a single generator; members pointing against the first member of their
    class are flipped, and the translate absorbs the (integer) correction so
    the point set is unchanged.
    """
    gens = [tuple(int(x) for x in v) for v in generators]
    if dim is None:
        if gens:
            dim = len(gens[0])
        elif translate is not None:
            dim = len(translate)
        else:
            raise ValueError("cannot infer the ambient dimension")
    if any(len(v) != dim for v in gens):
        raise ValueError(f"generators must all have dimension {dim}")
    t = [Fraction(0)] * dim if translate is None else [Fraction(x) for x in translate]
    if len(t) != dim:
        raise ValueError(f"translate must have dimension {dim}")
    gens = [v for v in gens if any(v)]

    if merge_parallel:
        classes: dict[IntVector, list[int]] = {}
        order: list[IntVector] = []
        for v in gens:
            key = linalg.canonical_sign(linalg.primitive_part(v))
            if key not in classes:
                classes[key] = list(v)
                order.append(key)
                continue
            acc = classes[key]
            if linalg.dot(acc, v) < 0:
                # [0, v] = [0, -v] + v
                t = [a + b for a, b in zip(t, v)]
                v = tuple(-x for x in v)
            classes[key] = [a + b for a, b in zip(acc, v)]
        gens = [tuple(classes[k]) for k in order]

    return Zonotope(tuple(gens), tuple(t), dim)


def _scaled_dot(u: Sequence[int], t: Sequence[Fraction]) -> Fraction:
    den = math.lcm(*(x.denominator for x in t)) if t else 1
    return Fraction(sum(a * x.numerator * (den // x.denominator) for a, x in zip(u, t)), den)


def support_interval(z: Zonotope, u: Sequence[int]) -> tuple[Fraction, Fraction]:
    """(min, max) of u.x over Z."""
    if not any(u):
        raise ValueError("zero direction")
    lo = hi = 0
    for v in z.generators:
        s = sum(a * b for a, b in zip(u, v))
        if s < 0:
            lo += s
        else:
            hi += s
    base = _scaled_dot(u, z.translate)
    return base + lo, base + hi


@functools.lru_cache(maxsize=1 << 14)
def _facet_normals(generators: tuple[IntVector, ...], d: int) -> tuple[IntVector, ...]:
    normals = set()
    for sub in itertools.combinations(generators, d - 1):
        u = linalg.normal_vector(sub, d)
        if any(u):
            normals.add(linalg.canonical_sign(linalg.primitive_part(u)))
    return tuple(sorted(normals))


def facet_directions(z: Zonotope) -> list[FacetDirection]:
    """Primitive facet normals (first nonzero entry positive) with their
    support intervals, sorted lexicographically by normal."""
    if not z.full_dimensional:
        raise DegenerateZonotope("facet directions need a full-dimensional zonotope")
    return [FacetDirection(u, *support_interval(z, u)) for u in _facet_normals(z.generators, z.dim_ambient)]


def _projection_coords(z: Zonotope) -> tuple[int, ...]:
    """Coordinates onto which the generator span projects injectively."""
    r = z.rank
    for coords in itertools.combinations(range(z.dim_ambient), r):
        proj = [tuple(v[i] for i in coords) for v in z.generators]
        if linalg.rank(proj) == r:
            return coords
    raise AssertionError("unreachable")


def _project(z: Zonotope, coords: Sequence[int]) -> Zonotope:
    return Zonotope(
        tuple(tuple(v[i] for i in coords) for v in z.generators),
        tuple(z.translate[i] for i in coords),
        len(coords),
    )


def contains(z: Zonotope, x: Sequence, strict: bool = False) -> bool:
    """Exact membership test, optionally in the interior."""
    x = tuple(Fraction(c) for c in x)
    if z.full_dimensional:
        for f in facet_directions(z):
            s = linalg.dot(f.normal, x)
            if strict:
                if not f.lo < s < f.hi:
                    return False
            elif not f.lo <= s <= f.hi:
                return False
        return True
    if strict:
        raise DegenerateZonotope("strict containment needs a full-dimensional zonotope")
    # affine hull equalities, then membership of the injective projection
    for u in linalg.kernel_basis(z.generators, z.dim_ambient):
        if linalg.dot(u, x) != linalg.dot(u, z.translate):
            return False
    if z.rank == 0:
        return True
    coords = _projection_coords(z)
    return contains(_project(z, coords), [x[i] for i in coords])


def bounding_box(z: Zonotope) -> list[tuple[int, int]]:
    """Integer ranges covering the lattice points of Z, per coordinate."""
    box = []
    for i in range(z.dim_ambient):
        e = [0] * z.dim_ambient
        e[i] = 1
        lo, hi = support_interval(z, e)
        box.append((math.ceil(lo), math.floor(hi)))
    return box


def _check_budget(box: Sequence[tuple[int, int]], budget: int) -> None:
    cells = 1
    for lo, hi in box:
        cells *= max(0, hi - lo + 1)
    if cells > budget:
        raise BudgetExceeded(f"enumeration box has {cells} cells, budget is {budget}")


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _fibres(z: Zonotope, strict: bool, budget: int) -> Iterator[tuple[tuple[int, ...], int, int]]:
    """Yield (prefix, lo, hi): for every integer prefix of the first d-1
    coordinates, the integer range of the last coordinate inside Z.

    Equivalent to filtering the bounding box by the H-description, but the
    last coordinate is solved for instead of scanned.
    """
    box = bounding_box(z)
    _check_budget(box, budget)
    if any(lo > hi for lo, hi in box):
        return
    facets = facet_directions(z)
    den = 1
    for f in facets:
        den = math.lcm(den, f.lo.denominator, f.hi.denominator)
    cons = [(f.normal[:-1], f.normal[-1], int(f.lo * den), int(f.hi * den)) for f in facets]
    last_lo, last_hi = box[-1]
    for prefix in itertools.product(*(range(lo, hi + 1) for lo, hi in box[:-1])):
        lo, hi = last_lo, last_hi
        for head, a, L, H in cons:
            s = den * sum(p * q for p, q in zip(head, prefix))
            if a == 0:
                if (strict and not L < s < H) or (not strict and not L <= s <= H):
                    break
                continue
            # L <= s + den*a*x <= H
            da = den * a
            lo_num, hi_num = L - s, H - s
            if da < 0:
                da, lo_num, hi_num = -da, -hi_num, -lo_num
            if strict:
                lo = max(lo, lo_num // da + 1)
                hi = min(hi, _ceil_div(hi_num, da) - 1)
            else:
                lo = max(lo, _ceil_div(lo_num, da))
                hi = min(hi, hi_num // da)
            if lo > hi:
                break
        else:
            yield prefix, lo, hi


def _prepare(z: Zonotope, n: int) -> Zonotope:
    if n < 0:
        raise ValueError("dilation factor must be nonnegative")
    return z.dilate(n)


def _lift_points(zn: Zonotope, budget: int) -> list[IntVector]:
    """Lattice points of a lower-dimensional zonotope: enumerate its
    injective coordinate projection and solve back for the other
    coordinates from the affine-hull equations."""
    d = zn.dim_ambient
    if zn.rank == 0:
        return [tuple(int(x) for x in zn.translate)] if zn.has_integer_translate else []
    coords = _projection_coords(zn)
    rest = [i for i in range(d) if i not in coords]
    eqs = linalg.kernel_basis(zn.generators, d)
    rhs = [_scaled_dot(u, zn.translate) for u in eqs]
    square = [[u[i] for i in rest] for u in eqs]
    # columns of the inverse, one per equation
    inv_cols = [
        linalg.solve_rational(square, [int(k == j) for k in range(len(eqs))])
        for j in range(len(eqs))
    ]
    out = []
    for y in lattice_points(_project(zn, coords), budget=budget):
        b = [c - sum(u[i] * yi for i, yi in zip(coords, y)) for u, c in zip(eqs, rhs)]
        sol = [sum(col[r] * bj for col, bj in zip(inv_cols, b)) for r in range(len(rest))]
        if any(x.denominator != 1 for x in sol):
            continue
        x = [0] * d
        for i, yi in zip(coords, y):
            x[i] = yi
        for i, xi in zip(rest, sol):
            x[i] = int(xi)
        out.append(tuple(x))
    return sorted(out)


def lattice_points(
    z: Zonotope, n: int = 1, *, strict: bool = False, budget: int = DEFAULT_BUDGET
) -> list[IntVector]:
    """Integer points of nZ in lexicographic order (interior only if strict)."""
    zn = _prepare(z, n)
    if not zn.full_dimensional:
        if strict:
            raise DegenerateZonotope("interior points need a full-dimensional zonotope")
        return _lift_points(zn, budget)
    out = []
    for prefix, lo, hi in _fibres(zn, strict, budget):
        out.extend(prefix + (x,) for x in range(lo, hi + 1))
    return out


def count_lattice_points(
    z: Zonotope, n: int = 1, *, strict: bool = False, budget: int = DEFAULT_BUDGET
) -> int:
    zn = _prepare(z, n)
    if not zn.full_dimensional:
        return len(lattice_points(z, n, strict=strict, budget=budget))
    return sum(hi - lo + 1 for _, lo, hi in _fibres(zn, strict, budget))


def interior_lattice_points(z: Zonotope, n: int = 1, *, budget: int = DEFAULT_BUDGET) -> list[IntVector]:
    if not z.full_dimensional:
        raise DegenerateZonotope("interior points need a full-dimensional zonotope")
    return lattice_points(z, n, strict=True, budget=budget)


def has_interior_lattice_point(z: Zonotope, n: int = 1, *, budget: int = DEFAULT_BUDGET) -> bool:
    if not z.full_dimensional:
        raise DegenerateZonotope("interior points need a full-dimensional zonotope")
    for _ in _fibres(_prepare(z, n), True, budget):
        return True
    return False


def width_in_direction(z: Zonotope, u: Sequence[int]) -> int:
    if not any(u):
        raise ValueError("zero direction")
    return sum(abs(linalg.dot(u, v)) for v in z.generators)


@dataclass(frozen=True)
class LatticeWidth:
    width: int
    witness: IntVector
    # candidates examined by the exhaustive search
    searched: int = field(default=0, compare=False)


def width_search_bound(z: Zonotope, w0: int) -> int:
    """Sup-norm bound on integer directions of width <= w0.

    For d independent generators forming M, width <= w0 forces
    |M^T u|_inf <= w0, hence |u|_inf <= w0 * max row sum |adj(M^T)| / |det M|.
    The best bound over all such choices of generators is returned.
    """
    d = z.dim_ambient
    best = None
    for sub in itertools.combinations(z.generators, d):
        mt = [tuple(v) for v in sub]  # rows of M^T are the generators
        dt = linalg.det(mt)
        if dt == 0:
            continue
        adj = linalg.adjugate(mt)
        rs = max(sum(abs(x) for x in r) for r in adj)
        b = _ceil_div(w0 * rs, abs(dt))
        best = b if best is None else min(best, b)
    if best is None:
        raise DegenerateZonotope("no independent generator subset")
    return best


def _l1_ball(d: int, radius: int) -> Iterator[tuple[int, ...]]:
    if d == 0:
        yield ()
        return
    for a in range(-radius, radius + 1):
        for rest in _l1_ball(d - 1, radius - abs(a)):
            yield (a,) + rest


def lattice_width(z: Zonotope) -> LatticeWidth:
    """Exact lattice width with the lexicographically smallest witness.

    Start from the best width ``w0`` among coordinate and facet directions.
    Any direction u with width <= w0 satisfies sum_j |u.v_j| <= w0 for every
    independent d-subset {v_j} of generators, so ``y = M^T u`` lies in the
    l1-ball of radius w0. Every such y is tried and ``u = (M^T)^{-1} y`` kept
    when integral, which makes the search complete.
    """
    d = z.dim_ambient
    if not z.full_dimensional:
        ker = linalg.kernel_basis(z.generators, d)
        ws = sorted(linalg.canonical_sign(linalg.primitive_part(u)) for u in ker)
        return LatticeWidth(0, ws[0])

    cands = []
    for i in range(d):
        cands.append(tuple(int(i == j) for j in range(d)))
    cands.extend(f.normal for f in facet_directions(z))
    w0 = min(width_in_direction(z, u) for u in cands)

    sub = next(s for s in itertools.combinations(z.generators, d) if linalg.det(s) != 0)
    mt = [tuple(v) for v in sub]
    dt = linalg.det(mt)
    adj = linalg.adjugate(mt)

    best_w, best_u, searched = None, None, 0
    for y in _l1_ball(d, w0):
        num = linalg.matvec(adj, y)
        if any(c % dt for c in num):
            continue
        u = tuple(c // dt for c in num)
        if not any(u) or u != linalg.canonical_sign(u) or math.gcd(*u) != 1:
            continue
        searched += 1
        w = width_in_direction(z, u)
        if best_w is None or (w, u) < (best_w, best_u):
            best_w, best_u = w, u
    return LatticeWidth(best_w, best_u, searched)


@dataclass(frozen=True)
class Width1Decomposition:
    """``U @ Z + shift == factor x [0, 1]`` with U unimodular."""

    factor: Zonotope
    transform: Rows
    shift: IntVector
    direction: IntVector


def width1_decomposition(z: Zonotope) -> Optional[Width1Decomposition]:
    """Split off a unit segment along a width-1 facet direction, if any.

    For a lattice zonotope, lattice width 1 is always attained by a facet
    direction u; then exactly one generator w has u.w = +-1 and the rest lie
    in u-perp. A lattice basis of u-perp together with w is mapped to the
    standard basis.
    """
    if not z.has_integer_translate:
        raise ValueError("width-1 decomposition needs an integer translate")
    d = z.dim_ambient
    if d < 2:
        raise ValueError("need dimension >= 2")
    for f in facet_directions(z):
        if f.width != 1:
            continue
        u = f.normal
        crossing = [i for i, v in enumerate(z.generators) if linalg.dot(u, v) != 0]
        assert len(crossing) == 1
        w = z.generators[crossing[0]]
        basis = linalg.hyperplane_lattice_basis(u)
        U = linalg.unimodular_complement(basis, w)
        images = [linalg.matvec(U, v) for i, v in enumerate(z.generators) if i != crossing[0]]
        assert all(img[-1] == 0 for img in images)
        factor = make_zonotope([img[:-1] for img in images], dim=d - 1)
        shift = tuple(-int(c) for c in linalg.matvec(U, z.translate))
        return Width1Decomposition(factor, U, shift, u)
    return None


def volume(z: Zonotope) -> int:
    """Euclidean volume: sum of |det| over d-subsets of generators."""
    if not z.full_dimensional:
        raise DegenerateZonotope("volume needs a full-dimensional zonotope")
    d = z.dim_ambient
    return sum(abs(linalg.det(s)) for s in itertools.combinations(z.generators, d))


def solid_angle_sum_2d(z: Zonotope) -> float:
    """Sum of normalised tangent-cone angles over the lattice points of a
    full-dimensional planar zonotope (translate may be rational)."""
    if z.dim_ambient != 2:
        raise ValueError("solid angles are implemented for d = 2 only")
    if not z.full_dimensional:
        raise DegenerateZonotope("solid angles need a full-dimensional zonotope")
    facets = facet_directions(z)
    total = 0.0
    for p in lattice_points(z):
        outward = []
        for f in facets:
            s = linalg.dot(f.normal, p)
            if s == f.hi:
                outward.append(f.normal)
            elif s == f.lo:
                outward.append(tuple(-c for c in f.normal))
        if not outward:
            total += 1.0
        elif len(outward) == 1:
            total += 0.5
        else:
            (a1, a2), (b1, b2) = outward
            between = math.atan2(abs(a1 * b2 - a2 * b1), a1 * b1 + a2 * b2)
            total += (math.pi - between) / (2 * math.pi)
    return total
