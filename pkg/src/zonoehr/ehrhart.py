"""Ehrhart polynomials of lattice zonotopes and their change of basis.

Three coordinate systems are used for a degree-<=d polynomial p(n):

* monomial: ascending coefficients of n^k;
* c-basis: p = (n+1)^d + sum_j c_j (n+1)^(d-j) n^j;
* h*-basis: p = sum_i h_i * binom(n+d-i, d).
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from zonoehr import linalg
from zonoehr.zonotope import (
    DEFAULT_BUDGET,
    DegenerateZonotope,
    Zonotope,
    count_lattice_points,
    has_interior_lattice_point,
)

EULERIAN_MAX_D = 9


class Poly:
    """Univariate polynomial with exact rational coefficients, ascending."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + other.scale(-1)

    def __mul__(self, other: "Poly") -> "Poly":
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    def __pow__(self, k: int) -> "Poly":
        out = Poly([1])
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c) -> "Poly":
        return Poly([c * x for x in self.coeffs])

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def padded(self, length: int) -> tuple[Fraction, ...]:
        if len(self.coeffs) > length:
            raise ValueError(f"degree {self.degree} does not fit in {length} coefficients")
        return self.coeffs + (Fraction(0),) * (length - len(self.coeffs))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        return format_poly(self, "n")


def format_poly(p: Poly, var: str = "n") -> str:
    terms = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mono = "" if k == 0 else var if k == 1 else f"{var}^{k}"
        if mono and c == 1:
            terms.append(mono)
        elif mono:
            terms.append(f"{c}{mono}" if c.denominator == 1 else f"({c}){mono}")
        else:
            terms.append(str(c))
    return " + ".join(terms) if terms else "0"


N = Poly([0, 1])
N_PLUS_1 = Poly([1, 1])


def _all_nonneg_int(xs: Iterable[Fraction]) -> bool:
    return all(x.denominator == 1 and x >= 0 for x in xs)


@dataclass(frozen=True)
class CVector:
    """Coordinates (c_1..c_d) of (n+1)^d + sum_j c_j (n+1)^(d-j) n^j."""

    d: int
    c: tuple[Fraction, ...]

    @property
    def valid(self) -> bool:
        """True when every c_j is a nonnegative integer."""
        return _all_nonneg_int(self.c)


@dataclass(frozen=True)
class HStarVector:
    """Coordinates (h_0..h_d) in the basis binom(n+d-i, d)."""

    d: int
    h: tuple[Fraction, ...]
    # False when the input it was derived from was outside its natural domain
    source_valid: bool = True

    @property
    def valid(self) -> bool:
        return self.source_valid and _all_nonneg_int(self.h)

    @property
    def polynomial(self) -> Poly:
        """h*(t) as a polynomial in t."""
        return Poly(self.h)


def _solve_in_basis(p: Poly, basis: Sequence[Poly], d: int) -> tuple[Fraction, ...]:
    if p.degree > d:
        raise ValueError(f"polynomial of degree {p.degree} exceeds d = {d}")
    cols = [b.padded(d + 1) for b in basis]
    rows = [[cols[j][i] for j in range(d + 1)] for i in range(d + 1)]
    return linalg.solve_rational(rows, p.padded(d + 1))


@functools.lru_cache(maxsize=None)
def cbasis(d: int) -> tuple[Poly, ...]:
    """[(n+1)^d, (n+1)^(d-1) n, ..., n^d]."""
    return tuple(N_PLUS_1 ** (d - j) * N ** j for j in range(d + 1))


def binomial_poly(shift: int, d: int) -> Poly:
    """binom(n + shift, d) as a polynomial in n."""
    p = Poly([1])
    for k in range(d):
        p = p * Poly([shift - k, 1])
    return p.scale(Fraction(1, math.factorial(d)))


@functools.lru_cache(maxsize=None)
def hstar_basis(d: int) -> tuple[Poly, ...]:
    return tuple(binomial_poly(d - i, d) for i in range(d + 1))


def to_cbasis(p: Poly, d: int) -> CVector:
    if p.degree > d:
        raise ValueError(f"polynomial of degree {p.degree} exceeds d = {d}")
    if p(0) != 1:
        raise ValueError(f"not normalized: p(0) = {p(0)}, expected 1")
    coords = _solve_in_basis(p, cbasis(d), d)
    assert coords[0] == 1
    return CVector(d, coords[1:])


def from_cbasis(c: CVector) -> Poly:
    basis = cbasis(c.d)
    out = basis[0]
    for cj, b in zip(c.c, basis[1:]):
        out = out + b.scale(cj)
    return out


def hstar_from_poly(p: Poly, d: int) -> HStarVector:
    return HStarVector(d, _solve_in_basis(p, hstar_basis(d), d))


def poly_from_hstar(h: HStarVector) -> Poly:
    out = Poly()
    for hi, b in zip(h.h, hstar_basis(h.d)):
        out = out + b.scale(hi)
    return out


def _descents(perm: Sequence[int]) -> int:
    return sum(1 for a, b in zip(perm, perm[1:]) if a > b)


def _check_eulerian_d(d: int) -> None:
    if not 1 <= d <= EULERIAN_MAX_D:
        raise ValueError(f"d = {d} outside the enumeration range 1..{EULERIAN_MAX_D}")


def eulerian_Aj(d: int, j: int) -> Poly:
    """Descent generating polynomial of the permutations of [d] whose last
    value is d + 1 - j, by direct enumeration."""
    _check_eulerian_d(d)
    if not 1 <= j <= d:
        raise ValueError(f"j = {j} outside 1..{d}")
    counts = [0] * d
    last = d + 1 - j
    rest = [k for k in range(1, d + 1) if k != last]
    for head in itertools.permutations(rest):
        counts[_descents(head + (last,))] += 1
    return Poly(counts)


def eulerian(d: int) -> Poly:
    _check_eulerian_d(d)
    counts = [0] * d
    for perm in itertools.permutations(range(1, d + 1)):
        counts[_descents(perm)] += 1
    return Poly(counts)


def hstar_via_eulerian(c: CVector) -> HStarVector:
    """h*(t) = A^{d+1}_1 + c_1 A^{d+1}_2 + ... + c_d A^{d+1}_{d+1}."""
    d = c.d
    out = eulerian_Aj(d + 1, 1)
    for j, cj in enumerate(c.c, start=2):
        out = out + eulerian_Aj(d + 1, j).scale(cj)
    return HStarVector(d, out.padded(d + 1), source_valid=c.valid)


def degree_of(x: Union[HStarVector, Poly], d: int | None = None) -> int:
    """h*-degree, from an h*-vector or from an Ehrhart polynomial and d."""
    if isinstance(x, Poly):
        if d is None:
            raise ValueError("dimension required for a polynomial")
        x = hstar_from_poly(x, d)
    nz = [i for i, h in enumerate(x.h) if h != 0]
    return nz[-1] if nz else 0


def interior_count_reciprocity(p: Poly, d: int) -> int:
    """|p(-1)|; the interior point count when p is the Ehrhart polynomial of
    a d-dimensional lattice polytope."""
    v = abs(p(-1))
    if v.denominator != 1:
        raise ValueError(f"p(-1) = {p(-1)} is not an integer")
    return int(v)


def _require_lattice(z: Zonotope) -> Zonotope:
    if not z.has_integer_translate:
        raise ValueError("Ehrhart polynomials need an integer translate")
    return z.at_origin()


def ehrhart_stanley(z: Zonotope) -> Poly:
    """sum over independent generator subsets I of g(I) n^|I|."""
    z = _require_lattice(z)
    coeffs = [0] * (z.rank + 1)
    for sub in linalg.independent_subsets(z.generators):
        k = len(sub)
        coeffs[k] += 1 if k == 0 else linalg.gcd_of_minors([z.generators[i] for i in sub], k)
    return Poly(coeffs)


def interpolate(values: Sequence[int]) -> Poly:
    """Polynomial of degree < len(values) through (k, values[k]), k = 0, 1, ...

    Newton forward differences.
    """
    diffs = [Fraction(v) for v in values]
    newton = []
    while diffs:
        newton.append(diffs[0])
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    out = Poly()
    falling = Poly([1])
    for k, coef in enumerate(newton):
        out = out + falling.scale(coef / math.factorial(k))
        falling = falling * Poly([-k, 1])
    return out


def ehrhart_counts(z: Zonotope, nodes: Iterable[int], budget: int = DEFAULT_BUDGET) -> list[int]:
    z = _require_lattice(z)
    return [count_lattice_points(z, n, budget=budget) for n in nodes]


def ehrhart_oracle(z: Zonotope, *, verify: bool = False, budget: int = DEFAULT_BUDGET) -> Poly:
    """Ehrhart polynomial by counting lattice points of nZ, n = 0..d.

    With ``verify`` the counts for n = 0..d+2 are taken and the degree-d
    interpolant is required to reproduce the two extra values.
    """
    d = z.dim_ambient
    last = d + 2 if verify else d
    counts = ehrhart_counts(z, range(last + 1), budget)
    p = interpolate(counts[: d + 1])
    if verify:
        for n in range(d + 1, last + 1):
            if p(n) != counts[n]:
                raise ArithmeticError(
                    f"counts {counts} are not fitted by a degree-{d} polynomial"
                )
    return p


def degree_via_dilates(z: Zonotope, budget: int = DEFAULT_BUDGET) -> int:
    """Smallest r >= 0 such that the (d - r)-th dilate has no interior
    lattice point; the 0-th dilate is a point and has none."""
    if not z.full_dimensional:
        raise DegenerateZonotope("degree via dilates needs a full-dimensional zonotope")
    z = _require_lattice(z)
    d = z.dim_ambient
    for r in range(d + 1):
        k = d - r
        if k == 0 or not has_interior_lattice_point(z, k, budget=budget):
            return r
    raise AssertionError("unreachable")


def format_cbasis(c: CVector) -> str:
    """Display form such as ``(n+1)^3 + 3(n+1)n^2``; never parsed back."""

    def power(base: str, e: int) -> str:
        return "" if e == 0 else base if e == 1 else f"{base}^{e}"

    terms = [power("(n+1)", c.d) or "1"]
    for j, cj in enumerate(c.c, start=1):
        if cj == 0:
            continue
        mono = power("(n+1)", c.d - j) + power("n", j)
        coef = "" if cj == 1 else (str(cj) if cj.denominator == 1 else f"({cj})")
        terms.append(coef + mono)
    return " + ".join(terms)
