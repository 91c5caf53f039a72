"""Classification of Ehrhart and h*-polynomials of degree-2 lattice zonotopes.

Checkers return a :class:`Verdict` that names the clause which accepted the
input or the precise reason it was rejected. Realizers build zonotopes with a
prescribed c-vector, and :func:`classify_3d_deg2` sorts a 3-dimensional
lattice zonotope without interior points into its geometric type.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Sequence, Union

from zonoehr import linalg
from zonoehr.ehrhart import CVector, ehrhart_stanley, to_cbasis
from zonoehr.linalg import IntVector, Rows
from zonoehr.zonotope import (
    Width1Decomposition,
    Zonotope,
    has_interior_lattice_point,
    lattice_width,
    make_zonotope,
    width1_decomposition,
)

Number = Union[int, Fraction, str]

EXCEPTIONAL_GENERATORS: tuple[IntVector, ...] = ((1, 1, 0), (-1, 1, 0), (1, 1, 2))


class ClassificationContradiction(RuntimeError):
    """A degree-2 zonotope fit neither geometric type."""


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    case_label: Optional[str] = None
    witness: Any = None
    reason: Optional[str] = None

    def __post_init__(self):
        if self.accepted and not self.case_label:
            raise ValueError("accepted verdict needs a case label")
        if not self.accepted and not self.reason:
            raise ValueError("rejected verdict needs a reason")


def _accept(label: str, witness: Any = None) -> Verdict:
    return Verdict(True, case_label=label, witness=witness)


def _reject(reason: str) -> Verdict:
    return Verdict(False, reason=reason)


def _q(*xs: Number) -> list[Fraction]:
    return [Fraction(x) for x in xs]


def _is_int(x: Fraction) -> bool:
    return x.denominator == 1


def _nonneg_int_reason(names: Sequence[str], values: Sequence[Fraction]) -> Optional[str]:
    for name, v in zip(names, values):
        if not _is_int(v):
            return f"{name} = {v} is not an integer"
        if v < 0:
            return f"{name} = {v} is negative"
    return None


# Scott: Ehrhart polynomials 1 + e1 n + e2 n^2 of lattice polygons

def check_scott(e1: Number, e2: Number) -> Verdict:
    e1, e2 = _q(e1, e2)
    for name, v in (("e1", e1), ("e2", e2)):
        if not _is_int(2 * v):
            return _reject(f"{name} = {v} is not a half-integer")
        if v <= 0:
            return _reject(f"{name} = {v} is not positive")
    if e2 == e1 - 1:
        return _accept("Scott-(i)")
    if e1 < e2 + 1 and Fraction(3, 2) <= e1 <= e2 / 2 + 2:
        return _accept("Scott-(ii)")
    if (e1, e2) == (Fraction(9, 2), Fraction(9, 2)):
        return _accept("Scott-(iii)")
    if e1 < Fraction(3, 2):
        why = f"e1 = {e1} < 3/2"
    elif e1 >= e2 + 1:
        why = f"e1 = {e1} > e2 + 1 = {e2 + 1}"
    else:
        why = f"e1 = {e1} > e2/2 + 2 = {e2 / 2 + 2}"
    return _reject(f"fails (i) e2 = e1 - 1, (ii) [{why}] and (iii) (9/2, 9/2)")


# Treutlein: h*-polynomials 1 + h1 t + h2 t^2 of degree-2 lattice polytopes

def check_treutlein(h1: Number, h2: Number, enforce_dim2_bound: bool = False) -> Verdict:
    h1, h2 = _q(h1, h2)
    if enforce_dim2_bound and h2 > h1:
        return _reject(f"h2 = {h2} > h1 = {h1} violates the planar bound h2 <= h1")
    if h2 == 0:
        return _accept("Treutlein-(i)")
    if 0 <= h1 <= 3 * h2 + 3:
        return _accept("Treutlein-(ii)")
    if (h1, h2) == (7, 1):
        return _accept("Treutlein-(iii)")
    return _reject(f"h2 = {h2} != 0, h1 = {h1} outside [0, 3*h2+3 = {3 * h2 + 3}], not (7, 1)")


# zonotope c-vector classifications

def _zono_c_reason(c1: Fraction, c2: Fraction) -> Optional[str]:
    bad = _nonneg_int_reason(("c1", "c2"), (c1, c2))
    if bad:
        return bad
    if c2 != 0 and c2 < c1 - 1:
        return f"c2 = {c2} is nonzero and below c1 - 1 = {c1 - 1}"
    return None


def _zono_c_label(prefix: str, c1: Fraction, c2: Fraction) -> str:
    return f"{prefix}-(ii) c2>=c1-1" if c2 >= c1 - 1 else f"{prefix}-(ii) c2=0"


def check_zono2d(c1: Number, c2: Number) -> Verdict:
    c1, c2 = _q(c1, c2)
    bad = _zono_c_reason(c1, c2)
    if bad:
        return _reject(bad)
    return _accept(_zono_c_label("zono2d", c1, c2), _realize_2d(int(c1), int(c2)))


def check_zono3d_deg2(c1: Number, c2: Number, c3: Number) -> Verdict:
    c1, c2, c3 = _q(c1, c2, c3)
    bad = _zono_c_reason(c1, c2)
    if bad:
        return _reject(bad)
    if c3 != 0:
        return _reject(f"c3 = {c3} != 0 (interior lattice points force degree 3)")
    return _accept(_zono_c_label("zono3d-deg2", c1, c2), _realize_3d(int(c1), int(c2)))


# h*-vector classifications

def check_hstar_zono2d(h1: Number, h2: Number) -> Verdict:
    h1, h2 = _q(h1, h2)
    bad = _nonneg_int_reason(("h1", "h2"), (h1, h2))
    if bad:
        return _reject(bad)
    if (h1 - h2) % 2 != 1:
        return _reject(f"parity: h1 - h2 = {h1 - h2} is even")
    if h2 + 1 > h1:
        return _reject(f"h2 + 1 = {h2 + 1} > h1 = {h1}")
    if h2 != 0 and h1 > 3 * h2 + 3:
        return _reject(f"h2 != 0 and h1 = {h1} > 3*h2 + 3 = {3 * h2 + 3}")
    c = inverse_map_hstar_to_c((h1, h2), 2)
    return _accept("hstar2d", witness=tuple(int(x) for x in c))


def check_hstar_zono3d_deg2(h1: Number, h2: Number) -> Verdict:
    h1, h2 = _q(h1, h2)
    bad = _nonneg_int_reason(("h1", "h2"), (h1, h2))
    if bad:
        return _reject(bad)
    r1 = (2 * h1 - h2) % 6
    if r1 != 1:
        return _reject(f"residue 2h1-h2 ≡ {r1} mod 6, need 1")
    r2 = (2 * h2 - h1) % 6
    if r2 != 4:
        return _reject(f"residue 2h2-h1 ≡ {r2} mod 6, need 4")
    if not h1 / 2 - 1 <= h2 <= 2 * h1 - 7:
        return _reject(f"h2 = {h2} outside [h1/2 - 1, 2h1 - 7] = [{h1 / 2 - 1}, {2 * h1 - 7}]")
    if not (h2 >= h1 - 5 or 2 * h2 == h1 - 2):
        return _reject(f"h2 = {h2} < h1 - 5 = {h1 - 5} and 2h2 != h1 - 2")
    c = inverse_map_hstar_to_c((h1, h2), 3)
    return _accept("hstar3d-deg2", witness=tuple(int(x) for x in c))


# coefficient maps

def map_c_to_e_2d(c1: Number, c2: Number) -> tuple[Fraction, Fraction]:
    c1, c2 = _q(c1, c2)
    return 2 + c1, 1 + c1 + c2


def map_e_to_c_2d(e1: Number, e2: Number) -> tuple[Fraction, Fraction]:
    e1, e2 = _q(e1, e2)
    return e1 - 2, e2 - e1 + 1


def map_c_to_hstar(c: Sequence[Number], d: int) -> tuple[Fraction, Fraction]:
    """(c1, c2) -> (h1, h2); for d = 3 a trailing c3 must be zero."""
    c = _q(*c)
    if d == 2:
        c1, c2 = c
        return 1 + 2 * c1 + c2, c2
    if d == 3:
        if len(c) == 3:
            if c[2] != 0:
                raise ValueError("c3 must vanish for a degree-2 zonotope")
            c = c[:2]
        c1, c2 = c
        return 4 + 4 * c1 + 2 * c2, 1 + 2 * c1 + 4 * c2
    raise ValueError(f"d = {d} not in {{2, 3}}")


def inverse_map_hstar_to_c(h: Sequence[Number], d: int) -> tuple[Fraction, Fraction]:
    h1, h2 = _q(*h)
    if d == 2:
        return (h1 - h2 - 1) / 2, h2
    if d == 3:
        return (2 * h1 - h2 - 7) / 6, (2 * h2 - h1 + 2) / 6
    raise ValueError(f"d = {d} not in {{2, 3}}")


# realizers

def _realize_2d(c1: int, c2: int) -> Zonotope:
    if c2 == 0:
        return make_zonotope([(1, 0), (0, c1 + 1)])
    # zero generator (0, 0) for c1 = 0 is dropped by make_zonotope
    return make_zonotope([(1, 0), (0, c1), (1, 1 - c1 + c2)])


def _realize_3d(c1: int, c2: int) -> Zonotope:
    base = _realize_2d(c1, c2)
    return make_zonotope([v + (0,) for v in base.generators] + [(0, 0, 1)])


def realize_2d(c1: Number, c2: Number) -> Zonotope:
    """Planar lattice zonotope with Ehrhart polynomial
    (n+1)^2 + c1 (n+1) n + c2 n^2."""
    v = check_zono2d(c1, c2)
    if not v.accepted:
        raise ValueError(f"({c1}, {c2}) is not admissible: {v.reason}")
    return v.witness


def realize_3d_deg2(c1: Number, c2: Number, exceptional: bool = False) -> Zonotope:
    """Degree-2 lattice zonotope Q x [0,1] with c-vector (c1, c2, 0).

    With ``exceptional`` the pair (0, 3) is realized by the exceptional
    parallelepiped instead.
    """
    v = check_zono3d_deg2(c1, c2, 0)
    if not v.accepted:
        raise ValueError(f"({c1}, {c2}, 0) is not admissible: {v.reason}")
    if exceptional and (Fraction(c1), Fraction(c2)) == (0, 3):
        return exceptional_parallelepiped()
    return v.witness


def exceptional_parallelepiped() -> Zonotope:
    return make_zonotope(EXCEPTIONAL_GENERATORS)


# geometric classification in dimension 3

@dataclass(frozen=True)
class Width1Product:
    factor: Zonotope
    decomposition: Width1Decomposition
    merged: Zonotope


@dataclass(frozen=True)
class Exceptional:
    """``transform @ Z + shift`` is the exceptional parallelepiped."""

    transform: Rows
    shift: IntVector
    merged: Zonotope


@dataclass(frozen=True)
class NotDegree2:
    reason: str
    merged: Zonotope


Classification = Union[Width1Product, Exceptional, NotDegree2]

_B_IMAGES = ((1, 1, 0), (0, 1, 0), (1, 1, 1))


def _exceptional_map(z: Zonotope) -> tuple[Rows, IntVector]:
    v1, v2, v3 = z.generators
    halves = [tuple(a + b for a, b in zip(v1, v)) for v in (v2, v3)]
    if any(x % 2 for h in halves for x in h):
        raise ClassificationContradiction(
            f"generators {z.generators} have no lattice point at the facet centres"
        )
    b = [v1] + [tuple(x // 2 for x in h) for h in halves]
    b_rows = linalg.transpose(b)
    if abs(linalg.det(b_rows)) != 1:
        raise ClassificationContradiction(f"{b} is not a lattice basis")
    # T b_i = image_i, i.e. T = images @ B^-1
    T = linalg.matmul(linalg.transpose(_B_IMAGES), linalg.inverse_unimodular(b_rows))
    images = [linalg.matvec(T, v) for v in z.generators]
    target = set(EXCEPTIONAL_GENERATORS)
    shift = [-x for x in linalg.matvec(T, z.translate)]
    for img in images:
        if img in target:
            target.discard(img)
            continue
        neg = tuple(-x for x in img)
        if neg not in target:
            raise ClassificationContradiction(f"image generator {img} is not exceptional")
        target.discard(neg)
        # [0, img] = [0, -img] + img
        shift = [s - x for s, x in zip(shift, img)]
    assert not target
    return T, tuple(int(s) for s in shift)


def classify_3d_deg2(z: Zonotope) -> Classification:
    """Sort a full-dimensional 3-dimensional lattice zonotope.

    Parallel generators are merged first. A zonotope with an interior lattice
    point has degree 3. Otherwise it either splits as Q x [0,1] along a
    width-1 facet direction, or it is a parallelepiped with primitive
    generators that maps onto the exceptional one.
    """
    if z.dim_ambient != 3 or not z.full_dimensional:
        raise ValueError("need a full-dimensional zonotope in R^3")
    if not z.has_integer_translate:
        raise ValueError("need an integer translate")
    merged = make_zonotope(z.generators, z.translate, merge_parallel=True)
    if has_interior_lattice_point(merged):
        return NotDegree2("has an interior lattice point, so degree 3", merged)
    dec = width1_decomposition(merged)
    if dec is not None:
        return Width1Product(dec.factor, dec, merged)
    gens = merged.generators
    if len(gens) != 3:
        raise ClassificationContradiction(
            f"degree 2 with lattice width > 1 but {len(gens)} non-parallel generators"
        )
    if not all(linalg.is_primitive(v) for v in gens):
        raise ClassificationContradiction(f"non-primitive generator among {gens}")
    if lattice_width(merged).width < 2:
        raise ClassificationContradiction("lattice width 1 without a width-1 facet direction")
    T, shift = _exceptional_map(merged)
    return Exceptional(T, shift, merged)


def c_vector_of(z: Zonotope) -> CVector:
    """c-vector of a lattice zonotope, in the dimension of its span."""
    return to_cbasis(ehrhart_stanley(z), z.rank)
