"""Exhaustive verification census over small families of lattice zonotopes.

Every instance is pushed through all routes that should agree (Stanley vs
point counting, both h* routes, reciprocity vs brute force, both degree
definitions, the checkers and the 3-dimensional classifier). Disagreements
are collected as violations in the instance record rather than raised, so a
census always finishes and reports everything it found.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Iterator, Sequence

from zonoehr import classify, ehrhart, linalg
from zonoehr.document import ZonotopeDocument, poly2list, qlist
from zonoehr.ehrhart import N_PLUS_1, Poly
from zonoehr.linalg import IntVector
from zonoehr.zonotope import (
    DEFAULT_BUDGET,
    Zonotope,
    count_lattice_points,
    lattice_points,
    make_zonotope,
)

Instance = tuple[IntVector, ...]


def canonical_vectors(d: int, bound: int) -> list[IntVector]:
    """Nonzero vectors with entries in [-bound, bound] and positive leading
    entry, in lexicographic order."""
    out = []
    for v in itertools.product(range(-bound, bound + 1), repeat=d):
        if any(v) and linalg.canonical_sign(v) == v:
            out.append(v)
    return out


def enumerate_family(d: int, bound: int, max_gens: int, min_gens: int = 1) -> Iterator[Instance]:
    """Generator multisets up to sign and order, sorted lexicographically."""
    vecs = canonical_vectors(d, bound)
    for m in range(min_gens, max_gens + 1):
        yield from itertools.combinations_with_replacement(vecs, m)


def family_size(d: int, bound: int, max_gens: int, min_gens: int = 1) -> int:
    v = len(canonical_vectors(d, bound))
    return sum(math.comb(v + m - 1, m) for m in range(min_gens, max_gens + 1))


def canonicalize(gens: Iterable[Sequence[int]]) -> Instance:
    return tuple(sorted(linalg.canonical_sign(v) for v in gens if any(v)))


def random_family(count: int, d: int, bound: int, gens_choices: Sequence[int], seed: int) -> list[Instance]:
    """``count`` seeded random canonical instances (duplicates allowed)."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        m = rng.choice(list(gens_choices))
        gens = [tuple(rng.randint(-bound, bound) for _ in range(d)) for _ in range(m)]
        inst = canonicalize(gens)
        if inst:
            out.append(inst)
    return out


def worst_case_cells(d: int, bound: int, max_gens: int) -> int:
    """Largest bounding box met when verifying the oracle at dilate d + 2."""
    side = 2 * bound * max_gens * (d + 2) + 1
    return side**d


def _points_match(mapped: Iterable[Sequence[int]], target: Iterable[Sequence[int]]) -> bool:
    mapped = sorted(tuple(int(x) for x in p) for p in mapped)
    return len(mapped) == len(set(mapped)) and mapped == sorted(tuple(p) for p in target)


def check_instance(gens: Instance, budget: int = DEFAULT_BUDGET) -> dict:
    """Run every cross-check on one instance and return its record."""
    z = make_zonotope(gens)
    bad: list[str] = []
    stanley = ehrhart.ehrhart_stanley(z)
    oracle = ehrhart.ehrhart_oracle(z, verify=True, budget=budget)
    if stanley != oracle:
        bad.append(f"stanley {poly2list(stanley)} != oracle {poly2list(oracle)}")
    rec: dict = {
        "key": [list(v) for v in gens],
        "document": ZonotopeDocument.from_zonotope(z).to_obj(),
        "rank": z.rank,
        "ehrhart": poly2list(stanley),
    }
    if z.full_dimensional:
        _check_full(z, stanley, rec, bad, budget)
    rec["violations"] = bad
    return rec


def _check_full(z: Zonotope, stanley: Poly, rec: dict, bad: list, budget: int) -> None:
    d = z.dim_ambient
    c = ehrhart.to_cbasis(stanley, d)
    h = ehrhart.hstar_from_poly(stanley, d)
    h_eul = ehrhart.hstar_via_eulerian(c)
    interior = count_lattice_points(z, 1, strict=True, budget=budget)
    deg = ehrhart.degree_of(h)
    deg_dil = ehrhart.degree_via_dilates(z, budget)
    rec.update(cvector=qlist(c.c), hstar=qlist(h.h), interior=interior, degree=deg)

    if not c.valid:
        bad.append(f"c-vector {qlist(c.c)} not nonnegative integral")
    if not h.valid:
        bad.append(f"h* {qlist(h.h)} not nonnegative integral")
    if h.h != h_eul.h:
        bad.append(f"h* {qlist(h.h)} != eulerian route {qlist(h_eul.h)}")
    if ehrhart.interior_count_reciprocity(stanley, d) != interior or c.c[-1] != interior:
        bad.append(f"interior {interior} disagrees with reciprocity / c_d")
    if deg != deg_dil:
        bad.append(f"h*-degree {deg} != degree via dilates {deg_dil}")
    if deg not in (d - 1, d):
        bad.append(f"degree {deg} not in {{d-1, d}}")
    if (interior == 0) != (deg == d - 1):
        bad.append("interior emptiness disagrees with degree")

    if d == 2:
        _check_2d(c, h, stanley, bad)
    elif d == 3:
        _check_3d(z, c, h, stanley, interior, rec, bad)


def _check_2d(c, h, stanley: Poly, bad: list) -> None:
    c1, c2 = c.c
    if not classify.check_zono2d(c1, c2).accepted:
        bad.append(f"c = ({c1}, {c2}) rejected by the planar checker")
    e = classify.map_c_to_e_2d(c1, c2)
    if e != tuple(stanley.padded(3)[1:]):
        bad.append(f"c -> e map gives {qlist(e)}")
    if not classify.check_scott(*e).accepted:
        bad.append(f"e = {qlist(e)} rejected by Scott")
    hh = classify.map_c_to_hstar((c1, c2), 2)
    if hh != tuple(h.h[1:]):
        bad.append(f"c -> h* map gives {qlist(hh)}")
    if not classify.check_hstar_zono2d(*hh).accepted:
        bad.append(f"h* = {qlist(hh)} rejected by the planar h* checker")


def _check_3d(z: Zonotope, c, h, stanley: Poly, interior: int, rec: dict, bad: list) -> None:
    c1, c2, c3 = c.c
    if c3 == 0:
        if not classify.check_zono3d_deg2(c1, c2, c3).accepted:
            bad.append(f"c = ({c1}, {c2}, 0) rejected by the degree-2 checker")
        hh = classify.map_c_to_hstar((c1, c2, c3), 3)
        if hh != tuple(h.h[1:3]):
            bad.append(f"c -> h* map gives {qlist(hh)}")
        if not classify.check_hstar_zono3d_deg2(*hh).accepted:
            bad.append(f"h* = {qlist(hh)} rejected by the degree-2 h* checker")
    elif interior == 0:
        bad.append("c3 > 0 but no interior point")

    try:
        cls = classify.classify_3d_deg2(z)
    except classify.ClassificationContradiction as exc:
        bad.append(f"classification contradiction: {exc}")
        rec["class"] = "Contradiction"
        return
    rec["class"] = type(cls).__name__
    if isinstance(cls, classify.NotDegree2):
        if interior == 0:
            bad.append("NotDegree2 without interior points")
        return
    if interior:
        bad.append(f"{rec['class']} with interior points")
    if isinstance(cls, classify.Width1Product):
        dec = cls.decomposition
        q_ehr = ehrhart.ehrhart_stanley(cls.factor)
        if N_PLUS_1 * q_ehr != stanley:
            bad.append("ehr(Z) != (n+1) ehr(Q)")
        mapped = (
            tuple(a + b for a, b in zip(linalg.matvec(dec.transform, p), dec.shift))
            for p in lattice_points(cls.merged)
        )
        target = (q + (s,) for q in lattice_points(cls.factor) for s in (0, 1))
        if abs(linalg.det(dec.transform)) != 1 or not _points_match(mapped, target):
            bad.append("width-1 map is not a lattice-point bijection")
        rec["factor"] = ZonotopeDocument.from_zonotope(cls.factor).to_obj()
    else:
        mapped = (
            tuple(a + b for a, b in zip(linalg.matvec(cls.transform, p), cls.shift))
            for p in lattice_points(cls.merged)
        )
        target = lattice_points(classify.exceptional_parallelepiped())
        if abs(linalg.det(cls.transform)) != 1 or not _points_match(mapped, target):
            bad.append("exceptional map is not a lattice-point bijection")
        rec["transform"] = [list(r) for r in cls.transform]
        rec["shift"] = list(cls.shift)


def _check_chunk(args: tuple[list[Instance], int]) -> list[dict]:
    chunk, budget = args
    return [check_instance(g, budget) for g in chunk]


def run_census(
    instances: Iterable[Instance],
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    chunk_size: int = 64,
) -> list[dict]:
    """Check every instance; records come back sorted by instance key.

    Raises BudgetExceeded if any enumeration box exceeds ``budget`` cells.
    """
    insts = sorted(set(instances))
    if workers <= 1:
        records = [check_instance(g, budget) for g in insts]
    else:
        chunks = [(insts[i : i + chunk_size], budget) for i in range(0, len(insts), chunk_size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = [r for part in pool.map(_check_chunk, chunks) for r in part]
    records.sort(key=lambda r: tuple(tuple(v) for v in r["key"]))
    return records


def summarize(records: Sequence[dict]) -> dict:
    classes = Counter(r["class"] for r in records if "class" in r)
    violating = [r for r in records if r["violations"]]
    return {
        "instances": len(records),
        "full_dimensional": sum(1 for r in records if "cvector" in r),
        "classes": dict(sorted(classes.items())),
        "degrees": {
            str(k): v for k, v in sorted(Counter(r["degree"] for r in records if "degree" in r).items())
        },
        "violations": sum(len(r["violations"]) for r in records),
        "violating_instances": [r["key"] for r in violating[:20]],
    }
