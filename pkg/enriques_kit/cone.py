"""Exact rational polyhedral cones.

A cone carries both descriptions at once: extreme rays plus a lineality basis
(V side) and facet normals plus equations (H side), so that
``cone = {x : f.x >= 0 for f in facets, e.x = 0 for e in equations}``.
Conversions run an incremental double description over the integers; a
Fourier-Motzkin projection is kept as an independent facet oracle.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence, Tuple

from .errors import DimensionMismatch, EmptyInput, NotPointed
from .utils import (
    IntMatrix,
    Rational,
    Vector,
    as_matrix,
    dot,
    exact_rank,
    identity,
    integer_kernel,
    mat_vec,
    primitive,
    project_off,
    saturate,
    transpose,
)

log = logging.getLogger(__name__)


class Containment(str, Enum):
    OUTSIDE = "Outside"
    BOUNDARY = "Boundary"
    INTERIOR = "Interior"


@dataclass(frozen=True)
class RationalCone:
    ambient_dim: int
    rays: Tuple[Vector, ...]
    facets: Tuple[Vector, ...]
    equations: Tuple[Vector, ...]
    lineality: Tuple[Vector, ...] = ()

    @property
    def halfspaces(self) -> Tuple[Vector, ...]:
        neg = tuple(tuple(-x for x in e) for e in self.equations)
        return tuple(sorted(set(self.facets + self.equations + neg)))

    @property
    def lineality_dim(self) -> int:
        return len(self.lineality)

    @property
    def dimension(self) -> int:
        return exact_rank(self.rays + self.lineality)

    def is_pointed(self) -> bool:
        return not self.lineality

    def is_zero(self) -> bool:
        return not self.rays and not self.lineality

    def generators(self) -> List[Vector]:
        return list(self.rays) + list(self.lineality) + [tuple(-x for x in v) for v in self.lineality]

    def as_dict(self) -> dict:
        return {
            "dim": self.ambient_dim,
            "rays": [list(r) for r in self.rays],
            "facets": [list(f) for f in self.facets],
            "equations": [list(e) for e in self.equations],
            "lineality": [list(v) for v in self.lineality],
        }


@dataclass(frozen=True)
class ConeUnion:
    pieces: Tuple[RationalCone, ...]

    def __post_init__(self) -> None:
        if not self.pieces:
            raise EmptyInput("a cone union needs at least one piece")
        dims = {p.ambient_dim for p in self.pieces}
        if len(dims) != 1:
            raise DimensionMismatch(f"union pieces live in dimensions {sorted(dims)}")

    @property
    def ambient_dim(self) -> int:
        return self.pieces[0].ambient_dim

    def contains(self, v: Sequence[Rational]) -> bool:
        return any(contains(p, v) is not Containment.OUTSIDE for p in self.pieces)


# --- double description --------------------------------------------------------------


def _combine(a_p: int, q: Sequence[int], a_q: int, p: Sequence[int]) -> Vector:
    """Primitive part of a_p*q - a_q*p."""
    return primitive(tuple(a_p * x - a_q * y for x, y in zip(q, p)))


def _dd(dim: int, constraints: Sequence[Sequence[int]]) -> Tuple[List[Vector], List[Vector]]:
    """Generators (lineality, rays) of {x : a.x >= 0 for every a in constraints}.

    Rays are extreme modulo the lineality space but are not yet canonical.
    """
    lin: List[Vector] = list(identity(dim))
    rays: List[Vector] = []
    seen: List[Vector] = []
    for a in constraints:
        if not any(a):
            continue
        pivot = next((l for l in lin if dot(a, l) != 0), None)
        if pivot is not None:
            if dot(a, pivot) < 0:
                pivot = tuple(-x for x in pivot)
            ap = dot(a, pivot)
            lin = [_combine(ap, l, dot(a, l), pivot) for l in lin
                   if l != pivot and l != tuple(-x for x in pivot)]
            lin = [l for l in lin if any(l)]
            rays = [_combine(ap, r, dot(a, r), pivot) for r in rays]
            rays.append(pivot)
        else:
            vals = [dot(a, r) for r in rays]
            pos = [i for i, s in enumerate(vals) if s > 0]
            neg = [i for i, s in enumerate(vals) if s < 0]
            if neg:
                target = dim - len(lin) - 2
                zeros = [frozenset(k for k, c in enumerate(seen) if dot(c, r) == 0) for r in rays]
                kept = [r for i, r in enumerate(rays) if vals[i] >= 0]
                for i in pos:
                    for j in neg:
                        common = zeros[i] & zeros[j]
                        if len(common) < target:
                            continue
                        if exact_rank([seen[k] for k in common]) != target:
                            continue
                        kept.append(_combine(vals[i], rays[j], vals[j], rays[i]))
                rays = kept
        seen.append(tuple(a))
    log.debug("double description: dim=%d constraints=%d -> lineality=%d rays=%d",
              dim, len(seen), len(lin), len(rays))
    return lin, rays


def _canonical(dim: int, lin: Sequence[Sequence[int]],
               rays: Sequence[Sequence[int]]) -> Tuple[IntMatrix, Tuple[Vector, ...]]:
    lineality = saturate(lin, dim) if lin else ()
    out = set()
    for r in rays:
        v = project_off(r, lineality)
        if any(v):
            out.add(v)
    return lineality, tuple(sorted(out))


def _assemble(dim: int, lin: Sequence[Vector], rays: Sequence[Vector],
              allow_lineality: bool) -> RationalCone:
    lineality, rays_c = _canonical(dim, lin, rays)
    if lineality and not allow_lineality:
        raise NotPointed(f"cone contains a line along {list(lineality[0])}")
    gens = list(rays_c) + list(lineality) + [tuple(-x for x in v) for v in lineality]
    dual_lin, dual_rays = _dd(dim, gens)
    equations, facets = _canonical(dim, dual_lin, dual_rays)
    return RationalCone(dim, rays_c, facets, equations, lineality)


def _check_vectors(dim: int, vectors: Sequence[Sequence[int]], what: str) -> IntMatrix:
    if dim < 1:
        raise ValueError("cone dimension must be >= 1")
    mat = as_matrix(vectors)
    for v in mat:
        if len(v) != dim:
            raise DimensionMismatch(f"{what} {list(v)} has length {len(v)}, expected {dim}")
    return mat


def _from_constraints(dim: int, normals: Sequence[Sequence[int]],
                      allow_lineality: bool) -> RationalCone:
    lin, rays = _dd(dim, normals)
    return _assemble(dim, lin, rays, allow_lineality)


def _from_generators(dim: int, rays: Sequence[Sequence[int]], lineality: Sequence[Sequence[int]],
                     allow_lineality: bool) -> RationalCone:
    gens = list(rays) + list(lineality) + [tuple(-x for x in v) for v in lineality]
    dual_lin, dual_rays = _dd(dim, gens)
    normals = dual_rays + dual_lin + [tuple(-x for x in v) for v in dual_lin]
    return _from_constraints(dim, normals, allow_lineality)


def zero_cone(dim: int) -> RationalCone:
    return RationalCone(dim, (), (), identity(dim), ())


def cone_from_rays(dim: int, rays: Sequence[Sequence[int]],
                   allow_lineality: bool = False) -> RationalCone:
    mat = _check_vectors(dim, rays, "ray")
    if not mat:
        raise EmptyInput("no rays given")
    return _from_generators(dim, mat, (), allow_lineality)


def cone_from_halfspaces(dim: int, normals: Sequence[Sequence[int]],
                         allow_lineality: bool = False) -> RationalCone:
    mat = _check_vectors(dim, normals, "halfspace normal")
    if not mat:
        raise EmptyInput("no halfspaces given")
    return _from_constraints(dim, mat, allow_lineality)


# --- operations ----------------------------------------------------------------------


def _same_dim(c1: RationalCone, c2: RationalCone) -> None:
    if c1.ambient_dim != c2.ambient_dim:
        raise DimensionMismatch(f"cones of dimension {c1.ambient_dim} and {c2.ambient_dim}")


def intersect(c1: RationalCone, c2: RationalCone) -> RationalCone:
    _same_dim(c1, c2)
    return _from_constraints(c1.ambient_dim, c1.halfspaces + c2.halfspaces, allow_lineality=True)


def linear_image(c: RationalCone, m: Sequence[Sequence[int]]) -> RationalCone:
    mat = as_matrix(m)
    if not mat or any(len(row) != c.ambient_dim for row in mat):
        raise DimensionMismatch(f"map must have {c.ambient_dim} columns")
    rays = [mat_vec(mat, r) for r in c.rays]
    lin = [mat_vec(mat, v) for v in c.lineality]
    return _from_generators(len(mat), [r for r in rays if any(r)], [v for v in lin if any(v)],
                            allow_lineality=True)


def linear_preimage(c: RationalCone, m: Sequence[Sequence[int]]) -> RationalCone:
    """{x : m x in c}; m may be rectangular with c.ambient_dim rows."""
    mat = as_matrix(m)
    if len(mat) != c.ambient_dim or not mat[0]:
        raise DimensionMismatch(f"map must have {c.ambient_dim} rows")
    cols = transpose(mat)
    normals = [tuple(dot(h, col) for col in cols) for h in c.halfspaces]
    return _from_constraints(len(cols), normals, allow_lineality=True)


def contains(c: RationalCone, v: Sequence[Rational]) -> Containment:
    """Classify ``v`` against the cone; Interior means the relative interior."""
    if len(v) != c.ambient_dim:
        raise DimensionMismatch(f"vector of length {len(v)} for a cone in dimension {c.ambient_dim}")
    if any(dot(e, v) != 0 for e in c.equations):
        return Containment.OUTSIDE
    vals = [dot(f, v) for f in c.facets]
    if any(x < 0 for x in vals):
        return Containment.OUTSIDE
    if all(x > 0 for x in vals):
        return Containment.INTERIOR
    return Containment.BOUNDARY


def interiors_intersect(c1: RationalCone, c2: RationalCone) -> bool:
    _same_dim(c1, c2)
    joint = exact_rank(c1.generators() + c2.generators())
    return intersect(c1, c2).dimension == joint


def cones_equal(c1: RationalCone, c2: RationalCone) -> bool:
    return (c1.ambient_dim == c2.ambient_dim
            and c1.rays == c2.rays
            and c1.lineality == c2.lineality)


# --- Fourier-Motzkin oracle ----------------------------------------------------------


def fourier_motzkin_facets(dim: int, rays: Sequence[Sequence[int]]) -> Tuple[Vector, ...]:
    """Facet normals of cone(rays), by eliminating the multipliers of x = sum l_j r_j."""
    vecs = [tuple(r) for r in _check_vectors(dim, rays, "ray") if any(r)]
    m = len(vecs)
    # rows act on (x, l) as row.(x, l) >= 0; each carries the set of original rows it combines
    rows: List[Tuple[Vector, frozenset]] = []
    for j in range(m):
        rows.append((tuple([0] * dim + [1 if t == j else 0 for t in range(m)]), frozenset([j])))
    for i in range(dim):
        eq = tuple([1 if t == i else 0 for t in range(dim)] + [-vecs[j][i] for j in range(m)])
        rows.append((eq, frozenset([m + 2 * i])))
        rows.append((tuple(-x for x in eq), frozenset([m + 2 * i + 1])))
    for step, col in enumerate(range(dim, dim + m), start=1):
        out = {}
        for row, hist in rows:
            if row[col] == 0:
                out[row] = hist
        for p, hp in rows:
            if p[col] <= 0:
                continue
            for q, hq in rows:
                if q[col] >= 0:
                    continue
                hist = hp | hq
                # Chernikov: a combination needing more than step+1 originals is redundant
                if len(hist) > step + 1:
                    continue
                row = _combine(p[col], q, q[col], p)
                if any(row) and (row not in out or len(hist) < len(out[row])):
                    out[row] = hist
        rows = list(out.items())
    span_rank = exact_rank(vecs)
    equations = integer_kernel(vecs, dim) if vecs else identity(dim)
    facets = set()
    for row, _ in rows:
        h = project_off(row[:dim], equations)
        if not any(h):
            continue
        tight = [r for r in vecs if dot(h, r) == 0]
        if exact_rank(tight) == span_rank - 1 and all(dot(h, r) >= 0 for r in vecs):
            facets.add(h)
    return tuple(sorted(facets))


# --- randomized audit ----------------------------------------------------------------


def random_pointed_cone(rng: random.Random, dim: int, n_rays: int, bound: int = 4) -> RationalCone:
    """Cone on random integer vectors with positive coordinate sum, hence pointed."""
    rays: List[Vector] = []
    while len(rays) < n_rays:
        v = tuple(rng.randint(-bound, bound) for _ in range(dim))
        if sum(v) > 0:
            rays.append(v)
    return cone_from_rays(dim, rays)


@dataclass
class AuditReport:
    checked: int = 0
    round_trip_failures: int = 0
    oracle_checked: int = 0
    oracle_failures: int = 0
    failing_cases: Tuple[int, ...] = ()

    @property
    def ok(self) -> bool:
        return self.round_trip_failures == 0 and self.oracle_failures == 0


def audit_round_trip(count: int = 500, seed: int = 0, oracle_count: int = 100,
                     max_dim: int = 5, max_rays: int = 8) -> AuditReport:
    """V -> H -> V round trips on random pointed cones, facets cross-checked by Fourier-Motzkin."""
    rng = random.Random(seed)
    report = AuditReport()
    failing: List[int] = []
    for i in range(count):
        dim = rng.randint(1, max_dim)
        cone = random_pointed_cone(rng, dim, rng.randint(1, max_rays))
        back = cone_from_halfspaces(dim, cone.halfspaces)
        report.checked += 1
        bad = not cones_equal(cone, back) or back.facets != cone.facets
        if bad:
            report.round_trip_failures += 1
        if i < oracle_count:
            report.oracle_checked += 1
            if fourier_motzkin_facets(dim, cone.rays) != cone.facets:
                report.oracle_failures += 1
                bad = True
        if bad:
            failing.append(i)
    report.failing_cases = tuple(failing)
    log.debug("cone audit: %s", report)
    return report
