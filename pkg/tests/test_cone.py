import random
from fractions import Fraction

import pytest

from enriques_kit.cone import (
    ConeUnion,
    Containment,
    audit_round_trip,
    cone_from_halfspaces,
    cone_from_rays,
    cones_equal,
    contains,
    fourier_motzkin_facets,
    interiors_intersect,
    intersect,
    linear_image,
    linear_preimage,
    random_pointed_cone,
    zero_cone,
)
from enriques_kit.errors import DimensionMismatch, EmptyInput, NotPointed
from enriques_kit.utils import content, dot, identity, integer_inverse, mat_mul

QUADRANT = ((1, 0), (0, 1))


def quadrant():
    return cone_from_rays(2, QUADRANT)


def test_quadrant_descriptions():
    c = quadrant()
    assert c.rays == ((0, 1), (1, 0))
    assert c.facets == ((0, 1), (1, 0))
    assert c.equations == ()
    assert c.is_pointed() and c.dimension == 2
    assert c.as_dict() == {"dim": 2, "rays": [[0, 1], [1, 0]], "facets": [[0, 1], [1, 0]],
                           "equations": [], "lineality": []}


def test_redundant_ray_is_dropped():
    c = cone_from_rays(2, [(1, 0), (1, 1), (0, 1)])
    assert c.rays == ((0, 1), (1, 0))
    assert cones_equal(cone_from_rays(2, [(2, 0), (0, 3)]), c)


def test_contains():
    c = quadrant()
    assert contains(c, (1, 1)) is Containment.INTERIOR
    assert contains(c, (Fraction(1, 2), 1)) is Containment.INTERIOR
    assert contains(c, (1, 0)) is Containment.BOUNDARY
    assert contains(c, (-1, 0)) is Containment.OUTSIDE
    with pytest.raises(DimensionMismatch):
        contains(c, (1, 0, 0))


def test_lower_dimensional_cone():
    ray = cone_from_rays(2, [(2, 2)])
    assert ray.rays == ((1, 1),)
    assert ray.facets == ((1, 1),)
    assert ray.equations == ((1, -1),)
    assert ray.dimension == 1
    assert contains(ray, (3, 3)) is Containment.INTERIOR
    assert contains(ray, (0, 0)) is Containment.BOUNDARY
    assert contains(ray, (1, 2)) is Containment.OUTSIDE


def test_disjoint_quadrants_intersect_in_zero_cone():
    c = intersect(quadrant(), cone_from_rays(2, [(-1, 0), (0, -1)]))
    assert c.is_zero()
    assert c.dimension == 0
    assert c.equations == ((1, 0), (0, 1))
    assert zero_cone(2) == c


def test_halfplane_needs_lineality():
    with pytest.raises(NotPointed):
        cone_from_halfspaces(2, [(1, 0)])
    c = cone_from_halfspaces(2, [(1, 0)], allow_lineality=True)
    assert c.lineality == ((0, 1),)
    assert c.rays == ((1, 0),)
    assert c.facets == ((1, 0),)
    assert not c.is_pointed()
    with pytest.raises(NotPointed):
        cone_from_rays(2, [(1, 0), (-1, 0)])


def test_input_validation():
    with pytest.raises(EmptyInput):
        cone_from_rays(2, [])
    with pytest.raises(EmptyInput):
        cone_from_halfspaces(2, [])
    with pytest.raises(DimensionMismatch):
        cone_from_rays(2, [(1, 0, 0)])
    with pytest.raises(DimensionMismatch):
        intersect(quadrant(), cone_from_rays(3, [(1, 0, 0)]))


def test_linear_image_and_preimage():
    shear = ((1, 1), (0, 1))
    image = linear_image(quadrant(), shear)
    assert image.rays == ((1, 0), (1, 1))
    assert image.facets == ((0, 1), (1, -1))
    pre = linear_preimage(quadrant(), shear)
    assert pre.rays == ((-1, 1), (1, 0))
    assert pre.facets == ((0, 1), (1, 1))
    line = linear_image(quadrant(), ((1, 1),))
    assert line.ambient_dim == 1 and line.rays == ((1,),)
    with pytest.raises(DimensionMismatch):
        linear_image(quadrant(), ((1, 1, 1),))


def test_interiors_intersect():
    q = quadrant()
    assert interiors_intersect(q, cone_from_rays(2, [(1, 1), (-1, 1)]))
    assert not interiors_intersect(q, cone_from_rays(2, [(-1, 0), (0, -1)]))
    # sharing only a ray
    assert not interiors_intersect(q, cone_from_rays(2, [(0, 1), (-1, 0)]))


def test_cone_union():
    u = ConeUnion((quadrant(), cone_from_rays(2, [(-1, 0), (0, -1)])))
    assert u.ambient_dim == 2
    assert u.contains((-1, -2)) and u.contains((1, 0))
    assert not u.contains((1, -1))
    with pytest.raises(EmptyInput):
        ConeUnion(())
    with pytest.raises(DimensionMismatch):
        ConeUnion((quadrant(), cone_from_rays(1, [(1,)])))


def test_fourier_motzkin_oracle():
    assert fourier_motzkin_facets(2, QUADRANT) == ((0, 1), (1, 0))
    rays = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)]
    assert fourier_motzkin_facets(3, rays) == cone_from_rays(3, rays).facets


def test_round_trip_on_random_cones():
    rng = random.Random(3)
    for _ in range(50):
        dim = rng.randint(1, 4)
        c = random_pointed_cone(rng, dim, rng.randint(1, 6))
        back = cone_from_halfspaces(dim, c.halfspaces)
        assert cones_equal(c, back)
        again = cone_from_rays(dim, back.rays)
        assert again.facets == c.facets


def test_audit_round_trip():
    report = audit_round_trip(count=500, seed=0, oracle_count=100)
    assert report.checked == 500
    assert report.oracle_checked == 100
    assert report.ok, report.failing_cases


def random_unimodular(rng: random.Random, dim: int):
    m = identity(dim)
    for _ in range(2 * dim):
        i, j = rng.sample(range(dim), 2) if dim > 1 else (0, 0)
        step = [list(row) for row in identity(dim)]
        if i == j:
            step[0][0] = -1
        else:
            step[i][j] = rng.choice((-2, -1, 1, 2))
        m = mat_mul(step, m)
    return m


def test_intersection_laws_on_random_cones():
    rng = random.Random(41)
    for _ in range(60):
        dim = rng.randint(2, 3)
        a, b, c = (random_pointed_cone(rng, dim, rng.randint(1, 5)) for _ in range(3))
        assert cones_equal(intersect(a, b), intersect(b, a))
        assert cones_equal(intersect(a, a), a)
        assert cones_equal(intersect(intersect(a, b), c), intersect(a, intersect(b, c)))


def test_image_under_unimodular_map_round_trips():
    rng = random.Random(43)
    for _ in range(60):
        dim = rng.randint(1, 4)
        c = random_pointed_cone(rng, dim, rng.randint(1, 6))
        m = random_unimodular(rng, dim)
        image = linear_image(c, m)
        assert cones_equal(linear_image(image, integer_inverse(m)), c)
        assert all(content(r) == 1 for r in image.rays + image.facets)


def test_interior_survives_small_ray_perturbations():
    rng = random.Random(47)
    for _ in range(60):
        dim = rng.randint(1, 4)
        c = random_pointed_cone(rng, dim, rng.randint(1, 6))
        v = tuple(sum(col) for col in zip(*c.rays))
        assert contains(c, v) is Containment.INTERIOR
        worst = max(abs(dot(f, r)) for f in c.facets for r in c.rays) if c.facets else 0
        eps = Fraction(1, 2 * (worst + 1))
        for r in c.rays:
            for e in (eps, -eps):
                moved = tuple(x + e * y for x, y in zip(v, r))
                assert contains(c, moved) is Containment.INTERIOR


def test_output_rays_are_primitive():
    rng = random.Random(53)
    for _ in range(60):
        dim = rng.randint(1, 4)
        rays = [tuple(rng.randint(-6, 6) for _ in range(dim)) for _ in range(rng.randint(1, 5))]
        scales = [rng.randint(1, 4) for _ in rays]
        rays = [tuple(k * x for x in r) for k, r in zip(scales, rays) if sum(r) > 0]
        if not rays:
            continue
        c = cone_from_rays(dim, rays)
        assert all(content(r) == 1 for r in c.rays + c.facets + c.equations)


def test_worked_examples():
    wedge = cone_from_halfspaces(2, [(1, 0), (0, 1), (-1, 1)])
    assert wedge.rays == ((0, 1), (1, 1))
    assert cones_equal(intersect(quadrant(), cone_from_halfspaces(2, [(-1, 1)], allow_lineality=True)),
                       wedge)
    assert linear_image(quadrant(), ((0, -1), (1, 0))).rays == ((-1, 0), (0, 1))
    assert linear_image(cone_from_rays(2, [(1, 0)]), ((3, 4), (2, 3))).rays == ((3, 2),)
    assert interiors_intersect(quadrant(), wedge)
    assert not cones_equal(quadrant(), wedge)
