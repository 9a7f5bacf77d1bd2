import random
from fractions import Fraction

import pytest

from enriques_kit import fixtures
from enriques_kit.cone import (
    Containment,
    cone_from_rays,
    contains,
    interiors_intersect,
    intersect,
    linear_image,
    random_pointed_cone,
)
from enriques_kit.errors import DefectOutsideKernel, DependentBasis, DimensionMismatch
from enriques_kit.isometry import commutator_defect, identity_isometry, make_isometry
from enriques_kit.lattice import direct_sum, make_lattice, standard_lattice
from enriques_kit.transport import (
    GroupData,
    Scenario,
    TilingReport,
    TilingVerdict,
    coset_partition,
    descends,
    enlarge_domain,
    positive_cone_predicate,
    restrict_domain,
    run_scenario,
    sample_grid,
    verify_tiling,
    verify_tiling_async,
    words,
)
from enriques_kit.utils import exact_rank, mat_mul

PELL_SUMMARY = {
    "verdict": "ConsistentWithTiling",
    "covered_samples": 298,
    "uncovered_witnesses": [],
    "disjointness_violations": [],
    "skipped_samples": 1382,
    "translates": 11,
}


def pell():
    scenario = fixtures.pell_tiling()
    return scenario, scenario.generators[0]


def test_pell_scenario_is_consistent_with_tiling():
    scenario, _ = pell()
    report = run_scenario(scenario)
    assert report.verdict is TilingVerdict.CONSISTENT
    assert report.as_dict() == PELL_SUMMARY


def test_pell_scenario_with_worker_threads():
    scenario, _ = pell()
    assert run_scenario(scenario, jobs=4).as_dict() == PELL_SUMMARY


@pytest.mark.asyncio
async def test_async_audit_matches_sequential():
    scenario, _ = pell()
    group = scenario.group()
    sequential = verify_tiling(scenario.cone, group, scenario.samples, scenario.predicate())
    threaded = await verify_tiling_async(scenario.cone, group, scenario.samples,
                                         scenario.predicate(), jobs=3)
    assert threaded.as_dict() == sequential.as_dict()


def test_double_domain_overlaps_its_translates():
    scenario, a = pell()
    double = cone_from_rays(2, [(1, 0), (17, 12)])
    report = verify_tiling(double, GroupData(scenario.lattice, words([a], 1)),
                           [(5, 1)], scenario.predicate())
    assert report.verdict is TilingVerdict.REFUTED
    assert report.disjointness_violations
    assert not report.uncovered_witnesses


def test_uncovered_sample_is_reported():
    scenario, _ = pell()
    group = GroupData(scenario.lattice, (identity_isometry(scenario.lattice),))
    report = verify_tiling(scenario.cone, group, [(17, 12), (5, 1)])
    assert report.verdict is TilingVerdict.REFUTED
    assert report.uncovered_witnesses == [(17, 12)]
    assert report.covered_samples == 1


def test_empty_report_is_consistent():
    assert TilingReport().verdict is TilingVerdict.CONSISTENT


def test_group_data_validation():
    scenario, a = pell()
    group = GroupData(scenario.lattice, (a,))
    assert group.kernel[0].is_identity()
    other = make_isometry(standard_lattice("U"), [[0, 1], [1, 0]])
    with pytest.raises(DimensionMismatch):
        GroupData(scenario.lattice, (other,))


def test_words():
    _, a = pell()
    ws = words([a], 2)
    assert len(ws) == 5
    assert ws[0].is_identity()
    assert len(words([a], 5)) == 11
    with pytest.raises(ValueError):
        words([], 1)


def test_positive_cone_predicate_and_grid():
    scenario, _ = pell()
    keep = positive_cone_predicate(scenario.lattice, (1, 0))
    assert keep((1, 0))
    assert not keep((-1, 0))
    assert not keep((1, 1))
    assert len(sample_grid(2, 1)) == 8
    assert len(sample_grid(2, 20)) == 1680


def test_restrict_domain():
    octant = cone_from_rays(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    face = restrict_domain(octant, [(1, 0, 0), (0, 1, 0)])
    assert face.rays == ((0, 1), (1, 0))
    diagonal = restrict_domain(octant, [(1, 1, 0)])
    assert diagonal.rays == ((1,),)
    with pytest.raises(DependentBasis):
        restrict_domain(octant, [(1, 0, 0), (2, 0, 0)])
    with pytest.raises(DependentBasis):
        restrict_domain(octant, [])
    with pytest.raises(DimensionMismatch):
        restrict_domain(octant, [(1, 0)])
    tilted = restrict_domain(octant, [(1, 1, 0), (0, 0, 1)])
    assert tilted.rays == ((0, 1), (1, 0))
    assert tilted.facets == ((0, 1), (1, 0))


def test_restrict_domain_preserves_membership():
    rng = random.Random(13)
    grid = [tuple(Fraction(x, 2) for x in p) for p in sample_grid(2, 3)]
    for _ in range(30):
        ambient = random_pointed_cone(rng, 3, rng.randint(2, 5))
        basis = [tuple(rng.randint(-2, 2) for _ in range(3)) for _ in range(2)]
        if exact_rank(basis) < 2:
            continue
        restricted = restrict_domain(ambient, basis)
        for s in grid:
            v = tuple(s[0] * a + s[1] * b for a, b in zip(*basis))
            inside = contains(restricted, s) is not Containment.OUTSIDE
            assert inside == (contains(ambient, v) is not Containment.OUTSIDE)


def test_enlarge_domain():
    scenario, a = pell()
    union = enlarge_domain(scenario.cone, [a])
    assert len(union.pieces) == 2
    assert union.pieces[1].rays == ((1, 0), (3, -2))
    assert union.contains((5, -1))
    pushed = enlarge_domain(scenario.cone, [a], pullback=False)
    assert pushed.pieces[1].rays == ((3, 2), (17, 12))
    same = enlarge_domain(scenario.cone, [identity_isometry(scenario.lattice)])
    assert len(same.pieces) == 1


def swap_and_sign():
    u = standard_lattice("U")
    lat = direct_sum(u, u)
    swap = make_isometry(lat, [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
    sign = make_isometry(lat, [[-1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    minus = make_isometry(lat, [[-1 if i == j else 0 for j in range(4)] for i in range(4)])
    return lat, swap, sign, minus


def test_descends_modulo_kernel():
    lat, swap, sign, minus = swap_and_sign()
    assert not descends(swap, sign)
    assert descends(swap, sign, [minus])
    assert descends(identity_isometry(lat), sign)


def test_coset_partition():
    lat, swap, sign, minus = swap_and_sign()
    part = coset_partition([swap, identity_isometry(lat), swap], sign, [minus])
    assert part.classes == ((0, 2), (1,))
    assert len(part) == 2
    assert part.defects[0] == minus
    with pytest.raises(DefectOutsideKernel) as e:
        coset_partition([identity_isometry(lat), swap], sign, [])
    assert e.value.index == 1


def random_signed_permutation(rng: random.Random, lat, signs_only: bool = False):
    n = lat.rank
    perm = list(range(n))
    if not signs_only:
        rng.shuffle(perm)
    m = [[0] * n for _ in range(n)]
    for j in range(n):
        m[perm[j]][j] = rng.choice((1, -1))
    return make_isometry(lat, m)


def test_descends_agrees_with_matrix_commutation():
    rng = random.Random(8)
    for _ in range(200):
        n = rng.randint(1, 6)
        k = rng.choice((1, -1, 2, 3))
        lat = make_lattice([[k if i == j else 0 for j in range(n)] for i in range(n)])
        tau = random_signed_permutation(rng, lat)
        g = random_signed_permutation(rng, lat)
        commute = mat_mul(tau.matrix, g.matrix) == mat_mul(g.matrix, tau.matrix)
        assert descends(tau, g, [identity_isometry(lat)]) == commute


def test_coset_classes_never_exceed_kernel():
    rng = random.Random(9)
    for _ in range(50):
        n = rng.randint(2, 5)
        lat = make_lattice([[1 if i == j else 0 for j in range(n)] for i in range(n)])
        g = random_signed_permutation(rng, lat, signs_only=True)
        candidates = [random_signed_permutation(rng, lat) for _ in range(6)]
        kernel = []
        for c in candidates:
            d = commutator_defect(c, g)
            if not d.is_identity() and d not in kernel:
                kernel.append(d)
        part = coset_partition(candidates, g, kernel)
        assert len(part) <= len(kernel) + 1
        assert sorted(i for cls in part.classes for i in cls) == list(range(len(candidates)))
        for cls, defect in zip(part.classes, part.defects):
            assert all(commutator_defect(candidates[i], g) == defect for i in cls)


def test_pell_domain_meets_its_translate_only_on_a_ray():
    scenario, a = pell()
    image = linear_image(scenario.cone, a.matrix)
    assert image.rays == ((3, 2), (17, 12))
    assert not interiors_intersect(scenario.cone, image)
    assert intersect(scenario.cone, image).rays == ((3, 2),)


def test_deck_transformation_picks_coset_representatives():
    lat, swap, sign, minus = swap_and_sign()
    scenario = Scenario(
        name="swap",
        lattice=lat,
        generators=(swap,),
        word_length=1,
        cone=cone_from_rays(4, [(1, 0, 0, 0), (0, 1, 0, 0)]),
        samples=((1, 1, 0, 0),),
        kernel=(minus,),
        deck=sign,
    )
    reps = scenario.coset_representatives()
    assert [r.matrix for r in reps] == [identity_isometry(lat).matrix, swap.matrix]
    union = enlarge_domain(scenario.cone, reps)
    assert len(union.pieces) == 2
    assert union.pieces[1].rays == ((0, 0, 0, 1), (0, 0, 1, 0))
    without_kernel = Scenario(**{**scenario.__dict__, "kernel": ()})
    with pytest.raises(DefectOutsideKernel):
        without_kernel.coset_representatives()
    assert Scenario(**{**scenario.__dict__, "deck": None}).coset_representatives() == (swap,)
