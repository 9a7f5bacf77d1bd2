import pytest

from enriques_kit.config import get_family
from enriques_kit.constraints import (
    CITATIONS,
    Status,
    admissible_indices,
    candidate_orders,
    cone_conjecture_status,
    forced_picard_rank_one,
    holds_projection,
    lefschetz_number,
    period_domain_dimension,
    status_table,
    vanishing_orders,
)
from enriques_kit.cyclotomic import euler_phi, primitive_exponents
from enriques_kit.errors import EmptyDomain, InadmissibleIndex, NotPrimitive

K3N_INDICES = list(range(2, 29)) + [30, 32, 33, 34, 36, 38, 40, 42, 44, 46, 48, 50, 54, 60, 66]
KUMN_INDICES = [2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 18]


def test_admissible_indices():
    assert admissible_indices(23) == K3N_INDICES
    assert len(K3N_INDICES) == 42
    assert admissible_indices(7) == KUMN_INDICES
    with pytest.raises(ValueError):
        admissible_indices(2)


def test_holds_projection():
    k3 = holds_projection("k3n")
    assert list(k3.holds) == [2, 5, 7, 11, 13, 17, 19, 23, 46]
    assert k3.index_four == ()
    kum = holds_projection("kumn")
    assert list(kum.holds) == [2, 3, 5, 7, 9, 14, 18]
    assert list(kum.index_four) == [4]


def test_reason_tags():
    tags = {r.d: r.status for r in status_table("k3n")}
    assert tags[2] is Status.HOLDS_PRIME
    assert tags[3] is Status.EXCLUDED_FIXED_LOCUS
    assert tags[46] is Status.HOLDS_RANK_ONE
    assert tags[66] is Status.OPEN
    tags = {r.d: r.status for r in status_table("kumn")}
    assert tags[4] is Status.HOLDS_INDEX4_KUMMER
    assert tags[9] is Status.HOLDS_RANK_ONE
    assert tags[6] is Status.OPEN


def test_fixed_locus_caveat_depends_on_half_dimension():
    assert cone_conjecture_status("k3n", 3, n=2).status is Status.EXCLUDED_FIXED_LOCUS
    assert cone_conjecture_status("k3n", 3, n=5).status is Status.OPEN
    assert cone_conjecture_status("k3n", 3, n=3).status is Status.EXCLUDED_LEFSCHETZ


def test_totient_exclusion_matches_admissibility():
    fam = get_family("k3n")
    allowed = set(admissible_indices(fam.b2))
    for d in range(2, 200):
        excluded = cone_conjecture_status(fam, d).status is Status.EXCLUDED_TOTIENT
        assert excluded == (d not in allowed)
    with pytest.raises(InadmissibleIndex):
        cone_conjecture_status(fam, 1)


def test_trivial_pic_action():
    row = cone_conjecture_status("k3n", 6, pic_action_trivial=True)
    assert row.status is Status.HOLDS_TRIVIAL_PIC_ACTION
    assert row.status.holds
    assert row.citation == CITATIONS[Status.HOLDS_TRIVIAL_PIC_ACTION]
    assert row.as_dict()["totient"] == 2


def test_every_status_has_a_citation():
    assert set(CITATIONS) == set(Status)


def test_lefschetz_vanishing_law():
    for n in range(1, 31):
        for d in range(2, 31):
            for k in primitive_exponents(d):
                assert lefschetz_number(n, d, k).is_zero() == ((n + 1) % d == 0), (n, d, k)


def test_lefschetz_values():
    assert lefschetz_number(2, 3).is_zero()
    assert str(lefschetz_number(1, 3)) == "-z"
    with pytest.raises(ValueError):
        lefschetz_number(0, 3)
    with pytest.raises(ValueError):
        lefschetz_number(2, 1)
    with pytest.raises(NotPrimitive):
        lefschetz_number(2, 4, k=2)


def test_vanishing_and_candidate_orders():
    assert vanishing_orders(5) == [2, 3, 6]
    assert vanishing_orders(3) == [2, 4]
    assert candidate_orders("og6") == [2, 4]
    assert candidate_orders("og10") == [2, 3, 6]
    assert candidate_orders("k3n", n=5) == [2, 3, 6]
    with pytest.raises(ValueError):
        candidate_orders("k3n")


@pytest.mark.parametrize("dim,minus_one,expected", [
    (1, False, 0), (2, False, 1), (3, False, 2), (5, False, 4), (8, False, 7),
    (10, False, 9), (11, False, 10), (20, False, 19), (21, False, 20), (22, False, 21),
    (2, True, 0), (3, True, 1), (4, True, 2), (6, True, 4), (9, True, 7),
    (12, True, 10), (19, True, 17), (20, True, 18), (21, True, 19), (22, True, 20),
])
def test_period_domain_dimension(dim, minus_one, expected):
    assert period_domain_dimension(dim, minus_one) == expected


def test_period_domain_empty():
    with pytest.raises(EmptyDomain):
        period_domain_dimension(0, False)
    with pytest.raises(EmptyDomain):
        period_domain_dimension(1, True)


def test_forced_picard_rank_one():
    assert forced_picard_rank_one(23, 46)
    assert not forced_picard_rank_one(23, 4)
    assert euler_phi(67) > 22
    with pytest.raises(InadmissibleIndex):
        forced_picard_rank_one(23, 67)


def naive_totients(limit: int):
    phi = list(range(limit + 1))
    for p in range(2, limit + 1):
        if phi[p] == p:
            for m in range(p, limit + 1, p):
                phi[m] -= phi[m] // p
    return phi


@pytest.mark.parametrize("family", ["k3n", "kumn", "og6", "og10"])
def test_admissible_indices_match_naive_loop(family):
    b2 = get_family(family).b2
    limit = 4 * (b2 - 1) ** 2
    phi = naive_totients(limit)
    assert admissible_indices(b2) == [d for d in range(2, limit + 1) if phi[d] <= b2 - 1]
    assert all(euler_phi(d) == phi[d] for d in range(1, 300))
