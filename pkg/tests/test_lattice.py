import random

import pytest

from enriques_kit.errors import (
    Degenerate,
    DimensionMismatch,
    NonSymmetric,
    ParseError,
    UnknownName,
    ZeroForm,
    ZeroTwist,
)
from enriques_kit.lattice import (
    IntegralLattice,
    Signature,
    direct_sum,
    enriques_involution_invariant,
    inner_product,
    is_hyperbolic,
    lattice_determinant,
    make_lattice,
    parse_lattice_expression,
    q_value,
    rank_one,
    signature,
    signature_by_charpoly,
    standard_lattice,
    twist,
)


def test_make_lattice_validation():
    with pytest.raises(NonSymmetric):
        make_lattice([[1, 2], [0, 1]])
    with pytest.raises(Degenerate):
        make_lattice([[1, 1], [1, 1]])
    with pytest.raises(DimensionMismatch):
        make_lattice([[1, 0], [0]])


def test_standard_lattices():
    u = standard_lattice("U")
    e8 = standard_lattice("e8")
    assert lattice_determinant(u) == -1
    assert signature(u) == Signature(1, 1)
    assert lattice_determinant(e8) == 1
    assert signature(e8) == Signature(0, 8)
    assert e8.even and u.even
    with pytest.raises(UnknownName):
        standard_lattice("A2")


def test_twist_and_rank_one():
    u2 = twist(standard_lattice("U"), 2)
    assert u2.gram == ((0, 2), (2, 0))
    assert str(u2) == "U(2)"
    assert twist(u2, 1) is u2
    with pytest.raises(ZeroTwist):
        twist(u2, 0)
    with pytest.raises(ZeroForm):
        rank_one(0)


def test_direct_sum_with_empty_is_neutral():
    u = standard_lattice("U")
    assert direct_sum(IntegralLattice.empty(), u) is u
    assert lattice_determinant(IntegralLattice.empty()) == 1
    s = direct_sum(u, rank_one(-2))
    assert s.rank == 3
    assert lattice_determinant(s) == 2
    assert str(s) == "U+<-2>"


@pytest.mark.parametrize("n", [3, 5, 7])
def test_involution_invariant_lattice(n):
    lat = enriques_involution_invariant(n)
    assert lat.rank == 11
    assert signature(lat) == Signature(1, 10)
    assert signature_by_charpoly(lat) == Signature(1, 10)
    assert lattice_determinant(lat) == 2048 * (n - 1)
    assert is_hyperbolic(lat)


def test_involution_invariant_needs_n_at_least_two():
    with pytest.raises(ZeroForm):
        enriques_involution_invariant(1)


def test_inner_product():
    u = standard_lattice("U")
    assert inner_product(u, (1, 0), (0, 1)) == 1
    assert q_value(u, (1, 1)) == 2
    with pytest.raises(DimensionMismatch):
        q_value(u, (1, 0, 0))


def test_parse_expression():
    lat = parse_lattice_expression("sum(U, twist(E8, 2), rank1(-4))")
    assert lat.rank == 11
    assert lattice_determinant(lat) == 1024
    assert not is_hyperbolic(standard_lattice("E8"))


@pytest.mark.parametrize("text,exc", [
    ("sum(U)", ParseError),
    ("twist(U,)", ParseError),
    ("U)", ParseError),
    ("U $", ParseError),
    ("foo", UnknownName),
])
def test_parse_expression_errors(text, exc):
    with pytest.raises(exc):
        parse_lattice_expression(text)


def test_signature_agrees_with_charpoly_oracle():
    rng = random.Random(11)
    checked = 0
    while checked < 60:
        n = rng.randint(1, 5)
        g = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                g[i][j] = g[j][i] = rng.randint(-3, 3)
        try:
            lat = make_lattice(g)
        except Degenerate:
            continue
        assert signature(lat) == signature_by_charpoly(lat)
        assert signature(lat).rank == n
        checked += 1


def random_lattice(rng: random.Random, max_rank: int = 4) -> IntegralLattice:
    while True:
        n = rng.randint(1, max_rank)
        g = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                g[i][j] = g[j][i] = rng.randint(-3, 3)
        try:
            return make_lattice(g)
        except Degenerate:
            continue


def test_direct_sum_multiplies_determinants_and_adds_signatures():
    rng = random.Random(23)
    for _ in range(40):
        a, b = random_lattice(rng), random_lattice(rng)
        s = direct_sum(a, b)
        assert s.rank == a.rank + b.rank
        assert lattice_determinant(s) == lattice_determinant(a) * lattice_determinant(b)
        assert signature(s) == signature(a) + signature(b)


def test_twist_scales_determinant():
    rng = random.Random(29)
    for _ in range(40):
        lat = random_lattice(rng)
        k = rng.choice([-3, -2, -1, 2, 3, 5])
        assert lattice_determinant(twist(lat, k)) == k ** lat.rank * lattice_determinant(lat)


def test_quadratic_form_is_bilinear():
    rng = random.Random(31)
    for _ in range(60):
        lat = random_lattice(rng, max_rank=6)
        v = tuple(rng.randint(-5, 5) for _ in range(lat.rank))
        w = tuple(rng.randint(-5, 5) for _ in range(lat.rank))
        vw = tuple(a + b for a, b in zip(v, w))
        assert q_value(lat, vw) == q_value(lat, v) + 2 * inner_product(lat, v, w) + q_value(lat, w)
        assert inner_product(lat, v, w) == inner_product(lat, w, v)
