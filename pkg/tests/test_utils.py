import random
from fractions import Fraction

import pytest

from enriques_kit.config import default_concurrency
from enriques_kit.utils import (
    as_matrix,
    determinant,
    dot,
    exact_rank,
    hermite_basis,
    integer_inverse,
    integer_kernel,
    primitive,
    primitive_rational,
    project_off,
    saturate,
)


def test_default_concurrency_positive():
    assert default_concurrency() >= 2


def test_as_matrix_rejects_fractions():
    with pytest.raises(TypeError):
        as_matrix([[1, 0.5]])
    assert as_matrix([[1, 2.0]]) == ((1, 2),)


def test_primitive():
    assert primitive((4, -6)) == (2, -3)
    assert primitive((0, 0)) == (0, 0)
    assert primitive_rational((Fraction(1, 2), Fraction(1, 3))) == (3, 2)


def test_hermite_basis_of_checkerboard():
    assert hermite_basis([(2, 0), (0, 2), (1, 1)]) == ((1, 1), (0, 2))


def test_integer_kernel_and_saturate():
    assert integer_kernel([[1, 1]], 2) == ((1, -1),)
    assert integer_kernel([], 2) == ((1, 0), (0, 1))
    assert saturate([(2, 4)], 2) == ((1, 2),)
    assert saturate([], 3) == ()


def test_rank_determinant_inverse():
    assert exact_rank([(1, 2), (2, 4)]) == 1
    assert determinant(((2, 1), (1, 1))) == 1
    assert integer_inverse(((2, 1), (1, 1))) == ((1, -1), (-1, 2))
    with pytest.raises(ValueError):
        integer_inverse(((2, 0), (0, 1)))


def test_project_off():
    assert project_off((1, 1), ((1, 0),)) == (0, 1)
    assert project_off((2, 4), ()) == (1, 2)


def test_hermite_basis_conventions():
    assert hermite_basis([(0, 0, 3), (0, 2, 1)]) == ((0, 2, 1), (0, 0, 3))
    assert hermite_basis([(-2, 4, 0), (0, 0, 0)]) == ((2, -4, 0),)
    assert hermite_basis([(0, 0), (0, 0)]) == ()
    assert hermite_basis([(3, 5), (1, 2)]) == ((1, 0), (0, 1))
    assert hermite_basis([(1, 7), (0, 3)]) == ((1, 1), (0, 3))


def test_integer_kernel_on_random_matrices():
    rng = random.Random(19)
    for _ in range(60):
        rows, cols = rng.randint(1, 3), rng.randint(1, 5)
        m = [[rng.randint(-4, 4) for _ in range(cols)] for _ in range(rows)]
        kernel = integer_kernel(m, cols)
        assert len(kernel) == cols - exact_rank(m)
        assert all(dot(row, v) == 0 for row in m for v in kernel)
        assert hermite_basis(kernel) == kernel
        if kernel:
            assert saturate(kernel, cols) == kernel


def test_saturate_recovers_primitive_span():
    assert saturate([(2, 0, 0), (0, 0, 6)], 3) == ((1, 0, 0), (0, 0, 1))
    assert saturate([(2, 2, 0), (0, 4, 4)], 3) == ((1, 0, -1), (0, 1, 1))
