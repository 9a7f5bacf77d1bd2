from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

from sympy import ZZ, Matrix, Rational as SympyRational
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form

Vector = Tuple[int, ...]
IntMatrix = Tuple[Tuple[int, ...], ...]
Rational = Union[int, Fraction]


def as_matrix(rows: Iterable[Iterable[int]]) -> IntMatrix:
    out = []
    for row in rows:
        vals = []
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int):
                if isinstance(x, float) and x.is_integer():
                    x = int(x)
                else:
                    raise TypeError(f"expected an integer entry, got {x!r}")
            vals.append(int(x))
        out.append(tuple(vals))
    return tuple(out)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(zip(*m)) if m else ()


def dot(u: Sequence[Rational], v: Sequence[Rational]) -> Rational:
    return sum(a * b for a, b in zip(u, v))


def mat_vec(m: Sequence[Sequence[Rational]], v: Sequence[Rational]) -> tuple:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    cols = transpose(b)
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    return g


def primitive(v: Sequence[int]) -> Vector:
    """Divide out the content; the zero vector is returned unchanged."""
    g = content(v)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def primitive_rational(v: Sequence[Rational]) -> Vector:
    """Scale a rational vector by a positive factor to a primitive integer vector."""
    den = 1
    for x in v:
        den = math.lcm(den, Fraction(x).denominator)
    return primitive(tuple(int(Fraction(x) * den) for x in v))


def _hnf_columns(columns: Sequence[Sequence[int]], height: int) -> List[Vector]:
    """Nonzero columns of the Hermite normal form of the matrix with these columns.

    sympy only runs pivot passes over min(rows, cols) rows, so ``height`` zero
    columns are appended to give every row its pass.
    """
    rows = [[int(col[i]) for col in columns] + [0] * height for i in range(height)]
    w = hermite_normal_form(DomainMatrix.from_list(rows, ZZ)).to_Matrix()
    return [tuple(int(x) for x in w.col(j)) for j in range(w.cols)]


def hermite_basis(vectors: Sequence[Sequence[int]]) -> IntMatrix:
    """Hermite normal form basis of the row lattice spanned by ``vectors``.

    Rows come out with their leading entries left to right, each positive, and
    the entries above a leading entry reduced into ``[0, pivot)``. sympy pivots
    from the last row and the last column, so coordinates and columns are reversed
    on the way in and out.
    """
    vecs = [tuple(v) for v in vectors]
    if not vecs:
        return ()
    n = len(vecs[0])
    if n == 0:
        return ()
    cols = _hnf_columns([v[::-1] for v in vecs], n)
    return tuple(c[::-1] for c in reversed(cols))


def exact_rank(vectors: Sequence[Sequence[int]]) -> int:
    vecs = [list(v) for v in vectors]
    if not vecs or not vecs[0]:
        return 0
    return DomainMatrix.from_list(vecs, ZZ).rank()


def integer_kernel(m: Sequence[Sequence[int]], ncols: int) -> IntMatrix:
    """Hermite basis of {x in Z^ncols : m x = 0}; saturated by construction.

    The Hermite form of the stacked matrix [I; m] keeps its columns in echelon
    order with the rows of ``m`` pivoted first, so the columns vanishing on ``m``
    carry a basis of the kernel in their identity block.
    """
    if not m:
        return identity(ncols)
    columns = [tuple(1 if t == j else 0 for t in range(ncols)) + tuple(row[j] for row in m)
               for j in range(ncols)]
    reduced = _hnf_columns(columns, ncols + len(m))
    kernel = [col[:ncols] for col in reduced if not any(col[ncols:])]
    return hermite_basis(kernel)


def saturate(vectors: Sequence[Sequence[int]], ncols: int) -> IntMatrix:
    """Integer points of the rational span of ``vectors``, as a Hermite basis."""
    if not vectors or exact_rank(vectors) == 0:
        return ()
    return integer_kernel(integer_kernel(vectors, ncols), ncols)


def determinant(m: Sequence[Sequence[int]]) -> int:
    if not m:
        return 1
    return int(Matrix(m).det(method="bareiss"))


def integer_inverse(m: Sequence[Sequence[int]]) -> IntMatrix:
    inv = Matrix(m).inv()
    if any(not x.is_Integer for x in inv):
        raise ValueError("matrix is not invertible over the integers")
    return tuple(tuple(int(x) for x in inv.row(i)) for i in range(inv.rows))


def project_off(v: Sequence[Rational], basis: Sequence[Sequence[int]]) -> Vector:
    """Primitive integer direction of v minus its orthogonal projection onto span(basis)."""
    if not basis:
        return primitive_rational(v)
    b = Matrix(basis)
    x = Matrix([SympyRational(Fraction(a).numerator, Fraction(a).denominator) for a in v])
    coeffs = (b * b.T).inv() * (b * x)
    rest = x - b.T * coeffs
    return primitive_rational([Fraction(int(e.p), int(e.q)) for e in rest])
