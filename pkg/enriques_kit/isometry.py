from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

from sympy import Matrix, Poly, Symbol, div, divisors

from .config import DEFAULT_ORDER_BOUND
from .constraints import period_domain_dimension
from .cyclotomic import cyclotomic_polynomial, euler_phi
from .errors import (
    DecompositionFails,
    DimensionMismatch,
    NonCyclotomicFactor,
    NotAnIsometry,
    NotUnimodular,
    OrderExceedsBound,
)
from .lattice import IntegralLattice
from .utils import (
    IntMatrix,
    Vector,
    as_matrix,
    determinant,
    exact_rank,
    hermite_basis,
    identity,
    integer_inverse,
    integer_kernel,
    mat_mul,
    mat_vec,
    saturate,
    transpose,
)

log = logging.getLogger(__name__)

_X = Symbol("x")


@dataclass(frozen=True)
class LatticeIsometry:
    """Integer matrix acting on column vectors in the lattice basis, preserving the form."""

    lattice: IntegralLattice
    matrix: IntMatrix
    label: Optional[str] = field(default=None, compare=False)

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def apply(self, v: Sequence[int]) -> Vector:
        return mat_vec(self.matrix, v)

    def is_identity(self) -> bool:
        return self.matrix == identity(self.rank)

    def __str__(self) -> str:
        return self.label or f"isometry(rank={self.rank})"


@dataclass(frozen=True)
class Sublattice:
    ambient: IntegralLattice
    basis: IntMatrix

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def gram(self) -> IntMatrix:
        g = self.ambient.gram
        return mat_mul(mat_mul(self.basis, g), transpose(self.basis)) if self.basis else ()


@dataclass(frozen=True)
class CyclotomicProfile:
    """Multiplicities m_d with charpoly = prod Phi_d^m_d."""

    multiplicities: Tuple[Tuple[int, int], ...]

    def as_dict(self) -> Dict[int, int]:
        return dict(self.multiplicities)

    def get(self, d: int) -> int:
        return self.as_dict().get(d, 0)

    def degree(self) -> int:
        return sum(m * euler_phi(d) for d, m in self.multiplicities)


@dataclass(frozen=True)
class DecompositionReport:
    invariant_rank: int
    coinvariant_rank: int
    ambient_rank: int
    direct: bool
    # index of invariant + complement inside its saturation; [L : I + C] when direct
    index: int = 1


def make_isometry(lat: IntegralLattice, m: Sequence[Sequence[int]],
                  label: Optional[str] = None) -> LatticeIsometry:
    mat = as_matrix(m)
    n = lat.rank
    if len(mat) != n or any(len(row) != n for row in mat):
        raise DimensionMismatch(f"isometry matrix must be {n}x{n}")
    if mat_mul(mat_mul(transpose(mat), lat.gram), mat) != lat.gram:
        raise NotAnIsometry("m^T G m != G")
    if abs(determinant(mat)) != 1:
        raise NotUnimodular("isometry matrix has |det| != 1")
    return LatticeIsometry(lattice=lat, matrix=mat, label=label)


def identity_isometry(lat: IntegralLattice) -> LatticeIsometry:
    return LatticeIsometry(lattice=lat, matrix=identity(lat.rank), label="id")


def _same_lattice(a: LatticeIsometry, b: LatticeIsometry) -> None:
    if a.lattice.gram != b.lattice.gram:
        raise DimensionMismatch("isometries act on different lattices")


def compose(a: LatticeIsometry, b: LatticeIsometry) -> LatticeIsometry:
    """The product a*b (apply b first)."""
    _same_lattice(a, b)
    return LatticeIsometry(lattice=a.lattice, matrix=mat_mul(a.matrix, b.matrix))


def inverse(iso: LatticeIsometry) -> LatticeIsometry:
    return LatticeIsometry(lattice=iso.lattice, matrix=integer_inverse(iso.matrix))


def power(iso: LatticeIsometry, k: int) -> LatticeIsometry:
    base = iso if k >= 0 else inverse(iso)
    result = identity(iso.rank)
    m = base.matrix
    e = abs(k)
    while e:
        if e & 1:
            result = mat_mul(result, m)
        m = mat_mul(m, m)
        e >>= 1
    return LatticeIsometry(lattice=iso.lattice, matrix=result)


def order(iso: LatticeIsometry, bound: int = DEFAULT_ORDER_BOUND) -> int:
    if bound < 1:
        raise ValueError("bound must be >= 1")
    ident = identity(iso.rank)
    cur = iso.matrix
    for k in range(1, bound + 1):
        if cur == ident:
            log.debug("order %d found for %s", k, iso)
            return k
        cur = mat_mul(cur, iso.matrix)
    raise OrderExceedsBound(bound)


def invariant_sublattice(iso: LatticeIsometry) -> Sublattice:
    n = iso.rank
    shifted = tuple(tuple(iso.matrix[i][j] - (1 if i == j else 0) for j in range(n))
                    for i in range(n))
    return Sublattice(ambient=iso.lattice, basis=integer_kernel(shifted, n))


def orthogonal_complement(sub: Sublattice) -> Sublattice:
    n = sub.ambient.rank
    if not sub.basis:
        return Sublattice(ambient=sub.ambient, basis=identity(n))
    pairing = mat_mul(sub.basis, sub.ambient.gram)
    return Sublattice(ambient=sub.ambient, basis=integer_kernel(pairing, n))


def coinvariant_sublattice(iso: LatticeIsometry) -> Sublattice:
    return orthogonal_complement(invariant_sublattice(iso))


def sublattice(lat: IntegralLattice, vectors: Sequence[Sequence[int]]) -> Sublattice:
    """Hermite-normalized span of ``vectors`` (not saturated)."""
    vecs = as_matrix(vectors)
    if any(len(v) != lat.rank for v in vecs):
        raise DimensionMismatch("sublattice vectors must have the lattice rank as length")
    return Sublattice(ambient=lat, basis=hermite_basis(vecs))


def saturation_index(sub: Sublattice) -> int:
    """Index of ``sub`` in its saturation; 1 iff the sublattice is primitive."""
    if not sub.basis:
        return 1
    sat = saturate(sub.basis, sub.ambient.rank)
    # det(B B^T) = index^2 * det(S S^T)
    outer = determinant(mat_mul(sub.basis, transpose(sub.basis)))
    inner = determinant(mat_mul(sat, transpose(sat)))
    return math.isqrt(outer // inner)


def characteristic_polynomial(iso: LatticeIsometry) -> Poly:
    return Poly(Matrix(iso.matrix).charpoly(_X).as_expr(), _X)


def cyclotomic_profile(iso: LatticeIsometry, bound: int = DEFAULT_ORDER_BOUND) -> CyclotomicProfile:
    n = order(iso, bound)
    rest = characteristic_polynomial(iso)
    found = []
    for d in divisors(n):
        phi_d = cyclotomic_polynomial(int(d))
        m = 0
        while rest.degree() >= phi_d.degree():
            q, r = div(rest, phi_d)
            if not r.is_zero:
                break
            rest = q
            m += 1
        if m:
            found.append((int(d), m))
    if rest.degree() != 0 or rest.LC() != 1:
        raise NonCyclotomicFactor(f"leftover factor {rest.as_expr()} after cyclotomic division")
    return CyclotomicProfile(tuple(found))


def eigenspace_dimension(iso: LatticeIsometry, d: int, primitive: bool = True,
                         bound: int = DEFAULT_ORDER_BOUND) -> int:
    """Multiplicity of one primitive d-th root; with primitive=False, m_d * phi(d)."""
    m = cyclotomic_profile(iso, bound).get(d)
    return m if primitive else m * euler_phi(d)


def commutator_defect(phi: LatticeIsometry, g: LatticeIsometry) -> LatticeIsometry:
    """phi * g^-1 * phi^-1 * g; the identity certifies commutation on the lattice."""
    _same_lattice(phi, g)
    m = mat_mul(mat_mul(mat_mul(phi.matrix, integer_inverse(g.matrix)),
                        integer_inverse(phi.matrix)), g.matrix)
    return LatticeIsometry(lattice=phi.lattice, matrix=m)


def decomposition_check(iso: LatticeIsometry, strict: bool = False) -> DecompositionReport:
    inv = invariant_sublattice(iso)
    co = orthogonal_complement(inv)
    n = iso.rank
    stacked = list(inv.basis) + list(co.basis)
    direct = inv.rank + co.rank == n and exact_rank(stacked) == n
    index = saturation_index(sublattice(iso.lattice, stacked))
    report = DecompositionReport(inv.rank, co.rank, n, direct, index)
    if strict and not direct:
        raise DecompositionFails(
            f"invariant rank {inv.rank} + complement rank {co.rank} do not split rank {n} directly"
        )
    return report


def preserves_sublattice(iso: LatticeIsometry, sub: Sublattice) -> bool:
    if not sub.basis:
        return True
    span = hermite_basis(sub.basis)
    return all(hermite_basis(list(span) + [iso.apply(v)]) == span for v in sub.basis)


def acts_trivially_on(iso: LatticeIsometry, sub: Sublattice) -> bool:
    return all(iso.apply(v) == tuple(v) for v in sub.basis)


def commutes_on(tau: LatticeIsometry, g: LatticeIsometry, sub: Sublattice) -> bool:
    """tau preserves ``sub`` and tau*g agrees with g*tau on each basis vector of it."""
    _same_lattice(tau, g)
    if not preserves_sublattice(tau, sub):
        return False
    return all(tau.apply(g.apply(v)) == g.apply(tau.apply(v)) for v in sub.basis)


def period_domain_for(iso: LatticeIsometry, d: int, bound: int = DEFAULT_ORDER_BOUND) -> int:
    """Period domain dimension for the eigenspace of a primitive d-th root (d = 2 is lambda = -1)."""
    return period_domain_dimension(eigenspace_dimension(iso, d, bound=bound), d == 2)


@dataclass(frozen=True)
class IsometryAnalysis:
    order: int
    profile: CyclotomicProfile
    invariant: Sublattice
    coinvariant: Sublattice
    decomposition: DecompositionReport

    @property
    def eigenvalue_one_matches(self) -> bool:
        return self.profile.get(1) == self.invariant.rank


def analyze(iso: LatticeIsometry, bound: int = DEFAULT_ORDER_BOUND) -> IsometryAnalysis:
    n = order(iso, bound)
    profile = cyclotomic_profile(iso, bound)
    inv = invariant_sublattice(iso)
    result = IsometryAnalysis(
        order=n,
        profile=profile,
        invariant=inv,
        coinvariant=orthogonal_complement(inv),
        decomposition=decomposition_check(iso),
    )
    if not result.eigenvalue_one_matches:
        log.warning("eigenvalue-1 multiplicity %d differs from invariant rank %d",
                    profile.get(1), inv.rank)
    return result
