from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple

from sympy import isprime

from .config import FamilyConfig, get_family
from .cyclotomic import CyclotomicElement, check_primitive, euler_phi, primitive_exponents
from .errors import EmptyDomain, InadmissibleIndex

log = logging.getLogger(__name__)


class Status(str, Enum):
    HOLDS_PRIME = "HoldsPrime"
    HOLDS_TRIVIAL_PIC_ACTION = "HoldsTrivialPicAction"
    HOLDS_RANK_ONE = "HoldsRankOne"
    HOLDS_INDEX4_KUMMER = "HoldsIndex4Kummer"
    EXCLUDED_TOTIENT = "ExcludedTotient"
    EXCLUDED_LEFSCHETZ = "ExcludedLefschetz"
    EXCLUDED_FIXED_LOCUS = "ExcludedFixedLocus"
    OPEN = "Open"

    @property
    def holds(self) -> bool:
        return self.value.startswith("Holds")


# Quoted statements backing each status; shipped verbatim in json output.
CITATIONS: Dict[Status, str] = {
    Status.EXCLUDED_TOTIENT: "in fact in general we have φ(d)≤ b_2(X̃)−1",
    Status.EXCLUDED_LEFSCHETZ: "L(g)=1+λ̄+λ̄²+…+λ̄ⁿ must vanish, hence d divides n+1",
    Status.HOLDS_PRIME: "holds … on any Enriques manifold X of prime index p",
    Status.EXCLUDED_FIXED_LOCUS: (
        "a non–symplectic automorphism of order 3 on a K3^[2]–type manifold "
        "has never empty fixed locus"
    ),
    Status.HOLDS_RANK_ONE: (
        "the rank of the Picard group is forced to be equal to one; "
        "the transcendental lattice has exactly rank equal to φ(d)"
    ),
    Status.HOLDS_INDEX4_KUMMER: "the cone conjecture holds for the known example of index four",
    Status.HOLDS_TRIVIAL_PIC_ACTION: (
        "Assume the action of G on Pic(X̃) is the identity. "
        "Then the cone conjecture holds for the Enriques manifold X and all its deformations."
    ),
    Status.OPEN: "not covered by the prime-index, rank-one or trivial-Picard-action arguments",
}

# d = 3 for K3-type is settled only in half-dimension 2
_FIXED_LOCUS_FAMILY = "k3n"
_FIXED_LOCUS_INDEX = 3
_FIXED_LOCUS_HALF_DIMENSION = 2


@dataclass(frozen=True)
class IndexStatus:
    family: str
    d: int
    status: Status
    citation: str

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "d": self.d,
            "totient": euler_phi(self.d),
            "status": self.status.value,
            "citation": self.citation,
        }


@dataclass(frozen=True)
class HoldsProjection:
    family: str
    holds: Tuple[int, ...]
    index_four: Tuple[int, ...]


def lefschetz_number(n: int, d: int, k: int = 1) -> CyclotomicElement:
    """Sum of conj(lambda)^j for j = 0..n with lambda = zeta_d^k, exactly in Z[zeta_d]."""
    if n < 1:
        raise ValueError("half-dimension n must be >= 1")
    if d < 2:
        raise ValueError("order d must be >= 2")
    check_primitive(d, k)
    coeffs = [0] * d
    for j in range(n + 1):
        coeffs[(-k * j) % d] += 1
    return CyclotomicElement.from_coefficients(d, coeffs)


def vanishing_orders(n: int) -> List[int]:
    if n < 1:
        raise ValueError("half-dimension n must be >= 1")
    # for d > n + 1 the partial geometric sum has no cancellation
    return [
        d for d in range(2, n + 2)
        if all(lefschetz_number(n, d, k).is_zero() for k in primitive_exponents(d))
    ]


def _index_cutoff(b2: int) -> int:
    # phi(d) >= sqrt(d/2), so d beyond this cutoff has phi(d) > b2 - 1
    return 2 * (b2 - 1) ** 2 + 2


def admissible_indices(b2: int) -> List[int]:
    if b2 < 3:
        raise ValueError("b2 must be >= 3")
    cutoff = _index_cutoff(b2)
    found = [d for d in range(2, cutoff + 1) if euler_phi(d) <= b2 - 1]
    if found and found[-1] > 2 * (b2 - 1) ** 2:
        raise AssertionError(f"totient lower bound violated at d={found[-1]}")
    log.debug("b2=%d: %d admissible indices below cutoff %d", b2, len(found), cutoff)
    return found


def period_domain_dimension(t_lambda_dim: int, lambda_is_minus_one: bool) -> int:
    """Dimension of the ball quotient (lambda != -1) or type IV domain (lambda = -1)."""
    need = 2 if lambda_is_minus_one else 1
    if t_lambda_dim < need:
        raise EmptyDomain(f"eigenspace dimension {t_lambda_dim} < {need}")
    return t_lambda_dim - need


def forced_picard_rank_one(b2: int, d: int) -> bool:
    if d < 2 or euler_phi(d) > b2 - 1:
        raise InadmissibleIndex(f"d={d} is not admissible for b2={b2}")
    return euler_phi(d) == b2 - 1


def _resolve(family) -> FamilyConfig:
    return family if isinstance(family, FamilyConfig) else get_family(family)


def cone_conjecture_status(
    family,
    d: int,
    *,
    n: Optional[int] = None,
    pic_action_trivial: bool = False,
) -> IndexStatus:
    """Proof coverage of the cone conjecture for index ``d`` quotients of ``family``.

    Rules apply in order: totient bound, Lefschetz divisibility (only when the
    half-dimension ``n`` is known), prime index, forced Picard rank one, the index-four
    Kummer example, trivial action on Pic. Anything left over is Open.
    """
    fam = _resolve(family)
    n = n if n is not None else fam.half_dimension
    if d < 2:
        raise InadmissibleIndex(f"index must be >= 2, got {d}")

    def make(status: Status) -> IndexStatus:
        return IndexStatus(fam.key, d, status, CITATIONS[status])

    if euler_phi(d) > fam.b2 - 1:
        return make(Status.EXCLUDED_TOTIENT)
    if n is not None and (n + 1) % d != 0:
        return make(Status.EXCLUDED_LEFSCHETZ)
    if isprime(d):
        if fam.key == _FIXED_LOCUS_FAMILY and d == _FIXED_LOCUS_INDEX:
            if n is None or n == _FIXED_LOCUS_HALF_DIMENSION:
                return make(Status.EXCLUDED_FIXED_LOCUS)
            return make(Status.OPEN)
        return make(Status.HOLDS_PRIME)
    if forced_picard_rank_one(fam.b2, d):
        return make(Status.HOLDS_RANK_ONE)
    if fam.key == "kumn" and d == 4:
        return make(Status.HOLDS_INDEX4_KUMMER)
    if pic_action_trivial:
        return make(Status.HOLDS_TRIVIAL_PIC_ACTION)
    return make(Status.OPEN)


def status_table(family, *, n: Optional[int] = None) -> List[IndexStatus]:
    fam = _resolve(family)
    return [cone_conjecture_status(fam, d, n=n) for d in admissible_indices(fam.b2)]


def holds_projection(family) -> HoldsProjection:
    fam = _resolve(family)
    rows = status_table(fam)
    main = tuple(r.d for r in rows
                 if r.status in (Status.HOLDS_PRIME, Status.HOLDS_RANK_ONE))
    extra = tuple(r.d for r in rows if r.status is Status.HOLDS_INDEX4_KUMMER)
    return HoldsProjection(fam.key, main, extra)


def candidate_orders(family, n: Optional[int] = None) -> List[int]:
    """Indices allowed by both the totient bound and Lefschetz divisibility."""
    fam = _resolve(family)
    n = n if n is not None else fam.half_dimension
    if n is None:
        raise ValueError(f"{fam.label} needs an explicit half-dimension n")
    allowed = set(admissible_indices(fam.b2))
    return [d for d in vanishing_orders(n) if d in allowed]
