from __future__ import annotations

from typing import Optional

from .cone import cone_from_rays
from .errors import UnknownName, UsageError
from .isometry import LatticeIsometry, make_isometry
from .lattice import IntegralLattice, direct_sum, enriques_involution_invariant, make_lattice
from .lattice import standard_lattice
from .transport import Scenario, sample_grid

# Action of the order-4 automorphism on U+U+U, blocks (e1,e2), (e3,e4), (e5,e6).
KUMMER_PSI = (
    (0, 0, 1, 0, 0, 0),
    (0, 0, 0, 1, 0, 0),
    (-1, 0, 0, 0, 0, 0),
    (0, -1, 0, 0, 0, 0),
    (0, 0, 0, 0, 1, 0),
    (0, 0, 0, 0, 0, 1),
)

PELL_GRAM = ((1, 0), (0, -2))
PELL_MATRIX = ((3, 4), (2, 3))
PELL_RAYS = ((1, 0), (3, 2))
PELL_WORD_LENGTH = 5
PELL_BOX = 20

NAMES = ("kummer-psi", "enriques-involution-invariant", "pell-tiling")


def kummer_psi() -> LatticeIsometry:
    u = standard_lattice("U")
    return make_isometry(direct_sum(u, u, u), KUMMER_PSI, label="kummer-psi")


def involution_invariant(n: Optional[int]) -> IntegralLattice:
    if n is None:
        raise UsageError("enriques-involution-invariant needs --n")
    return enriques_involution_invariant(n)


def pell_tiling() -> Scenario:
    lat = make_lattice(PELL_GRAM, label="<1>+<-2>")
    gen = make_isometry(lat, PELL_MATRIX, label="A")
    return Scenario(
        name="pell-tiling",
        lattice=lat,
        generators=(gen,),
        word_length=PELL_WORD_LENGTH,
        cone=cone_from_rays(2, PELL_RAYS),
        samples=tuple(sample_grid(2, PELL_BOX)),
        reference=(1, 0),
    )


def check_name(name: str, expected: str) -> None:
    if name not in NAMES:
        raise UnknownName(f"unknown fixture {name!r} (known: {', '.join(NAMES)})")
    if name != expected:
        raise UsageError(f"fixture {name!r} is not usable here (expected {expected!r})")
