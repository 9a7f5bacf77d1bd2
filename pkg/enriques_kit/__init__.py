__all__ = [
	"IntegralLattice",
	"LatticeIsometry",
	"RationalCone",
	"Status",
	"analyze",
	"audit_round_trip",
	"cone_conjecture_status",
	"verify_tiling",
]

__version__ = "0.1.0"

from .cone import RationalCone, audit_round_trip
from .constraints import Status, cone_conjecture_status
from .isometry import LatticeIsometry, analyze
from .lattice import IntegralLattice
from .transport import verify_tiling
