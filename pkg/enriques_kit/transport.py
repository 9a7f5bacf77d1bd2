from __future__ import annotations

import asyncio
import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .cone import (
    Containment,
    ConeUnion,
    RationalCone,
    cones_equal,
    contains,
    interiors_intersect,
    linear_image,
    linear_preimage,
)
from .config import default_concurrency
from .errors import DefectOutsideKernel, DependentBasis, DimensionMismatch
from .isometry import (
    LatticeIsometry,
    commutator_defect,
    identity_isometry,
    inverse,
)
from .lattice import IntegralLattice, inner_product, q_value
from .utils import IntMatrix, Rational, Vector, as_matrix, exact_rank, mat_mul, transpose

log = logging.getLogger(__name__)

SamplePredicate = Callable[[Sequence[Rational]], bool]


class TilingVerdict(str, Enum):
    CONSISTENT = "ConsistentWithTiling"
    REFUTED = "Refuted"


@dataclass(frozen=True)
class GroupData:
    """Finite sample of a group acting on ``lattice``, with the finite kernel set K."""

    lattice: IntegralLattice
    elements: Tuple[LatticeIsometry, ...]
    kernel: Tuple[LatticeIsometry, ...] = ()

    def __post_init__(self) -> None:
        for iso in self.elements + self.kernel:
            if iso.lattice.gram != self.lattice.gram:
                raise DimensionMismatch(f"{iso} acts on a different lattice")
        if not any(k.is_identity() for k in self.kernel):
            # frozen: extend K with the identity in place
            object.__setattr__(self, "kernel", (identity_isometry(self.lattice),) + self.kernel)


@dataclass
class TilingReport:
    covered_samples: int = 0
    uncovered_witnesses: List[Tuple[Rational, ...]] = field(default_factory=list)
    disjointness_violations: List[Tuple[int, int]] = field(default_factory=list)
    skipped_samples: int = 0
    translates: int = 0

    @property
    def verdict(self) -> TilingVerdict:
        if self.uncovered_witnesses or self.disjointness_violations:
            return TilingVerdict.REFUTED
        return TilingVerdict.CONSISTENT

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "covered_samples": self.covered_samples,
            "uncovered_witnesses": [[str(x) for x in w] for w in self.uncovered_witnesses],
            "disjointness_violations": [list(p) for p in self.disjointness_violations],
            "skipped_samples": self.skipped_samples,
            "translates": self.translates,
        }


@dataclass(frozen=True)
class CosetPartition:
    classes: Tuple[Tuple[int, ...], ...]
    defects: Tuple[LatticeIsometry, ...]
    representatives: Tuple[LatticeIsometry, ...]

    def __len__(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class Scenario:
    """Everything a tiling audit needs: lattice, generators, domain, kernel and samples."""

    name: str
    lattice: IntegralLattice
    generators: Tuple[LatticeIsometry, ...]
    word_length: int
    cone: RationalCone
    samples: Tuple[Tuple[Rational, ...], ...]
    kernel: Tuple[LatticeIsometry, ...] = ()
    # samples are kept only in the half of the positive cone containing this vector
    reference: Optional[Vector] = None
    pushforward: bool = False
    # deck transformation g of the cover; words are then grouped by their defect with g
    deck: Optional[LatticeIsometry] = None

    def group(self) -> GroupData:
        return GroupData(self.lattice, words(self.generators, self.word_length), self.kernel)

    def predicate(self) -> Optional[SamplePredicate]:
        if self.reference is None:
            return None
        return positive_cone_predicate(self.lattice, self.reference)

    def coset_representatives(self) -> Tuple[LatticeIsometry, ...]:
        """The generators, or one word per coset class when a deck transformation is set."""
        if self.deck is None:
            return self.generators
        group = self.group()
        return coset_partition(group.elements, self.deck, group.kernel).representatives


def run_scenario(scenario: Scenario, jobs: Optional[int] = None) -> TilingReport:
    group = scenario.group()
    if jobs and jobs > 1:
        return asyncio.run(verify_tiling_async(scenario.cone, group, scenario.samples,
                                               scenario.predicate(), jobs=jobs))
    return verify_tiling(scenario.cone, group, scenario.samples, scenario.predicate())


def restrict_domain(cone: RationalCone, subspace_basis: Sequence[Sequence[int]]) -> RationalCone:
    """The cone intersected with span(subspace_basis), in coordinates of that basis."""
    basis = as_matrix(subspace_basis)
    if not basis:
        raise DependentBasis("empty subspace basis")
    for b in basis:
        if len(b) != cone.ambient_dim:
            raise DimensionMismatch(f"basis vector {list(b)} has length {len(b)}, "
                                    f"expected {cone.ambient_dim}")
    if exact_rank(basis) < len(basis):
        raise DependentBasis("subspace basis vectors are linearly dependent")
    # inclusion map s -> sum s_i b_i has the basis vectors as columns
    return linear_preimage(cone, transpose(basis))


def _translate(cone: RationalCone, iso: LatticeIsometry, pullback: bool) -> RationalCone:
    if iso.rank != cone.ambient_dim:
        raise DimensionMismatch(f"isometry of rank {iso.rank} on a cone in dimension "
                                f"{cone.ambient_dim}")
    mat = inverse(iso).matrix if pullback else iso.matrix
    return linear_image(cone, mat)


def enlarge_domain(cone: RationalCone, coset_reps: Sequence[LatticeIsometry],
                   pullback: bool = True) -> ConeUnion:
    """D plus the translates (g^-1)*(D) for each coset representative, deduplicated."""
    pieces: List[RationalCone] = [cone]
    for rep in coset_reps:
        image = _translate(cone, rep, pullback)
        if not any(cones_equal(image, p) for p in pieces):
            pieces.append(image)
    log.debug("enlarged domain: %d representatives -> %d pieces", len(coset_reps), len(pieces))
    return ConeUnion(tuple(pieces))


def _in_kernel(defect: LatticeIsometry, kernel: Sequence[LatticeIsometry]) -> bool:
    return any(defect.matrix == k.matrix for k in kernel)


def descends(tau: LatticeIsometry, g: LatticeIsometry,
             kernel: Optional[Sequence[LatticeIsometry]] = None) -> bool:
    """True iff tau*g^-1*tau^-1*g lies in the kernel set (default: the identity alone)."""
    defect = commutator_defect(tau, g)
    return defect.is_identity() or _in_kernel(defect, kernel or ())


def coset_partition(candidates: Sequence[LatticeIsometry], g: LatticeIsometry,
                    kernel: Sequence[LatticeIsometry]) -> CosetPartition:
    """Group candidates by their commutator defect with g; one class per defect value."""
    by_defect: Dict[IntMatrix, List[int]] = {}
    defects: List[LatticeIsometry] = []
    for i, cand in enumerate(candidates):
        defect = commutator_defect(cand, g)
        if not (defect.is_identity() or _in_kernel(defect, kernel)):
            raise DefectOutsideKernel(i)
        if defect.matrix not in by_defect:
            by_defect[defect.matrix] = []
            defects.append(defect)
        by_defect[defect.matrix].append(i)
    classes = tuple(tuple(by_defect[d.matrix]) for d in defects)
    reps = tuple(candidates[c[0]] for c in classes)
    return CosetPartition(classes=classes, defects=tuple(defects), representatives=reps)


def words(generators: Sequence[LatticeIsometry], length: int) -> Tuple[LatticeIsometry, ...]:
    """Distinct products of generators and their inverses of word length <= ``length``.

    Breadth first, so shorter words come first; the identity is always included.
    """
    if not generators:
        raise ValueError("words() needs at least one generator")
    lat = generators[0].lattice
    letters = list(generators) + [inverse(g) for g in generators]
    start = identity_isometry(lat)
    seen = {start.matrix}
    out = [start]
    frontier = deque([(start, 0)])
    while frontier:
        w, depth = frontier.popleft()
        if depth == length:
            continue
        for letter in letters:
            nxt = LatticeIsometry(lattice=lat, matrix=mat_mul(w.matrix, letter.matrix))
            if nxt.matrix in seen:
                continue
            seen.add(nxt.matrix)
            out.append(nxt)
            frontier.append((nxt, depth + 1))
    return tuple(out)


def positive_cone_predicate(lattice: IntegralLattice, reference: Sequence[int]) -> SamplePredicate:
    """q(v) > 0 and b(v, reference) > 0: the half of the positive cone containing ``reference``."""
    ref = tuple(reference)

    def predicate(v: Sequence[Rational]) -> bool:
        return q_value(lattice, v) > 0 and inner_product(lattice, v, ref) > 0

    return predicate


def sample_grid(dim: int, bound: int) -> List[Vector]:
    return [v for v in itertools.product(range(-bound, bound + 1), repeat=dim) if any(v)]


@dataclass(frozen=True)
class _Translates:
    owners: Tuple[int, ...]
    cones: Tuple[RationalCone, ...]


def _distinct_translates(cone: RationalCone, elements: Sequence[LatticeIsometry]) -> _Translates:
    # elements inducing the same map on the cone's span give one translate
    span = list(cone.rays) + list(cone.lineality)
    owners: List[int] = []
    cones: List[RationalCone] = []
    keys = set()
    for i, g in enumerate(elements):
        key = tuple(g.apply(v) for v in span)
        if key in keys:
            continue
        keys.add(key)
        owners.append(i)
        cones.append(linear_image(cone, g.matrix))
    return _Translates(tuple(owners), tuple(cones))


def _covered(translates: _Translates, v: Sequence[Rational]) -> bool:
    return any(contains(t, v) is not Containment.OUTSIDE for t in translates.cones)


def _pairs(translates: _Translates) -> List[Tuple[int, int]]:
    return list(itertools.combinations(range(len(translates.cones)), 2))


def _prepare(cone: RationalCone, group: GroupData, samples: Sequence[Sequence[Rational]],
             predicate: Optional[SamplePredicate]) -> Tuple[_Translates, List[Tuple[Rational, ...]], int]:
    if group.lattice.rank != cone.ambient_dim:
        raise DimensionMismatch(f"rank-{group.lattice.rank} lattice with a cone in dimension "
                                f"{cone.ambient_dim}")
    kept: List[Tuple[Rational, ...]] = []
    skipped = 0
    for s in samples:
        if len(s) != cone.ambient_dim:
            raise DimensionMismatch(f"sample {list(s)} has length {len(s)}")
        if predicate is not None and not predicate(s):
            skipped += 1
            continue
        kept.append(tuple(s))
    return _distinct_translates(cone, group.elements), kept, skipped


def _finish(translates: _Translates, kept: Sequence[Tuple[Rational, ...]], skipped: int,
            covered: Sequence[bool], overlaps: Sequence[Tuple[Tuple[int, int], bool]]) -> TilingReport:
    report = TilingReport(skipped_samples=skipped, translates=len(translates.cones))
    for v, ok in zip(kept, covered):
        if ok:
            report.covered_samples += 1
        else:
            report.uncovered_witnesses.append(v)
    for (a, b), hit in overlaps:
        if hit:
            report.disjointness_violations.append((translates.owners[a], translates.owners[b]))
    log.debug("tiling audit: %d translates, %d samples, verdict %s",
              report.translates, len(kept), report.verdict.value)
    return report


def verify_tiling(cone: RationalCone, group: GroupData, samples: Sequence[Sequence[Rational]],
                  predicate: Optional[SamplePredicate] = None) -> TilingReport:
    """Sampled audit of the tiling conditions for the finite element list of ``group``.

    Disjointness is checked for every pair of translates with different induced maps;
    covering only on the given samples, so a clean report is consistent with a tiling
    and never a proof of one.
    """
    translates, kept, skipped = _prepare(cone, group, samples, predicate)
    covered = [_covered(translates, v) for v in kept]
    overlaps = [((a, b), interiors_intersect(translates.cones[a], translates.cones[b]))
                for a, b in _pairs(translates)]
    return _finish(translates, kept, skipped, covered, overlaps)


async def _with_sem(sem: asyncio.Semaphore, fn, *args):
    try:
        return await asyncio.to_thread(fn, *args)
    finally:
        sem.release()


async def verify_tiling_async(cone: RationalCone, group: GroupData,
                              samples: Sequence[Sequence[Rational]],
                              predicate: Optional[SamplePredicate] = None,
                              jobs: Optional[int] = None) -> TilingReport:
    """verify_tiling with samples and pairs spread over worker threads; same report."""
    translates, kept, skipped = _prepare(cone, group, samples, predicate)
    semaphore = asyncio.Semaphore(jobs or default_concurrency())

    cover_tasks = []
    for v in kept:
        await semaphore.acquire()
        cover_tasks.append(asyncio.create_task(_with_sem(semaphore, _covered, translates, v)))
    pairs = _pairs(translates)
    pair_tasks = []
    for a, b in pairs:
        await semaphore.acquire()
        pair_tasks.append(asyncio.create_task(
            _with_sem(semaphore, interiors_intersect, translates.cones[a], translates.cones[b])))

    covered = [await t for t in cover_tasks]
    hits = [await t for t in pair_tasks]
    return _finish(translates, kept, skipped, covered, list(zip(pairs, hits)))
