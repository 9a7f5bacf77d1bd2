from __future__ import annotations

import json
from typing import Any, Dict, Iterable, List, Optional, Sequence

from rich.console import Console
from rich.markup import escape
from rich.table import Table

from .cone import RationalCone
from .constraints import CITATIONS, HoldsProjection, IndexStatus
from .cyclotomic import CyclotomicElement
from .isometry import IsometryAnalysis, LatticeIsometry, Sublattice, saturation_index
from .lattice import IntegralLattice, lattice_determinant, signature, signature_by_charpoly
from .lattice import is_hyperbolic
from .transport import TilingReport

console = Console()


def emit_json(payload: Dict[str, Any]) -> None:
    """Deterministic json on stdout: sorted keys, fixed indent, ascii only."""
    print(json.dumps(payload, indent=2, sort_keys=True))


def matrix_text(m: Sequence[Sequence[Any]]) -> str:
    if not m:
        return "[]"
    return "\n".join("[" + " ".join(f"{x:>3}" for x in row) + " ]" for row in m)


def _vectors_text(vs: Iterable[Sequence[Any]]) -> str:
    items = ["(" + ", ".join(str(x) for x in v) + ")" for v in vs]
    return ", ".join(items) if items else "none"


def kv_table(title: str, rows: Sequence[Sequence[Any]]) -> Table:
    table = Table(title=escape(title), show_header=False, title_style="bold cyan")
    table.add_column("field", style="cyan", no_wrap=True)
    table.add_column("value")
    for key, value in rows:
        table.add_row(escape(str(key)), escape(str(value)))
    return table


# --- lattices ------------------------------------------------------------------------


def lattice_payload(lat: IntegralLattice) -> Dict[str, Any]:
    sig = signature(lat)
    return {
        "label": str(lat),
        "rank": lat.rank,
        "signature": list(sig.as_tuple()),
        "signature_oracle_agrees": signature_by_charpoly(lat) == sig,
        "determinant": lattice_determinant(lat),
        "even": lat.even,
        "hyperbolic": is_hyperbolic(lat),
        "gram": [list(r) for r in lat.gram],
    }


def lattice_table(payload: Dict[str, Any]) -> Table:
    return kv_table(f"Lattice {payload['label']}", [
        ("rank", payload["rank"]),
        ("signature", tuple(payload["signature"])),
        ("determinant", payload["determinant"]),
        ("even", payload["even"]),
        ("hyperbolic", payload["hyperbolic"]),
        ("gram", matrix_text(payload["gram"])),
    ])


# --- isometries ----------------------------------------------------------------------


def _sublattice_payload(sub: Sublattice) -> Dict[str, Any]:
    return {
        "rank": sub.rank,
        "basis": [list(v) for v in sub.basis],
        "gram": [list(r) for r in sub.gram],
        "saturation_index": saturation_index(sub),
    }


def analysis_payload(iso: LatticeIsometry, analysis: IsometryAnalysis) -> Dict[str, Any]:
    dec = analysis.decomposition
    return {
        "isometry": str(iso),
        "lattice": str(iso.lattice),
        "rank": iso.rank,
        "order": analysis.order,
        "profile": {str(d): m for d, m in analysis.profile.multiplicities},
        "invariant": _sublattice_payload(analysis.invariant),
        "coinvariant": _sublattice_payload(analysis.coinvariant),
        "decomposition": {
            "invariant_rank": dec.invariant_rank,
            "coinvariant_rank": dec.coinvariant_rank,
            "ambient_rank": dec.ambient_rank,
            "direct": dec.direct,
            "index": dec.index,
        },
        "eigenvalue_one_matches": analysis.eigenvalue_one_matches,
    }


def analysis_table(payload: Dict[str, Any]) -> Table:
    profile = " ".join(f"Φ{d}^{m}" for d, m in payload["profile"].items())
    dec = payload["decomposition"]
    return kv_table(f"Isometry {payload['isometry']} on {payload['lattice']}", [
        ("order", payload["order"]),
        ("char. polynomial", profile),
        ("invariant rank", payload["invariant"]["rank"]),
        ("invariant basis", _vectors_text(payload["invariant"]["basis"])),
        ("coinvariant rank", payload["coinvariant"]["rank"]),
        ("decomposition", f"{dec['invariant_rank']} + {dec['coinvariant_rank']} = "
                          f"{dec['ambient_rank']}, {'direct' if dec['direct'] else 'NOT direct'}"),
        ("index of invariant + complement", dec["index"]),
    ])


def defect_payload(defect: LatticeIsometry) -> Dict[str, Any]:
    return {"defect": [list(r) for r in defect.matrix], "commute": defect.is_identity()}


# --- constraints ---------------------------------------------------------------------


def indices_payload(label: str, key: str, b2: int, admissible: Sequence[int],
                    rows: Sequence[IndexStatus], holds: HoldsProjection) -> Dict[str, Any]:
    used = sorted({r.status for r in rows}, key=lambda s: s.value)
    return {
        "family": key,
        "label": label,
        "b2": b2,
        "admissible": list(admissible),
        "holds": list(holds.holds),
        "index_four": list(holds.index_four),
        "statuses": {str(r.d): r.status.value for r in rows},
        "citations": {s.value: CITATIONS[s] for s in used},
    }


def indices_table(payload: Dict[str, Any]) -> Table:
    table = Table(title=escape(f"{payload['label']} (b2 = {payload['b2']}): "
                               f"{len(payload['admissible'])} admissible indices"),
                  title_style="bold cyan")
    table.add_column("d", justify="right")
    table.add_column("status")
    for d, status in payload["statuses"].items():
        style = "green" if status.startswith("Holds") else ("red" if status.startswith("Excluded")
                                                           else "yellow")
        table.add_row(d, f"[{style}]{status}[/{style}]")
    return table


def lefschetz_payload(n: int, d: int, k: int, value: CyclotomicElement) -> Dict[str, Any]:
    return {
        "n": n,
        "d": d,
        "k": k,
        "value": str(value),
        "coefficients": list(value.coefficients),
        "is_zero": value.is_zero(),
    }


# --- cones ---------------------------------------------------------------------------


def cone_table(cone: RationalCone, title: str = "Cone") -> Table:
    return kv_table(f"{title} in dimension {cone.ambient_dim}", [
        ("rays", _vectors_text(cone.rays)),
        ("facets", _vectors_text(cone.facets)),
        ("equations", _vectors_text(cone.equations)),
        ("lineality", _vectors_text(cone.lineality)),
        ("dimension", cone.dimension),
    ])


def union_payload(pieces: Sequence[RationalCone]) -> Dict[str, Any]:
    return {"pieces": [p.as_dict() for p in pieces], "count": len(pieces)}


# --- tiling --------------------------------------------------------------------------


def tiling_payload(name: str, elements: int, report: TilingReport) -> Dict[str, Any]:
    payload = report.as_dict()
    payload["scenario"] = name
    payload["elements"] = elements
    return payload


def tiling_table(payload: Dict[str, Any]) -> Table:
    rows: List[Sequence[Any]] = [
        ("verdict", payload["verdict"]),
        ("group elements", payload["elements"]),
        ("distinct translates", payload["translates"]),
        ("covered samples", payload["covered_samples"]),
        ("skipped samples", payload["skipped_samples"]),
        ("uncovered", _vectors_text(payload["uncovered_witnesses"])),
        ("overlapping pairs", _vectors_text(payload["disjointness_violations"])),
    ]
    return kv_table(f"Tiling audit: {payload['scenario']}", rows)


def render(fmt: str, payload: Dict[str, Any], table: Optional[Table] = None) -> None:
    if fmt == "json" or table is None:
        emit_json(payload)
    else:
        console.print(table)
