from __future__ import annotations

import json
import os
from dataclasses import dataclass, replace
from typing import Dict, Optional

from .errors import ParseError, UnknownFamily

FORMAT_ENV = "ENRIQUES_KIT_FORMAT"
FAMILIES_ENV = "ENRIQUES_KIT_FAMILIES"
FORMATS = ("table", "json")

DEFAULT_ORDER_BOUND = 512


@dataclass(frozen=True)
class FamilyConfig:
    key: str
    label: str
    b2: int
    # fixed for the O'Grady families, variable (None) for the two infinite series
    half_dimension: Optional[int] = None
    kernel_note: str = ""
    provenance: str = ""


DEFAULT_FAMILIES: Dict[str, FamilyConfig] = {
    "k3n": FamilyConfig(
        key="k3n",
        label="K3^[n]-type",
        b2=23,
        kernel_note="Aut -> O(H^2) is injective",
        provenance="second Betti numbers are 23 and 7",
    ),
    "kumn": FamilyConfig(
        key="kumn",
        label="Kum_n-type",
        b2=7,
        kernel_note="finite kernel: translations by n-torsion points and -id",
        provenance="second Betti numbers are 23 and 7",
    ),
    "og6": FamilyConfig(
        key="og6",
        label="OG6",
        b2=8,
        half_dimension=3,
        kernel_note="finite kernel (Z/2Z)^8",
        provenance="configuration value: b2(OG6) = 8 from the literature, editable",
    ),
    "og10": FamilyConfig(
        key="og10",
        label="OG10",
        b2=24,
        half_dimension=5,
        kernel_note="Aut -> O(H^2) is injective",
        provenance="configuration value: b2(OG10) = 24 from the literature, editable",
    ),
}


def normalize_family(name: str) -> str:
    key = name.strip().lower().replace("-", "").replace("_", "")
    aliases = {"k3": "k3n", "k3[n]": "k3n", "kum": "kumn", "kummer": "kumn"}
    return aliases.get(key, key)


def load_families(path: Optional[str] = None) -> Dict[str, FamilyConfig]:
    """Defaults overlaid with a JSON file of ``{"key": {"b2": ..., ...}}`` entries.

    Without an explicit path the file named by ``ENRIQUES_KIT_FAMILIES`` is used, if set.
    """
    families = dict(DEFAULT_FAMILIES)
    path = path or os.environ.get(FAMILIES_ENV)
    if not path:
        return families
    try:
        with open(os.path.expanduser(path), "r", encoding="utf-8") as f:
            data = json.load(f)
    except OSError as e:
        raise ParseError(str(e), source=path) from e
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno}: {e.msg}", source=path) from e
    if not isinstance(data, dict):
        raise ParseError("expected an object of families", source=path)
    for raw_key, entry in data.items():
        key = normalize_family(raw_key)
        if not isinstance(entry, dict):
            raise ParseError("expected an object", source=path, field=raw_key)
        base = families.get(key, FamilyConfig(key=key, label=raw_key, b2=0))
        b2 = entry.get("b2", base.b2)
        if not isinstance(b2, int) or b2 < 3:
            raise ParseError("b2 must be an integer >= 3", source=path, field=f"{raw_key}.b2")
        families[key] = replace(
            base,
            b2=b2,
            label=entry.get("label", base.label),
            half_dimension=entry.get("half_dimension", base.half_dimension),
            kernel_note=entry.get("kernel_note", base.kernel_note),
            provenance=entry.get("provenance", "user configuration"),
        )
    return families


def get_family(name: str, families: Optional[Dict[str, FamilyConfig]] = None) -> FamilyConfig:
    families = families if families is not None else load_families()
    try:
        return families[normalize_family(name)]
    except KeyError:
        known = ", ".join(sorted(families))
        raise UnknownFamily(f"unknown family {name!r} (known: {known})") from None


def default_format() -> str:
    value = os.environ.get(FORMAT_ENV, "table").strip().lower()
    return value if value in FORMATS else "table"


def default_concurrency() -> int:
    try:
        cpu = os.cpu_count() or 4
    except Exception:
        cpu = 4
    return max(2, min(32, cpu * 2))
