"""JSON input files: lattices, isometries, cones and tiling scenarios.

Every malformed file raises ParseError naming the file and the offending field.
"""
from __future__ import annotations

import json
import os
from fractions import Fraction
from typing import Any, List, Optional, Tuple

from .cone import RationalCone, cone_from_halfspaces, cone_from_rays
from .errors import ParseError
from .isometry import LatticeIsometry, make_isometry
from .lattice import IntegralLattice, make_lattice, parse_lattice_expression
from .transport import Scenario, sample_grid
from .utils import IntMatrix, Rational, Vector


def load_json(path: str) -> Any:
    try:
        with open(os.path.expanduser(path), "r", encoding="utf-8") as f:
            return json.load(f)
    except OSError as e:
        raise ParseError(e.strerror or str(e), source=path) from e
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno} column {e.colno}: {e.msg}", source=path) from e


def _object(data: Any, source: str, field: Optional[str] = None) -> dict:
    if not isinstance(data, dict):
        raise ParseError("expected a JSON object", source=source, field=field)
    return data


def _require(data: dict, key: str, source: str) -> Any:
    if key not in data:
        raise ParseError("missing required field", source=source, field=key)
    return data[key]


def parse_int_vector(obj: Any, source: str, field: str) -> Vector:
    if not isinstance(obj, list) or not all(isinstance(x, int) and not isinstance(x, bool)
                                            for x in obj):
        raise ParseError("expected a list of integers", source=source, field=field)
    return tuple(obj)


def parse_matrix(obj: Any, source: str, field: str) -> IntMatrix:
    if not isinstance(obj, list) or not obj:
        raise ParseError("expected a non-empty list of integer rows", source=source, field=field)
    rows = tuple(parse_int_vector(r, source, f"{field}[{i}]") for i, r in enumerate(obj))
    if len({len(r) for r in rows}) != 1:
        raise ParseError("rows have different lengths", source=source, field=field)
    return rows


def parse_rational_vector(obj: Any, source: str, field: str) -> Tuple[Rational, ...]:
    """Integers, or strings such as "3/2"."""
    if not isinstance(obj, list):
        raise ParseError("expected a list of rationals", source=source, field=field)
    out: List[Rational] = []
    for i, x in enumerate(obj):
        if isinstance(x, int) and not isinstance(x, bool):
            out.append(x)
            continue
        try:
            value = Fraction(str(x))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"not a rational number: {x!r}", source=source,
                             field=f"{field}[{i}]") from None
        out.append(value.numerator if value.denominator == 1 else value)
    return tuple(out)


def parse_lattice(obj: Any, source: str, field: str = "lattice") -> IntegralLattice:
    """A constructor expression string, or an object with ``gram`` (or ``expr``)."""
    if isinstance(obj, str):
        return parse_lattice_expression(obj)
    data = _object(obj, source, field)
    if "expr" in data:
        return parse_lattice_expression(data["expr"])
    if "gram" in data:
        return make_lattice(parse_matrix(data["gram"], source, f"{field}.gram"),
                            label=data.get("label"))
    raise ParseError("expected an expression or a 'gram' matrix", source=source, field=field)


def load_lattice(path: str) -> IntegralLattice:
    return parse_lattice(load_json(path), path, "lattice")


def parse_isometry(obj: Any, source: str, lattice: Optional[IntegralLattice] = None,
                   field: str = "") -> LatticeIsometry:
    prefix = f"{field}." if field else ""
    if isinstance(obj, list) and lattice is not None:
        return make_isometry(lattice, parse_matrix(obj, source, field or "matrix"))
    data = _object(obj, source, field or None)
    lat = lattice
    if "lattice" in data:
        lat = parse_lattice(data["lattice"], source, f"{prefix}lattice")
    if lat is None:
        raise ParseError("missing required field", source=source, field=f"{prefix}lattice")
    matrix = parse_matrix(_require(data, "matrix", source), source, f"{prefix}matrix")
    return make_isometry(lat, matrix, label=data.get("label"))


def load_isometry(path: str, lattice: Optional[IntegralLattice] = None) -> LatticeIsometry:
    return parse_isometry(load_json(path), path, lattice)


def parse_cone(obj: Any, source: str, dim: Optional[int] = None, field: str = "cone") -> RationalCone:
    data = _object(obj, source, field)
    declared = data.get("dim", dim)
    if not isinstance(declared, int) or isinstance(declared, bool) or declared < 1:
        raise ParseError("expected a positive integer dimension", source=source, field=f"{field}.dim")
    if dim is not None and declared != dim:
        raise ParseError(f"dimension {declared} does not match lattice rank {dim}",
                         source=source, field=f"{field}.dim")
    lineality = data.get("allow_lineality", False)
    if not isinstance(lineality, bool):
        raise ParseError("expected true or false", source=source, field=f"{field}.allow_lineality")
    if "rays" in data:
        return cone_from_rays(declared, parse_matrix(data["rays"], source, f"{field}.rays"),
                              allow_lineality=lineality)
    if "halfspaces" in data:
        return cone_from_halfspaces(declared,
                                    parse_matrix(data["halfspaces"], source, f"{field}.halfspaces"),
                                    allow_lineality=lineality)
    raise ParseError("expected 'rays' or 'halfspaces'", source=source, field=field)


def load_cone(path: str) -> RationalCone:
    return parse_cone(load_json(path), path)


def _parse_samples(obj: Any, source: str, dim: int) -> Tuple[Tuple[Tuple[Rational, ...], ...],
                                                             Optional[Vector]]:
    data = _object(obj, source, "samples")
    reference = None
    if "positive_cone" in data:
        reference = parse_int_vector(data["positive_cone"], source, "samples.positive_cone")
        if len(reference) != dim:
            raise ParseError(f"expected length {dim}", source=source, field="samples.positive_cone")
    points: List[Tuple[Rational, ...]] = []
    if "box" in data:
        box = data["box"]
        if not isinstance(box, int) or isinstance(box, bool) or box < 1:
            raise ParseError("expected a positive integer", source=source, field="samples.box")
        points.extend(sample_grid(dim, box))
    for i, p in enumerate(data.get("points", [])):
        v = parse_rational_vector(p, source, f"samples.points[{i}]")
        if len(v) != dim:
            raise ParseError(f"expected length {dim}", source=source, field=f"samples.points[{i}]")
        points.append(v)
    if not points:
        raise ParseError("no samples: give 'box' or 'points'", source=source, field="samples")
    return tuple(points), reference


def parse_scenario(obj: Any, source: str) -> Scenario:
    data = _object(obj, source)
    lat = parse_lattice(_require(data, "lattice", source), source)
    gens_raw = _require(data, "generators", source)
    if not isinstance(gens_raw, list) or not gens_raw:
        raise ParseError("expected a non-empty list of matrices", source=source, field="generators")
    gens = tuple(parse_isometry(g, source, lat, f"generators[{i}]") for i, g in enumerate(gens_raw))
    kernel = tuple(parse_isometry(k, source, lat, f"kernel[{i}]")
                   for i, k in enumerate(data.get("kernel", [])))
    deck = parse_isometry(data["deck"], source, lat, "deck") if "deck" in data else None
    length = data.get("word_length", 1)
    if not isinstance(length, int) or isinstance(length, bool) or length < 0:
        raise ParseError("expected a non-negative integer", source=source, field="word_length")
    cone = parse_cone(_require(data, "cone", source), source, dim=lat.rank)
    samples, reference = _parse_samples(_require(data, "samples", source), source, lat.rank)
    return Scenario(
        name=str(data.get("name", os.path.splitext(os.path.basename(source))[0])),
        lattice=lat,
        generators=gens,
        word_length=length,
        cone=cone,
        samples=samples,
        kernel=kernel,
        reference=reference,
        pushforward=bool(data.get("pushforward", False)),
        deck=deck,
    )


def load_scenario(path: str) -> Scenario:
    return parse_scenario(load_json(path), path)
