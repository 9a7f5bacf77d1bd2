from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape

from . import fixtures, report
from .config import DEFAULT_ORDER_BOUND, FORMATS, default_format, get_family, load_families
from .cone import (
    audit_round_trip,
    cone_from_halfspaces,
    cone_from_rays,
    contains,
    intersect,
    linear_image,
    linear_preimage,
)
from .constraints import (
    admissible_indices,
    candidate_orders,
    cone_conjecture_status,
    holds_projection,
    lefschetz_number,
    period_domain_dimension,
    status_table,
    vanishing_orders,
)
from .errors import (
    DefectOutsideKernel,
    DimensionMismatch,
    EmptyInput,
    EnriquesKitError,
    NotAnIsometry,
    NotPointed,
    NotUnimodular,
    OrderExceedsBound,
    ParseError,
    UnknownFamily,
    UnknownName,
    UsageError,
)
from .isometry import (
    acts_trivially_on,
    analyze,
    commutator_defect,
    commutes_on,
    invariant_sublattice,
    period_domain_for,
    sublattice,
)
from .lattice import direct_sum, parse_lattice_expression, twist
from .loader import load_cone, load_isometry, load_lattice, load_scenario
from .transport import (
    Scenario,
    TilingVerdict,
    descends,
    enlarge_domain,
    restrict_domain,
    run_scenario,
)

console = report.console
err_console = Console(stderr=True)

Handler = Callable[[argparse.Namespace, str], int]

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NEGATIVE = 2


def _hint(title: str, detail: str, tips: List[str]) -> int:
    err_console.print(title, style="bold red")
    err_console.print(escape(f"   {detail}"), style="red")
    err_console.print("💡 Try:", style="cyan")
    for tip in tips:
        err_console.print(f"   • {tip}", style="cyan")
    return EXIT_ERROR


def handle_error(e: Exception) -> int:
    """Short, user-facing messages for every failure; the exit status is always 1."""
    detail = str(e)
    if len(detail) > 160:
        detail = detail[:157] + "..."

    if isinstance(e, ParseError):
        return _hint("📄 Input Error", detail, [
            "Check the JSON syntax of the file",
            "Lattices are an expression string or {\"gram\": [[...]]}",
            "Cones need \"rays\" or \"halfspaces\"",
        ])
    if isinstance(e, UsageError):
        return _hint("⚠️ Usage Error", detail, ["Run with -h for help"])
    if isinstance(e, OrderExceedsBound):
        return _hint("♾️ Order Not Found", detail, [
            "Raise the search bound with --bound",
            "Hyperbolic isometries such as Pell matrices have infinite order",
        ])
    if isinstance(e, (UnknownFamily, UnknownName)):
        return _hint("🔎 Unknown Name", detail, [
            "Families: k3n, kumn, og6, og10",
            f"Fixtures: {', '.join(fixtures.NAMES)}",
            "Lattice expressions use U, E8, twist(e,k), sum(e1,e2,...), rank1(k)",
        ])
    if isinstance(e, (NotAnIsometry, NotUnimodular, DimensionMismatch)):
        return _hint("📐 Invalid Lattice Data", detail, [
            "Matrices act on column vectors in the lattice basis",
            "An isometry must satisfy M^T G M = G",
        ])
    if isinstance(e, (NotPointed, EmptyInput)):
        return _hint("🔺 Cone Error", detail, [
            "Pass --allow-lineality for cones containing a line",
            "In cone files, set \"allow_lineality\": true",
            "Give at least one ray or halfspace",
        ])
    if isinstance(e, DefectOutsideKernel):
        return _hint("🧩 Kernel Too Small", detail, ["Add the reported defect to the kernel set"])
    if isinstance(e, EnriquesKitError):
        return _hint("❌ Operation Failed", detail, ["Check command syntax and arguments"])
    return _hint("❌ Unexpected Error", f"{type(e).__name__}: {detail}",
                 ["Run again with -v for debug logging"])


class EnriquesHelpFormatter(argparse.HelpFormatter):

    def __init__(self, prog: str):
        super().__init__(prog, max_help_position=30, width=120)

    def format_help(self):
        help_text = f"""Usage:
  {self._prog} <group> <command> [flags]

Flags (accepted by every command):
  --format table|json     output format (default: $ENRIQUES_KIT_FORMAT or table)
  --seed int              seed for randomized audits (default: 0)
  -j, --jobs int          worker threads for tiling audits (default: sequential)
  -v, --verbose           debug logging

LATTICE:
  lattice info            rank, signature, determinant of an expression, file or fixture
  lattice sum             orthogonal direct sum of expressions
  lattice twist           scale the form of an expression by k

ISOMETRY:
  isometry analyze        order, cyclotomic profile, invariant/coinvariant sublattices
  isometry commutator     the defect phi g^-1 phi^-1 g of two isometries

ENRIQUES:
  enriques indices        admissible indices and cone-conjecture statuses of a family
  enriques lefschetz      exact Lefschetz number 1 + l + ... + l^n in Z[zeta_d]
  enriques status         status of one index d
  enriques period-dim     dimension of the period domain
  enriques orders         indices d with vanishing Lefschetz number
  enriques candidates     indices allowed by both the totient and Lefschetz filters

CONE:
  cone from-rays          cone spanned by rays
  cone from-halfspaces    cone cut out by halfspaces
  cone intersect          intersection of two cone files
  cone image              image (or --preimage) under an integer matrix
  cone contains           Outside / Boundary / Interior classification of a vector
  cone audit              randomized double-description round-trip audit

TRANSPORT:
  transport restrict      restrict a cone to a subspace, in subspace coordinates
  transport enlarge       union of a domain with its coset translates
  transport verify        sampled tiling audit of a scenario
  transport descends      commutation modulo a finite kernel

Vectors are comma separated (1/2,-3), matrix rows are ";" separated (3,4;2,3).
Put vectors starting with "-" after "--", e.g. cone contains q.json -- -1,2

Exit status: 0 success, 1 usage/input error, 2 negative verdict.

Examples:
  {self._prog} enriques indices --family k3n
  {self._prog} isometry analyze --fixture kummer-psi --format json
  {self._prog} lattice info --fixture enriques-involution-invariant --n 3
  {self._prog} cone contains quadrant.json 1/2,1
  {self._prog} transport verify --fixture pell-tiling -j 8
"""
        return help_text


def _configure_logging(verbose: bool) -> None:
    logger = logging.getLogger("enriques_kit")
    logger.handlers.clear()
    if verbose:
        logger.addHandler(RichHandler(console=err_console, show_path=False))
        logger.setLevel(logging.DEBUG)
    else:
        logger.setLevel(logging.WARNING)


def _rational(text: str) -> object:
    value = Fraction(text.strip())
    return value.numerator if value.denominator == 1 else value


def parse_vector(text: str) -> Tuple:
    """'1,0' or '1/2,-3'."""
    try:
        return tuple(_rational(x) for x in text.split(",") if x.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a vector of rationals: {text!r}") from None


def parse_int_vector(text: str) -> Tuple[int, ...]:
    v = parse_vector(text)
    if any(not isinstance(x, int) for x in v):
        raise UsageError(f"expected integer entries: {text!r}")
    return v


def parse_matrix(text: str) -> Tuple[Tuple[int, ...], ...]:
    """Rows separated by ';', entries by ','."""
    return tuple(parse_int_vector(row) for row in text.split(";") if row.strip())


# --- lattice -------------------------------------------------------------------------


def _lattice_from_args(args: argparse.Namespace):
    if args.fixture:
        fixtures.check_name(args.fixture, "enriques-involution-invariant")
        return fixtures.involution_invariant(args.n)
    if args.file:
        return load_lattice(args.file)
    return parse_lattice_expression(args.expr)


def cmd_lattice_info(args: argparse.Namespace, fmt: str) -> int:
    payload = report.lattice_payload(_lattice_from_args(args))
    report.render(fmt, payload, report.lattice_table(payload))
    return EXIT_OK


def cmd_lattice_sum(args: argparse.Namespace, fmt: str) -> int:
    lat = direct_sum(*(parse_lattice_expression(e) for e in args.exprs))
    payload = report.lattice_payload(lat)
    report.render(fmt, payload, report.lattice_table(payload))
    return EXIT_OK


def cmd_lattice_twist(args: argparse.Namespace, fmt: str) -> int:
    lat = twist(parse_lattice_expression(args.expr), args.k)
    payload = report.lattice_payload(lat)
    report.render(fmt, payload, report.lattice_table(payload))
    return EXIT_OK


# --- isometry ------------------------------------------------------------------------


def cmd_isometry_analyze(args: argparse.Namespace, fmt: str) -> int:
    if args.fixture:
        fixtures.check_name(args.fixture, "kummer-psi")
        iso = fixtures.kummer_psi()
    elif args.file:
        iso = load_isometry(args.file)
    else:
        raise UsageError("isometry analyze needs --fixture or --file")
    analysis = analyze(iso, args.bound)
    payload = report.analysis_payload(iso, analysis)
    if args.period_d is not None:
        payload["period_domain_dimension"] = period_domain_for(iso, args.period_d, args.bound)
    report.render(fmt, payload, report.analysis_table(payload))
    return EXIT_OK if analysis.decomposition.direct else EXIT_NEGATIVE


def cmd_isometry_commutator(args: argparse.Namespace, fmt: str) -> int:
    phi = load_isometry(args.phi)
    g = load_isometry(args.g, lattice=phi.lattice)
    payload = report.defect_payload(commutator_defect(phi, g))
    payload["commute_on_invariant"] = commutes_on(phi, g, invariant_sublattice(g))
    table = report.kv_table("Commutator defect", [
        ("defect", report.matrix_text(payload["defect"])),
        ("commute", payload["commute"]),
        ("commute on invariant part of g", payload["commute_on_invariant"]),
    ])
    report.render(fmt, payload, table)
    return EXIT_OK


# --- enriques ------------------------------------------------------------------------


def _family(args: argparse.Namespace):
    return get_family(args.family, load_families(args.families))


def cmd_enriques_indices(args: argparse.Namespace, fmt: str) -> int:
    fam = _family(args)
    rows = status_table(fam, n=args.n)
    payload = report.indices_payload(fam.label, fam.key, fam.b2, admissible_indices(fam.b2),
                                     rows, holds_projection(fam))
    report.render(fmt, payload, report.indices_table(payload))
    if fmt != "json":
        console.print(f"holds: {payload['holds']}", style="green")
        if payload["index_four"]:
            console.print(f"index-four example: {payload['index_four']}", style="green")
        for status, text in payload["citations"].items():
            console.print(escape(f"  {status}: “{text}”"), style="dim")
    return EXIT_OK


def cmd_enriques_lefschetz(args: argparse.Namespace, fmt: str) -> int:
    value = lefschetz_number(args.n, args.d, args.k)
    payload = report.lefschetz_payload(args.n, args.d, args.k, value)
    table = report.kv_table(f"L(g) for n={args.n}, λ=ζ_{args.d}^{args.k}", [
        ("value", payload["value"]),
        ("vanishes", payload["is_zero"]),
        ("d divides n+1", (args.n + 1) % args.d == 0),
    ])
    report.render(fmt, payload, table)
    return EXIT_OK


def _pic_action_trivial(args: argparse.Namespace) -> bool:
    if args.isometry is None:
        if args.pic is not None:
            raise UsageError("--pic needs --isometry")
        return args.pic_trivial
    if args.pic is None:
        raise UsageError("--isometry needs --pic, a basis of the Picard lattice")
    iso = load_isometry(args.isometry)
    return acts_trivially_on(iso, sublattice(iso.lattice, parse_matrix(args.pic)))


def cmd_enriques_status(args: argparse.Namespace, fmt: str) -> int:
    trivial = _pic_action_trivial(args)
    row = cone_conjecture_status(_family(args), args.d, n=args.n, pic_action_trivial=trivial)
    payload = row.as_dict()
    payload["pic_action_trivial"] = trivial
    table = report.kv_table(f"{payload['family']}, d = {payload['d']}", [
        ("totient", payload["totient"]),
        ("status", payload["status"]),
        ("citation", payload["citation"]),
    ])
    report.render(fmt, payload, table)
    return EXIT_OK


def cmd_enriques_period_dim(args: argparse.Namespace, fmt: str) -> int:
    dim = period_domain_dimension(args.dim, args.minus_one)
    payload = {"eigenspace_dimension": args.dim, "lambda_is_minus_one": args.minus_one,
               "period_domain_dimension": dim}
    report.render(fmt, payload, report.kv_table("Period domain", list(payload.items())))
    return EXIT_OK


def cmd_enriques_orders(args: argparse.Namespace, fmt: str) -> int:
    payload = {"n": args.n, "vanishing_orders": vanishing_orders(args.n)}
    report.render(fmt, payload, report.kv_table("Vanishing Lefschetz orders", list(payload.items())))
    return EXIT_OK


def cmd_enriques_candidates(args: argparse.Namespace, fmt: str) -> int:
    fam = _family(args)
    n = args.n if args.n is not None else fam.half_dimension
    payload = {"family": fam.key, "n": n, "candidates": candidate_orders(fam, args.n),
               "kernel_note": fam.kernel_note}
    report.render(fmt, payload, report.kv_table(f"Candidate indices for {fam.label}",
                                                list(payload.items())))
    return EXIT_OK


# --- cone ----------------------------------------------------------------------------


def _emit_cone(fmt: str, cone, title: str = "Cone") -> None:
    report.render(fmt, cone.as_dict(), report.cone_table(cone, title))


def cmd_cone_from_rays(args: argparse.Namespace, fmt: str) -> int:
    cone = cone_from_rays(args.dim, [parse_int_vector(v) for v in args.vectors],
                          allow_lineality=args.allow_lineality)
    _emit_cone(fmt, cone)
    return EXIT_OK


def cmd_cone_from_halfspaces(args: argparse.Namespace, fmt: str) -> int:
    cone = cone_from_halfspaces(args.dim, [parse_int_vector(v) for v in args.vectors],
                                allow_lineality=args.allow_lineality)
    _emit_cone(fmt, cone)
    return EXIT_OK


def cmd_cone_intersect(args: argparse.Namespace, fmt: str) -> int:
    cone = intersect(load_cone(args.a), load_cone(args.b))
    _emit_cone(fmt, cone, "Intersection")
    return EXIT_OK


def cmd_cone_image(args: argparse.Namespace, fmt: str) -> int:
    cone = load_cone(args.file)
    m = parse_matrix(args.matrix)
    if args.preimage:
        _emit_cone(fmt, linear_preimage(cone, m), "Preimage")
    else:
        _emit_cone(fmt, linear_image(cone, m), "Image")
    return EXIT_OK


def cmd_cone_contains(args: argparse.Namespace, fmt: str) -> int:
    v = parse_vector(args.vector)
    result = contains(load_cone(args.file), v)
    payload = {"vector": [str(x) for x in v], "containment": result.value}
    report.render(fmt, payload, report.kv_table("Containment", list(payload.items())))
    return EXIT_OK


def cmd_cone_audit(args: argparse.Namespace, fmt: str) -> int:
    result = audit_round_trip(count=args.count, seed=args.seed, oracle_count=args.oracle_count)
    payload = {
        "seed": args.seed,
        "checked": result.checked,
        "round_trip_failures": result.round_trip_failures,
        "oracle_checked": result.oracle_checked,
        "oracle_failures": result.oracle_failures,
        "failing_cases": list(result.failing_cases),
    }
    report.render(fmt, payload, report.kv_table("Double-description audit", list(payload.items())))
    return EXIT_OK if result.ok else EXIT_NEGATIVE


# --- transport -----------------------------------------------------------------------


def _scenario(args: argparse.Namespace) -> Scenario:
    if args.fixture:
        fixtures.check_name(args.fixture, "pell-tiling")
        return fixtures.pell_tiling()
    if args.scenario:
        return load_scenario(args.scenario)
    raise UsageError("needs --scenario or --fixture")


def cmd_transport_restrict(args: argparse.Namespace, fmt: str) -> int:
    cone = restrict_domain(load_cone(args.file), parse_matrix(args.basis))
    _emit_cone(fmt, cone, "Restricted domain")
    return EXIT_OK


def cmd_transport_enlarge(args: argparse.Namespace, fmt: str) -> int:
    sc = _scenario(args)
    pushforward = args.pushforward or sc.pushforward
    reps = sc.coset_representatives()
    union = enlarge_domain(sc.cone, reps, pullback=not pushforward)
    payload = report.union_payload(union.pieces)
    payload["representatives"] = [[list(row) for row in r.matrix] for r in reps]
    if fmt == "json":
        report.emit_json(payload)
    else:
        for i, piece in enumerate(union.pieces):
            console.print(report.cone_table(piece, f"Piece {i}"))
    return EXIT_OK


def cmd_transport_verify(args: argparse.Namespace, fmt: str) -> int:
    sc = _scenario(args)
    result = run_scenario(sc, jobs=args.jobs)
    payload = report.tiling_payload(sc.name, len(sc.group().elements), result)
    report.render(fmt, payload, report.tiling_table(payload))
    return EXIT_OK if result.verdict is TilingVerdict.CONSISTENT else EXIT_NEGATIVE


def cmd_transport_descends(args: argparse.Namespace, fmt: str) -> int:
    tau = load_isometry(args.tau)
    g = load_isometry(args.g, lattice=tau.lattice)
    kernel = [load_isometry(k, lattice=tau.lattice) for k in args.kernel]
    ok = descends(tau, g, kernel)
    payload = {"descends": ok, "kernel_size": len(kernel) + 1,
               "defect": [list(r) for r in commutator_defect(tau, g).matrix]}
    report.render(fmt, payload, report.kv_table("Descent", [
        ("descends", ok),
        ("defect", report.matrix_text(payload["defect"])),
    ]))
    return EXIT_OK if ok else EXIT_NEGATIVE


# --- parser --------------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--format", choices=FORMATS, default=None)
    parent.add_argument("--seed", type=int, default=0)
    parent.add_argument("-j", "--jobs", type=int, default=None)
    parent.add_argument("-v", "--verbose", action="store_true")
    return parent


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    p = argparse.ArgumentParser(
        prog="enriques-kit",
        description="Lattice, cyclotomic and cone computations for Enriques manifolds",
        formatter_class=EnriquesHelpFormatter,
    )
    groups = p.add_subparsers(dest="group", required=True)

    def leaf(sub, name: str, func: Handler, help_text: str,
             extra: Optional[List[argparse.ArgumentParser]] = None) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, parents=[common] + (extra or []), help=help_text,
                            description=help_text)
        sp.set_defaults(func=func)
        return sp

    # lattice
    lat = groups.add_parser("lattice", help="integral lattices").add_subparsers(dest="cmd", required=True)
    sp = leaf(lat, "info", cmd_lattice_info, "rank, signature and determinant of a lattice")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--expr", help="constructor expression, e.g. 'sum(U,E8,rank1(-2))'")
    src.add_argument("--file", help="lattice JSON file")
    src.add_argument("--fixture", help="enriques-involution-invariant")
    sp.add_argument("--n", type=int, default=None, help="half-dimension for the fixture")
    sp = leaf(lat, "sum", cmd_lattice_sum, "orthogonal direct sum")
    sp.add_argument("exprs", nargs="+")
    sp = leaf(lat, "twist", cmd_lattice_twist, "scale the form by k")
    sp.add_argument("expr")
    sp.add_argument("k", type=int)

    # isometry
    iso = groups.add_parser("isometry", help="lattice isometries").add_subparsers(dest="cmd", required=True)
    sp = leaf(iso, "analyze", cmd_isometry_analyze, "order, cyclotomic profile and sublattices")
    sp.add_argument("--fixture", help="kummer-psi")
    sp.add_argument("--file", help="isometry JSON file")
    sp.add_argument("--bound", type=int, default=DEFAULT_ORDER_BOUND, help="order search bound")
    sp.add_argument("--period-d", type=int, default=None,
                    help="also report the period domain dimension for a primitive d-th root")
    sp = leaf(iso, "commutator", cmd_isometry_commutator, "phi g^-1 phi^-1 g")
    sp.add_argument("phi")
    sp.add_argument("g")

    # enriques
    enr = groups.add_parser("enriques", help="index constraints").add_subparsers(dest="cmd", required=True)
    fam_parent = argparse.ArgumentParser(add_help=False)
    fam_parent.add_argument("--family", required=True, help="k3n, kumn, og6 or og10")
    fam_parent.add_argument("--families", default=None, help="JSON file overriding family data")
    sp = leaf(enr, "indices", cmd_enriques_indices, "admissible indices with statuses",
              [fam_parent])
    sp.add_argument("--n", type=int, default=None, help="half-dimension, enables the Lefschetz filter")
    sp = leaf(enr, "lefschetz", cmd_enriques_lefschetz, "exact Lefschetz number")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--k", type=int, default=1)
    sp = leaf(enr, "status", cmd_enriques_status, "cone-conjecture status of one index",
              [fam_parent])
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--pic-trivial", action="store_true",
                    help="the group acts as the identity on Pic")
    sp.add_argument("--isometry", default=None, help="isometry file of the group generator")
    sp.add_argument("--pic", default=None, help="Picard lattice basis rows, e.g. \"1,0,0;0,1,0\"")
    sp = leaf(enr, "period-dim", cmd_enriques_period_dim, "period domain dimension")
    sp.add_argument("--dim", type=int, required=True, help="eigenspace dimension dim T(λ)")
    sp.add_argument("--minus-one", action="store_true", help="λ = -1")
    sp = leaf(enr, "orders", cmd_enriques_orders, "orders with vanishing Lefschetz number")
    sp.add_argument("--n", type=int, required=True)
    sp = leaf(enr, "candidates", cmd_enriques_candidates, "totient and Lefschetz filtered indices",
              [fam_parent])
    sp.add_argument("--n", type=int, default=None)

    # cone
    cone = groups.add_parser("cone", help="rational polyhedral cones").add_subparsers(dest="cmd", required=True)
    for name, func in (("from-rays", cmd_cone_from_rays), ("from-halfspaces", cmd_cone_from_halfspaces)):
        sp = leaf(cone, name, func, f"cone {name.replace('-', ' ')}")
        sp.add_argument("--dim", type=int, required=True)
        sp.add_argument("vectors", nargs="+", help="comma separated integers, e.g. 1,0")
        sp.add_argument("--allow-lineality", action="store_true")
    sp = leaf(cone, "intersect", cmd_cone_intersect, "intersection of two cones")
    sp.add_argument("a")
    sp.add_argument("b")
    sp = leaf(cone, "image", cmd_cone_image, "linear image or preimage")
    sp.add_argument("file")
    sp.add_argument("--matrix", required=True, help="rows separated by ';', e.g. '3,4;2,3'")
    sp.add_argument("--preimage", action="store_true")
    sp = leaf(cone, "contains", cmd_cone_contains, "classify a rational vector")
    sp.add_argument("file")
    sp.add_argument("vector", help="e.g. 1/2,1")
    sp = leaf(cone, "audit", cmd_cone_audit, "double-description round-trip audit")
    sp.add_argument("--count", type=int, default=500)
    sp.add_argument("--oracle-count", type=int, default=100)

    # transport
    tr = groups.add_parser("transport", help="domain transport").add_subparsers(dest="cmd", required=True)
    sp = leaf(tr, "restrict", cmd_transport_restrict, "restrict a cone to a subspace")
    sp.add_argument("file")
    sp.add_argument("--basis", required=True, help="rows separated by ';'")
    for name, func in (("enlarge", cmd_transport_enlarge), ("verify", cmd_transport_verify)):
        sp = leaf(tr, name, func, f"{name} a scenario domain")
        sp.add_argument("--scenario", help="scenario JSON file")
        sp.add_argument("--fixture", help="pell-tiling")
        if name == "enlarge":
            sp.add_argument("--pushforward", action="store_true",
                            help="use g*(D) instead of the pullback (g^-1)*(D)")
    sp = leaf(tr, "descends", cmd_transport_descends, "commutation modulo a finite kernel")
    sp.add_argument("tau")
    sp.add_argument("g")
    sp.add_argument("--kernel", action="append", default=[], help="isometry file, repeatable")

    return p


def main(argv: Optional[List[str]] = None) -> int:
    if argv is None:
        argv = sys.argv[1:]

    if len(argv) == 0 or (len(argv) == 1 and argv[0] in ("-h", "--help", "-help")):
        print(EnriquesHelpFormatter("enriques-kit").format_help())
        return EXIT_OK

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        if e.code == 0:
            return EXIT_OK
        err_console.print("\n⚠️ Invalid Command Arguments", style="bold yellow")
        err_console.print("💡 Common issues:", style="cyan")
        err_console.print("   • Commands come in two words: enriques-kit cone intersect a.json b.json",
                          style="cyan")
        err_console.print("   • Vectors are comma separated, matrix rows ';' separated", style="cyan")
        err_console.print("   • Use enriques-kit -h for help", style="cyan")
        return EXIT_ERROR

    _configure_logging(args.verbose)
    fmt = args.format or default_format()
    try:
        return args.func(args, fmt)
    except KeyboardInterrupt:
        err_console.print("\n🛑 Operation cancelled by user", style="yellow")
        return 130
    except Exception as e:
        return handle_error(e)
