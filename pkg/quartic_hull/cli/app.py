"""Command-line interface for Quartic-Hull."""

import argparse
import json
import logging
import os
import sys
from typing import List, Optional, Tuple

from quartic_hull import __version__
from quartic_hull.domain.complex import build_domain, verify_closed
from quartic_hull.exceptions import QuarticHullError
from quartic_hull.field.core import FieldContext
from quartic_hull.field.element import FieldElement, format_rational
from quartic_hull.geometry.facet import (
    Facet,
    SupportFunctional,
    facet_polytope,
    find_seed,
    to_off,
    verify_support,
)
from quartic_hull.lattice.order import IntegralLattice, load_lattice_file, preset_lattice
from quartic_hull.units.group import discover_unit_group
from quartic_hull.utils.config import config
from quartic_hull.workflow.presets import get_preset
from quartic_hull.workflow.report import Report, run_all, run_preset

logger = logging.getLogger("quartic_hull")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2


def _coords(v: FieldElement) -> List[str]:
    return [format_rational(c) for c in v.coords]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quartic-hull",
        description="Klein polyhedra and unit-group fundamental domains of quartic Galois fields",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--log-level", default=None, help="Logging level (default: configuration log_level)")
    common.add_argument("--config", default=None, help="JSON or YAML configuration file")
    common.add_argument("--precision", type=int, default=None, help="Numeric precision in bits")
    common.add_argument("--json", action="store_true", help="Print machine-readable JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    def field_options(p: argparse.ArgumentParser, lattice: bool = True, seed: bool = False) -> None:
        p.add_argument("--preset", default=None, help="Take field, lattice and seed from a preset")
        p.add_argument("--field", default=None, help="The field as '2a,b' for x^4 - 2a x^2 + b")
        if lattice:
            p.add_argument("--lattice", default=None, help="Lattice file or preset name (default: Z^4)")
        if seed:
            p.add_argument("--seed", default=None, help="Support functional 'c3,c2,c1,c0;c'")

    classify = sub.add_parser("classify", parents=[common], help="Classify x^4 - 2a x^2 + b")
    field_options(classify, lattice=False)

    facet = sub.add_parser("facet", parents=[common], help="Certify a support hyperplane and print its facet")
    field_options(facet, seed=True)
    facet.add_argument("--off", action="store_true", help="Print the facet as OFF")

    units = sub.add_parser("units", parents=[common], help="Search units and build the totally positive unit group")
    field_options(units)
    units.add_argument("--radius", type=float, default=None, help="Log-embedding search radius")

    domain = sub.add_parser("domain", parents=[common], help="Build a fundamental domain from a seed facet")
    field_options(domain, seed=True)
    domain.add_argument("--max-cells", type=int, default=None, help="Cell cap")

    verify = sub.add_parser("verify", parents=[common], help="Run a preset (or 'all') against its reference data")
    verify.add_argument("name", help="Preset name or 'all'")
    verify.add_argument("--max-cells", type=int, default=None, help="Cell cap")

    export = sub.add_parser("export", parents=[common], help="Export a fundamental domain")
    field_options(export, seed=True)
    export.add_argument("--format", choices=["json", "off"], default="json", help="Output format")
    export.add_argument("--output", default=None, help="Output file (default: stdout)")
    export.add_argument("--max-cells", type=int, default=None, help="Cell cap")
    return parser


def resolve_lattice(value: Optional[str]) -> IntegralLattice:
    """A lattice file path or a preset name; Z^4 when omitted."""
    if value is None:
        return IntegralLattice.standard()
    if os.path.exists(value):
        return load_lattice_file(value)
    return preset_lattice(value)


def resolve_inputs(args: argparse.Namespace) -> Tuple[FieldContext, IntegralLattice, Optional[SupportFunctional]]:
    """Field, lattice and seed from --preset, overridden by explicit flags."""
    field_text = getattr(args, "field", None)
    lattice_name = getattr(args, "lattice", None)
    seed_text = getattr(args, "seed", None)
    if args.preset:
        preset = get_preset(args.preset)
        field_text = field_text or f"{preset.params.two_a},{preset.params.b}"
        lattice_name = lattice_name or preset.lattice
        seed_text = seed_text or preset.seed
    if field_text is None:
        raise ValueError("either --field or --preset is required")
    field = FieldContext.from_string(field_text, args.precision)
    seed = SupportFunctional.parse(seed_text) if seed_text else None
    return field, resolve_lattice(lattice_name), seed


def _seed_facet(field: FieldContext, lattice: IntegralLattice, seed: Optional[SupportFunctional]) -> Facet:
    if seed is None:
        logger.info("No seed given; searching for one")
        return find_seed(lattice, field)
    return facet_polytope(seed.phi, seed.level, lattice, field)


def cmd_classify(args: argparse.Namespace) -> int:
    field, _, _ = resolve_inputs(args)
    cls = field.classification
    payload = {
        "field": str(field.params),
        "classification": cls.tag.value,
        "c": format_rational(cls.c) if cls.c is not None else None,
        "galois_group": cls.galois_group,
        "generators": [str(g) for g in field.automorphisms] if cls.is_galois else [],
    }
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(f"{payload['field']}: {cls}")
        for g in payload["generators"]:
            print(f"  {g}")
    return EXIT_OK


def cmd_facet(args: argparse.Namespace) -> int:
    field, lattice, seed = resolve_inputs(args)
    if seed is None:
        raise ValueError("facet needs --seed or a preset with a seed")
    cert = verify_support(seed.phi, seed.level, lattice, field)
    payload = {
        "functional": str(cert.functional),
        "status": cert.status.value,
        "message": cert.message,
        "dual": _coords(cert.dual) if cert.dual is not None else None,
        "witness": _coords(cert.witness) if cert.witness is not None else None,
    }
    facet = None
    if cert.is_valid:
        facet = facet_polytope(seed.phi, seed.level, lattice, field)
        payload.update(
            points=[_coords(p) for p in facet.points],
            vertices=[_coords(v) for v in facet.vertices],
            non_vertices=[_coords(v) for v in facet.non_vertices],
            faces=[list(f) for f in facet.polytope.faces],
            face_vector=list(facet.polytope.face_vector),
        )
    if args.off and facet is not None:
        print(to_off(facet), end="")
    elif args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(f"{payload['functional']}: {payload['status']} {payload['message']}".rstrip())
        if facet is not None:
            print(f"  {len(facet.points)} points, face vector {facet.polytope.face_vector}")
            for v in facet.vertices:
                print(f"  vertex {v}  N = {format_rational(field.norm(v))}")
            for v in facet.non_vertices:
                print(f"  point  {v}  N = {format_rational(field.norm(v))}")
    return EXIT_OK if cert.is_valid else EXIT_FAILED


def cmd_units(args: argparse.Namespace) -> int:
    field, lattice, _ = resolve_inputs(args)
    group = discover_unit_group(lattice, field, args.radius)
    payload = {
        "generators": [_coords(g) for g in group.generators],
        "logs": [[float(x) for x in lv.values] for lv in group.logs],
    }
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for g, lv in zip(group.generators, payload["logs"]):
            print(f"{g}  log = ({', '.join(f'{x:.6f}' for x in lv)})")
    return EXIT_OK


def _build(args: argparse.Namespace):
    field, lattice, seed = resolve_inputs(args)
    group = discover_unit_group(lattice, field)
    complex_ = build_domain(field, lattice, group, _seed_facet(field, lattice, seed), args.max_cells)
    return field, complex_


def cmd_domain(args: argparse.Namespace) -> int:
    field, complex_ = _build(args)
    closure = verify_closed(complex_)
    if args.json:
        print(complex_.to_json(field), end="")
    else:
        for i, cell in enumerate(complex_.cells):
            print(f"cell {i}: {cell.functional} face vector {cell.polytope.face_vector}")
        for ident in complex_.proper_identifications():
            print(
                f"  ({ident.cell_a},{ident.face_a}) -> ({ident.cell_b},{ident.face_b}) by {ident.unit}"
            )
        print(
            f"cells={closure.cells} identifications={closure.identifications} gluings={closure.gluings} "
            f"closed={closure.closed} chi={closure.euler_characteristic} pseudo_manifold={closure.pseudo_manifold}"
        )
    return EXIT_OK if closure.closed and closure.euler_characteristic == 0 else EXIT_FAILED


def cmd_export(args: argparse.Namespace) -> int:
    field, complex_ = _build(args)
    if args.format == "json":
        text = complex_.to_json(field)
    else:
        text = "".join(to_off(cell) for cell in complex_.cells)
    if args.output:
        with open(args.output, "w") as f:
            f.write(text)
        logger.info(f"Wrote {args.format} export to {args.output}")
    else:
        print(text, end="")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    if args.name.lower() == "all":
        reports: List[Report] = run_all(args.precision, args.max_cells)
    else:
        reports = [run_preset(args.name, args.precision, args.max_cells)]
    if args.json:
        print(json.dumps([json.loads(r.model_dump_json()) for r in reports], indent=2))
    else:
        for report in reports:
            print(report.to_table())
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


COMMANDS = {
    "classify": cmd_classify,
    "facet": cmd_facet,
    "units": cmd_units,
    "domain": cmd_domain,
    "verify": cmd_verify,
    "export": cmd_export,
}


def configure_logging(level: Optional[str] = None) -> None:
    """Send log records to stderr at ``level``, falling back to the configured level."""
    name = (level or config.settings().log_level).upper()
    logging.basicConfig(
        level=getattr(logging, name, logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point of the ``quartic-hull`` console script."""
    args = build_parser().parse_args(argv)
    if args.config:
        config.load_from_file(args.config)
    if args.precision is not None:
        config.set("precision", args.precision)
    if getattr(args, "max_cells", None) is not None:
        config.set("max_cells", args.max_cells)
    configure_logging(args.log_level)
    try:
        return COMMANDS[args.command](args)
    except (QuarticHullError, ValueError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
