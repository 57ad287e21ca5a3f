"""Command-line interface.

Commands
    solve    maximal contact number of n spheres on a lattice
    bounds   proven upper bounds on touching pairs for a given n
    octa     the k-th octahedral construction and its contact count
    analyze  bond count of an XYZ structure against the proven bounds

With --json a single JSON object goes to stdout and any human-readable text
to stderr, so output is safe to pipe.  Identical flags produce byte-identical
JSON.  Exit codes: 0 success, 2 usage, 3 domain or instance error, 4 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .bounds import (
    octahedral_construction,
    octahedral_sizes,
    upper_bound_general,
    upper_bound_lattice,
)
from .chem import export_xyz, import_xyz
from .contacts import contact_count
from .errors import BoundViolation, LatticeContactError, ParseError
from .lattice import Lattice, PRESET_NAMES, make_lattice, preset_lattice
from .solver import SearchConfig, maximal_contact_number


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {value}")
    return value


def load_lattice_file(path: str, radius_override: float | None = None) -> Lattice:
    """Parse a lattice spec file.

    Key-value text: either ``preset <sc|fcc|bcc>`` or ``dimension <d>`` plus
    d ``basis`` rows of d numbers; ``radius <r>`` in both forms.  '#' starts
    a comment.  radius_override wins over the file's radius.
    """
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    preset = None
    radius = None
    dimension = None
    basis_rows: list[list[float]] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key = parts[0].lower()
        try:
            if key == "preset" and len(parts) == 2:
                preset = parts[1]
            elif key == "radius" and len(parts) == 2:
                radius = float(parts[1])
            elif key == "dimension" and len(parts) == 2:
                dimension = int(parts[1])
            elif key == "basis" and len(parts) > 1:
                basis_rows.append([float(v) for v in parts[1:]])
            else:
                raise ParseError(f"unrecognized line {raw!r}", line=lineno)
        except ValueError:
            raise ParseError(f"bad number in {raw!r}", line=lineno) from None
    if radius_override is not None:
        radius = radius_override
    if radius is None:
        radius = 1.0
    if preset is not None:
        if basis_rows or dimension is not None:
            raise ParseError("a preset lattice file cannot also carry a basis")
        return preset_lattice(preset, radius)
    if not basis_rows:
        raise ParseError("lattice file needs either a preset or basis rows")
    if dimension is None:
        dimension = len(basis_rows)
    if len(basis_rows) != dimension or any(len(r) != dimension for r in basis_rows):
        raise ParseError(f"expected {dimension} basis rows of {dimension} numbers")
    return make_lattice(np.array(basis_rows), radius)


def _resolve_lattice(args) -> Lattice:
    if args.lattice in PRESET_NAMES:
        return preset_lattice(args.lattice, args.radius if args.radius else 1.0)
    return load_lattice_file(args.lattice, radius_override=args.radius)


def _emit(args, payload: dict, human: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
        for line in human:
            print(line, file=sys.stderr)
    else:
        for line in human:
            print(line)


def _fmt_bound(value: float | None) -> str:
    return "n/a" if value is None else f"{value:.4f}"


def _cmd_solve(args) -> int:
    lattice = _resolve_lattice(args)
    config = SearchConfig(
        n=args.n,
        algorithm={"auto": "auto", "exhaustive": "exhaustive", "bnb": "branch_and_bound"}[
            args.algorithm
        ],
        thread_hint=args.threads,
        box_k=args.box_k,
    )
    result = maximal_contact_number(lattice, args.n, config)
    payload = {
        "lattice": lattice.name,
        "n": args.n,
        "contact_number": result.contact_number,
        "optimal": result.optimal,
        "bound": result.theorem_bound,
        "witness": [list(p) for p in result.witness.points],
    }
    human = [
        f"lattice: {lattice.name} (radius {lattice.radius:g})",
        f"n: {args.n}",
        f"contact number: {result.contact_number}",
        f"optimal: {'yes' if result.optimal else 'no (node limit hit)'}",
        f"theorem bound: {_fmt_bound(result.theorem_bound)}",
        f"nodes explored: {result.nodes_explored}",
    ]
    if args.export_xyz:
        with open(args.export_xyz, "w", encoding="utf-8") as fh:
            fh.write(export_xyz(result.witness, "X"))
        human.append(f"wrote witness to {args.export_xyz}")
    _emit(args, payload, human)
    return 0


def _cmd_bounds(args) -> int:
    general = None if args.lattice_only else upper_bound_general(args.n)
    lattice = None if args.general_only else upper_bound_lattice(args.n)
    payload = {"n": args.n, "general_bound": general, "lattice_bound": lattice}
    human = [f"n: {args.n}"]
    if general is not None:
        human.append(f"general packing bound: {general:.4f}")
    if lattice is not None:
        human.append(f"lattice packing bound: {lattice:.4f}")
    _emit(args, payload, human)
    return 0


def _cmd_octa(args) -> int:
    packing = octahedral_construction(args.k, args.radius)
    n = octahedral_sizes(args.k)
    contacts = contact_count(packing)
    bound = upper_bound_lattice(n) if n > 2 else None
    payload = {"k": args.k, "n": n, "contacts": contacts, "lattice_bound": bound}
    human = [
        f"k: {args.k}",
        f"n: {n}",
        f"contacts: {contacts}",
        f"lattice packing bound: {_fmt_bound(bound)}",
    ]
    if args.export_xyz:
        with open(args.export_xyz, "w", encoding="utf-8") as fh:
            fh.write(export_xyz(packing, "X"))
        human.append(f"wrote construction to {args.export_xyz}")
    _emit(args, payload, human)
    return 0


def _cmd_analyze(args) -> int:
    with open(args.xyz, encoding="utf-8") as fh:
        text = fh.read()
    positions, graph = import_xyz(text, args.radius)
    z = len(positions)
    amorphous = upper_bound_general(z) if z > 2 else None
    crystal = upper_bound_lattice(z) if (z > 2 and args.crystal) else None
    payload = {
        "atoms": z,
        "bonds": len(graph.edges),
        "amorphous_bound": amorphous,
        "crystal_bound": crystal,
    }
    human = [
        f"atoms: {z}",
        f"bonds: {len(graph.edges)}",
        f"amorphous bound: {_fmt_bound(amorphous)}",
        f"crystal bound: {_fmt_bound(crystal)}",
    ]
    _emit(args, payload, human)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latticecontact",
        description="Exact contact numbers of finite lattice sphere packings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="maximal contact number of n spheres")
    p_solve.add_argument("--lattice", required=True, help="preset (sc|fcc|bcc) or lattice file")
    p_solve.add_argument("--n", type=_positive_int, required=True, help="sphere count")
    p_solve.add_argument("--radius", type=_positive_float, default=None, help="sphere radius")
    p_solve.add_argument(
        "--algorithm", choices=("auto", "exhaustive", "bnb"), default="auto"
    )
    p_solve.add_argument("--box-k", type=_positive_int, default=None,
                         help="override the candidate box bound ceil(n/d)")
    p_solve.add_argument("--threads", type=_positive_int, default=None,
                         help="advisory worker hint; results do not depend on it")
    p_solve.add_argument("--json", action="store_true")
    p_solve.add_argument("--export-xyz", metavar="PATH", default=None)
    p_solve.set_defaults(func=_cmd_solve)

    p_bounds = sub.add_parser("bounds", help="proven upper bounds for n spheres")
    p_bounds.add_argument("--n", type=_positive_int, required=True)
    group = p_bounds.add_mutually_exclusive_group()
    group.add_argument("--lattice-only", action="store_true")
    group.add_argument("--general-only", action="store_true")
    p_bounds.add_argument("--json", action="store_true")
    p_bounds.set_defaults(func=_cmd_bounds)

    p_octa = sub.add_parser("octa", help="the k-th octahedral construction")
    p_octa.add_argument("--k", type=_positive_int, required=True)
    p_octa.add_argument("--radius", type=_positive_float, default=1.0)
    p_octa.add_argument("--json", action="store_true")
    p_octa.add_argument("--export-xyz", metavar="PATH", default=None)
    p_octa.set_defaults(func=_cmd_octa)

    p_an = sub.add_parser("analyze", help="bond count of an XYZ structure")
    p_an.add_argument("--xyz", required=True, help="path to the XYZ file")
    p_an.add_argument("--radius", type=_positive_float, default=1.0)
    p_an.add_argument("--crystal", action="store_true",
                      help="treat the structure as a lattice packing (tighter bound)")
    p_an.add_argument("--json", action="store_true")
    p_an.set_defaults(func=_cmd_analyze)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BoundViolation as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 4
    except LatticeContactError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
