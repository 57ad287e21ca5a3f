"""Chemistry layer: monatomic compounds as packings, bond reports, XYZ I/O.

A monatomic compound with Z atoms of radius r maps to a packing of Z spheres
of radius r; chemical bonds are the contact-graph edges.  Radii are always
user-supplied (no element table is shipped): for ions, use the tabulated
ionic radius for the charge and coordination of interest.  The tool is
unit-agnostic, but the radius and the lattice basis must share one unit.

XYZ files written here round-trip: coordinates carry six decimals and the
import tolerance is sized to that quantization, so contact counts survive an
export/import cycle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bounds import upper_bound_general, upper_bound_lattice
from .contacts import ContactGraph, Packing, contact_count
from .errors import DomainError, OverlapDetected, ParseError
from .lattice import Coeffs, Lattice, PRESET_NAMES, embed, preset_lattice

# Relative squared-distance tolerance for contact detection on parsed XYZ
# coordinates.  Looser than the in-memory band because the file format
# quantizes coordinates to 1e-6.
XYZ_CONTACT_TOL = 1e-5


@dataclass(frozen=True)
class CompoundSpec:
    """A monatomic compound: element label, sphere radius, atom count, lattice."""

    element_symbol: str
    radius: float
    Z: int
    lattice_source: str

    def __post_init__(self):
        if self.radius <= 0:
            raise DomainError(f"radius must be positive, got {self.radius}")
        if self.Z < 1:
            raise DomainError(f"Z must be positive, got {self.Z}")


@dataclass(frozen=True)
class BondReport:
    """Bond count of a compound next to the proven upper bounds (Z > 2 only)."""

    Z: int
    bonds: int
    amorphous_bound: float | None
    crystal_bound: float | None
    max_coordination_witness: Packing | None = None


def resolve_lattice_source(source: str, radius: float) -> Lattice:
    """Turn a preset name or a lattice-spec file path into a lattice at the given radius."""
    if source in PRESET_NAMES:
        return preset_lattice(source, radius)
    from .cli import load_lattice_file  # file parsing lives with the CLI

    return load_lattice_file(source, radius_override=radius)


def compound_to_packing(spec: CompoundSpec, points: set[Coeffs] | list[Coeffs]) -> Packing:
    """Place the compound's Z atoms at the given lattice points."""
    pts = tuple(points)
    if len(pts) != spec.Z:
        raise DomainError(f"compound has Z={spec.Z} atoms but {len(pts)} points were given")
    lattice = resolve_lattice_source(spec.lattice_source, spec.radius)
    return Packing(lattice=lattice, points=pts)


def bond_report(packing: Packing, *, witness: Packing | None = None) -> BondReport:
    """Count the bonds of a packing and attach the applicable bounds."""
    z = packing.n
    bonds = contact_count(packing)
    if z > 2:
        amorphous = upper_bound_general(z)
        crystal = upper_bound_lattice(z)
    else:
        amorphous = crystal = None
    return BondReport(
        Z=z,
        bonds=bonds,
        amorphous_bound=amorphous,
        crystal_bound=crystal,
        max_coordination_witness=witness,
    )


def _fmt_coord(v: float) -> str:
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


def export_xyz(packing: Packing, element_symbol: str) -> str:
    """Serialize a packing to XYZ text.

    Line 1 is the atom count, line 2 a comment naming the lattice, radius and
    contact count, then one "SYMBOL x y z" line per sphere with six-decimal
    Cartesian coordinates in sorted point order.
    """
    lattice = packing.lattice
    if lattice.d != 3:
        raise DomainError("XYZ export requires a three-dimensional lattice")
    count = contact_count(packing)
    lines = [
        str(packing.n),
        f"lattice={lattice.name} radius={_fmt_coord(lattice.radius)} contacts={count}",
    ]
    for p in packing.points:
        x, y, z = embed(lattice, p)
        lines.append(f"{element_symbol} {_fmt_coord(x)} {_fmt_coord(y)} {_fmt_coord(z)}")
    return "\n".join(lines) + "\n"


def import_xyz(
    text: str, radius: float, tol: float = XYZ_CONTACT_TOL
) -> tuple[np.ndarray, ContactGraph]:
    """Parse XYZ text and build the contact graph of the positions it holds.

    No lattice is assumed: contacts come from the all-pairs distance test
    against the squared diameter, with a relative band sized for six-decimal
    coordinates.  Returns (positions, graph); positions are in file order.
    Raises ParseError with a line number on malformed input and
    OverlapDetected when two atoms sit below the contact band.
    """
    if radius <= 0:
        raise DomainError(f"radius must be positive, got {radius}")
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise ParseError("missing atom count", line=1)
    try:
        count = int(lines[0].strip())
    except ValueError:
        raise ParseError(f"atom count is not an integer: {lines[0].strip()!r}", line=1) from None
    if count < 0:
        raise ParseError(f"negative atom count {count}", line=1)
    if len(lines) < count + 2:
        raise ParseError(
            f"expected {count + 2} lines for {count} atoms, file has {len(lines)}",
            line=len(lines) + 1,
        )
    positions = np.zeros((count, 3))
    for a in range(count):
        lineno = a + 3
        parts = lines[a + 2].split()
        if len(parts) < 4:
            raise ParseError(
                f"expected 'SYMBOL x y z', got {lines[a + 2]!r}", line=lineno
            )
        try:
            positions[a] = [float(v) for v in parts[1:4]]
        except ValueError:
            raise ParseError(
                f"bad coordinate in {lines[a + 2]!r}", line=lineno
            ) from None

    d2 = 4.0 * radius * radius
    lo, hi = d2 * (1.0 - tol), d2 * (1.0 + tol)
    edges = []
    for i in range(count):
        delta = positions[i + 1 :] - positions[i]
        sq = np.einsum("ij,ij->i", delta, delta)
        close = np.nonzero(sq < lo)[0]
        if close.size:
            raise OverlapDetected(i, i + 1 + int(close[0]))
        for j in np.nonzero((sq >= lo) & (sq <= hi))[0]:
            edges.append((i, i + 1 + int(j)))
    return positions, ContactGraph(n=count, edges=tuple(sorted(edges)))


def parse_compound_spec(text: str) -> CompoundSpec:
    """Parse the key-value compound spec format.

    Keys: element, radius, Z, lattice (preset name or lattice file path).
    Lines starting with '#' and blank lines are ignored.
    """
    fields: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(None, 1)
        if len(parts) != 2:
            raise ParseError(f"expected 'key value', got {raw!r}", line=lineno)
        key = parts[0].lower()
        if key not in ("element", "radius", "z", "lattice"):
            raise ParseError(f"unknown key {parts[0]!r}", line=lineno)
        if key in fields:
            raise ParseError(f"duplicate key {parts[0]!r}", line=lineno)
        fields[key] = parts[1].strip()
    missing = [k for k in ("element", "radius", "z", "lattice") if k not in fields]
    if missing:
        raise ParseError(f"missing keys: {', '.join(missing)}")
    try:
        radius = float(fields["radius"])
        z = int(fields["z"])
    except ValueError as exc:
        raise ParseError(f"bad numeric field: {exc}") from None
    return CompoundSpec(
        element_symbol=fields["element"],
        radius=radius,
        Z=z,
        lattice_source=fields["lattice"],
    )


def load_compound_file(path: str) -> CompoundSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_compound_spec(fh.read())
