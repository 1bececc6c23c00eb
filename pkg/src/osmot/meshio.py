"""Reader and writer for the osmot-mesh v1 text format.

The format is a plain-text section layout:

    osmot-mesh v1
    nodes <N>
    <id> <x> <y> <mobility>      mobility: F | I | B<chain_id>
    triangles <M>
    <id> <n0> <n1> <n2>
    rref <K>                      optional per-element reference radii
    <triangle_id> <value>

Comment lines starting with '#' and blank lines are ignored anywhere.
Coordinates are written with 17 significant digits so that writing and
re-reading a mesh reproduces the exact same doubles. Reading validates
the mesh (orientation, manifoldness, mobility consistency) and reports
the offending file line where one can be attributed.
"""

from __future__ import annotations

import math

from .geometry import Point2
from .mesh import (
    InconsistentMobilityError,
    InvertedElementError,
    MeshError,
    Mesh,
    Mobility,
    Node,
    OrphanNodeError,
    Triangle,
    build_topology,
)

HEADER = "osmot-mesh v1"


class ParseError(Exception):
    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


class ValidationError(Exception):
    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


def _significant_lines(text: str):
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield line_no, line


def _parse_mobility(token: str, line_no: int) -> tuple[Mobility, int | None]:
    if token == "F":
        return Mobility.FIXED, None
    if token == "I":
        return Mobility.INTERNAL, None
    if token.startswith("B"):
        try:
            return Mobility.BOUNDARY, int(token[1:])
        except ValueError:
            raise ParseError(line_no, f"bad chain id in mobility {token!r}") from None
    raise ParseError(line_no, f"unknown mobility {token!r}")


def parse_mesh_text(text: str) -> Mesh:
    lines = _significant_lines(text)

    def next_line(expect: str) -> tuple[int, str]:
        try:
            return next(lines)
        except StopIteration:
            raise ParseError(0, f"unexpected end of file, expected {expect}") from None

    line_no, line = next_line("header")
    if line != HEADER:
        raise ParseError(line_no, f"expected header {HEADER!r}, got {line!r}")

    line_no, line = next_line("'nodes <N>'")
    parts = line.split()
    if len(parts) != 2 or parts[0] != "nodes":
        raise ParseError(line_no, f"expected 'nodes <N>', got {line!r}")
    try:
        n_nodes = int(parts[1])
    except ValueError:
        raise ParseError(line_no, f"bad node count {parts[1]!r}") from None

    nodes: list[Node] = []
    node_lines: dict[int, int] = {}
    for _ in range(n_nodes):
        line_no, line = next_line("a node line")
        parts = line.split()
        if len(parts) != 4:
            raise ParseError(line_no, f"expected '<id> <x> <y> <mobility>', got {line!r}")
        try:
            nid = int(parts[0])
            x = float(parts[1])
            y = float(parts[2])
        except ValueError:
            raise ParseError(line_no, f"bad node fields in {line!r}") from None
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ParseError(line_no, f"non-finite coordinates in {line!r}")
        mobility, chain_id = _parse_mobility(parts[3], line_no)
        if nid != len(nodes):
            raise ParseError(line_no, f"node ids must be dense, expected {len(nodes)}")
        nodes.append(Node(nid, Point2(x, y), mobility, chain_id))
        node_lines[nid] = line_no

    line_no, line = next_line("'triangles <M>'")
    parts = line.split()
    if len(parts) != 2 or parts[0] != "triangles":
        raise ParseError(line_no, f"expected 'triangles <M>', got {line!r}")
    try:
        n_triangles = int(parts[1])
    except ValueError:
        raise ParseError(line_no, f"bad triangle count {parts[1]!r}") from None

    triangles: list[Triangle] = []
    triangle_lines: dict[int, int] = {}
    for _ in range(n_triangles):
        line_no, line = next_line("a triangle line")
        parts = line.split()
        if len(parts) != 4:
            raise ParseError(line_no, f"expected '<id> <n0> <n1> <n2>', got {line!r}")
        try:
            tid, a, b, c = (int(p) for p in parts)
        except ValueError:
            raise ParseError(line_no, f"bad triangle fields in {line!r}") from None
        if tid != len(triangles):
            raise ParseError(line_no, f"triangle ids must be dense, expected {len(triangles)}")
        triangles.append(Triangle(tid, (a, b, c)))
        triangle_lines[tid] = line_no

    rref: dict[int, float] = {}
    trailing = list(lines)
    if trailing:
        line_no, line = trailing[0]
        parts = line.split()
        if len(parts) != 2 or parts[0] != "rref":
            raise ParseError(line_no, f"expected 'rref <K>' or end of file, got {line!r}")
        try:
            n_rref = int(parts[1])
        except ValueError:
            raise ParseError(line_no, f"bad rref count {parts[1]!r}") from None
        entries = trailing[1:]
        if len(entries) != n_rref:
            raise ParseError(line_no, f"rref section declares {n_rref} entries, found {len(entries)}")
        for line_no, line in entries:
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(line_no, f"expected '<triangle_id> <value>', got {line!r}")
            try:
                tid = int(parts[0])
                value = float(parts[1])
            except ValueError:
                raise ParseError(line_no, f"bad rref entry {line!r}") from None
            if not 0 <= tid < n_triangles:
                raise ParseError(line_no, f"rref references unknown triangle {tid}")
            if not (math.isfinite(value) and value > 0.0):
                raise ParseError(line_no, f"rref value must be positive, got {parts[1]}")
            rref[tid] = value

    try:
        return build_topology(nodes, triangles, rref)
    except InvertedElementError as err:
        raise ValidationError(str(err), triangle_lines.get(err.triangle_id)) from err
    except (OrphanNodeError, InconsistentMobilityError) as err:
        raise ValidationError(str(err), node_lines.get(err.node_id)) from err
    except MeshError as err:
        raise ValidationError(str(err)) from err


def read_mesh(path: str) -> Mesh:
    with open(path, "r", encoding="ascii") as fh:
        return parse_mesh_text(fh.read())


def mesh_to_text(mesh: Mesh) -> str:
    out = [HEADER, f"nodes {len(mesh.nodes)}"]
    for node in mesh.nodes:
        if node.mobility is Mobility.BOUNDARY:
            mob = f"B{node.chain_id}"
        else:
            mob = node.mobility.value
        out.append(f"{node.id} {node.position.x:.17g} {node.position.y:.17g} {mob}")
    out.append(f"triangles {len(mesh.triangles)}")
    for tri in mesh.triangles:
        out.append(f"{tri.id} {tri.nodes[0]} {tri.nodes[1]} {tri.nodes[2]}")
    if mesh.rref:
        out.append(f"rref {len(mesh.rref)}")
        for tid in sorted(mesh.rref):
            out.append(f"{tid} {mesh.rref[tid]:.17g}")
    return "\n".join(out) + "\n"


def write_mesh(mesh: Mesh, path: str) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(mesh_to_text(mesh))
