"""Mesh data model and derived topology.

A mesh is a list of nodes (each with a mobility class), a list of
positively oriented triangles, and topology derived once at build time:
the ball of elements around every internal node, and the movable boundary
chains obtained by splitting the boundary at fixed nodes. Connectivity is
immutable during smoothing; node positions are the only mutable state.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .geometry import Point2, signed_area, triangle_geometry
from .quality import QualityConfig, q2_shape


class MeshError(Exception):
    """Base class for mesh validation errors."""


class NonManifoldError(MeshError):
    pass


class InvertedElementError(MeshError):
    def __init__(self, triangle_id: int, area: float):
        self.triangle_id = triangle_id
        super().__init__(
            f"triangle {triangle_id} has non-positive signed area {area:g}"
        )


class OrphanNodeError(MeshError):
    def __init__(self, node_id: int):
        self.node_id = node_id
        super().__init__(f"node {node_id} belongs to no triangle")


class InconsistentMobilityError(MeshError):
    def __init__(self, node_id: int, message: str):
        self.node_id = node_id
        super().__init__(message)


class NotBoundaryError(MeshError):
    pass


class Mobility(enum.Enum):
    FIXED = "F"
    INTERNAL = "I"
    BOUNDARY = "B"


@dataclass(slots=True)
class Node:
    id: int
    position: Point2
    mobility: Mobility
    chain_id: int | None = None  # set for BOUNDARY nodes during topology build


@dataclass(frozen=True, slots=True)
class Triangle:
    id: int
    nodes: tuple[int, int, int]


@dataclass(frozen=True, slots=True)
class Ball:
    """All triangles sharing a vertex node.

    ``elements`` holds (triangle id, rotation) pairs where rotating the
    triangle's node triple left by ``rotation`` puts the ball vertex in
    slot 0 without changing orientation. ``rests`` holds, per element, the
    ids of the other two nodes in that rotated order.
    """

    vertex: int
    elements: tuple[tuple[int, int], ...]
    rests: tuple[tuple[int, int], ...]


@dataclass(frozen=True, slots=True)
class BoundaryChain:
    """A maximal run of movable boundary nodes.

    Open chains start and end at fixed nodes; closed chains are boundary
    loops containing no fixed node and wrap around cyclically.
    """

    chain_id: int
    node_ids: tuple[int, ...]
    closed: bool


@dataclass(slots=True)
class Mesh:
    nodes: list[Node]
    triangles: list[Triangle]
    balls: dict[int, Ball] = field(default_factory=dict)
    chains: list[BoundaryChain] = field(default_factory=list)
    # optional per-triangle reference radius overrides (triangle id -> value)
    rref: dict[int, float] = field(default_factory=dict)

    def position(self, node_id: int) -> Point2:
        return self.nodes[node_id].position

    def set_position(self, node_id: int, p: Point2) -> None:
        self.nodes[node_id].position = p

    def triangle_points(self, tri: Triangle) -> tuple[Point2, Point2, Point2]:
        n0, n1, n2 = tri.nodes
        nodes = self.nodes
        return nodes[n0].position, nodes[n1].position, nodes[n2].position

    def internal_node_ids(self) -> list[int]:
        return [n.id for n in self.nodes if n.mobility is Mobility.INTERNAL]

    def connectivity_key(self) -> tuple:
        """Hashable snapshot of everything smoothing must not change."""
        return (
            tuple(t.nodes for t in self.triangles),
            tuple(sorted((b.vertex, b.elements) for b in self.balls.values())),
            tuple((c.chain_id, c.node_ids, c.closed) for c in self.chains),
            tuple((n.mobility, n.chain_id) for n in self.nodes),
        )


def _rotate(nodes: tuple[int, int, int], rot: int) -> tuple[int, int, int]:
    return nodes[rot % 3], nodes[(rot + 1) % 3], nodes[(rot + 2) % 3]


def build_topology(
    nodes: list[Node],
    triangles: list[Triangle],
    rref: dict[int, float] | None = None,
) -> Mesh:
    """Validate connectivity and derive balls and boundary chains.

    Raises a MeshError subclass on invalid input: non-manifold edges or
    vertices, non-positively oriented triangles, orphan nodes, or mobility
    labels that disagree with where a node actually sits.
    """
    n_nodes = len(nodes)
    for i, node in enumerate(nodes):
        if node.id != i:
            raise MeshError(f"node ids must be dense 0..N-1, found {node.id} at {i}")
    for i, tri in enumerate(triangles):
        if tri.id != i:
            raise MeshError(f"triangle ids must be dense 0..M-1, found {tri.id} at {i}")
        if len(set(tri.nodes)) != 3:
            raise MeshError(f"triangle {tri.id} has repeated nodes {tri.nodes}")
        for nid in tri.nodes:
            if not 0 <= nid < n_nodes:
                raise MeshError(f"triangle {tri.id} references unknown node {nid}")

    for tri in triangles:
        p0, p1, p2 = (nodes[k].position for k in tri.nodes)
        area = signed_area(p0, p1, p2)
        if area <= 0.0:
            raise InvertedElementError(tri.id, area)

    # Edge -> incident triangle count; directed boundary edges follow the
    # triangle orientation (interior on the left).
    edge_count: dict[tuple[int, int], int] = {}
    directed: dict[tuple[int, int], int] = {}
    in_triangle = [False] * n_nodes
    for tri in triangles:
        a, b, c = tri.nodes
        for u, v in ((a, b), (b, c), (c, a)):
            in_triangle[u] = True
            key = (u, v) if u < v else (v, u)
            edge_count[key] = edge_count.get(key, 0) + 1
            if edge_count[key] > 2:
                raise NonManifoldError(
                    f"edge {key} belongs to more than two triangles"
                )
            directed[(u, v)] = tri.id

    for nid, ok in enumerate(in_triangle):
        if not ok:
            raise OrphanNodeError(nid)

    boundary_next: dict[int, int] = {}
    boundary_nodes: set[int] = set()
    for (u, v), count in edge_count.items():
        if count != 1:
            continue
        # recover the direction in which the single owner triangle uses it
        if (u, v) in directed:
            du, dv = u, v
        else:
            du, dv = v, u
        if du in boundary_next:
            raise NonManifoldError(
                f"node {du} has more than one outgoing boundary edge"
            )
        boundary_next[du] = dv
        boundary_nodes.add(du)
        boundary_nodes.add(dv)

    for node in nodes:
        on_boundary = node.id in boundary_nodes
        if node.mobility is Mobility.BOUNDARY and not on_boundary:
            raise InconsistentMobilityError(
                node.id,
                f"node {node.id} is marked movable-boundary but lies on no boundary edge",
            )
        if node.mobility is Mobility.INTERNAL and on_boundary:
            raise InconsistentMobilityError(
                node.id,
                f"node {node.id} is marked internal but lies on a boundary edge",
            )

    chains = _build_chains(nodes, boundary_next)
    for chain in chains:
        for nid in chain.node_ids:
            if nodes[nid].mobility is Mobility.BOUNDARY:
                nodes[nid].chain_id = chain.chain_id

    balls: dict[int, Ball] = {}
    incidence: dict[int, list[tuple[int, int]]] = {}
    for tri in triangles:
        for slot, nid in enumerate(tri.nodes):
            if nodes[nid].mobility is Mobility.INTERNAL:
                incidence.setdefault(nid, []).append((tri.id, slot))
    for nid, elems in incidence.items():
        elems.sort()
        rests = tuple(
            (_rotate(triangles[tid].nodes, rot)[1], _rotate(triangles[tid].nodes, rot)[2])
            for tid, rot in elems
        )
        balls[nid] = Ball(vertex=nid, elements=tuple(elems), rests=rests)

    return Mesh(nodes=nodes, triangles=triangles, balls=balls, chains=chains,
                rref=dict(rref) if rref else {})


def _build_chains(nodes: list[Node], boundary_next: dict[int, int]) -> list[BoundaryChain]:
    """Split the directed boundary loops at fixed nodes.

    Only chains containing at least one movable boundary node are kept;
    fixed-to-fixed segments with no movable node in between carry no work.
    """
    raw: list[tuple[tuple[int, ...], bool]] = []
    visited: set[int] = set()

    fixed_starts = sorted(
        nid for nid in boundary_next
        if nodes[nid].mobility is not Mobility.BOUNDARY
    )
    for start in fixed_starts:
        run = [start]
        cur = boundary_next[start]
        visited.add(start)
        while nodes[cur].mobility is Mobility.BOUNDARY:
            run.append(cur)
            visited.add(cur)
            cur = boundary_next[cur]
        run.append(cur)
        if len(run) > 2:
            raw.append((tuple(run), False))

    # remaining loops contain no fixed node: closed chains
    for start in sorted(boundary_next):
        if start in visited:
            continue
        run = [start]
        visited.add(start)
        cur = boundary_next[start]
        while cur != start:
            run.append(cur)
            visited.add(cur)
            cur = boundary_next[cur]
        raw.append((tuple(run), True))

    raw.sort(key=lambda item: min(item[0]))
    return [
        BoundaryChain(chain_id=i, node_ids=ids, closed=closed)
        for i, (ids, closed) in enumerate(raw)
    ]


def flag_nodes(mesh: Mesh, cfg: QualityConfig) -> set[int]:
    """Node ids of every triangle whose radius ratio falls below q_min.

    The result includes nodes of any mobility; callers intersect with the
    internal node set before optimizing.
    """
    flagged: set[int] = set()
    for tri in mesh.triangles:
        p0, p1, p2 = mesh.triangle_points(tri)
        if q2_shape(triangle_geometry(p0, p1, p2)) < cfg.q_min:
            flagged.update(tri.nodes)
    return flagged


def boundary_neighbors(mesh: Mesh, node_id: int) -> tuple[int, int]:
    """The two chain neighbors of a movable boundary node, in chain order."""
    node = mesh.nodes[node_id]
    if node.mobility is not Mobility.BOUNDARY or node.chain_id is None:
        raise NotBoundaryError(f"node {node_id} is not a movable boundary node")
    chain = mesh.chains[node.chain_id]
    idx = chain.node_ids.index(node_id)
    n = len(chain.node_ids)
    if chain.closed:
        return chain.node_ids[(idx - 1) % n], chain.node_ids[(idx + 1) % n]
    return chain.node_ids[idx - 1], chain.node_ids[idx + 1]
