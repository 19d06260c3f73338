"""Cutting decomposition graphs down to pants pieces, and labeling trees."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import PreconditionError, ValidationError
from .graph import (
    FLIP, PLUMB, PANTS, SOLID, THICK, DecompositionGraph, Gluing, Kind, Port,
    matmul, validate_graph,
)

P, D = "P", "D"


@dataclass(frozen=True)
class SurfacePieces:
    """A genus-zero surface cut into pants ("P") and disks ("D").

    ``boundary[i]`` is the (piece, port) carrying the i-th original boundary
    circle; ``seams`` pairs up the cut circles.
    """

    kinds: tuple[str, ...]
    boundary: tuple[Port, ...]
    seams: tuple[tuple[Port, Port], ...]

    def euler_characteristic(self) -> int:
        return sum(-1 if k == P else 1 for k in self.kinds)


def pants_decompose(b: int) -> SurfacePieces:
    """Cut the sphere with ``b`` holes into pants and disks.

    Three or more holes give a chain of ``b - 2`` pants; two holes give a
    pants capped by a disk. Below that the answer is one disk (one hole) or
    two disks (no holes).
    """
    if b < 0:
        raise PreconditionError(f"boundary count must be >= 0, got {b}")
    if b == 0:
        return SurfacePieces((D, D), (), (((0, 0), (1, 0)),))
    if b == 1:
        return SurfacePieces((D,), ((0, 0),), ())
    if b == 2:
        return SurfacePieces((P, D), ((0, 0), (0, 1)), (((0, 2), (1, 0)),))
    n = b - 2
    boundary = [(0, 0), (0, 1)]
    boundary += [(i, 1) for i in range(1, n)]
    boundary.append((n - 1, 2))
    seams = tuple(((i, 2), (i + 1, 0)) for i in range(n - 1))
    return SurfacePieces((P,) * n, tuple(boundary), seams)


def reduce_to_pants(g: DecompositionGraph) -> DecompositionGraph:
    """Replace every genus-zero bundle piece by pants and solid tori.

    The first new piece of a bundle reuses its id; the rest get fresh ids.
    Seams are glued fiber-to-fiber (matrix FLIP), which keeps the manifold.
    """
    problems = validate_graph(g)
    if problems:
        raise ValidationError(problems)
    pieces = {}
    gluings = []
    port_map: dict[Port, Port] = {}
    fresh = g.next_id()
    for v, piece in g.pieces.items():
        if piece.kind is not Kind.BUNDLE:
            pieces[v] = piece
            continue
        surf = pants_decompose(piece.boundary)
        ids = []
        for i, k in enumerate(surf.kinds):
            if i == 0:
                nid = v
            else:
                nid, fresh = fresh, fresh + 1
            ids.append(nid)
            pieces[nid] = PANTS if k == P else SOLID
        for i, (pi, port) in enumerate(surf.boundary):
            port_map[(v, i)] = (ids[pi], port)
        for (pa, qa), (pb, qb) in surf.seams:
            gluings.append(Gluing((ids[pa], qa), (ids[pb], qb), FLIP))
    for gl in g.gluings:
        gluings.append(Gluing(port_map.get(gl.a, gl.a), port_map.get(gl.b, gl.b), gl.matrix))
    return DecompositionGraph(pieces, tuple(gluings))


def _require_basic_kinds(g: DecompositionGraph):
    bad = [v for v, p in g.pieces.items() if p.kind is Kind.BUNDLE]
    if bad:
        raise PreconditionError(
            f"pieces {bad} are genus-zero bundles; run reduce_to_pants first")


def insert_plumbing_buffers(g: DecompositionGraph) -> DecompositionGraph:
    """Put a thick torus into every non-plumbing gluing.

    The new gluings are PLUMB into the buffer and ``M @ PLUMB @ FLIP`` out of
    it, so the composite through the buffer is the original ``M``.  Gluings
    that already touch a thick torus are left alone, which makes the
    operation idempotent.
    """
    problems = validate_graph(g)
    if problems:
        raise ValidationError(problems)
    _require_basic_kinds(g)
    pieces = dict(g.pieces)
    gluings = []
    fresh = g.next_id()
    for gl in g.gluings:
        touches_buffer = Kind.THICK in (g.kind(gl.a[0]), g.kind(gl.b[0]))
        if gl.matrix == PLUMB or touches_buffer:
            gluings.append(gl)
            continue
        t, fresh = fresh, fresh + 1
        pieces[t] = THICK
        gluings.append(Gluing(gl.a, (t, 0), PLUMB))
        gluings.append(Gluing((t, 1), gl.b, matmul(gl.matrix, matmul(PLUMB, FLIP))))
    return DecompositionGraph(pieces, tuple(gluings))


def is_plumbing_type(g: DecompositionGraph) -> bool:
    return all(
        gl.matrix == PLUMB or Kind.THICK in (g.kind(gl.a[0]), g.kind(gl.b[0]))
        for gl in g.gluings)


@dataclass(frozen=True)
class TreeLabeling:
    """Vertex labels 1..s; the vertex labeled s is the root."""

    labels: dict[int, int]

    def __hash__(self):
        return hash(tuple(sorted(self.labels.items())))

    @property
    def root(self) -> int:
        return max(self.labels, key=self.labels.__getitem__)

    def order(self) -> list[int]:
        """Vertices by decreasing label, root first."""
        return sorted(self.labels, key=lambda v: -self.labels[v])


def _check_simple_tree(g: DecompositionGraph, max_degree: int = 3):
    if not g.pieces:
        raise PreconditionError("empty graph")
    if any(gl.is_loop for gl in g.gluings):
        raise PreconditionError("not a tree: graph has a self-loop")
    edges = {tuple(sorted((gl.a[0], gl.b[0]))) for gl in g.gluings}
    if len(edges) != len(g.gluings):
        raise PreconditionError("not a tree: graph has parallel edges")
    if not g.is_tree():
        raise PreconditionError("not a tree: graph has a cycle or is disconnected")
    for v, ns in g.adjacency().items():
        if len(ns) > max_degree:
            raise PreconditionError(f"vertex {v} has degree {len(ns)} > {max_degree}")


def label_tree(g: DecompositionGraph) -> TreeLabeling:
    """Label a tree so that every set {label >= j} is connected.

    The root is the solid-torus leaf of smallest id; labels count down along
    a breadth-first visit from it, neighbors taken in id order.
    """
    _check_simple_tree(g)
    adj = g.adjacency()
    leaves = [v for v in g.pieces if g.kind(v) is Kind.SOLID and len(adj[v]) == 1]
    if not leaves:
        raise PreconditionError("tree has no solid-torus leaf to use as root")
    root = min(leaves)
    order = [root]
    seen = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
    s = len(order)
    return TreeLabeling({v: s - i for i, v in enumerate(order)})


def labeling_violations(g: DecompositionGraph, labeling: TreeLabeling) -> list[str]:
    """Which of the three labeling conditions fail for ``labeling`` on ``g``."""
    out = []
    labels = labeling.labels
    s = len(g.pieces)
    if set(labels) != set(g.pieces) or sorted(labels.values()) != list(range(1, s + 1)):
        return ["labels are not a bijection onto 1..s"]
    adj = g.adjacency()
    root = labeling.root
    if len(adj[root]) != 1:
        out.append(f"root {root} has degree {len(adj[root])}, expected 1")
    # add vertices from the top label down; the added set must stay connected
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = 0
    for v in labeling.order():
        parent[v] = v
        comps += 1
        for w in adj[v]:
            if w in parent and w != v:
                rv, rw = find(v), find(w)
                if rv != rw:
                    parent[rv] = rw
                    comps -= 1
        if comps != 1:
            out.append(f"vertices with label >= {labels[v]} are not connected")
    return out


def parents(g: DecompositionGraph, labeling: TreeLabeling) -> dict[int, int]:
    """The unique higher-labeled neighbor of each non-root vertex."""
    adj = g.adjacency()
    labels = labeling.labels
    out = {}
    for v in g.pieces:
        if v == labeling.root:
            continue
        up = [w for w in adj[v] if labels[w] > labels[v]]
        if len(up) != 1:
            raise PreconditionError(
                f"vertex {v} has {len(up)} higher-labeled neighbors, expected 1")
        out[v] = up[0]
    return out
