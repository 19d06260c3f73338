"""Decomposition graphs of closed orientable graph manifolds.

A manifold is recorded as a multigraph: each vertex is a trivial circle
bundle over a genus-zero surface with at most three holes, or a general
``bundle <b>`` that the decompose step breaks up; each edge identifies
two boundary tori.

Every port carries the oriented basis ``(mu, lam)`` of its boundary torus,
where ``mu`` is a section curve oriented as the boundary of the base surface
and ``lam`` is the circle fiber.  A gluing matrix ``M`` between ports ``a``
and ``b`` sends ``a``-coordinates (column vectors) to ``b``-coordinates.
Gluings reverse orientation, so ``det M == -1``.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass

from .errors import FormatError, PreconditionError, ValidationError

Matrix = tuple[tuple[int, int], tuple[int, int]]
Port = tuple[int, int]

IDENTITY: Matrix = ((1, 0), (0, 1))
# section <-> fiber swap; the standard plumbing edge
PLUMB: Matrix = ((0, 1), (1, 0))
# section reversed, fiber kept: two bundles glued compatibly with their
# fibrations, and the transport between the two ends of a thick torus
FLIP: Matrix = ((-1, 0), (0, 1))


def matrix(a: int, b: int, c: int, d: int) -> Matrix:
    return ((a, b), (c, d))


def det(m: Matrix) -> int:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def matmul(x: Matrix, y: Matrix) -> Matrix:
    return (
        (x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]),
        (x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]),
    )


def inverse(m: Matrix) -> Matrix:
    """Inverse of a unimodular 2x2 matrix."""
    d = det(m)
    if d not in (1, -1):
        raise ValueError(f"matrix {m} is not invertible over the integers")
    (a, b), (c, e) = m
    return ((d * e, -d * b), (-d * c, d * a))


def through_buffer(into: Matrix, out: Matrix) -> Matrix:
    """Composite of a gluing into a thick torus and the gluing out of it."""
    return matmul(out, matmul(FLIP, into))


class Kind(enum.Enum):
    PANTS = "pants"
    SOLID = "solidtorus"
    THICK = "thicktorus"
    BUNDLE = "bundle"


_FIXED_PORTS = {Kind.PANTS: 3, Kind.SOLID: 1, Kind.THICK: 2}


@dataclass(frozen=True)
class Piece:
    kind: Kind
    boundary: int | None = None  # only for Kind.BUNDLE

    def __post_init__(self):
        if self.kind is Kind.BUNDLE:
            if self.boundary is None or self.boundary < 0:
                raise ValueError("bundle pieces need a boundary count b >= 0")
        elif self.boundary is not None:
            raise ValueError(f"{self.kind.value} pieces take no boundary count")

    @property
    def ports(self) -> int:
        if self.kind is Kind.BUNDLE:
            return self.boundary
        return _FIXED_PORTS[self.kind]

    def __str__(self):
        if self.kind is Kind.BUNDLE:
            return f"bundle {self.boundary}"
        return self.kind.value


PANTS = Piece(Kind.PANTS)
SOLID = Piece(Kind.SOLID)
THICK = Piece(Kind.THICK)


def bundle(b: int) -> Piece:
    return Piece(Kind.BUNDLE, b)


@dataclass(frozen=True)
class Gluing:
    a: Port
    b: Port
    matrix: Matrix

    def normalized(self) -> Gluing:
        """Same gluing written from its smaller endpoint."""
        if self.b < self.a and det(self.matrix) in (1, -1):
            return Gluing(self.b, self.a, inverse(self.matrix))
        return self

    def other(self, port: Port) -> Port:
        if port == self.a:
            return self.b
        if port == self.b:
            return self.a
        raise KeyError(port)

    def matrix_from(self, port: Port) -> Matrix:
        """Matrix taking coordinates at ``port`` to the opposite port."""
        if port == self.a:
            return self.matrix
        if port == self.b:
            return inverse(self.matrix)
        raise KeyError(port)

    @property
    def is_loop(self) -> bool:
        return self.a[0] == self.b[0]


def _gluing_key(g: Gluing):
    return (g.a, g.b, g.matrix)


@dataclass(frozen=True)
class DecompositionGraph:
    """Pieces keyed by id plus the gluings between their ports.

    Gluings are stored normalized and sorted, so two graphs describing the
    same decomposition compare equal.
    """

    pieces: dict[int, Piece]
    gluings: tuple[Gluing, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pieces", dict(sorted(self.pieces.items())))
        glued = sorted((g.normalized() for g in self.gluings), key=_gluing_key)
        object.__setattr__(self, "gluings", tuple(glued))

    def __hash__(self):
        return hash((tuple(self.pieces.items()), self.gluings))

    @property
    def vertices(self) -> list[int]:
        return list(self.pieces)

    def kind(self, v: int) -> Kind:
        return self.pieces[v].kind

    def port_map(self) -> dict[Port, Gluing]:
        """Gluing attached to each glued port (last one wins on duplicates)."""
        out = {}
        for g in self.gluings:
            out[g.a] = g
            out[g.b] = g
        return out

    def adjacency(self) -> dict[int, list[int]]:
        """Neighbor lists with multiplicity; a self-loop lists the vertex twice."""
        adj = {v: [] for v in self.pieces}
        for g in self.gluings:
            u, v = g.a[0], g.b[0]
            if u in adj and v in adj:
                adj[u].append(v)
                adj[v].append(u)
        for v in adj:
            adj[v].sort()
        return adj

    def degree(self, v: int) -> int:
        return len(self.adjacency()[v])

    def is_connected(self) -> bool:
        if not self.pieces:
            return True
        adj = self.adjacency()
        start = next(iter(self.pieces))
        seen = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == len(self.pieces)

    def cycle_rank(self) -> int:
        """|E| - |V| + (number of components)."""
        parent = {v: v for v in self.pieces}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        comps = len(parent)
        for g in self.gluings:
            ru, rv = find(g.a[0]), find(g.b[0])
            if ru != rv:
                parent[ru] = rv
                comps -= 1
        return len(self.gluings) - len(self.pieces) + comps

    def is_tree(self) -> bool:
        return bool(self.pieces) and self.is_connected() and self.cycle_rank() == 0

    def next_id(self) -> int:
        return max(self.pieces, default=-1) + 1


@dataclass(frozen=True)
class TorusBundleInput:
    """Torus bundle over the circle given by its monodromy (det 1)."""

    monodromy: Matrix

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.monodromy)
        object.__setattr__(self, "monodromy", m)
        if det(m) != 1:
            raise ValueError(f"torus bundle monodromy must have det 1, got {det(m)}")

    @property
    def trace(self) -> int:
        return self.monodromy[0][0] + self.monodromy[1][1]

    def to_graph(self) -> DecompositionGraph:
        # Going once around the loop crosses the self-gluing and then the
        # thick torus itself, so monodromy = FLIP @ gluing.
        glue = matmul(FLIP, self.monodromy)
        return DecompositionGraph({0: THICK}, (Gluing((0, 0), (0, 1), glue),))


def _port_str(p: Port) -> str:
    return f"{p[0]}.{p[1]}"


def validate_graph(g: DecompositionGraph) -> list[str]:
    """Every broken invariant of ``g`` as a human-readable line."""
    problems = []
    if not g.pieces:
        return ["graph has no pieces"]
    usage: dict[Port, int] = {}
    for i, gl in enumerate(g.gluings):
        for p in (gl.a, gl.b):
            piece = g.pieces.get(p[0])
            if piece is None:
                problems.append(f"gluing {i}: unknown piece {p[0]}")
            elif not 0 <= p[1] < piece.ports:
                problems.append(
                    f"gluing {i}: port {_port_str(p)} out of range "
                    f"({piece} has {piece.ports} ports)")
            else:
                usage[p] = usage.get(p, 0) + 1
        if gl.a == gl.b:
            problems.append(f"gluing {i}: port {_port_str(gl.a)} glued to itself")
        d = det(gl.matrix)
        if d != -1:
            problems.append(f"gluing {i}: determinant {d:+d}, expected -1")
    for v, piece in g.pieces.items():
        for k in range(piece.ports):
            n = usage.get((v, k), 0)
            if n == 0:
                problems.append(f"piece {v}: unglued port {v}.{k}")
            elif n > 1:
                problems.append(f"piece {v}: port {v}.{k} glued {n} times")
    if not g.is_connected():
        problems.append("graph not connected")
    return problems


def _tokens(line: str) -> list[tuple[int, str]]:
    line = line.split("#", 1)[0]
    out = []
    i, n = 0, len(line)
    while i < n:
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < n and not line[j].isspace():
            j += 1
        out.append((i + 1, line[i:j]))
        i = j
    return out


def _uint(tok: tuple[int, str], lineno: int, what: str) -> int:
    col, text = tok
    if not text.isdigit():
        raise FormatError(f"expected {what}, got {text!r}", lineno, col)
    return int(text)


def _int(tok: tuple[int, str], lineno: int) -> int:
    col, text = tok
    try:
        return int(text)
    except ValueError:
        raise FormatError(f"expected an integer, got {text!r}", lineno, col) from None


def _port(tok: tuple[int, str], lineno: int) -> Port:
    col, text = tok
    piece, dot, port = text.partition(".")
    if not dot or not piece.isdigit() or not port.isdigit():
        raise FormatError(f"expected <piece>.<port>, got {text!r}", lineno, col)
    return int(piece), int(port)


def parse_graph(text: str) -> DecompositionGraph:
    """Parse and validate a ``.gm`` document.

    Raises FormatError for syntax problems and for gluings that are locally
    wrong (unknown piece, port out of range, determinant); ValidationError
    for global problems such as unglued ports or a disconnected graph.
    """
    pieces: dict[int, Piece] = {}
    glue_lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = _tokens(raw)
        if not toks:
            continue
        col, word = toks[0]
        if word == "piece":
            if len(toks) < 3:
                raise FormatError("expected: piece <id> <kind>", lineno, col)
            pid = _uint(toks[1], lineno, "a piece id")
            kcol, kname = toks[2]
            if kname == "bundle":
                if len(toks) != 4:
                    raise FormatError("expected: piece <id> bundle <b>", lineno, kcol)
                piece = bundle(_uint(toks[3], lineno, "a boundary count"))
            else:
                try:
                    kind = Kind(kname)
                except ValueError:
                    raise FormatError(f"unknown piece kind {kname!r}", lineno, kcol) from None
                if len(toks) != 3:
                    raise FormatError("unexpected trailing tokens", lineno, toks[3][0])
                piece = Piece(kind)
            if pid in pieces:
                raise FormatError(f"duplicate piece id {pid}", lineno, toks[1][0])
            pieces[pid] = piece
        elif word == "glue":
            if len(toks) != 7:
                raise FormatError(
                    "expected: glue <id>.<port> <id>.<port> <a> <b> <c> <d>", lineno, col)
            a, b = _port(toks[1], lineno), _port(toks[2], lineno)
            vals = [_int(t, lineno) for t in toks[3:]]
            glue_lines.append((lineno, toks, Gluing(a, b, matrix(*vals))))
        else:
            raise FormatError(f"unknown statement {word!r}", lineno, col)

    for lineno, toks, gl in glue_lines:
        for p, tok in ((gl.a, toks[1]), (gl.b, toks[2])):
            piece = pieces.get(p[0])
            if piece is None:
                raise FormatError(f"unknown piece {p[0]}", lineno, tok[0])
            if p[1] >= piece.ports:
                raise FormatError(
                    f"port {_port_str(p)} out of range ({piece} has {piece.ports} ports)",
                    lineno, tok[0])
        d = det(gl.matrix)
        if d != -1:
            raise FormatError(f"determinant {d:+d}, expected -1", lineno, toks[3][0])

    g = DecompositionGraph(pieces, tuple(gl for _, _, gl in glue_lines))
    problems = validate_graph(g)
    if problems:
        raise ValidationError(problems)
    return g


def serialize_graph(g: DecompositionGraph) -> str:
    """Canonical ``.gm`` text; ``g`` must be valid."""
    problems = validate_graph(g)
    if problems:
        raise ValidationError(problems)
    lines = [f"piece {v} {p}" for v, p in g.pieces.items()]
    for gl in g.gluings:
        (a, b), (c, d) = gl.matrix
        lines.append(f"glue {_port_str(gl.a)} {_port_str(gl.b)} {a} {b} {c} {d}")
    return "\n".join(lines) + "\n"


def smooth_buffers(g: DecompositionGraph) -> DecompositionGraph:
    """Remove thick tori that join two different ports, composing the gluings.

    A thick torus glued to itself (a torus bundle) is kept.
    """
    pieces = dict(g.pieces)
    by_port = {}
    for gl in g.gluings:
        by_port[gl.a] = gl
        by_port[gl.b] = gl
    for v in sorted(g.pieces):
        if pieces[v].kind is not Kind.THICK:
            continue
        g0, g1 = by_port.get((v, 0)), by_port.get((v, 1))
        if g0 is None or g1 is None or g0 is g1:
            continue
        x, y = g0.other((v, 0)), g1.other((v, 1))
        merged = Gluing(x, y, through_buffer(g0.matrix_from(x), g1.matrix_from((v, 1))))
        for p in ((v, 0), (v, 1)):
            del by_port[p]
        by_port[x] = merged
        by_port[y] = merged
        del pieces[v]
    gluings = {id(gl): gl for gl in by_port.values()}
    return DecompositionGraph(pieces, tuple(gluings.values()))


def _rooted_form(adj, labels, v, parent) -> str:
    kids = sorted(_rooted_form(adj, labels, w, v) for w in adj[v] if w != parent)
    return "(" + labels[v] + "".join(kids) + ")"


def tree_canonical_form(g: DecompositionGraph) -> str:
    """Isomorphism-invariant string of a tree whose vertices are labeled by kind."""
    if not g.is_tree():
        raise PreconditionError("canonical form is only defined for trees")
    adj = g.adjacency()
    labels = {v: str(p) for v, p in g.pieces.items()}
    # peel leaves to find the center (one vertex or one edge)
    deg = {v: len(ns) for v, ns in adj.items()}
    layer = [v for v, d in deg.items() if d <= 1]
    remaining = len(adj)
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return min(_rooted_form(adj, labels, c, None) for c in layer)
