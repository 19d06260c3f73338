"""Combinatorial descriptors of round fold maps.

The critical value set is the circles of radius 1..t.  Level ``k`` is the
annulus of radii [k - 1/2, k + 1/2]; its preimage splits into blocks, exactly
one of which contains the fold circle over radius k.  Layer ``j`` is the
circle of radius j + 1/2, whose preimage is a union of interface tori.  The
binding tubes (a neighborhood of the preimage of the origin) act as level-0
blocks with a single outer port each.

Every block lists its ports inner side first.  A port carries ``mu`` fiber
circles: the number of circles of a regular fiber that its torus sweeps out.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from .errors import FormatError, InconsistencyError, PreconditionError, ValidationError
from .graph import (
    FLIP, PLUMB, SOLID, PANTS, THICK, DecompositionGraph, Gluing,
)

INNER, OUTER = "inner", "outer"
INWARD, OUTWARD = "inward", "outward"
TWO_IN = "2in1out"
TWO_OUT = "1in2out"


@dataclass(frozen=True)
class DiskBlock:
    """Solid torus around a definite fold circle; ``side`` faces its boundary."""

    side: str = INNER
    singular = True

    def ports(self) -> tuple[tuple[str, int], ...]:
        return ((self.side, 1),)

    def __str__(self):
        return f"disk {self.side}"


@dataclass(frozen=True)
class PantsBlock:
    """Pants bundle around an indefinite fold circle.

    When ``twisted`` the monodromy swaps the two legs on the two-circle side,
    so those legs sweep one torus of multiplicity 2.
    """

    orientation: str = TWO_IN
    twisted: bool = False
    singular = True

    def ports(self):
        if self.orientation == TWO_IN:
            if self.twisted:
                return ((INNER, 2), (OUTER, 1))
            return ((INNER, 1), (INNER, 1), (OUTER, 1))
        if self.twisted:
            return ((INNER, 1), (OUTER, 2))
        return ((INNER, 1), (OUTER, 1), (OUTER, 1))

    def __str__(self):
        return f"pants {self.orientation}" + (" twisted" if self.twisted else "")


@dataclass(frozen=True)
class AnnulusBlock:
    """``m`` annuli permuted cyclically by the monodromy; no fold."""

    m: int = 1
    singular = False

    def ports(self):
        return ((INNER, self.m), (OUTER, self.m))

    def __str__(self):
        return f"annulus {self.m}"


Block = Union[DiskBlock, PantsBlock, AnnulusBlock]
TUBE_PORTS = ((OUTER, 1),)


@dataclass(frozen=True, order=True)
class Attachment:
    """A port of a block: level 0 means binding tube ``index``."""

    level: int
    index: int
    port: int

    def __str__(self):
        return f"{self.level}:{self.index}.{self.port}"


@dataclass(frozen=True, order=True)
class InterfaceTorus:
    """Torus over radius ``layer + 1/2`` joining level ``layer`` to ``layer + 1``."""

    layer: int
    mu: int
    lower: Attachment
    upper: Attachment


@dataclass(frozen=True)
class Violation:
    code: str
    message: str

    def __str__(self):
        return self.message


@dataclass(frozen=True)
class RoundFoldDescriptor:
    """Blocks stacked by level, glued along interface tori.

    ``counts[j]`` is the number of components of a regular fiber over radius
    in (j, j + 1).  ``directions`` is derived from the counts and cached; a
    stale cache is reported by the verifier.
    """

    t: int
    blocks: tuple[tuple[Block, ...], ...]
    binding: int
    interfaces: tuple[InterfaceTorus, ...]
    counts: tuple[int, ...]
    directions: tuple[str, ...] | None = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(tuple(bs) for bs in self.blocks))
        object.__setattr__(self, "interfaces", tuple(sorted(self.interfaces)))
        object.__setattr__(self, "counts", tuple(self.counts))
        if self.directions is None:
            try:
                dirs = _directions(self.t, self.counts)
            except PreconditionError:
                dirs = None
            object.__setattr__(self, "directions", dirs)
        else:
            object.__setattr__(self, "directions", tuple(self.directions))

    def level(self, k: int) -> tuple[Block, ...]:
        return self.blocks[k - 1]

    def interfaces_at(self, layer: int) -> list[InterfaceTorus]:
        return [x for x in self.interfaces if x.layer == layer]

    def singular_block(self, k: int) -> Block:
        return next(b for b in self.level(k) if b.singular)


def _directions(t, counts) -> tuple[str, ...]:
    if t < 1 or len(counts) != t + 1:
        raise PreconditionError(f"need {t + 1} fiber counts for {t} levels, got {len(counts)}")
    out = []
    for k in range(1, t + 1):
        diff = counts[k - 1] - counts[k]
        if abs(diff) != 1:
            raise PreconditionError(
                f"inconsistent counts: level {k} changes the fiber count by {abs(diff)}")
        out.append(INWARD if diff == 1 else OUTWARD)
    return tuple(out)


def compute_directions(d: RoundFoldDescriptor) -> tuple[str, ...]:
    """Normal orientation of each critical circle, innermost first.

    A circle is inward-directed when the regular fiber just inside it has
    one more component than the fiber just outside.
    """
    return _directions(d.t, d.counts)


def is_directed(d: RoundFoldDescriptor) -> bool:
    dirs = compute_directions(d)
    all_inward = all(x == INWARD for x in dirs)
    if all_inward != (d.counts[0] == d.t):
        raise InconsistencyError(
            f"direction test says {all_inward} but innermost count {d.counts[0]} "
            f"vs {d.t} circles says otherwise")
    return all_inward


def _port_table(d: RoundFoldDescriptor) -> dict[tuple[int, int], tuple[tuple[str, int], ...]]:
    table = {(0, i): TUBE_PORTS for i in range(d.binding)}
    for k, level in enumerate(d.blocks, 1):
        for i, b in enumerate(level):
            table[(k, i)] = b.ports()
    return table


def verify_descriptor(d: RoundFoldDescriptor) -> list[Violation]:
    """All structural problems of ``d``; empty means valid."""
    out: list[Violation] = []

    def bad(code, message):
        out.append(Violation(code, message))

    t = d.t
    if t < 1:
        bad("levels", f"descriptor needs at least one level, got t = {t}")
        return out
    if len(d.blocks) != t:
        bad("levels", f"{len(d.blocks)} block levels for t = {t}")
    if len(d.counts) != t + 1:
        bad("counts", f"{len(d.counts)} fiber counts, expected {t + 1}")
        return out
    if d.binding < 0 or any(n < 0 for n in d.counts):
        bad("counts", "negative component count")
        return out

    levels = list(d.blocks[:t]) + [()] * (t - len(d.blocks))
    for k, level in enumerate(levels, 1):
        for i, b in enumerate(level):
            if isinstance(b, DiskBlock) and b.side in (INNER, OUTER):
                continue
            if isinstance(b, PantsBlock) and b.orientation in (TWO_IN, TWO_OUT):
                continue
            if isinstance(b, AnnulusBlock) and b.m >= 1:
                continue
            bad("block", f"level {k}: block {i} is malformed ({b!r})")

    # one fold circle per level
    for k, level in enumerate(levels, 1):
        n = sum(1 for b in level if b.singular)
        if n == 0:
            bad("missing-singular", f"level {k}: no singular block")
        elif n > 1:
            bad("extra-singular", f"level {k}: {n} singular blocks, expected 1")

    if levels[t - 1] != (DiskBlock(INNER),):
        bad("outermost-level",
            f"level {t}: outermost level must be a single inner disk block, "
            f"got [{', '.join(str(b) for b in levels[t - 1])}]")
    if d.counts[t] != 0:
        bad("outermost-count", f"region {t}: fiber count {d.counts[t]}, expected 0")

    steps_ok = True
    for k in range(1, t + 1):
        jump = abs(d.counts[k] - d.counts[k - 1])
        if jump != 1:
            steps_ok = False
            bad("count-jump", f"level {k}: fiber count jumps by {jump}")

    if d.counts[0] != d.binding:
        bad("binding-count",
            f"region 0: fiber count {d.counts[0]} but {d.binding} binding components")

    # interface tori: sides, multiplicities, perfect matching of ports
    table = _port_table(d)
    usage: dict[tuple[int, int, int], int] = {}
    for x in d.interfaces:
        where = f"torus at {x.layer}.5"
        if not 0 <= x.layer < t:
            bad("layer", f"{where}: layer out of range")
            continue
        for att, level, side in ((x.lower, x.layer, OUTER), (x.upper, x.layer + 1, INNER)):
            if att.level != level:
                bad("port-matching", f"{where}: attachment {att} is not on level {level}")
                continue
            ports = table.get((att.level, att.index))
            if ports is None or not 0 <= att.port < len(ports):
                bad("port-matching", f"{where}: no port {att}")
                continue
            usage[(att.level, att.index, att.port)] = usage.get(
                (att.level, att.index, att.port), 0) + 1
            pside, pmu = ports[att.port]
            if pside != side:
                bad("port-matching", f"{where}: port {att} faces {pside}, expected {side}")
            if att.level == 0 and x.mu != 1:
                bad("binding-mu", f"{where}: binding tube {att.index} carries mu {x.mu}, expected 1")
            elif pmu != x.mu:
                bad("mu-mismatch", f"{where}: mu {x.mu} but port {att} carries {pmu}")
    for (lvl, idx), ports in sorted(table.items()):
        for p in range(len(ports)):
            n = usage.get((lvl, idx, p), 0)
            if n != 1:
                what = "not attached" if n == 0 else f"attached {n} times"
                bad("port-matching", f"port {lvl}:{idx}.{p} {what}")

    # fiber counts seen from both sides of every region
    for j in range(t + 1):
        if j == 0:
            below = d.binding
        else:
            below = sum(mu for b in levels[j - 1] for side, mu in b.ports() if side == OUTER)
        above = 0 if j == t else sum(
            mu for b in levels[j] for side, mu in b.ports() if side == INNER)
        tori = sum(x.mu for x in d.interfaces if x.layer == j)
        if not below == above == tori == d.counts[j]:
            bad("count-mismatch",
                f"region {j}: count {d.counts[j]}, blocks below give {below}, "
                f"blocks above give {above}, tori carry {tori}")

    # the manifold is connected
    parent = {key: key for key in table}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x in d.interfaces:
        u, v = (x.lower.level, x.lower.index), (x.upper.level, x.upper.index)
        if u in parent and v in parent:
            parent[find(u)] = find(v)
    if len({find(key) for key in table}) > 1:
        bad("disconnected", "block adjacency graph is not connected")

    if steps_ok:
        dirs = _directions(t, d.counts)
        if d.directions is not None and tuple(d.directions) != dirs:
            bad("direction-cache",
                f"cached directions {' '.join(d.directions)} disagree with counts "
                f"({' '.join(dirs)})")
        if all(x == INWARD for x in dirs):
            for k, level in enumerate(levels, 1):
                if any(isinstance(b, PantsBlock) and b.twisted for b in level):
                    bad("twisted-directed",
                        f"level {k}: twisted pants block in a directed descriptor")
    return out


def extract_decomposition_graph(d: RoundFoldDescriptor) -> DecompositionGraph:
    """Decomposition graph cut out by the interface tori.

    Binding tubes and disk blocks become solid tori; a pants block or a
    single annulus keeps its own shape.  Tubes are
    glued with PLUMB (meridian to fiber), block-to-block tori with FLIP, so
    the graph describes the manifold whose page monodromy is trivial.
    """
    problems = verify_descriptor(d)
    if problems:
        raise ValidationError(problems)
    for k, level in enumerate(d.blocks, 1):
        for b in level:
            if isinstance(b, PantsBlock) and b.twisted:
                raise PreconditionError(f"level {k}: twisted pants block not representable")
            if isinstance(b, AnnulusBlock) and b.m > 1:
                raise PreconditionError(
                    f"level {k}: permuted annulus block (m = {b.m}) not representable")
    ids = {(0, i): i for i in range(d.binding)}
    pieces = {i: SOLID for i in range(d.binding)}
    nid = d.binding
    for k, level in enumerate(d.blocks, 1):
        for i, b in enumerate(level):
            ids[(k, i)] = nid
            pieces[nid] = SOLID if isinstance(b, DiskBlock) else (
                PANTS if isinstance(b, PantsBlock) else THICK)
            nid += 1
    gluings = []
    for x in d.interfaces:
        a = (ids[(x.lower.level, x.lower.index)], x.lower.port)
        b = (ids[(x.upper.level, x.upper.index)], x.upper.port)
        gluings.append(Gluing(a, b, PLUMB if x.lower.level == 0 else FLIP))
    return DecompositionGraph(pieces, tuple(gluings))


def block_graph_edges(d: RoundFoldDescriptor) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Block-adjacency edges (one per interface torus)."""
    return [((x.lower.level, x.lower.index), (x.upper.level, x.upper.index))
            for x in d.interfaces]


# --- .rfd text format -------------------------------------------------------

_ATT = re.compile(r"^(\d+):(\d+)\.(\d+)$")


def _block_str(b: Block) -> str:
    return str(b)


def serialize_descriptor(d: RoundFoldDescriptor) -> str:
    lines = [f"levels {d.t}", f"binding {d.binding}",
             "counts " + " ".join(str(n) for n in d.counts)]
    for k, level in enumerate(d.blocks, 1):
        for b in level:
            lines.append(f"block {k} {_block_str(b)}")
    for x in d.interfaces:
        lines.append(f"torus {x.layer}.5 mu {x.mu} {x.lower} {x.upper}")
    if d.directions is not None:
        lines.append("directions " + " ".join(d.directions))
    return "\n".join(lines) + "\n"


def _parse_block(words, lineno, col) -> Block:
    if not words:
        raise FormatError("missing block kind", lineno, col)
    kind = words[0]
    if kind == "disk" and len(words) == 2 and words[1] in (INNER, OUTER):
        return DiskBlock(words[1])
    if kind == "pants" and len(words) in (2, 3) and words[1] in (TWO_IN, TWO_OUT):
        if len(words) == 3 and words[2] != "twisted":
            raise FormatError(f"unexpected {words[2]!r}", lineno, col)
        return PantsBlock(words[1], len(words) == 3)
    if kind == "annulus" and len(words) == 2 and words[1].isdigit():
        return AnnulusBlock(int(words[1]))
    raise FormatError("expected disk inner|outer, pants 2in1out|1in2out [twisted], "
                      "or annulus <m>", lineno, col)


def parse_descriptor(text: str) -> RoundFoldDescriptor:
    """Read a ``.rfd`` document.  The result is not verified."""
    t = binding = None
    counts = None
    directions = None
    blocks: dict[int, list[Block]] = {}
    tori = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        words = raw.split("#", 1)[0].split()
        if not words:
            continue
        col = raw.index(words[0]) + 1
        head, rest = words[0], words[1:]
        try:
            if head == "levels" and len(rest) == 1:
                t = int(rest[0])
            elif head == "binding" and len(rest) == 1:
                binding = int(rest[0])
            elif head == "counts":
                counts = tuple(int(w) for w in rest)
            elif head == "directions":
                if any(w not in (INWARD, OUTWARD) for w in rest):
                    raise FormatError("directions must be inward or outward", lineno, col)
                directions = tuple(rest)
            elif head == "block" and rest:
                blocks.setdefault(int(rest[0]), []).append(_parse_block(rest[1:], lineno, col))
            elif head == "torus" and len(rest) == 5 and rest[1] == "mu":
                layer_text = rest[0]
                if not layer_text.endswith(".5"):
                    raise FormatError("torus radius must look like k.5", lineno, col)
                ends = []
                for w in rest[3:]:
                    m = _ATT.match(w)
                    if not m:
                        raise FormatError(f"bad port reference {w!r}", lineno, col)
                    ends.append(Attachment(*map(int, m.groups())))
                tori.append(InterfaceTorus(int(layer_text[:-2]), int(rest[2]), *ends))
            else:
                raise FormatError(f"cannot parse statement {head!r}", lineno, col)
        except ValueError as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(str(exc), lineno, col) from None
    if t is None or binding is None or counts is None:
        raise FormatError("missing one of: levels, binding, counts")
    if any(k < 1 or k > t for k in blocks):
        raise FormatError("block level out of range")
    levels = tuple(tuple(blocks.get(k, ())) for k in range(1, t + 1))
    return RoundFoldDescriptor(t, levels, binding, tuple(tori), counts, directions)
