"""Building round fold descriptors.

A labeled tree decomposition gives a directed descriptor.  A page with a
Morse function and a level-preserving monodromy gives one too, directed or not.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .decompose import TreeLabeling, _check_simple_tree, labeling_violations, parents
from .descriptor import (
    INNER, OUTER, TWO_IN, TWO_OUT, AnnulusBlock, Attachment, DiskBlock, InterfaceTorus,
    PantsBlock, RoundFoldDescriptor, verify_descriptor,
)
from .errors import FormatError, PreconditionError, ValidationError
from .graph import DecompositionGraph, Kind


def construct_directed(g: DecompositionGraph, labeling: TreeLabeling) -> RoundFoldDescriptor:
    """Directed round fold descriptor on a labeled plumbing-type tree.

    The root solid torus carries the outermost definite fold; every pants
    vertex carries an indefinite fold with its two legs inward; every other
    solid-torus leaf becomes a binding component.  Thick tori produce no
    fold.  Fold circles are ordered by label.
    """
    _check_simple_tree(g)
    for v, p in g.pieces.items():
        if p.kind not in (Kind.PANTS, Kind.SOLID, Kind.THICK):
            raise PreconditionError(f"piece {v} is a {p}; reduce bundles first")
    problems = labeling_violations(g, labeling)
    if problems:
        raise PreconditionError("invalid labeling: " + "; ".join(problems))
    root = labeling.root
    if g.kind(root) is not Kind.SOLID:
        raise PreconditionError(f"root {root} is a {g.pieces[root]}, expected a solid torus")
    labels = labeling.labels
    up = parents(g, labeling)

    leveled = sorted((v for v in g.pieces if g.kind(v) is Kind.PANTS), key=labels.get)
    leveled.append(root)
    level_of = {v: k for k, v in enumerate(leveled, 1)}
    t = len(leveled)
    tubes = sorted(v for v in g.pieces if g.kind(v) is Kind.SOLID and v != root)
    tube_index = {v: i for i, v in enumerate(tubes)}

    # a strand runs from a tube or pants vertex up to the next pants (or the
    # root), through any thick tori in between
    strands = []
    for v in tubes + leveled[:-1]:
        entry, anchor = v, up[v]
        while g.kind(anchor) is Kind.THICK:
            entry, anchor = anchor, up[anchor]
        strands.append((v, entry, anchor))

    blocks = [[DiskBlock(INNER) if v == root else PantsBlock(TWO_IN)] for v in leveled]
    annulus_at = {}
    for v, _, anchor in sorted(strands):
        lo = level_of.get(v, 0)
        for k in range(lo + 1, level_of[anchor]):
            annulus_at[(v, k)] = len(blocks[k - 1])
            blocks[k - 1].append(AnnulusBlock(1))

    # inner ports of each pants go to its children ordered by the neighbor id
    inner_port = {}
    for anchor in leveled:
        kids = sorted((entry, v) for v, entry, a in strands if a == anchor)
        for port, (_, v) in enumerate(kids):
            inner_port[v] = port

    tori = []
    counts = [0] * (t + 1)
    for v, _, anchor in strands:
        lo, hi = level_of.get(v, 0), level_of[anchor]
        if lo == 0:
            prev = Attachment(0, tube_index[v], 0)
        else:
            prev = Attachment(lo, 0, 2)
        for k in range(lo + 1, hi):
            cur = annulus_at[(v, k)]
            tori.append(InterfaceTorus(k - 1, 1, prev, Attachment(k, cur, 0)))
            prev = Attachment(k, cur, 1)
        tori.append(InterfaceTorus(hi - 1, 1, prev, Attachment(hi, 0, inner_port[v])))
        for j in range(lo, hi):
            counts[j] += 1
    return RoundFoldDescriptor(t, tuple(map(tuple, blocks)), len(tubes), tuple(tori), tuple(counts))


# --- Morse pages ------------------------------------------------------------

BIRTH, DEATH, MERGE, SPLIT = "birth", "death", "merge", "split"


@dataclass(frozen=True)
class Event:
    """One critical point of the page's Morse function."""

    kind: str
    inputs: tuple[str, ...] = ()
    outputs: tuple[str, ...] = ()

    @classmethod
    def birth(cls, c):
        return cls(BIRTH, (), (c,))

    @classmethod
    def death(cls, c):
        return cls(DEATH, (c,), ())

    @classmethod
    def merge(cls, c1, c2, c):
        return cls(MERGE, (c1, c2), (c,))

    @classmethod
    def split(cls, c, c1, c2):
        return cls(SPLIT, (c,), (c1, c2))

    @property
    def is_saddle(self) -> bool:
        return self.kind in (MERGE, SPLIT)


_SHAPES = {BIRTH: (0, 1), DEATH: (1, 0), MERGE: (2, 1), SPLIT: (1, 2)}


@dataclass(frozen=True)
class MorsePage:
    """Circle components of the page's level sets, critical level by level.

    ``boundary`` names the circles at the bottom level (the binding).  Event
    ``k`` happens at critical value ``k``.  ``monodromy[j]`` is the
    permutation the monodromy induces on the circles alive in regular level
    ``j`` (between critical values j and j + 1); fixed points are dropped and
    missing levels mean the identity.
    """

    boundary: tuple[str, ...]
    events: tuple[Event, ...]
    monodromy: dict[int, dict[str, str]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "boundary", tuple(self.boundary))
        object.__setattr__(self, "events", tuple(self.events))
        mono = {}
        for j, perm in sorted(self.monodromy.items()):
            moved = {a: b for a, b in sorted(perm.items()) if a != b}
            if moved:
                mono[j] = moved
        object.__setattr__(self, "monodromy", mono)

    def __hash__(self):
        return hash((self.boundary, self.events,
                     tuple((j, tuple(p.items())) for j, p in self.monodromy.items())))

    @property
    def t(self) -> int:
        return len(self.events)

    @property
    def initial_count(self) -> int:
        return len(self.boundary)

    def euler_characteristic(self) -> int:
        saddles = sum(1 for e in self.events if e.is_saddle)
        return (self.t - saddles) - saddles

    def perm(self, j: int) -> dict[str, str]:
        return self.monodromy.get(j, {})

    def regions(self) -> list[list[str]]:
        """Circles alive in each regular level 0..t; raises on a bad event sequence."""
        problems, regions = _walk(self)
        if problems:
            raise ValidationError(problems)
        return regions


def _walk(page: MorsePage):
    problems = []
    alive = list(page.boundary)
    if len(set(alive)) != len(alive):
        problems.append("boundary circle names repeat")
    regions = [list(alive)]
    for k, e in enumerate(page.events, 1):
        shape = _SHAPES.get(e.kind)
        if shape is None:
            problems.append(f"event {k}: unknown kind {e.kind!r}")
            regions.append(list(alive))
            continue
        if (len(e.inputs), len(e.outputs)) != shape:
            problems.append(f"event {k}: {e.kind} takes {shape[0]} in and {shape[1]} out")
        for c in e.inputs:
            if c not in alive:
                problems.append(f"event {k}: circle {c!r} is not alive")
        if len(set(e.inputs)) != len(e.inputs) or len(set(e.outputs)) != len(e.outputs):
            problems.append(f"event {k}: repeated circle name")
        alive = [c for c in alive if c not in e.inputs]
        for c in e.outputs:
            if c in alive:
                problems.append(f"event {k}: circle {c!r} is already alive")
        alive += list(e.outputs)
        regions.append(list(alive))
    if alive:
        problems.append(f"{len(alive)} circles remain above the last critical value")
    return problems, regions


def validate_morse(page: MorsePage) -> list[str]:
    """Problems with the events or with the monodromy's compatibility with them."""
    problems, regions = _walk(page)
    if problems:
        return problems
    t = page.t
    for j, perm in page.monodromy.items():
        if not 0 <= j < t:
            problems.append(f"monodromy at level {j}: no such regular level")
            continue
        here = set(regions[j])
        if set(perm) - here or set(perm.values()) - here or \
                len(set(perm.values())) != len(perm) or set(perm) != set(perm.values()):
            problems.append(f"monodromy at level {j}: not a permutation of the circles there")
    if problems:
        return problems
    if page.perm(0):
        problems.append("monodromy at level 0 moves boundary circles; it must fix the boundary")
    for k, e in enumerate(page.events, 1):
        below, above = page.perm(k - 1), page.perm(k)
        for side, perm, names in (("below", below, e.inputs), ("above", above, e.outputs)):
            for c in names:
                if perm.get(c, c) not in names:
                    problems.append(
                        f"event {k}: monodromy {side} sends {c!r} off the critical component")
        passive = [c for c in regions[k - 1] if c not in e.inputs]
        for c in passive:
            if below.get(c, c) != above.get(c, c):
                problems.append(
                    f"event {k}: monodromy differs on {c!r} across the critical value")
    return problems


def _orbits(names, perm):
    seen = set()
    out = []
    for c in names:
        if c in seen:
            continue
        orbit = [c]
        seen.add(c)
        nxt = perm.get(c, c)
        while nxt != c:
            orbit.append(nxt)
            seen.add(nxt)
            nxt = perm.get(nxt, nxt)
        out.append(tuple(orbit))
    return out


def descriptor_from_morse(page: MorsePage) -> RoundFoldDescriptor:
    """Round fold descriptor whose page and monodromy are ``page``.

    Each event becomes the singular block of its level: births and deaths
    give disks, merges and splits give pants (twisted when the monodromy
    swaps the two legs).  Untouched circles ride along as annulus blocks,
    one per monodromy cycle.
    """
    problems = validate_morse(page)
    if problems:
        raise ValidationError(problems)
    if page.t < 1:
        raise PreconditionError("a page needs at least one critical point")
    regions = page.regions()
    t = page.t
    blocks = []
    # owner[(j, c)]: the (level, index, port) whose outer side carries c in region j
    owner = {(0, c): (0, i, 0) for i, c in enumerate(page.boundary)}
    tori = []

    def attach(j, orbit, upper):
        lower = {owner[(j, c)] for c in orbit}
        if len(lower) != 1:
            raise ValidationError([f"region {j}: circles {orbit} come from different ports"])
        tori.append(InterfaceTorus(j, len(orbit), Attachment(*lower.pop()), Attachment(*upper)))

    for k, e in enumerate(page.events, 1):
        below, above = page.perm(k - 1), page.perm(k)
        level = []
        if e.kind in (BIRTH, DEATH):
            level.append(DiskBlock(OUTER if e.kind == BIRTH else INNER))
            in_groups = [e.inputs] if e.inputs else []
            out_groups = [e.outputs] if e.outputs else []
        elif e.kind == MERGE:
            twisted = below.get(e.inputs[0], e.inputs[0]) == e.inputs[1]
            level.append(PantsBlock(TWO_IN, twisted))
            in_groups = [e.inputs] if twisted else [(c,) for c in e.inputs]
            out_groups = [e.outputs]
        else:
            twisted = above.get(e.outputs[0], e.outputs[0]) == e.outputs[1]
            level.append(PantsBlock(TWO_OUT, twisted))
            in_groups = [e.inputs]
            out_groups = [e.outputs] if twisted else [(c,) for c in e.outputs]
        port = 0
        for grp in in_groups:
            attach(k - 1, grp, (k, 0, port))
            port += 1
        for grp in out_groups:
            for c in grp:
                owner[(k, c)] = (k, 0, port)
            port += 1
        passive = [c for c in regions[k - 1] if c not in e.inputs]
        for orbit in _orbits(passive, below):
            idx = len(level)
            level.append(AnnulusBlock(len(orbit)))
            attach(k - 1, orbit, (k, idx, 0))
            for c in orbit:
                owner[(k, c)] = (k, idx, 1)
        blocks.append(tuple(level))
    counts = tuple(len(r) for r in regions)
    d = RoundFoldDescriptor(t, tuple(blocks), len(page.boundary), tuple(tori), counts)
    problems = verify_descriptor(d)
    if problems:
        raise ValidationError(problems)
    return d


def _page_components(page: MorsePage) -> int:
    """Connected components of the page surface itself."""
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    current = {}
    for c in page.boundary:
        node = ("b", c)
        parent[node] = node
        current[c] = node
    for k, e in enumerate(page.events, 1):
        node = ("e", k)
        parent[node] = node
        for c in e.inputs:
            parent[find(current.pop(c))] = find(node)
        for c in e.outputs:
            current[c] = node
    return len({find(x) for x in parent})


def identify_trivial_monodromy(page: MorsePage) -> str:
    """Name the manifold of a connected bounded page with identity monodromy.

    Returns "S3" or "#_n(S1xS2)" with n = 1 - chi(page).
    """
    problems = validate_morse(page)
    if problems:
        raise ValidationError(problems)
    if page.monodromy:
        raise PreconditionError("monodromy is not the identity")
    if not page.boundary:
        raise PreconditionError("page is closed; the manifold is a surface bundle")
    if _page_components(page) != 1:
        raise PreconditionError("page is disconnected")
    n = 1 - page.euler_characteristic()
    return "S3" if n == 0 else f"#_{n}(S1xS2)"


# --- .mf text format --------------------------------------------------------

_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_morse(text: str) -> MorsePage:
    """Read a ``.mf`` document (not validated beyond syntax)."""
    boundary = None
    events = {}
    monodromy = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        words = line.split()
        if not words:
            continue
        col = raw.index(words[0]) + 1
        head = words[0]
        if head == "boundary":
            if len(words) < 2 or not words[1].isdigit():
                raise FormatError("expected: boundary <n> [names...]", lineno, col)
            n = int(words[1])
            names = words[2:] or [str(i) for i in range(n)]
            if len(names) != n:
                raise FormatError(f"{len(names)} names for {n} boundary circles", lineno, col)
            boundary = tuple(names)
        elif head == "event":
            if len(words) < 3 or not words[1].isdigit():
                raise FormatError("expected: event <k> <kind> ...", lineno, col)
            k, kind, args = int(words[1]), words[2], words[3:]
            if k in events:
                raise FormatError(f"second event at level {k}", lineno, col)
            if kind in (BIRTH, DEATH) and len(args) == 1:
                ev = Event.birth(args[0]) if kind == BIRTH else Event.death(args[0])
            elif kind == MERGE and len(args) == 4 and args[2] == "->":
                ev = Event.merge(args[0], args[1], args[3])
            elif kind == SPLIT and len(args) == 4 and args[1] == "->":
                ev = Event.split(args[0], args[2], args[3])
            else:
                raise FormatError(f"malformed {kind} event", lineno, col)
            events[k] = ev
        elif head == "monodromy":
            if len(words) < 2 or not words[1].isdigit():
                raise FormatError("expected: monodromy <level> (<cycle>)...", lineno, col)
            j = int(words[1])
            parts = line.split(None, 2)
            body = parts[2] if len(parts) == 3 else ""
            if _CYCLE.sub("", body).strip():
                raise FormatError("monodromy must be written as cycles", lineno, col)
            perm = {}
            for cyc in _CYCLE.findall(body):
                names = cyc.split()
                for a, b in zip(names, names[1:] + names[:1]):
                    if a in perm:
                        raise FormatError(f"circle {a!r} appears twice", lineno, col)
                    perm[a] = b
            monodromy[j] = perm
        else:
            raise FormatError(f"unknown statement {head!r}", lineno, col)
    if boundary is None:
        raise FormatError("missing boundary statement")
    if sorted(events) != list(range(1, len(events) + 1)):
        raise FormatError("events must be numbered 1..t without gaps")
    return MorsePage(boundary, tuple(events[k] for k in sorted(events)), monodromy)


def serialize_morse(page: MorsePage) -> str:
    lines = [" ".join(["boundary", str(len(page.boundary)), *page.boundary])]
    for k, e in enumerate(page.events, 1):
        if e.kind == MERGE:
            lines.append(f"event {k} merge {e.inputs[0]} {e.inputs[1]} -> {e.outputs[0]}")
        elif e.kind == SPLIT:
            lines.append(f"event {k} split {e.inputs[0]} -> {e.outputs[0]} {e.outputs[1]}")
        else:
            lines.append(f"event {k} {e.kind} {(e.inputs + e.outputs)[0]}")
    for j, perm in page.monodromy.items():
        cycles = _orbits(sorted(perm), perm)
        lines.append(f"monodromy {j} " + "".join("(" + " ".join(c) + ")" for c in cycles))
    return "\n".join(lines) + "\n"
