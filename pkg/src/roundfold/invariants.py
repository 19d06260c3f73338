"""Homology of graph manifolds and the directed-map decision.

Open book summaries of descriptors live here too.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .decompose import TreeLabeling, insert_plumbing_buffers, label_tree, reduce_to_pants
from .descriptor import (
    AnnulusBlock, DiskBlock, RoundFoldDescriptor, compute_directions, verify_descriptor,
)
from .errors import InconsistencyError, PreconditionError, ValidationError
from .graph import DecompositionGraph, TorusBundleInput, validate_graph
from .snf import cokernel_factors


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank plus Z/d_1 + Z/d_2 + ... with d_1 | d_2 | ..."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.free_rank < 0 or any(d < 2 for d in self.torsion):
            raise ValueError("invariant factors must be >= 2 and the rank >= 0")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError(f"torsion {self.torsion} is not a divisibility chain")

    @classmethod
    def cokernel(cls, relations: list[list[int]], generators: int) -> AbelianGroup:
        """Z^generators modulo the span of the relation rows."""
        free, torsion = cokernel_factors(relations, generators)
        return cls(free, tuple(torsion))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order(self) -> int | None:
        """Number of elements, or None when infinite."""
        if self.free_rank:
            return None
        n = 1
        for x in self.torsion:
            n *= x
        return n

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{x}" for x in self.torsion]
        return " + ".join(parts) if parts else "0"


def _port_classes(ports: int, offset: int):
    """Homology classes of (section, fiber) at each port of a genus-0 bundle.

    Generators: the first ``ports - 1`` boundary sections, then the fiber.
    The last boundary section is minus the sum of the others.
    """
    sections = max(ports - 1, 0)
    fiber = offset + sections
    classes = []
    for i in range(ports):
        if i < sections:
            mu = {offset + i: 1}
        else:
            mu = {offset + j: -1 for j in range(sections)}
        classes.append((mu, {fiber: 1}))
    return classes, sections + 1


def first_homology(g: DecompositionGraph) -> AbelianGroup:
    """H_1 of the glued manifold with integer coefficients.

    Each piece contributes its sections and fiber; each gluing equates the
    two boundary bases through its matrix; each edge off a spanning tree adds
    a free loop generator.
    """
    problems = validate_graph(g)
    if problems:
        raise ValidationError(problems)
    classes = {}
    ngens = 0
    for v, piece in g.pieces.items():
        port_cls, used = _port_classes(piece.ports, ngens)
        for k, c in enumerate(port_cls):
            classes[(v, k)] = c
        ngens += used
    loops = g.cycle_rank()
    ngens += loops
    rows = []
    for gl in g.gluings:
        ca, cb = classes[gl.a], classes[gl.b]
        m = gl.matrix
        for k in range(2):
            row = [0] * ngens
            for gen, coef in ca[k].items():
                row[gen] += coef
            for r in range(2):
                for gen, coef in cb[r].items():
                    row[gen] -= m[r][k] * coef
            if any(row):
                rows.append(row)
    return AbelianGroup.cokernel(rows, ngens)


def graph_betti(g: DecompositionGraph) -> int:
    """First Betti number |E| - |V| + 1 of the (connected) decomposition graph."""
    if not g.pieces or not g.is_connected():
        raise PreconditionError("graph Betti number needs a connected, non-empty graph")
    return len(g.gluings) - len(g.pieces) + 1


# --- open books --------------------------------------------------------------

DEFINITE, INDEFINITE = "definite", "indefinite"


@dataclass(frozen=True)
class OpenBookSummary:
    binding_components: int
    page_euler_char: int
    page_boundary: int
    critical_sequence: tuple[tuple[int, str, str], ...]
    page_connected: bool | None = None

    @property
    def definite(self) -> int:
        return sum(1 for _, kind, _ in self.critical_sequence if kind == DEFINITE)

    @property
    def indefinite(self) -> int:
        return sum(1 for _, kind, _ in self.critical_sequence if kind == INDEFINITE)

    @property
    def page_genus(self) -> int | None:
        if not self.page_connected:
            return None
        twice = 2 - self.page_euler_char - self.page_boundary
        if twice < 0 or twice % 2:
            raise InconsistencyError(
                f"connected page with chi {self.page_euler_char} and "
                f"{self.page_boundary} boundary circles has no integral genus")
        return twice // 2


def _page_connected(d: RoundFoldDescriptor) -> bool | None:
    """Connectivity of the page; None when permuted circles make it unclear."""
    if any(x.mu != 1 for x in d.interfaces):
        return None
    if any(isinstance(b, AnnulusBlock) and b.m != 1 for lvl in d.blocks for b in lvl):
        return None
    nodes = [(k, i) for k, lvl in enumerate(d.blocks, 1) for i in range(len(lvl))]
    parent = {n: n for n in nodes}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x in d.interfaces:
        if x.lower.level == 0:
            continue
        parent[find((x.lower.level, x.lower.index))] = find((x.upper.level, x.upper.index))
    return len({find(n) for n in nodes}) == 1


def openbook_summary(d: RoundFoldDescriptor) -> OpenBookSummary:
    """Binding and page data, with each critical circle's fold type."""
    problems = verify_descriptor(d)
    if problems:
        raise ValidationError(problems)
    dirs = compute_directions(d)
    seq = []
    for k in range(1, d.t + 1):
        b = d.singular_block(k)
        kind = DEFINITE if isinstance(b, DiskBlock) else INDEFINITE
        seq.append((k, kind, dirs[k - 1]))
    definite = sum(1 for _, kind, _ in seq if kind == DEFINITE)
    chi = definite - (d.t - definite)
    return OpenBookSummary(d.counts[0], chi, d.counts[0], tuple(seq), _page_connected(d))


# --- directed round fold maps ------------------------------------------------

class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class DirectedDecision:
    """Answer to "does this manifold admit a directed round fold map?".

    YES comes with a labeling of ``graph`` (the buffered tree it was found
    on); NO names the obstruction; UNKNOWN carries a report.
    """

    verdict: Verdict
    detail: str
    witness: TreeLabeling | None = None
    graph: DecompositionGraph | None = None

    def __str__(self):
        return f"{self.verdict.value.upper()}: {self.detail}"


def admits_directed(x: DecompositionGraph | TorusBundleInput) -> DirectedDecision:
    from .fixtures import known_negative

    if isinstance(x, TorusBundleInput):
        if abs(x.trace) >= 3:
            return DirectedDecision(
                Verdict.NO,
                f"torus-bundle trace: monodromy trace {x.trace} has |trace| >= 3, so the "
                "normal form plumbing graph contains a loop")
        g = x.to_graph()
    else:
        g = x
    problems = validate_graph(g)
    if problems:
        raise ValidationError(problems)
    g = reduce_to_pants(g)
    betti = graph_betti(g)
    h1 = first_homology(g)
    if h1.free_rank < betti:
        raise InconsistencyError(
            f"rank H1 = {h1.free_rank} is smaller than the graph Betti number {betti}")
    if h1.free_rank == 0 and betti:
        raise InconsistencyError("rational homology sphere with a non-tree decomposition graph")
    if betti == 0:
        buffered = insert_plumbing_buffers(g)
        labeling = label_tree(buffered)
        return DirectedDecision(
            Verdict.YES, "decomposition graph is a tree", witness=labeling, graph=buffered)
    candidates = [x, g] if isinstance(x, DecompositionGraph) else [g]
    family = next(filter(None, map(known_negative, candidates)), None)
    if family is not None:
        return DirectedDecision(
            Verdict.NO, f"known product family: {family} has non-vanishing cup products "
            "in rational cohomology")
    return DirectedDecision(
        Verdict.UNKNOWN,
        f"graph Betti number {betti} > 0 (rank H1 = {h1.free_rank}, H1 = {h1}); "
        "deciding needs the normal form plumbing graph, which is not computed")


def check_witness(decision: DirectedDecision) -> list[str]:
    """Problems with a YES decision's witness; empty when it checks out."""
    from .decompose import labeling_violations

    if decision.verdict is not Verdict.YES:
        return []
    if decision.witness is None or decision.graph is None:
        return ["YES without a witness"]
    return labeling_violations(decision.graph, decision.witness)
