"""Random generators and independent oracles shared by the test modules.

Nothing here imports the package's own SNF or labeling code:
the oracles are meant to disagree with the library if the library is wrong.
"""
from __future__ import annotations

import functools
import itertools
import random
from fractions import Fraction
from math import gcd

import networkx as nx

from roundfold.graph import PANTS, SOLID, THICK, DecompositionGraph, Gluing, Kind

KIND_BY_DEGREE = {1: SOLID, 2: THICK, 3: PANTS}


@functools.cache
def _det_minus_one_table(bound: int):
    r = range(-bound, bound + 1)
    return [((a, b), (c, d)) for a, b, c, d in itertools.product(r, r, r, r) if a * d - b * c == -1]


def random_det_minus_one(rng: random.Random, bound: int = 3):
    """Uniform over det -1 matrices with entries in [-bound, bound]."""
    return rng.choice(_det_minus_one_table(bound))


def random_tree_shape(rng: random.Random, n: int) -> list[tuple[int, int]]:
    """Edges of a random tree on n >= 2 vertices with every degree <= 3."""
    deg = [0] * n
    edges = []
    for v in range(1, n):
        u = rng.choice([w for w in range(v) if deg[w] < 3])
        edges.append((u, v))
        deg[u] += 1
        deg[v] += 1
    return edges


def graph_from_edges(n, edges, rng, kinds=None, bound=3) -> DecompositionGraph:
    """Pieces sized by degree; ports handed out in edge order."""
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    if kinds is None:
        kinds = {v: KIND_BY_DEGREE[deg[v]] for v in range(n)}
    used = [0] * n
    gluings = []
    for u, v in edges:
        pu = (u, used[u])
        used[u] += 1
        pv = (v, used[v])
        used[v] += 1
        gluings.append(Gluing(pu, pv, random_det_minus_one(rng, bound)))
    return DecompositionGraph(dict(kinds), tuple(gluings))


def random_tree(rng: random.Random, n: int, bound: int = 3) -> DecompositionGraph:
    return graph_from_edges(n, random_tree_shape(rng, n), rng, bound=bound)


def random_graph(rng: random.Random, n: int, extra: int, bound: int = 5) -> DecompositionGraph:
    """Connected multigraph: a random tree plus ``extra`` random edges (loops allowed).

    Vertices of degree 1..3 become solid/thick/pants pieces; higher degrees
    become ``bundle <deg>`` pieces.
    """
    from roundfold.graph import bundle

    edges = random_tree_shape(rng, n) if n > 1 else []
    for _ in range(extra):
        edges.append((rng.randrange(n), rng.randrange(n)))
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    kinds = {v: KIND_BY_DEGREE.get(deg[v]) or bundle(deg[v]) for v in range(n)}
    return graph_from_edges(n, edges, rng, kinds=kinds, bound=bound)


def to_networkx(g: DecompositionGraph) -> nx.MultiGraph:
    out = nx.MultiGraph()
    for v, piece in g.pieces.items():
        out.add_node(v, kind=piece.kind.value)
    for gl in g.gluings:
        out.add_edge(gl.a[0], gl.b[0])
    return out


def same_shape(g: DecompositionGraph, h: DecompositionGraph) -> bool:
    return nx.vf2pp_is_isomorphic(to_networkx(g), to_networkx(h), node_label="kind")


def smooth_thick(g: DecompositionGraph) -> nx.MultiGraph:
    """Underlying multigraph with degree-2 thick vertices suppressed (networkx only)."""
    m = to_networkx(g)
    changed = True
    while changed:
        changed = False
        for v in list(m.nodes):
            if m.nodes[v]["kind"] != Kind.THICK.value or m.degree(v) != 2:
                continue
            nbrs = [w for _, w in m.edges(v)]
            if v in nbrs:
                continue
            m.remove_node(v)
            m.add_edge(nbrs[0], nbrs[1])
            changed = True
            break
    return m


# --- labelings ------------------------------------------------------------------

def labeling_ok_bruteforce(g: DecompositionGraph, labels: dict[int, int]) -> bool:
    """Labeling checked by direct search: bijection, root leaf, every suffix connected."""
    s = len(g.pieces)
    if sorted(labels.values()) != list(range(1, s + 1)) or set(labels) != set(g.pieces):
        return False
    m = to_networkx(g)
    root = max(labels, key=labels.get)
    if m.degree(root) != 1:
        return False
    for j in range(1, s + 1):
        keep = [v for v in labels if labels[v] >= j]
        if not nx.is_connected(m.subgraph(keep)):
            return False
    return True


def all_valid_labelings(g: DecompositionGraph):
    vs = sorted(g.pieces)
    for perm in itertools.permutations(range(1, len(vs) + 1)):
        labels = dict(zip(vs, perm))
        if labeling_ok_bruteforce(g, labels):
            yield labels


# --- Smith normal form oracles ------------------------------------------------------

def elementary_invariants(a: list[list[int]]) -> list[int]:
    """Invariant factors by elementary operations on a copy, no transforms.

    Each round moves the smallest nonzero entry of the remaining block to the
    corner and reduces its row and column with nearest-integer quotients;
    any leftover is strictly smaller, so the next round picks it.  When the
    corner clears its row and column but fails to divide some entry, that
    entry's row is added to the corner row.
    """
    m = [row[:] for row in a]
    rows, cols = len(m), len(m[0]) if m else 0
    out = []
    for r in range(min(rows, cols)):
        while True:
            spots = [(abs(m[i][j]), i, j) for i in range(r, rows) for j in range(r, cols) if m[i][j]]
            if not spots:
                return out + [0] * (min(rows, cols) - len(out))
            _, i, j = min(spots)
            m[r], m[i] = m[i], m[r]
            for row in m:
                row[r], row[j] = row[j], row[r]
            p = m[r][r]
            for i in range(r + 1, rows):
                q = round(Fraction(m[i][r], p))
                if q:
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
            for j in range(r + 1, cols):
                q = round(Fraction(m[r][j], p))
                if q:
                    for row in m:
                        row[j] -= q * row[r]
            if any(m[i][r] for i in range(r + 1, rows)) or any(m[r][j] for j in range(r + 1, cols)):
                continue
            bad = next((i for i in range(r + 1, rows) for j in range(r + 1, cols)
                        if m[i][j] % p), None)
            if bad is None:
                break
            m[r] = [x + y for x, y in zip(m[r], m[bad])]
        out.append(abs(m[r][r]))
    return out


def determinantal_invariants(a: list[list[int]]) -> list[int]:
    """Invariant factors from gcds of k x k minors (only sensible for tiny matrices)."""
    import sympy

    rows, cols = len(a), len(a[0])
    mat = sympy.Matrix(a)
    divisors = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in itertools.combinations(range(rows), k):
            for ci in itertools.combinations(range(cols), k):
                g = gcd(g, int(mat.extract(list(ri), list(ci)).det()))
        divisors.append(g)
    out = []
    for k in range(1, len(divisors)):
        out.append(0 if divisors[k] == 0 else divisors[k] // divisors[k - 1])
    return out


def sympy_invariants(a: list[list[int]]) -> list[int]:
    import sympy
    from sympy.matrices.normalforms import smith_normal_form

    d = smith_normal_form(sympy.Matrix(a), domain=sympy.ZZ)
    return sorted((abs(int(d[i, i])) for i in range(min(d.shape))),
                  key=lambda x: (x == 0, x))


# --- homology oracles ----------------------------------------------------------------

def seifert_h1_order(fibers) -> int | None:
    """|H1| of the Seifert manifold over S^2 with these (alpha, beta) fibers and e0 = 0.

    |H1| = |prod(alpha) * sum(beta / alpha)|; infinite (None) when that is 0.
    """
    prod = 1
    for alpha, _ in fibers:
        prod *= alpha
    e = sum(Fraction(beta, alpha) for alpha, beta in fibers)
    order = abs(e * prod)
    return None if order == 0 else int(order)


def torus_bundle_h1(a):
    """(free rank, torsion) of the mapping torus of ``a``: Z + coker(a - I)."""
    (p, q), (r, s) = a
    m = [[p - 1, q], [r, s - 1]]
    inv = [x for x in elementary_invariants(m)]
    free = 1 + sum(1 for x in inv if x == 0)
    return free, [x for x in inv if x > 1]


def presentation_h1(g: DecompositionGraph):
    """(free rank, torsion) from a redundant presentation, reduced by the naive oracle.

    Every port gets its own section generator; each piece adds the relation
    'sections sum to zero' (a solid torus: its meridian is zero) and one fiber
    generator; each gluing equates bases; each non-tree edge adds a loop
    generator with no relations.
    """
    gens = {}

    def gen(key):
        gens.setdefault(key, len(gens))
        return gens[key]

    rels = []
    for v, piece in g.pieces.items():
        gen(("fiber", v))
        for k in range(piece.ports):
            gen(("sec", v, k))
    for v, piece in g.pieces.items():
        rels.append({gen(("sec", v, k)): 1 for k in range(piece.ports)})
    for gl in g.gluings:
        (a, b), (c, d) = gl.matrix
        sa, fa = gen(("sec",) + gl.a), gen(("fiber", gl.a[0]))
        sb, fb = gen(("sec",) + gl.b), gen(("fiber", gl.b[0]))
        # image of mu_a is a*mu_b + c*lam_b; image of lam_a is b*mu_b + d*lam_b
        for src, cm, cl in ((sa, a, c), (fa, b, d)):
            rel = {}
            for key, val in ((src, 1), (sb, -cm), (fb, -cl)):
                rel[key] = rel.get(key, 0) + val
            rels.append(rel)
    n = len(gens)
    m = to_networkx(g)
    loops = m.number_of_edges() - m.number_of_nodes() + nx.number_connected_components(m)
    matrix = [[rel.get(i, 0) for i in range(n)] for rel in rels]
    inv = elementary_invariants(matrix)
    rank = sum(1 for x in inv if x)
    return n - rank + loops, [x for x in inv if x > 1]
