"""Named example manifolds and pages, plus the registry of known negatives.

The registry lists decomposition graphs of products (closed surface of
genus >= 1) x S^1.  These are graph manifolds without directed round fold
maps: their rational cup product does not vanish.  Membership is an exact
match on the canonical ``.gm`` text, not an inference.
"""
from __future__ import annotations

from .construct import Event, MorsePage
from .graph import (
    FLIP, PLUMB, PANTS, SOLID, THICK, DecompositionGraph, Gluing, TorusBundleInput, bundle,
    matrix, serialize_graph,
)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def fiber_gluing(alpha: int, beta: int):
    """Det -1 matrix sending a solid torus meridian to alpha*section + beta*fiber."""
    g, s, u = _egcd(alpha, beta)
    if g != 1:
        raise ValueError(f"gcd({alpha}, {beta}) = {g}, expected 1")
    # alpha*s + beta*u = 1, so alpha*(-s) - beta*u = -1
    return matrix(alpha, u, beta, -s)


def s3_graph() -> DecompositionGraph:
    return DecompositionGraph({0: SOLID, 1: SOLID}, (Gluing((0, 0), (1, 0), PLUMB),))


def lens_graph(p: int, q: int = 1) -> DecompositionGraph:
    """Two solid tori; the first meridian wraps p times around the second core."""
    g, s, u = _egcd(q, p)
    if g != 1:
        raise ValueError(f"gcd({p}, {q}) must be 1")
    # q*(-s) - p*u = -1
    return DecompositionGraph(
        {0: SOLID, 1: SOLID}, (Gluing((0, 0), (1, 0), matrix(q, u, p, -s)),))


def seifert_graph(fibers) -> DecompositionGraph:
    """Seifert manifold over S^2: a genus-0 bundle with one solid torus per fiber.

    ``fibers`` is a list of coprime pairs (alpha, beta); the meridian of the
    i-th solid torus is glued to alpha * section_i + beta * fiber.
    """
    fibers = list(fibers)
    pieces = {0: bundle(len(fibers))}
    gluings = []
    for i, (alpha, beta) in enumerate(fibers):
        pieces[i + 1] = SOLID
        gluings.append(Gluing((i + 1, 0), (0, i), fiber_gluing(alpha, beta)))
    return DecompositionGraph(pieces, tuple(gluings))


def torus_bundle_graph(a, b, c, d) -> DecompositionGraph:
    return TorusBundleInput(matrix(a, b, c, d)).to_graph()


def product_graph(genus: int) -> DecompositionGraph:
    """(closed surface of the given genus) x S^1.

    Genus 1 is the thick torus glued to itself by FLIP.  Higher genus is a
    ring of 2g - 2 pants whose third legs are glued in consecutive pairs.
    """
    if genus < 1:
        raise ValueError("genus must be >= 1")
    if genus == 1:
        return DecompositionGraph({0: THICK}, (Gluing((0, 0), (0, 1), FLIP),))
    n = 2 * genus - 2
    pieces = {i: PANTS for i in range(n)}
    gluings = [Gluing((i, 1), ((i + 1) % n, 0), FLIP) for i in range(n)]
    gluings += [Gluing((i, 2), (i + 1, 2), FLIP) for i in range(0, n, 2)]
    return DecompositionGraph(pieces, tuple(gluings))


def theta_graph() -> DecompositionGraph:
    """Two pants glued along all three legs by plumbing edges."""
    return DecompositionGraph(
        {0: PANTS, 1: PANTS},
        tuple(Gluing((0, i), (1, i), PLUMB) for i in range(3)))


def star_graph(legs: int) -> DecompositionGraph:
    """A chain of ``legs - 2`` pants with a solid torus on every free leg."""
    return seifert_graph([(2, 1)] * legs)


KNOWN_NEGATIVE: dict[str, str] = {}


def register_known_negative(g: DecompositionGraph, name: str) -> None:
    KNOWN_NEGATIVE[serialize_graph(g)] = name


def known_negative(g: DecompositionGraph) -> str | None:
    try:
        return KNOWN_NEGATIVE.get(serialize_graph(g))
    except ValueError:
        return None


for _g in range(1, 9):
    register_known_negative(product_graph(_g), f"Sigma_{_g} x S1")


# --- pages -----------------------------------------------------------------

def genus_one_page() -> MorsePage:
    """Genus-1 page with one boundary circle: split, merge, death."""
    return MorsePage(("a",), (Event.split("a", "b", "c"), Event.merge("b", "c", "d"),
                              Event.death("d")))


def pants_page() -> MorsePage:
    """Pants page: merge, merge, death."""
    return MorsePage(("a", "b", "c"), (Event.merge("a", "b", "d"), Event.merge("d", "c", "e"),
                                       Event.death("e")))


def disk_page() -> MorsePage:
    return MorsePage(("a",), (Event.death("a"),))


def surface_page(genus: int, boundary: int) -> MorsePage:
    """Connected page of the given genus and boundary count, trivial monodromy.

    Boundary circles merge into one, then each handle is a split followed by
    a merge; a death closes the page off.  Closed pages start with a birth.
    """
    events = []
    if boundary == 0:
        names = []
        events.append(Event.birth("c0"))
        cur = "c0"
    else:
        names = [f"b{i}" for i in range(boundary)]
        cur = names[0]
    n = 0
    for other in names[1:]:
        n += 1
        events.append(Event.merge(cur, other, f"m{n}"))
        cur = f"m{n}"
    for h in range(genus):
        events.append(Event.split(cur, f"u{h}", f"v{h}"))
        events.append(Event.merge(f"u{h}", f"v{h}", f"w{h}"))
        cur = f"w{h}"
    events.append(Event.death(cur))
    return MorsePage(tuple(names), tuple(events))
