import random

import pytest

from roundfold.decompose import (
    TreeLabeling, insert_plumbing_buffers, is_plumbing_type, label_tree, labeling_violations,
    pants_decompose, parents, reduce_to_pants,
)
from roundfold.errors import PreconditionError
from roundfold.graph import (
    FLIP, PANTS, PLUMB, SOLID, THICK, DecompositionGraph, Gluing, Kind, bundle, matrix,
    through_buffer, validate_graph,
)
from roundfold.invariants import first_homology

from helpers import (
    all_valid_labelings, labeling_ok_bruteforce, presentation_h1, random_graph, random_tree,
)


@pytest.mark.parametrize("b, kinds", [
    (0, ("D", "D")), (1, ("D",)), (2, ("P", "D")), (3, ("P",)), (5, ("P", "P", "P")),
])
def test_pants_decompose_shapes(b, kinds):
    surf = pants_decompose(b)
    assert surf.kinds == kinds
    assert len(surf.boundary) == b


@pytest.mark.parametrize("b", range(0, 12))
def test_pants_decompose_euler_characteristic(b):
    surf = pants_decompose(b)
    assert surf.euler_characteristic() == 2 - b
    if b >= 3:
        assert len(surf.kinds) == max(b - 2, 1)
    # every pants port is either an original boundary circle or one side of a seam
    ports = [(i, q) for i, k in enumerate(surf.kinds) for q in range(3 if k == "P" else 1)]
    used = list(surf.boundary) + [p for seam in surf.seams for p in seam]
    assert sorted(used) == sorted(ports)


def test_pants_decompose_rejects_negative():
    with pytest.raises(PreconditionError):
        pants_decompose(-1)


def _with_solid_legs(b):
    pieces = {0: bundle(b)}
    pieces.update({i + 1: SOLID for i in range(b)})
    glue = tuple(Gluing((i + 1, 0), (0, i), matrix(2, 1, 1, 0) if i else PLUMB)
                 for i in range(b))
    return DecompositionGraph(pieces, glue)


def test_bundle_of_three_becomes_pants():
    g = _with_solid_legs(3)
    r = reduce_to_pants(g)
    assert r.pieces[0] == PANTS
    assert r.gluings == g.gluings


def test_closed_bundle_becomes_two_solid_tori():
    r = reduce_to_pants(DecompositionGraph({0: bundle(0)}, ()))
    assert [p.kind for p in r.pieces.values()] == [Kind.SOLID, Kind.SOLID]
    assert len(r.gluings) == 1
    # S^2 x S^1, not S^3
    assert str(first_homology(r)) == "Z"


def test_bundle_of_four_becomes_two_pants():
    r = reduce_to_pants(_with_solid_legs(4))
    pants = [v for v, p in r.pieces.items() if p == PANTS]
    assert len(pants) == 2
    inner = [gl for gl in r.gluings if gl.a[0] in pants and gl.b[0] in pants]
    assert len(inner) == 1 and inner[0].matrix == FLIP


def test_reduction_preserves_homology_and_betti():
    rng = random.Random(2)
    for _ in range(100):
        g = random_graph(rng, rng.randint(1, 7), rng.randint(0, 3), bound=4)
        r = reduce_to_pants(g)
        assert validate_graph(r) == []
        assert not any(p.kind is Kind.BUNDLE for p in r.pieces.values())
        assert r.cycle_rank() == g.cycle_rank()
        assert presentation_h1(r) == presentation_h1(g)


def test_plumbing_gluing_left_alone():
    g = DecompositionGraph({0: SOLID, 1: SOLID}, (Gluing((0, 0), (1, 0), PLUMB),))
    assert insert_plumbing_buffers(g) == g
    assert is_plumbing_type(g)


def test_buffer_composite_equals_original():
    m = matrix(1, 0, 0, -1)
    g = DecompositionGraph({0: SOLID, 1: SOLID}, (Gluing((0, 0), (1, 0), m),))
    b = insert_plumbing_buffers(g)
    assert [p.kind for p in b.pieces.values()] == [Kind.SOLID, Kind.SOLID, Kind.THICK]
    into = next(gl for gl in b.gluings if gl.b == (2, 0))
    out = next(gl for gl in b.gluings if gl.a == (1, 0) or gl.b == (1, 0))
    assert into.a == (0, 0) and into.matrix == PLUMB
    assert through_buffer(into.matrix, out.matrix_from((2, 1))) == m
    assert first_homology(b) == first_homology(g)


def test_buffers_idempotent_and_betti_preserving():
    rng = random.Random(4)
    for _ in range(100):
        g = reduce_to_pants(random_graph(rng, rng.randint(1, 8), rng.randint(0, 3)))
        b = insert_plumbing_buffers(g)
        assert is_plumbing_type(b)
        assert insert_plumbing_buffers(b) == b
        assert b.cycle_rank() == g.cycle_rank()
        assert presentation_h1(b) == presentation_h1(g)


def test_buffers_need_reduced_graph():
    with pytest.raises(PreconditionError):
        insert_plumbing_buffers(_with_solid_legs(4))


def test_path_labeling():
    g = DecompositionGraph({0: SOLID, 1: THICK, 2: SOLID},
                           (Gluing((0, 0), (1, 0), PLUMB), Gluing((1, 1), (2, 0), PLUMB)))
    lab = label_tree(g)
    assert lab.labels == {0: 3, 1: 2, 2: 1}
    assert lab.root == 0
    assert sorted(map(dict.__repr__, all_valid_labelings(g))) == sorted(
        map(dict.__repr__, [{0: 3, 1: 2, 2: 1}, {0: 1, 1: 2, 2: 3}]))


def test_star_labeling_matches_enumeration():
    # pants center 3, solid leaves 0, 1, 2
    g = DecompositionGraph({0: SOLID, 1: SOLID, 2: SOLID, 3: PANTS},
                           tuple(Gluing((i, 0), (3, i), PLUMB) for i in range(3)))
    lab = label_tree(g)
    assert lab.root == 0 and lab.labels[0] == 4 and lab.labels[3] == 3
    assert sorted([lab.labels[1], lab.labels[2]]) == [1, 2]
    valid = list(all_valid_labelings(g))
    # a leaf on top, the center next, the other two leaves in either order
    assert len(valid) == 3 * 2
    assert lab.labels in valid


def test_labeling_preconditions():
    loop = DecompositionGraph({0: THICK}, (Gluing((0, 0), (0, 1), FLIP),))
    with pytest.raises(PreconditionError):
        label_tree(loop)
    no_solid = DecompositionGraph({0: THICK, 1: THICK},
                                  (Gluing((0, 0), (1, 0), PLUMB), Gluing((0, 1), (1, 1), PLUMB)))
    with pytest.raises(PreconditionError):
        label_tree(no_solid)
    star = reduce_to_pants(_with_solid_legs(4))
    fat = DecompositionGraph({0: bundle(4), 1: SOLID, 2: SOLID, 3: SOLID, 4: SOLID},
                             tuple(Gluing((i + 1, 0), (0, i), PLUMB) for i in range(4)))
    with pytest.raises(PreconditionError):
        label_tree(fat)
    assert labeling_violations(star, label_tree(star)) == []


def test_random_tree_labelings_pass_bruteforce_checker():
    rng = random.Random(8)
    for _ in range(200):
        g = random_tree(rng, rng.randint(2, 40))
        lab = label_tree(g)
        assert labeling_ok_bruteforce(g, lab.labels)
        assert labeling_violations(g, lab) == []
        par = parents(g, lab)
        adj = g.adjacency()
        for v in g.pieces:
            higher = [w for w in adj[v] if lab.labels[w] > lab.labels[v]]
            if v == lab.root:
                assert higher == [] and v not in par
            else:
                assert higher == [par[v]]


def test_labeling_violations_catch_bad_labelings():
    g = DecompositionGraph({0: SOLID, 1: THICK, 2: SOLID},
                           (Gluing((0, 0), (1, 0), PLUMB), Gluing((1, 1), (2, 0), PLUMB)))
    assert labeling_violations(g, TreeLabeling({0: 2, 1: 3, 2: 1}))
    assert labeling_violations(g, TreeLabeling({0: 3, 1: 1, 2: 2}))
    assert labeling_violations(g, TreeLabeling({0: 3, 1: 3, 2: 1}))
