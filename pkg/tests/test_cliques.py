import random

import pytest

from cliquehom.cliques import (
    ChainComplexData,
    SimplicialComplex,
    augmented_chain_data,
    boundary_matrix,
    chain_data,
    chain_map,
    clique_complex,
    identity_chain_map,
    induced_subcomplex,
    quotient_chain_data,
)
from cliquehom.digraphs import VertexPermutation, cube_digraph, cycle_digraph, product
from cliquehom.linalg import IntMatrix

EDGE = SimplicialComplex(2, 1, (((1,), (2,)), ((1, 2),)))
TRIANGLE = SimplicialComplex(3, 2, (((1,), (2,), (3,)), ((1, 2), (1, 3), (2, 3)), ((1, 2, 3),)))


def test_complex_validation():
    with pytest.raises(ValueError):
        SimplicialComplex(2, 1, (((1,), (2,)), ((2, 1),)))
    with pytest.raises(ValueError):
        SimplicialComplex(2, 1, (((1,),), ((1, 2),)))
    with pytest.raises(ValueError):
        SimplicialComplex(2, 1, (((1,), (2,), (3,)), ()))
    with pytest.raises(ValueError):
        SimplicialComplex(2, 1, (((2,), (1,)), ()))
    with pytest.raises(ValueError):
        SimplicialComplex(2, 0, (((1,), (2,)), ()))


def test_clique_complex_sizes():
    expected = {
        2: (4, 4, 0, 0),
        3: (6, 6, 0, 0),
    }
    for m, sizes in expected.items():
        kx = clique_complex(cycle_digraph(m))
        assert tuple(kx.size(t) for t in range(4)) == sizes
    cube = clique_complex(cube_digraph())
    assert tuple(cube.size(t) for t in range(4)) == (8, 12, 0, 0)
    torus = clique_complex(product(cycle_digraph(2), cycle_digraph(2)))
    assert tuple(torus.size(t) for t in range(4)) == (16, 48, 32, 0)
    shallow = clique_complex(cycle_digraph(2), max_dim=1)
    assert shallow.max_dim == 1 and shallow.size(1) == 4


def test_boundary_squared_zero():
    for g in (cycle_digraph(2), cube_digraph(), product(cycle_digraph(2), cycle_digraph(2))):
        kx = clique_complex(g)
        for t in range(2, kx.max_dim + 1):
            prod = boundary_matrix(kx, t - 1) @ boundary_matrix(kx, t)
            assert prod.is_zero()
    assert boundary_matrix(clique_complex(cycle_digraph(2)), 0).rows == 0
    with pytest.raises(ValueError):
        boundary_matrix(clique_complex(cycle_digraph(2)), 5)


def test_boundary_entries():
    b1 = boundary_matrix(TRIANGLE, 1)
    assert b1.entries == ((-1, -1, 0), (1, 0, -1), (0, 1, 1))
    b2 = boundary_matrix(TRIANGLE, 2)
    assert b2.entries == ((1,), (-1,), (1,))


def test_induced_subcomplex():
    kx = clique_complex(cycle_digraph(2))
    sub = induced_subcomplex(kx, [1, 2])
    assert tuple(sub.size(t) for t in range(2)) == (2, 1)
    assert kx.contains(sub)
    assert not sub.contains(kx)
    with pytest.raises(ValueError):
        induced_subcomplex(kx, [0, 1])


def test_chain_data_and_augmentation():
    kx = clique_complex(cycle_digraph(2))
    data = chain_data(kx)
    assert data.sizes == (4, 4, 0, 0)
    assert data.top_dim == 3
    assert data.boundary_into(3).cols == 0
    aug = augmented_chain_data(kx)
    assert aug.boundaries[0].entries == ((1, 1, 1, 1),)
    assert (aug.boundaries[0] @ aug.boundaries[1]).is_zero()
    with pytest.raises(ValueError):
        ChainComplexData((1, 1), (IntMatrix.from_rows([[1]], 1), IntMatrix.from_rows([[1]], 1)))


def test_quotient_chain_data():
    kx = clique_complex(cycle_digraph(2))
    sub = induced_subcomplex(kx, [1, 2])
    rel = quotient_chain_data(kx, sub)
    assert rel.sizes == (2, 3, 0, 0)
    with pytest.raises(ValueError):
        quotient_chain_data(sub, kx)


def test_chain_map_identity_and_signs():
    ident = identity_chain_map(TRIANGLE)
    for t in range(3):
        assert ident.matrix(t) == IntMatrix.identity(TRIANGLE.size(t))
    swap = chain_map(VertexPermutation((2, 1, 3)), TRIANGLE, TRIANGLE)
    # edge (1,2) lands on itself with a flipped orientation
    assert swap.matrix(1).entries[0][0] == -1
    assert swap.matrix(2).entries == ((-1,),)
    assert (swap.compose(swap)).matrix(2) == IntMatrix.identity(1)


def test_chain_map_degenerate_and_errors():
    collapse = chain_map([1, 1], EDGE, EDGE)
    assert collapse.matrix(1).entries == ((0,),)
    assert collapse.matrix(0).entries == ((1, 1), (0, 0))
    with pytest.raises(ValueError):
        chain_map([1], EDGE, EDGE)
    with pytest.raises(ValueError):
        chain_map([1, 3], EDGE, EDGE)
    two_points = SimplicialComplex(2, 1, (((1,), (2,)), ()))
    with pytest.raises(ValueError):
        chain_map([1, 2], EDGE, two_points)


def test_chain_map_mapping_input_and_compose():
    rot = chain_map({1: 2, 2: 3, 3: 1}, TRIANGLE, TRIANGLE)
    assert rot.matrix(0).entries == ((0, 0, 1), (1, 0, 0), (0, 1, 0))
    cube = rot.compose(rot).compose(rot)
    for t in range(3):
        assert cube.matrix(t) == IntMatrix.identity(TRIANGLE.size(t))
    with pytest.raises(ValueError):
        rot.compose(identity_chain_map(EDGE))


def test_chain_map_commutes_with_boundary():
    rng = random.Random(301)
    kx = clique_complex(product(cycle_digraph(2), cycle_digraph(2)))
    from cliquehom.digraphs import automorphisms

    auts = automorphisms(cycle_digraph(2))
    for _ in range(10):
        p = rng.choice(auts)
        q = rng.choice(auts)
        image = tuple((p(u) - 1) * 4 + q(v)
                      for u in range(1, 5) for v in range(1, 5))
        cm = chain_map(image, kx, kx)
        for t in range(1, kx.max_dim + 1):
            left = cm.matrix(t - 1) @ boundary_matrix(kx, t)
            right = boundary_matrix(kx, t) @ cm.matrix(t)
            assert left == right
