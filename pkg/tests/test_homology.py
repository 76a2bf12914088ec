import random

import pytest

from cliquehom.cliques import (
    SimplicialComplex,
    chain_data,
    chain_map,
    clique_complex,
    identity_chain_map,
    induced_subcomplex,
)
from cliquehom.digraphs import (
    VertexPermutation,
    automorphisms,
    cube_digraph,
    cycle_digraph,
    product,
    suspension,
)
from cliquehom.homology import (
    AbelianGroup,
    GroupMorphism,
    betti,
    betti_by_rank,
    free_group,
    group_morphism,
    homology,
    homology_of_data,
    induced_map,
    reduced_homology,
    relative_homology,
)
from cliquehom.linalg import IntMatrix

# antipodal icosahedron quotient: 6 vertices, all 15 edges, 10 triangles
RP2_FACES = ((1, 2, 3), (1, 2, 4), (1, 3, 5), (1, 4, 6), (1, 5, 6),
             (2, 3, 6), (2, 4, 5), (2, 5, 6), (3, 4, 5), (3, 4, 6))


def projective_plane() -> SimplicialComplex:
    vertices = tuple((v,) for v in range(1, 7))
    edges = tuple(sorted({(a, b) for f in RP2_FACES
                          for a in f for b in f if a < b}))
    return SimplicialComplex(6, 2, (vertices, edges, tuple(sorted(RP2_FACES))))


def test_group_render_and_validation():
    assert AbelianGroup((), 0).render() == "0"
    assert AbelianGroup((), 1).render() == "Z"
    assert AbelianGroup((), 3).render() == "Z^3"
    assert AbelianGroup((2,), 1).render() == "Z/2 + Z"
    assert AbelianGroup((2, 4), 2).render() == "Z/2 + Z/4 + Z^2"
    assert AbelianGroup((3,), 0).generator_order(0) == 3
    assert free_group(2).generator_order(1) == 0
    with pytest.raises(ValueError):
        AbelianGroup((), -1)
    with pytest.raises(ValueError):
        AbelianGroup((1,), 0)
    with pytest.raises(ValueError):
        AbelianGroup((4, 2), 0)


def test_cycle_homology():
    for m in (2, 3, 5):
        kx = clique_complex(cycle_digraph(m), max_dim=2)
        assert homology(kx, 0).group == free_group(1)
        assert betti(kx, 1) == 1
        assert homology(kx, 1).group.torsion == ()
    assert reduced_homology(clique_complex(cycle_digraph(2)), 0).group.is_trivial()


def test_cube_homology():
    kx = clique_complex(cube_digraph())
    assert homology(kx, 0).group == free_group(1)
    assert homology(kx, 1).group == free_group(5)
    assert homology(kx, 2).group.is_trivial()


def test_torus_homology():
    kx = clique_complex(product(cycle_digraph(2), cycle_digraph(2)))
    groups = [homology(kx, t).group for t in range(3)]
    assert groups == [free_group(1), free_group(2), free_group(1)]
    data = chain_data(kx)
    for t in range(3):
        assert betti_by_rank(data, t) == groups[t].rank


def test_suspension_homology():
    s = suspension(cycle_digraph(2), 2)
    kx = clique_complex(s)
    assert homology(kx, 1).group.is_trivial()
    assert homology(kx, 2).group == free_group(1)
    assert betti(kx, 0) == 1


def test_projective_plane_homology():
    kx = projective_plane()
    data = chain_data(kx)
    assert homology_of_data(data, 0).group == free_group(1)
    assert homology(kx, 1).group == AbelianGroup((2,), 0)
    assert homology_of_data(data, 2).group.is_trivial()


def test_degree_guards():
    kx = clique_complex(cycle_digraph(2), max_dim=1)
    with pytest.raises(ValueError):
        homology(kx, 1)
    with pytest.raises(ValueError):
        homology(kx, -1)
    with pytest.raises(ValueError):
        homology_of_data(chain_data(kx), 4)


def test_class_of_and_generators():
    kx = clique_complex(product(cycle_digraph(2), cycle_digraph(2)))
    h1 = homology(kx, 1)
    n = h1.group.generator_count
    assert n == 2
    for i in range(n):
        expected = tuple(1 if j == i else 0 for j in range(n))
        assert h1.class_of(h1.generator_cycle(i)) == expected
    both = tuple(a + b for a, b in zip(h1.generator_cycle(0), h1.generator_cycle(1)))
    assert h1.class_of(both) == (1, 1)
    with pytest.raises(ValueError):
        h1.class_of((1,) * 5)
    not_cycle = tuple(1 if i == 0 else 0 for i in range(kx.size(1)))
    with pytest.raises(ValueError):
        h1.class_of(not_cycle)


def test_torsion_class_reduction():
    h1 = homology(projective_plane(), 1)
    gen = h1.generator_cycle(0)
    assert h1.class_of(gen) == (1,)
    doubled = tuple(2 * x for x in gen)
    assert h1.class_of(doubled) == (0,)


def test_relative_homology():
    kx = clique_complex(cycle_digraph(2))
    sub = induced_subcomplex(kx, [1, 2])
    assert relative_homology(kx, sub, 1).group == free_group(1)
    assert relative_homology(kx, sub, 0).group.is_trivial()


def test_induced_map_identity_and_compose():
    kx = clique_complex(product(cycle_digraph(2), cycle_digraph(2)))
    assert induced_map(identity_chain_map(kx), 1).is_identity()
    rng = random.Random(401)
    auts = automorphisms(cycle_digraph(2))
    maps = []
    for _ in range(4):
        p, q = rng.choice(auts), rng.choice(auts)
        image = tuple((p(u) - 1) * 4 + q(v) for u in range(1, 5) for v in range(1, 5))
        maps.append(chain_map(image, kx, kx))
    for f in maps:
        for g in maps:
            left = induced_map(f.compose(g), 1)
            right = induced_map(f, 1).compose(induced_map(g, 1))
            assert left == right
        assert induced_map(f, 1).determinant() in (-1, 1)


def test_group_morphism_validation():
    z2 = AbelianGroup((2,), 0)
    m = group_morphism(z2, z2, [[3]])
    assert m.entries == ((1,),)
    assert m.apply((1,)) == (1,)
    with pytest.raises(ValueError):
        group_morphism(z2, free_group(1), [[1]])
    mixed = AbelianGroup((2,), 1)
    f = group_morphism(mixed, mixed, [[1, 1], [0, 2]])
    assert f.free_matrix() == IntMatrix.from_rows([[2]], 1)
    assert f.apply((1, 1)) == (0, 2)
    with pytest.raises(ValueError):
        f.determinant()
    assert GroupMorphism.zero(z2, z2).is_zero()
    assert GroupMorphism.identity(mixed).is_identity()
    assert GroupMorphism.of_free(IntMatrix.identity(2)).determinant() == 1
    with pytest.raises(ValueError):
        GroupMorphism.identity(z2).compose(GroupMorphism.identity(mixed))
