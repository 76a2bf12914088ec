import random
from fractions import Fraction

import pytest

from cliquehom.digraphs import (
    VertexPermutation,
    cycle_automorphism_family,
    cycle_digraph,
    cycle_rotation,
)
from cliquehom.embeddings import (
    RigidEmbeddingSpec,
    compose,
    direct_sum,
    embedding_spec,
    flip_matrix,
    h_map,
    k0_map,
    laurent_matrix,
    multiplicity,
    recover_cycle_multiplicities,
    scaled_invariants,
    single_block,
    spec_from_json_dict,
    spec_to_json_dict,
    tensor,
)
from cliquehom.limits import SupernaturalNumber
from cliquehom.linalg import IntMatrix

D4 = cycle_digraph(2)
T1, T2, T3, T4 = cycle_automorphism_family(2)


def diagram_spec():
    return embedding_spec(D4, 2, 2, {
        (1, 1): [(T1, 1), (T3, 1)], (1, 2): [(T1, 1)],
        (2, 1): [(T1, 1)], (2, 2): [(T1, 1), (T2, 1)]})


def random_cycle_spec(rng, m):
    fam = cycle_automorphism_family(m)
    r = [rng.randrange(0, 5) for _ in range(2 * m)]
    if not any(r):
        r[0] = 1
    spec = single_block(cycle_digraph(m), [(fam[i], v) for i, v in enumerate(r) if v])
    return spec, r


def test_h_maps_of_reference_diagram():
    spec = diagram_spec()
    assert h_map(spec, 0) == IntMatrix.from_rows([[2, 1], [1, 2]], 2)
    assert h_map(spec, 1) == IntMatrix.from_rows([[2, 1], [1, 0]], 2)
    assert multiplicity(spec) == 3


def test_canonicalization():
    merged = single_block(D4, [(T1, 1), (T1, 2)])
    assert merged.block(1, 1) == ((T1, 3),)
    dropped = embedding_spec(D4, 1, 2, {(1, 1): [(T1, 1)], (1, 2): []})
    assert dropped.block(1, 2) == ()
    assert dropped.blocks == (((1, 1), ((T1, 1),)),)
    assert single_block(D4, [(T3, 1), (T1, 1)]) == single_block(D4, [(T1, 1), (T3, 1)])


def test_spec_validation():
    with pytest.raises(ValueError):
        RigidEmbeddingSpec(D4, 0, 1, ())
    with pytest.raises(ValueError):
        RigidEmbeddingSpec(D4, 1, 1, (((1, 2), ((T1, 1),)),))
    with pytest.raises(ValueError):
        RigidEmbeddingSpec(D4, 1, 1, (((1, 1), ((T1, 0),)),))
    with pytest.raises(ValueError):
        RigidEmbeddingSpec(D4, 1, 1, (((1, 1), ()),))
    bad_perm = VertexPermutation((2, 1, 3, 4))
    with pytest.raises(ValueError):
        single_block(D4, [(bad_perm, 1)])


def test_k0_map_shapes():
    spec = single_block(D4, [(T1, 2)])
    assert k0_map(spec) == IntMatrix.identity(4) * 2
    restricted = k0_map(spec, restrict_receiving=True)
    assert restricted == IntMatrix.identity(2) * 2
    grid = k0_map(diagram_spec())
    assert (grid.rows, grid.cols) == (8, 8)
    col_sums = {sum(grid.entries[r][c] for r in range(8)) for c in range(8)}
    assert col_sums == {3}


def test_multiplicity_nonuniform():
    spec = embedding_spec(D4, 1, 2, {(1, 1): [(T1, 1)], (1, 2): [(T1, 2)]})
    with pytest.raises(ValueError):
        multiplicity(spec)


def kron(a, b):
    rows = []
    for i in range(a.rows):
        for p in range(b.rows):
            rows.append([a.entries[i][j] * b.entries[p][q]
                         for j in range(a.cols) for q in range(b.cols)])
    return IntMatrix.from_rows(rows, a.cols * b.cols)


def test_tensor_k0_is_kronecker():
    rng = random.Random(501)
    for _ in range(5):
        s1, _ = random_cycle_spec(rng, 2)
        s2, _ = random_cycle_spec(rng, 2)
        t = tensor(s1, s2)
        assert k0_map(t) == kron(k0_map(s1), k0_map(s2))
        assert multiplicity(t) == multiplicity(s1) * multiplicity(s2)


def test_direct_sum_adds_and_guards():
    rng = random.Random(502)
    s1, _ = random_cycle_spec(rng, 2)
    s2, _ = random_cycle_spec(rng, 2)
    s = direct_sum(s1, s2)
    assert k0_map(s) == k0_map(s1) + k0_map(s2)
    assert h_map(s, 1) == h_map(s1, 1) + h_map(s2, 1)
    with pytest.raises(ValueError):
        direct_sum(s1, random_cycle_spec(rng, 3)[0])
    with pytest.raises(ValueError):
        direct_sum(s1, diagram_spec())


def test_compose_is_matrix_product():
    rng = random.Random(503)
    for _ in range(5):
        s1, _ = random_cycle_spec(rng, 2)
        s2, _ = random_cycle_spec(rng, 2)
        c = compose(s1, s2)
        assert k0_map(c) == k0_map(s2) @ k0_map(s1)
        assert h_map(c, 1) == h_map(s2, 1) @ h_map(s1, 1)
    with pytest.raises(ValueError):
        compose(single_block(cycle_digraph(3), [(cycle_rotation(3, 0), 1)]),
                single_block(D4, [(T1, 1)]))
    with pytest.raises(ValueError):
        compose(diagram_spec(), single_block(D4, [(T1, 1)]))


def test_laurent_and_flip():
    assert laurent_matrix([1, 0], 2) == IntMatrix.identity(4)
    assert laurent_matrix([0, 1], 2) == cycle_rotation(2, 1).matrix()
    assert flip_matrix(2) == T2.matrix()
    rng = random.Random(504)
    for m in (2, 3):
        spec, r = random_cycle_spec(rng, m)
        x, y = r[0::2], r[1::2]
        expected = laurent_matrix(x, m) + flip_matrix(m) @ laurent_matrix(y, m)
        assert k0_map(spec) == expected


def test_recover_roundtrip():
    rng = random.Random(505)
    for m in (2, 3, 4):
        fam = cycle_automorphism_family(m)
        g = cycle_digraph(m)
        for _ in range(30):
            r = [rng.randrange(0, 7) for _ in range(2 * m)]
            spec = single_block(g, [(fam[i], v) for i, v in enumerate(r) if v])
            got = recover_cycle_multiplicities(k0_map(spec), h_map(spec, 1), m)
            assert list(got) == r


def test_recover_error_branches():
    ident = IntMatrix.identity(4)
    one = IntMatrix.from_rows([[1]], 1)
    with pytest.raises(ValueError, match="must be 4x4"):
        recover_cycle_multiplicities(IntMatrix.identity(3), one, 2)
    with pytest.raises(ValueError, match="must be 1x1"):
        recover_cycle_multiplicities(ident, IntMatrix.identity(2), 2)
    odd = IntMatrix.from_rows(
        [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]], 4)
    with pytest.raises(ValueError, match="odd-diagonal"):
        recover_cycle_multiplicities(odd, one, 2)
    lopsided = IntMatrix.from_rows(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 2, 0], [0, 0, 0, 1]], 4)
    with pytest.raises(ValueError, match="rotation-plus-flipped"):
        recover_cycle_multiplicities(lopsided, one, 2)
    with pytest.raises(ValueError, match="split"):
        recover_cycle_multiplicities(ident, IntMatrix.from_rows([[2]], 1), 2)
    with pytest.raises(ValueError, match="negative"):
        recover_cycle_multiplicities(ident, IntMatrix.from_rows([[-3]], 1), 2)


def test_scaled_invariants():
    spec = diagram_spec()
    ones = SupernaturalNumber.from_integer(1)
    target = SupernaturalNumber.infinite_power(3)
    mult, k0, h1 = scaled_invariants(spec, ones, target)
    assert mult == 3
    assert k0.entries[0][0] == Fraction(1, 3)
    assert h1.entries[1][1] == Fraction(0)
    with pytest.raises(ValueError, match="incompatible"):
        scaled_invariants(spec, ones, ones)
    empty = embedding_spec(D4, 1, 1, {})
    with pytest.raises(ValueError, match="zero embedding"):
        scaled_invariants(empty, ones, target)


def test_json_roundtrip():
    spec = diagram_spec()
    data = spec_to_json_dict(spec)
    assert spec_from_json_dict(data) == spec
    named = spec_from_json_dict({
        "graph": "cycle:4",
        "blocks": {"1,1": [{"perm": "rot:0"}, {"perm": "refl:1", "mult": 2}]}})
    assert named == single_block(D4, [(T1, 1), (T4, 2)])
    with pytest.raises(ValueError):
        spec_from_json_dict({"graph": "cube",
                             "blocks": {"1,1": [{"perm": "rot:0"}]}})
