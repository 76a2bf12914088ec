import random

import pytest

from cliquehom.digraphs import cycle_automorphism_family, cycle_digraph
from cliquehom.embeddings import embedding_spec, single_block
from cliquehom.homology import AbelianGroup, free_group
from cliquehom.limits import (
    LimitGroup,
    SupernaturalNumber,
    isomorphic,
    limit_homology,
    stationary_limit,
    tensor_with_K0,
)
from cliquehom.linalg import IntMatrix, det, unimodular_inverse


def m2(a, b, c, d):
    return IntMatrix.from_rows([[a, b], [c, d]], 2)


PINNED = [
    (m2(1, 0, 0, 1), "Z^2"),
    (m2(0, 1, 1, 0), "Z^2"),
    (m2(2, 1, 1, 1), "Z^2"),
    (m2(2, 0, 0, 2), "Q(2^inf) + Q(2^inf)"),
    (m2(2, 0, 0, 3), "Q(2^inf) + Q(3^inf)"),
    (m2(4, 2, 2, 4), "Q(2^inf) + Q(6^inf)"),
    (m2(10, 6, 6, 10), "Q(2^inf) + Q(2^inf)"),
    (m2(6, 2, 2, 6), "Q(2^inf) + Q(2^inf)"),
    (m2(10, 2, 2, 10), "Q(2^inf) + Q(6^inf)"),
    (m2(6, 6, 6, 6), "Q(6^inf)"),
    (m2(2, 2, 2, 2), "Q(2^inf)"),
    (m2(0, 0, 0, 0), "0"),
    (m2(3, 0, 0, 0), "Q(3^inf)"),
    (m2(1, 0, 0, 2), "Z + Q(2^inf)"),
    (m2(2, 1, 1, 2), "unresolved(2, [[2, 1], [1, 2]])"),
    (m2(0, -4, 1, 0), "unresolved(2, [[0, -4], [1, 0]])"),
]


def test_supernatural_arithmetic():
    six = SupernaturalNumber.from_integer(6)
    assert six.render() == "2^1*3^1"
    assert six.times_integer(4).render() == "2^3*3^1"
    inf2 = SupernaturalNumber.infinite_power(2)
    assert inf2.render() == "2^inf"
    assert six.times(inf2).render() == "3^1*2^inf"
    assert SupernaturalNumber.from_integer(1).is_trivial()
    assert SupernaturalNumber.infinite_power(12).render() == "2^inf*3^inf"
    assert six.divides(SupernaturalNumber.infinite_power(6))
    assert not SupernaturalNumber.from_integer(27).divides(six.times(inf2))
    assert SupernaturalNumber.from_integer(8).divides(SupernaturalNumber.from_integer(8))
    assert not inf2.divides(six)
    with pytest.raises(ValueError):
        SupernaturalNumber.from_integer(0)
    with pytest.raises(ValueError):
        SupernaturalNumber(((4, 1),), ())
    with pytest.raises(ValueError):
        SupernaturalNumber(((2, 1),), (2,))


def test_limit_group_rendering():
    assert LimitGroup.resolved(()).render() == "0"
    z = SupernaturalNumber()
    assert LimitGroup.resolved([z, z]).render() == "Z^2"
    q6 = SupernaturalNumber.infinite_power(6)
    assert LimitGroup.resolved([q6]).render() == "Q(6^inf)"
    assert LimitGroup.resolved([z, q6], [2]).render() == "Z + Q(6^inf) + Z/2"
    with pytest.raises(ValueError):
        LimitGroup(None, (), None)
    with pytest.raises(ValueError):
        LimitGroup.resolved([z], [1])


def test_stationary_limit_pinned_table():
    for a, expected in PINNED:
        assert stationary_limit(2, a).render() == expected, expected
    with pytest.raises(ValueError):
        stationary_limit(3, m2(1, 0, 0, 1))
    assert stationary_limit(0, IntMatrix.zeros(0, 0)).render() == "0"


def test_limit_conjugation_invariance():
    rng = random.Random(701)
    base = [m2(2, 0, 0, 2), m2(4, 2, 2, 4), m2(1, 0, 0, 1), m2(10, 2, 2, 10)]
    count = 0
    for a in base:
        want = stationary_limit(2, a).render()
        for _ in range(20):
            u = m2(1, rng.randrange(-3, 4), 0, 1) @ m2(1, 0, rng.randrange(-3, 4), 1)
            conj = u @ a @ unimodular_inverse(u)
            got = stationary_limit(2, conj)
            if got.is_resolved:
                assert got.render() == want
                count += 1
    assert count > 20


def test_limit_power_invariance():
    for a, _ in PINNED:
        lim = stationary_limit(2, a)
        if not lim.is_resolved or det(a) == 0:
            continue
        squared = stationary_limit(2, a @ a)
        if squared.is_resolved:
            free_bases = sorted(s.infinite for s in lim.free_summands)
            sq_bases = sorted(s.infinite for s in squared.free_summands)
            assert free_bases == sq_bases


def test_isomorphic_trichotomy():
    a = stationary_limit(2, m2(2, 0, 0, 2))
    b = stationary_limit(2, m2(6, 2, 2, 6))
    c = stationary_limit(2, m2(2, 0, 0, 3))
    u = stationary_limit(2, m2(2, 1, 1, 2))
    assert isomorphic(a, b) is True
    assert isomorphic(a, c) is False
    assert isomorphic(a, u) is None
    assert isomorphic(u, u) is True
    assert isomorphic(u, stationary_limit(2, m2(1, 0, 0, 2))) is None


def test_tensor_with_k0():
    q2 = SupernaturalNumber.infinite_power(2)
    g = LimitGroup.resolved([q2, SupernaturalNumber()])
    doubled = tensor_with_K0(free_group(2), g)
    assert doubled.render() == "Z^2 + Q(2^inf) + Q(2^inf)"
    torsion = tensor_with_K0(AbelianGroup((12,), 0), g)
    assert torsion.render() == "Z/3 + Z/12"
    swallowed = tensor_with_K0(AbelianGroup((4,), 0), LimitGroup.resolved([q2]))
    assert swallowed.render() == "0"
    with pytest.raises(ValueError):
        tensor_with_K0(free_group(1), LimitGroup.unresolved(2, m2(2, 1, 1, 2)))
    finite_part = LimitGroup.resolved([SupernaturalNumber.from_integer(2)])
    with pytest.raises(ValueError):
        tensor_with_K0(AbelianGroup((2,), 0), finite_part)


def test_limit_homology():
    d4 = cycle_digraph(2)
    t1, t2, t3, _ = cycle_automorphism_family(2)
    spec = embedding_spec(d4, 2, 2, {
        (1, 1): [(t1, 1), (t3, 1)], (1, 2): [(t1, 1)],
        (2, 1): [(t1, 1)], (2, 2): [(t1, 1), (t2, 1)]})
    assert limit_homology(spec, 1).render() == "Z^2"
    assert limit_homology(spec, 0).render() == "unresolved(2, [[2, 1], [1, 2]])"
    doubled = single_block(d4, [(t1, 2)])
    assert limit_homology(doubled, 1).render() == "Q(2^inf)"
    lopsided = embedding_spec(d4, 2, 1, {(1, 1): [(t1, 1)], (2, 1): [(t1, 1)]})
    with pytest.raises(ValueError, match="square"):
        limit_homology(lopsided, 1)
