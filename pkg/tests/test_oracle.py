import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from ktpersist.complexes import parse_filtration
from ktpersist.groups import CapExceeded, PermGroup, burnside_count
from ktpersist.oracle import (
    PresentationMatrix,
    enumerate_orbits,
    field_rank,
    oracle_power,
    oracle_tensor,
    present,
    snapshot_homology,
)
from ktpersist.poly import QQ, FieldSpec, SparsePolyMatrix
from ktpersist.powers import ModuleDescriptor, g_power

M = ModuleDescriptor.make


def tensor(a, b):
    return oracle_tensor(present(a), present(b)).descriptor()


def test_present_shape():
    pm = present(M(2, [1, 3]))
    assert pm.gens == 4 and pm.rels.shape == (4, 2)
    assert pm.descriptor() == M(2, [1, 3])
    assert present(M(0)).gens == 0


def test_tensor_examples():
    assert tensor(M(0, [1]), M(0, [2])) == M(0, [1])
    assert tensor(M(2), M(3)) == M(6)
    m = M(1, [2])
    assert tensor(m, m) == M(1, [2, 2, 2])
    assert tensor(M(1), m) == m
    assert tensor(M(0), m).is_zero()


descriptors = st.builds(M, st.integers(0, 2), st.lists(st.integers(1, 4), max_size=2))


@settings(max_examples=40, deadline=None)
@given(descriptors, descriptors, descriptors)
def test_tensor_commutative_and_associative(a, b, c):
    assert tensor(a, b) == tensor(b, a)
    left = oracle_tensor(oracle_tensor(present(a), present(b)), present(c)).descriptor()
    right = oracle_tensor(present(a), oracle_tensor(present(b), present(c))).descriptor()
    assert left == right


@settings(max_examples=40, deadline=None)
@given(descriptors)
def test_present_roundtrip(m):
    assert present(m).descriptor() == m


def test_non_diagonal_presentation():
    # R^2 / <(t, t^2)> is free of rank 1 plus R/t
    rels = SparsePolyMatrix(2, 1, {(0, 0): M(0, [1]).torsion_list()[0],
                                   (1, 0): M(0, [2]).torsion_list()[0]})
    assert PresentationMatrix(2, rels).descriptor() == M(1, [1])


def test_orbit_examples():
    orbits = enumerate_orbits(PermGroup.cyclic(3), 2)
    assert sorted(map(len, orbits)) == [1, 1, 3, 3]
    assert len(enumerate_orbits(PermGroup.symmetric(4), 3)) == comb(3 + 4 - 1, 4)
    assert len(enumerate_orbits(PermGroup.trivial(3), 2)) == 8


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(1, 3), st.randoms(use_true_random=False))
def test_orbits_partition_and_match_burnside(n, s, rng):
    g = PermGroup.random(n, rng)
    orbits = enumerate_orbits(g, s)
    flat = [f for o in orbits for f in o]
    assert len(flat) == len(set(flat)) == s**n
    assert len(orbits) == burnside_count(g, s)


def test_orbit_cap():
    with pytest.raises(CapExceeded):
        enumerate_orbits(PermGroup.cyclic(5), 4, cap=100)


@pytest.mark.parametrize("r", range(0, 5))
def test_exterior_oracle_on_free_module(r):
    for n in range(0, 5):
        assert oracle_power(M(r), n, "exterior") == M(comb(r, n))


def test_oracle_power_errors():
    with pytest.raises(CapExceeded):
        oracle_power(M(5), 7)
    with pytest.raises(ValueError):
        oracle_power(M(1), 2, PermGroup.cyclic(3))
    with pytest.raises(ValueError):
        oracle_power(M(1), 2, "bogus")


def test_oracle_cap_ignores_environment(monkeypatch):
    monkeypatch.setenv("PERSIST_CAP", "1")
    assert oracle_power(M(2), 3) == M(8)


def test_field_rank():
    assert field_rank({(0, 0): 1, (1, 1): 1, (2, 0): 1, (2, 1): 1}, QQ) == 2
    assert field_rank({(0, 0): 2, (1, 1): 4}, FieldSpec(2)) == 0
    assert field_rank({(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): -1}, FieldSpec(2)) == 1
    assert field_rank({}, QQ) == 0


def test_snapshot_homology_examples(example_filtration):
    f = example_filtration
    assert [snapshot_homology(f, 0, k, QQ) for k in range(5)] == [3, 3, 2, 1, 1]
    assert [snapshot_homology(f, 1, k, QQ) for k in range(5)] == [0, 2, 4, 3, 1]
    assert snapshot_homology(f, 2, 4, QQ) == 1
    assert snapshot_homology(f, 7, 4, QQ) == 0


def test_snapshot_circle():
    f = parse_filtration("steps 0\na 0\nb 0\nc 0\na b 0\nb c 0\na c 0\n")
    for field in (QQ, FieldSpec(2), FieldSpec(7)):
        assert snapshot_homology(f, 1, 0, field) == 1


def test_random_group_powers_agree_with_formula():
    rng = random.Random(2)
    for _ in range(15):
        n = rng.randint(1, 4)
        g = PermGroup.random(n, rng)
        m = M(rng.randint(0, 2), [rng.randint(1, 4) for _ in range(rng.randint(0, 2))])
        assert g_power(m, n, g) == oracle_power(m, n, g)
