import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from cblow.generators import (
    RankedSemiLattice, boolean_lattice, chain, coordinate_arrangement_lattice, divisor_lattice,
    partition_lattice, random_semilattice, set_label, union_closed_semilattice,
)
from cblow.poset import SemiLattice, is_isomorphic


@pytest.mark.parametrize("n", range(1, 7))
def test_boolean_sizes(n):
    L = boolean_lattice(n)
    assert L.n == 2 ** n
    assert len(L.atoms()) == n
    assert L.is_lattice()


def test_boolean_one_is_a_two_chain():
    assert is_isomorphic(boolean_lattice(1), chain(2)) is not None


@pytest.mark.parametrize("n", [0, 11])
def test_boolean_range(n):
    with pytest.raises(ValueError):
        boolean_lattice(n)


@pytest.mark.parametrize("n", range(2, 6))
def test_partition_sizes_are_bell_numbers(n):
    assert partition_lattice(n).n == oracles.bell(n)


def test_partition_labels_and_orientation():
    L = partition_lattice(4)
    assert L.labels[L.bottom] == "0"
    assert "(12)(34)" in L.index
    assert L.labels[L.top] == "(1234)"
    assert L.lt(L.id("(12)"), L.id("(12)(34)"))
    assert L.lt(L.id("(12)(34)"), L.id("(1234)"))
    one_block = [lab for lab in L.labels if lab.count("(") == 1]
    assert len(one_block) == 6 + 4 + 1


def test_partition_two_is_a_chain():
    assert is_isomorphic(partition_lattice(2), chain(2)) is not None


@pytest.mark.parametrize("n", [1, 7])
def test_partition_range(n):
    with pytest.raises(ValueError):
        partition_lattice(n)


def _divisor_count(n):
    return sum(1 for d in range(1, n + 1) if n % d == 0)


@pytest.mark.parametrize("n", [1, 12, 60, 97, 360])
def test_divisor_sizes(n):
    assert divisor_lattice(n).n == _divisor_count(n)


@pytest.mark.parametrize("p,k", [(2, 4), (3, 3), (7, 1)])
def test_prime_power_divisors_form_a_chain(p, k):
    assert is_isomorphic(divisor_lattice(p ** k), chain(k + 1)) is not None


def test_divisor_range():
    with pytest.raises(ValueError):
        divisor_lattice(0)


def test_set_labels():
    assert set_label([]) == "0"
    assert set_label([3, 1, 2]) == "123"
    assert set_label([1, 12]) == "1_12"


def test_example_arrangement_codims():
    RL = coordinate_arrangement_lattice([[4], [1, 2], [1, 3]])
    assert is_isomorphic(RL.lattice, boolean_lattice(3)) is not None
    assert sorted(RL.codim) == [0, 1, 2, 2, 3, 3, 3, 4]
    cb = RL.codim_by_label()
    assert cb["4"] == 1 and cb["12"] == 2 and cb["123"] == 3 and cb["1234"] == 4


def test_two_coordinate_hyperplanes():
    RL = coordinate_arrangement_lattice([[1], [2]])
    assert is_isomorphic(RL.lattice, boolean_lattice(2)) is not None
    assert sorted(RL.codim) == [0, 1, 1, 2]


def test_three_coordinate_planes():
    RL = coordinate_arrangement_lattice([[1, 2], [2, 3], [1, 3]])
    assert RL.lattice.n == 5
    assert sorted(RL.lattice.labels) == sorted(["0", "12", "23", "13", "123"])


@pytest.mark.parametrize("bad", [[], [[]], [[1], [1]], [[0]], [[1, -2]]])
def test_arrangement_errors(bad):
    with pytest.raises(ValueError):
        coordinate_arrangement_lattice(bad)


@st.composite
def coordinate_families(draw):
    sets = draw(st.lists(
        st.frozensets(st.integers(1, 5), min_size=1, max_size=3), min_size=1, max_size=4, unique=True,
    ))
    return [sorted(s) for s in sets]


@settings(max_examples=60, deadline=None)
@given(coordinate_families())
def test_arrangement_joins_are_unions(family):
    RL = coordinate_arrangement_lattice(family)
    L = RL.lattice
    sets = {lab: frozenset() if lab == "0" else frozenset(int(c) for c in lab) for lab in L.labels}
    for i, j in itertools.combinations(range(L.n), 2):
        k = L.join([i, j])
        assert k is not None
        assert sets[L.labels[k]] == sets[L.labels[i]] | sets[L.labels[j]]
    for lab, c in RL.codim_by_label().items():
        assert c == len(sets[lab])


def test_ranked_validation():
    L = chain(3)
    RankedSemiLattice(L, (0, 1, 5))
    with pytest.raises(ValueError):
        RankedSemiLattice(L, (0, 1))
    with pytest.raises(ValueError):
        RankedSemiLattice(L, (1, 2, 3))
    with pytest.raises(ValueError):
        RankedSemiLattice(L, (0, 2, 2))


def test_ranked_equality_ignores_ids():
    a = coordinate_arrangement_lattice([[1], [2]])
    b = coordinate_arrangement_lattice([[2], [1]])
    assert a == b and hash(a) == hash(b)
    assert a != coordinate_arrangement_lattice([[1], [2, 3]])


def test_random_is_reproducible():
    a = random_semilattice(4, 3, 11)
    b = random_semilattice(4, 3, 11)
    assert a == b
    assert random_semilattice(4, 3, 11, remove_top=True).n == a.n - 1


def test_random_range():
    with pytest.raises(ValueError):
        random_semilattice(7, 3, 0)


def test_v_poset_from_two_singletons():
    V = union_closed_semilattice([{1}, {2}], remove_top=True)
    assert V.n == 3
    assert V.join([V.id("1"), V.id("2")]) is None


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 10 ** 6), st.booleans())
def test_random_output_is_a_meet_semilattice(g, f, seed, top):
    L = random_semilattice(g, f, seed, remove_top=top)
    assert oracles.is_meet_semilattice(L.leq.tolist())
    again = SemiLattice(list(L.labels), np.array(L.leq))
    assert again == L
