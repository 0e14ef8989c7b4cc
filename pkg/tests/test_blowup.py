import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from corpus import v_poset
from cblow.blowup import (
    AlphaIsBottom, AlphaNotMaximalInG, Marked, NotDecreasingLinearExtension, blowup_sequence,
    check_transfer, combinatorial_blowup, run_blowups, transfer_building_set,
    verify_blowup_joins, verify_main_theorem,
)
from cblow.building import is_building_set, maximal_building_set, minimal_building_set
from cblow.generators import boolean_lattice, chain, divisor_lattice, partition_lattice, random_semilattice
from cblow.nested import face_poset, nested_complex
from cblow.poset import is_isomorphic, linear_extensions_decreasing, non_boolean_interval


def ids(L, labels):
    return [L.id(s) for s in labels]


def test_marked_label():
    assert str(Marked("ab", "0")) == "[ab,0]"
    assert Marked("ab", "a") == Marked("ab", "a")
    assert str(Marked(Marked("1", "0"), "2")) == "[[1,0],2]"


def test_b2_at_top():
    L = boolean_lattice(2)
    B = combinatorial_blowup(L, L.id("12"))
    assert sorted(map(str, B.labels)) == sorted(["0", "1", "2", "[12,0]", "[12,1]", "[12,2]"])
    assert B.join([B.id("1"), B.id("2")]) is None
    assert B.join([B.id(Marked("12", "1")), B.id("2")]) is None
    assert B.join([B.id(Marked("12", "0")), B.id("1")]) == B.id(Marked("12", "1"))


def test_b3_marked_join():
    L = boolean_lattice(3)
    B = combinatorial_blowup(L, L.id("123"))
    j = B.join([B.id(Marked("123", "1")), B.id(Marked("123", "2"))])
    assert B.labels[j] == Marked("123", "12")


def test_v_poset_at_an_atom():
    V = v_poset()
    B = combinatorial_blowup(V, V.id("a"))
    assert sorted(map(str, B.labels)) == ["0", "[a,0]", "b"]
    assert B.join([B.id(Marked("a", "0")), B.id("b")]) is None
    assert verify_blowup_joins(V, V.id("a"))


def test_bottom_is_rejected():
    L = boolean_lattice(2)
    with pytest.raises(AlphaIsBottom):
        combinatorial_blowup(L, L.bottom)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_boolean_atom_blowup_is_a_relabelling(n):
    L = boolean_lattice(n)
    for a in L.atoms():
        assert is_isomorphic(combinatorial_blowup(L, a), L) is not None


def test_atom_blowup_can_shrink_a_chain():
    # everything above the atom disappears, so a longer chain is not preserved
    L = chain(3)
    B = combinatorial_blowup(L, 1)
    assert B.n == 2
    assert is_isomorphic(B, L) is None


def test_transfer_examples():
    L = boolean_lattice(3)
    G = maximal_building_set(L)
    t = transfer_building_set(L, G, L.id("123"))
    assert t.building and check_transfer(L, G, L.id("123"))
    B2 = boolean_lattice(2)
    t = transfer_building_set(B2, ids(B2, ["1", "2", "12"]), B2.id("12"))
    assert sorted(map(str, (t.blowup.labels[g] for g in t.building))) == ["1", "2", "[12,0]"]
    faces = nested_complex(t.blowup, t.building).labelled_faces()
    assert ("1", "[12,0]") in faces and ("2", "[12,0]") in faces and ("1", "2") not in faces
    assert t.nested_correspondence()


def test_transfer_needs_a_maximal_element():
    L = boolean_lattice(3)
    G = maximal_building_set(L)
    with pytest.raises(AlphaNotMaximalInG):
        transfer_building_set(L, G, L.id("12"))
    with pytest.raises(AlphaNotMaximalInG):
        transfer_building_set(L, L.atoms(), L.id("12"))


def test_ordering_is_validated():
    L = boolean_lattice(2)
    G = ids(L, ["1", "2", "12"])
    with pytest.raises(NotDecreasingLinearExtension):
        blowup_sequence(L, G, ids(L, ["1", "12", "2"]))
    with pytest.raises(NotDecreasingLinearExtension):
        blowup_sequence(L, G, ids(L, ["12", "1"]))


def test_b3_atoms_give_b3():
    L = boolean_lattice(3)
    for order in ([1, 2, 3], [3, 1, 2]):
        assert is_isomorphic(blowup_sequence(L, L.atoms(), order), L) is not None


def test_b3_maximal_gives_the_barycentric_subdivision():
    L = boolean_lattice(3)
    M = blowup_sequence(L, maximal_building_set(L))
    sizes = np.bincount([M.down[x].bit_count() for x in range(M.n)])
    # an element with k atoms below has a boolean interval of size 2^k
    assert [int(sizes[2 ** k]) for k in range(4)] == [1, 7, 12, 6]


def test_b2_path():
    L = boolean_lattice(2)
    seq = run_blowups(L, ids(L, ["1", "2", "12"]), ids(L, ["12", "1", "2"]))
    path = face_poset([(), ("a",), ("m",), ("b",), ("a", "m"), ("b", "m")])
    assert is_isomorphic(seq.lattice, path) is not None
    assert seq.atom_label[L.id("12")] == Marked("12", "0")


@pytest.mark.parametrize("L,G", [
    (boolean_lattice(3), ["1", "2", "3", "23"]),
    (partition_lattice(4), None),
    (divisor_lattice(60), ["2", "3", "4", "5"]),
], ids=["B3-two-triangles", "Pi4-min", "D60-min"])
def test_main_theorem_examples(L, G):
    G = minimal_building_set(L) if G is None else ids(L, G)
    v = verify_main_theorem(L, G)
    assert v
    assert v.witness["iso"].is_valid()


def test_main_theorem_over_all_orders_of_b3():
    L = boolean_lattice(3)
    v = verify_main_theorem(L, maximal_building_set(L), all_orders=True)
    assert v and v.witness["orderings"] == 48


@st.composite
def lattice_element(draw):
    seed = draw(st.integers(0, 10 ** 6))
    L = random_semilattice(draw(st.integers(2, 4)), draw(st.integers(2, 4)), seed,
                           remove_top=draw(st.booleans()))
    if L.n < 2:
        L = boolean_lattice(2)
    a = draw(st.sampled_from([i for i in range(L.n) if i != L.bottom]))
    return L, a


def _oracle_labels(L, alpha, elems):
    a = L.labels[alpha]
    return [L.labels[y] if t == "old" else Marked(a, L.labels[y]) for t, y in elems]


@settings(max_examples=120, deadline=None)
@given(lattice_element())
def test_blowup_matches_the_three_rules(case):
    L, a = case
    B = combinatorial_blowup(L, a)
    elems, leq = oracles.blowup_by_definition(L.leq.tolist(), a)
    labels = _oracle_labels(L, a, elems)
    assert sorted(map(str, labels)) == sorted(map(str, B.labels))
    pos = [B.id(lab) for lab in labels]
    assert (B.leq[np.ix_(pos, pos)] == leq).all()
    assert oracles.is_meet_semilattice(leq.tolist())
    assert verify_blowup_joins(L, a)
    got = sorted(map(str, (B.labels[x] for x in B.atoms())))
    want = sorted([str(L.labels[x]) for x in L.atoms() if not L.leq[a, x]] + [str(Marked(L.labels[a], L.labels[L.bottom]))])
    assert got == want


def _some_building_set(L, data):
    lo = set(minimal_building_set(L))
    extra = [i for i in range(L.n) if i != L.bottom and i not in lo]
    picks = data.draw(st.lists(st.sampled_from(extra), unique=True)) if extra else []
    G = sorted(lo | set(picks))
    return G if is_building_set(L, G) else sorted(maximal_building_set(L))


@settings(max_examples=60, deadline=None)
@given(lattice_element(), st.data())
def test_main_theorem_on_random_semilattices(case, data):
    L, _ = case
    G = _some_building_set(L, data)
    orders = list(linear_extensions_decreasing(L, G))
    order = data.draw(st.sampled_from(orders))
    v = verify_main_theorem(L, G, order)
    assert v
    M = v.witness["iso"].source
    assert non_boolean_interval(M) is None
    brute_target = face_poset([tuple(sorted(str(L.labels[g]) for g in N))
                               for N in oracles.nested_faces(L.leq.tolist(), G)])
    assert is_isomorphic(M, brute_target) is not None


@settings(max_examples=60, deadline=None)
@given(lattice_element(), st.data())
def test_transfer_at_every_maximal_element(case, data):
    L, _ = case
    G = _some_building_set(L, data)
    for a in G:
        if not any(g != a and L.leq[a, g] for g in G):
            assert check_transfer(L, G, a)
