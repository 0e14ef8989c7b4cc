import math

import pytest
import sympy
from hypothesis import given, settings, strategies as st

import oracles
from corpus import cube_fan, fans, square_cone
from cblow.blowup import combinatorial_blowup
from cblow.building import NotABuildingSet
from cblow.fans import (
    InconsistentFaces, NonConeIntersection, NotNonIncreasing, PointNotInRelativeInterior,
    TauNotInFan, fan_building_set, fan_from_cones, primitive, simplicialize, stellar_subdivision,
    verify_simplicialize, verify_stellar_is_blowup,
)
from cblow.generators import boolean_lattice
from cblow.nested import face_poset, nested_complex
from cblow.poset import is_isomorphic, non_boolean_interval


def simplex3():
    return fan_from_cones([(1, 0, 0), (0, 1, 0), (0, 0, 1)], [[0, 1, 2]])


def test_simplicial_cone_face_poset_is_b3():
    assert is_isomorphic(simplex3().face_poset, boolean_lattice(3)) is not None


def test_square_cone_face_poset():
    F = square_cone()
    assert F.face_poset.n == 10
    assert not F.is_simplicial()
    assert F.non_simplicial_cones() == (frozenset({0, 1, 2, 3}),)


def test_shared_ray():
    F = fan_from_cones([(1, 0), (1, 1), (0, 1)], [[0, 1], [1, 2]])
    P = F.face_poset
    assert len(P.atoms()) == 3
    assert F.is_simplicial()
    a, b = (F.cone_id(c) for c in F.maximal_cones)
    assert P.labels[P.meet(a, b)] == F.face_poset.labels[F.cone_id([1])]


def test_square_subdivided_at_the_top():
    F = square_cone()
    sd = stellar_subdivision(F, [0, 1, 2, 3])
    assert len(sd.maximal_cones) == 4
    assert all(4 in c and len(c) == 3 for c in sd.maximal_cones)
    assert sd.rays[4] == (0, 0, 1)
    assert sd.is_simplicial()


def test_subdividing_a_ray_of_a_simplicial_fan_changes_nothing_but_names():
    for _, F in fans():
        if not F.is_simplicial():
            continue
        for c in F.cones:
            if len(c) == 1:
                sd = stellar_subdivision(F, c)
                assert is_isomorphic(sd.face_poset, F.face_poset) is not None


def test_subdividing_a_ray_of_the_square_splits_it():
    F = square_cone()
    sd = stellar_subdivision(F, [0])
    assert sorted(map(sorted, sd.maximal_cones)) == [[1, 2, 4], [2, 3, 4]]
    assert sd.face_poset.n == combinatorial_blowup(F.face_poset, F.cone_id([0])).n == 12


def test_simplex_barycentric_star():
    sd = stellar_subdivision(simplex3(), [0, 1, 2])
    assert len(sd.maximal_cones) == 3
    assert sd.rays[3] == (1, 1, 1)


def test_supplied_point():
    F = square_cone()
    sd = stellar_subdivision(F, [0, 1, 2, 3], point=(1, 1, 4))
    assert sd.rays[4] == (1, 1, 4)
    assert stellar_subdivision(F, [0, 1], point=(2, 2, 4)).rays[4] == (1, 1, 2)
    with pytest.raises(PointNotInRelativeInterior):
        stellar_subdivision(F, [0, 1, 2, 3], point=(1, 0, 1))
    with pytest.raises(PointNotInRelativeInterior):
        stellar_subdivision(F, [0, 1], point=(0, 0, 1))
    with pytest.raises(PointNotInRelativeInterior):
        stellar_subdivision(fan_from_cones(None, [[0, 1]]), [0, 1], point=(1, 1))


def test_tau_must_be_a_cone():
    F = square_cone()
    with pytest.raises(TauNotInFan):
        stellar_subdivision(F, [0, 2])
    with pytest.raises(TauNotInFan):
        stellar_subdivision(F, [])


def test_primitive():
    assert primitive((4, -6, 0)) == (2, -3, 0)
    with pytest.raises(ValueError):
        primitive((0, 0))


@pytest.mark.parametrize("kwargs", [
    dict(rays=[(1, 0)], maximal_cones=[]),
    dict(rays=[(1, 0), (0, 1, 1)], maximal_cones=[[0, 1]]),
    dict(rays=[(1, 0), (0, 0)], maximal_cones=[[0, 1]]),
    dict(rays=[(1, 0), (0, 1)], maximal_cones=[[0, 5]]),
    dict(rays=[(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)], maximal_cones=[[0, 1, 2, 3]]),
    dict(rays=None, maximal_cones=[[0, 1, 2, 3]], faces=[[0, 1], [1, 2], [2, 3], [0, 3], [4, 5]]),
    # two squares meeting along a diagonal that neither lists as a face
    dict(rays=None, maximal_cones=[[0, 1, 2, 3], [0, 4, 2, 5]],
         faces=[[0, 1], [1, 2], [2, 3], [0, 3], [0, 4], [4, 2], [2, 5], [0, 5]]),
], ids=["no-cones", "ragged", "zero-ray", "bad-index", "square-no-faces", "stray-face", "bad-meet"])
def test_inconsistent_input(kwargs):
    with pytest.raises(InconsistentFaces):
        fan_from_cones(**kwargs)


def test_overlapping_cones_are_rejected():
    with pytest.raises(NonConeIntersection):
        fan_from_cones([(1, 0), (0, 1), (1, 1), (-1, 1)], [[0, 1], [2, 3]])


def test_false_face_is_rejected():
    # the diagonal {0,2} of the square is not a face
    with pytest.raises(NonConeIntersection):
        fan_from_cones(
            [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)], [[0, 1, 2, 3]],
            [[0, 1], [1, 2], [2, 3], [0, 3], [0, 2]],
        )


@pytest.mark.parametrize("name,F", fans(), ids=[n for n, _ in fans()])
def test_every_stellar_subdivision_is_a_blowup(name, F):
    for c in F.cones:
        if not c:
            continue
        v = verify_stellar_is_blowup(F, c)
        assert v, (name, sorted(c))
        assert is_isomorphic(stellar_subdivision(F, c).face_poset,
                             combinatorial_blowup(F.face_poset, F.cone_id(c))) is not None


def test_square_simplicializations():
    F = square_cone()
    G = fan_building_set(F, "rays+nonsimplicial")
    assert len(G) == 5
    out = simplicialize(F, G)
    assert len(out.maximal_cones) == 4
    bary = simplicialize(F, fan_building_set(F, "all"))
    chains = [c for c in oracles.order_complex_faces(F.face_poset.leq.tolist(),
                                                     fan_building_set(F, "all")) if len(c) == 3]
    assert len(bary.maximal_cones) == len(chains) == 8
    irr = fan_building_set(F, "irreducible")
    v = verify_simplicialize(F, irr)
    assert v
    assert is_isomorphic(v.witness["fan"].face_poset,
                         face_poset(nested_complex(F.face_poset, irr))) is not None


@pytest.mark.parametrize("kind", ["all", "rays+nonsimplicial", "irreducible"])
def test_cube_simplicializations(kind):
    F = cube_fan()
    G = fan_building_set(F, kind)
    v = verify_simplicialize(F, G)
    assert v
    out = v.witness["fan"]
    for c in out.maximal_cones:
        assert sympy.Matrix([out.rays[i] for i in sorted(c)]).rank() == len(c)
    assert non_boolean_interval(out.face_poset) is None


def test_simplicialize_checks_its_input():
    F = square_cone()
    with pytest.raises(NotABuildingSet):
        simplicialize(F, [F.cone_id([0])])
    G = fan_building_set(F, "rays+nonsimplicial")
    top = F.cone_id([0, 1, 2, 3])
    with pytest.raises(NotNonIncreasing):
        simplicialize(F, G, [g for g in G if g != top] + [top])
    with pytest.raises(ValueError):
        fan_building_set(F, "everything")


def test_simplicial_fan_keeps_its_shape():
    F = fan_from_cones([(1, 0), (0, 1), (-1, -1)], [[0, 1], [1, 2], [0, 2]])
    out = simplicialize(F, fan_building_set(F, "rays+nonsimplicial"))
    assert is_isomorphic(out.face_poset, F.face_poset) is not None
    assert sorted(out.rays[3:]) == sorted(F.rays)


def test_fan_without_rays():
    F = fan_from_cones(None, [[0, 1, 2, 3]], [[0, 1], [1, 2], [2, 3], [0, 3]])
    assert F.rays is None and F.n_rays == 4
    assert not F.is_simplicial()
    v = verify_simplicialize(F, fan_building_set(F, "rays+nonsimplicial"))
    assert v and v.witness["fan"].rays is None


@st.composite
def simplicial_fans(draw):
    """Planar fans: integer rays sorted by angle, consecutive pairs spanning
    less than a half-turn become the two-dimensional cones."""
    vecs = draw(st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5)),
                         min_size=3, max_size=7))
    rays = []
    for v in sorted({primitive(v) for v in vecs if v != (0, 0)}, key=lambda v: math.atan2(v[1], v[0])):
        rays.append(v)
    if len(rays) < 2:
        rays = [(1, 0), (0, 1)]
    k = len(rays)
    cones = []
    for i in range(k if k > 2 else 1):
        a, b = rays[i], rays[(i + 1) % k]
        if a[0] * b[1] - a[1] * b[0] > 0:
            cones.append([i, (i + 1) % k])
    return rays, cones or [[0]]


@settings(max_examples=40, deadline=None)
@given(simplicial_fans(), st.data())
def test_planar_fans_subdivide_like_blowups(fan_data, data):
    rays, cones = fan_data
    F = fan_from_cones(rays, cones)
    c = data.draw(st.sampled_from([c for c in F.cones if c]))
    assert verify_stellar_is_blowup(F, c)
    assert verify_simplicialize(F, fan_building_set(F, "all"))
