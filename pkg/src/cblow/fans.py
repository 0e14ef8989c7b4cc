"""Polyhedral fans given by ray-index sets, stellar subdivision and simplicialization.

A fan is stored as the full list of its cones (the zero cone included), each
a frozenset of ray indices. Ray indices never change: a stellar subdivision
appends one ray, and rays that drop out of every cone keep their slot.
Coordinates are optional. Without them the fan is purely combinatorial and
only set-level consistency is checked.
"""
from dataclasses import dataclass
from functools import cached_property
import math

import numpy as np
from scipy.optimize import linprog
import sympy

from cblow.blowup import Marked, NotDecreasingLinearExtension, check_decreasing, combinatorial_blowup
from cblow.building import InternalInconsistency, building_set, minimal_building_set
from cblow.nested import face_label, face_poset, nested_complex
from cblow.poset import IsoWitness, SemiLattice, linear_extensions_decreasing, non_boolean_interval
from cblow.verdict import Verdict


class InconsistentFaces(ValueError):
    pass


class NonConeIntersection(ValueError):
    pass


class TauNotInFan(ValueError):
    pass


class PointNotInRelativeInterior(ValueError):
    pass


class NotNonIncreasing(NotDecreasingLinearExtension):
    pass


def cone_label(cone):
    return face_label([str(i) for i in sorted(cone)])


def primitive(v):
    g = math.gcd(*v)
    if g == 0:
        raise ValueError("zero vector has no primitive generator")
    return tuple(x // g for x in v)


def _rank(vectors):
    if not vectors:
        return 0
    return sympy.Matrix([list(v) for v in vectors]).rank()


def _feasible(A_eq, b_eq, A_ub, b_ub, nvar):
    res = linprog(
        np.zeros(nvar),
        A_ub=np.asarray(A_ub, dtype=float) if A_ub else None,
        b_ub=np.asarray(b_ub, dtype=float) if b_ub else None,
        A_eq=np.asarray(A_eq, dtype=float) if A_eq else None,
        b_eq=np.asarray(b_eq, dtype=float) if b_eq else None,
        bounds=[(None, None)] * nvar,
        method="highs",
    )
    return res.status == 0


def _separates(rays, zero, pos, neg=()):
    """Is there w with w.r = 0 on ``zero``, w.r >= 1 on ``pos`` and w.r <= -1 on ``neg``?"""
    d = len(rays[0])
    A_eq = [list(rays[i]) for i in zero]
    A_ub = [[-x for x in rays[i]] for i in pos] + [list(rays[i]) for i in neg]
    b_ub = [-1.0] * (len(pos) + len(neg))
    return _feasible(A_eq, [0.0] * len(A_eq), A_ub, b_ub, d)


@dataclass(frozen=True, eq=False)
class FacePosetFan:
    dim: object
    rays: object
    n_rays: int
    cones: tuple

    def __eq__(self, other):
        if not isinstance(other, FacePosetFan):
            return NotImplemented
        return (self.dim, self.rays, self.n_rays, self.cones) == (
            other.dim, other.rays, other.n_rays, other.cones
        )

    def __hash__(self):
        return hash((self.dim, self.rays, self.n_rays, self.cones))

    @cached_property
    def face_poset(self):
        n = len(self.cones)
        leq = np.zeros((n, n), dtype=bool)
        for i, a in enumerate(self.cones):
            for j, b in enumerate(self.cones):
                leq[i, j] = a <= b
        return SemiLattice([cone_label(c) for c in self.cones], leq, checked=True)

    @cached_property
    def index(self):
        return {c: i for i, c in enumerate(self.cones)}

    @cached_property
    def maximal_cones(self):
        return tuple(c for c in self.cones if not any(c < d for d in self.cones))

    def cone_id(self, cone):
        cone = frozenset(cone)
        if cone not in self.index:
            raise TauNotInFan(f"{cone_label(cone)} is not a cone of the fan")
        return self.index[cone]

    def is_simplicial(self):
        if non_boolean_interval(self.face_poset) is not None:
            return False
        if self.rays is not None:
            return all(_rank([self.rays[i] for i in c]) == len(c) for c in self.maximal_cones)
        return True

    def non_simplicial_cones(self):
        P = self.face_poset
        return tuple(
            c for c in self.cones if P.down[self.index[c]].bit_count() != 1 << len(c)
        )


def _sort_cones(cones):
    return tuple(sorted(set(cones), key=lambda c: (len(c), sorted(c))))


def _all_subsets(c):
    items = sorted(c)
    return [frozenset(i for k, i in enumerate(items) if m >> k & 1) for m in range(1 << len(items))]


def fan_from_cones(rays=None, maximal_cones=(), faces=(), dim=None, n_rays=None):
    """Build a fan from its maximal cones and, for non-simplicial cones, their faces.

    A cone counts as simplicial when its rays are linearly independent (with
    coordinates) or when no proper face with at least two rays is listed for it
    (without coordinates). Simplicial cones get every subset as a face.
    Non-simplicial cones get exactly the listed faces, their rays and the zero cone.
    """
    maximal = [frozenset(c) for c in maximal_cones]
    listed = [frozenset(c) for c in faces]
    if not maximal:
        raise InconsistentFaces("a fan needs at least one cone")
    if rays is not None:
        rays = tuple(tuple(int(x) for x in r) for r in rays)
        if not rays:
            raise InconsistentFaces("empty ray list")
        if dim is None:
            dim = len(rays[0])
        if any(len(r) != dim for r in rays):
            raise InconsistentFaces(f"every ray must have {dim} coordinates")
        if any(not any(r) for r in rays):
            raise InconsistentFaces("zero vector given as a ray")
        n = len(rays)
    else:
        n = 1 + max((i for c in maximal + listed for i in c), default=-1)
        if n_rays is not None:
            n = max(n, n_rays)
    for c in maximal + listed:
        if any(not isinstance(i, (int, np.integer)) or not 0 <= i < n for i in c):
            raise InconsistentFaces(f"cone {cone_label(c)} uses an unknown ray index")
    given = set(maximal) | set(listed)

    def simplicial(c):
        if rays is not None:
            return _rank([rays[i] for i in c]) == len(c)
        return not any(f < c and len(f) >= 2 for f in given)

    cones = set()
    for c in given:
        if simplicial(c):
            cones.update(_all_subsets(c))
        else:
            own = [f for f in given if f <= c]
            if rays is not None and not any(f < c and len(f) >= 2 for f in own):
                raise InconsistentFaces(
                    f"non-simplicial cone {cone_label(c)} needs its faces listed"
                )
            cones.update(own)
            cones.update(frozenset([i]) for i in c)
            cones.add(frozenset())
    for c in list(cones):
        if not any(c <= m for m in maximal):
            raise InconsistentFaces(f"{cone_label(c)} is not a face of any maximal cone")
    cones = _sort_cones(cones)
    cone_set = set(cones)
    for a in cones:
        for b in cones:
            if a & b not in cone_set:
                raise InconsistentFaces(
                    f"{cone_label(a)} and {cone_label(b)} meet in {cone_label(a & b)}, not a cone"
                )
    fan = FacePosetFan(dim, rays, n, cones)
    if rays is not None:
        _validate_geometry(fan)
    return fan


def _validate_geometry(fan):
    rays = fan.rays
    for c in fan.cones:
        if not c:
            continue
        if _rank([rays[i] for i in c]) == len(c):
            continue
        # listed faces of a non-simplicial cone must be cut out by a supporting hyperplane
        for f in fan.cones:
            if f < c and not _separates(rays, sorted(f), sorted(c - f)):
                raise NonConeIntersection(f"{cone_label(f)} is not a face of {cone_label(c)}")
    top = fan.maximal_cones
    for i, a in enumerate(top):
        for b in top[i + 1:]:
            s = a & b
            if not _separates(rays, sorted(s), sorted(a - s), sorted(b - s)):
                raise NonConeIntersection(
                    f"{cone_label(a)} and {cone_label(b)} do not meet in the common face {cone_label(s)}"
                )


def _in_relint(rays, tau, point):
    """Is ``point`` a combination of the rays of tau with all coefficients positive?"""
    gens = [rays[i] for i in sorted(tau)]
    k, d = len(gens), len(point)
    # variables: lambda_1..lambda_k, s ; maximise s with lambda_i >= s, s <= 1
    A_eq = [[gens[j][r] for j in range(k)] + [0.0] for r in range(d)]
    b_eq = [float(x) for x in point]
    A_ub = [[-1.0 if j == i else 0.0 for j in range(k)] + [1.0] for i in range(k)]
    b_ub = [0.0] * k
    c = [0.0] * k + [-1.0]
    res = linprog(
        c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq,
        bounds=[(None, None)] * k + [(None, 1.0)], method="highs",
    )
    return res.status == 0 and -res.fun > 1e-9


def stellar_subdivision(fan, tau, point=None):
    """sd(fan, tau): remove the star of tau and cone the new ray over its boundary."""
    tau = frozenset(tau)
    fan.cone_id(tau)
    if not tau:
        raise TauNotInFan("cannot subdivide at the zero cone")
    r = fan.n_rays
    rays = fan.rays
    if rays is not None:
        if point is None:
            total = [sum(col) for col in zip(*(primitive(rays[i]) for i in tau))]
            point = primitive(total)
        else:
            point = tuple(int(x) for x in point)
            if len(point) != len(rays[0]) or not _in_relint(rays, tau, point):
                raise PointNotInRelativeInterior(
                    f"{point} is not in the relative interior of {cone_label(tau)}"
                )
            point = primitive(point)
        rays = rays + (point,)
    elif point is not None:
        raise PointNotInRelativeInterior("a point needs ray coordinates")
    star = [c for c in fan.cones if tau <= c]
    kept = [c for c in fan.cones if not tau <= c]
    new = [
        c | {r} for c in fan.cones
        if not tau <= c and any(c <= s for s in star)
    ]
    return FacePosetFan(fan.dim, rays, r + 1, _sort_cones(kept + new))


def verify_stellar_is_blowup(fan, tau):
    """Face poset of sd(fan, tau) against Bl_tau of the face poset, label by label."""
    tau = frozenset(tau)
    t = fan.cone_id(tau)
    sd = stellar_subdivision(fan, tau)
    Bl = combinatorial_blowup(fan.face_poset, t)
    r = fan.n_rays
    by_label = {cone_label(c): c for c in fan.cones}
    mapping = []
    for lab in Bl.labels:
        if isinstance(lab, Marked):
            cone = by_label[lab.base] | {r}
        else:
            cone = by_label[lab]
        if cone not in sd.index:
            return Verdict(False, "stellar", {}, f"{lab} has no matching cone")
        mapping.append(sd.index[cone])
    w = IsoWitness(Bl, sd.face_poset, tuple(mapping))
    if not w.is_valid():
        return Verdict(False, "stellar", {}, "label map is not an order isomorphism")
    return Verdict(True, "stellar", {"iso": w})


BUILDING_KINDS = ("all", "rays+nonsimplicial", "irreducible")


def fan_building_set(fan, kind):
    """Cone ids of one of the standard building sets of the face poset."""
    P = fan.face_poset
    if kind == "all":
        ids = [i for i, c in enumerate(fan.cones) if c]
    elif kind == "rays+nonsimplicial":
        bad = set(fan.non_simplicial_cones())
        ids = [i for i, c in enumerate(fan.cones) if len(c) == 1 or c in bad]
    elif kind == "irreducible":
        ids = sorted(minimal_building_set(P))
    else:
        raise ValueError(f"unknown building set kind {kind!r}; expected one of {BUILDING_KINDS}")
    return sorted(building_set(P, ids).members)


@dataclass(frozen=True, eq=False)
class Simplicialization:
    fan: FacePosetFan
    ordering: tuple
    new_ray: dict


def _run_simplicialize(fan, G, ordering=None):
    P = fan.face_poset
    B = building_set(P, G)
    if ordering is None:
        ordering = next(linear_extensions_decreasing(P, sorted(B), first_only=True))
    ordering = tuple(ordering)
    try:
        check_decreasing(P, B, ordering)
    except NotDecreasingLinearExtension as e:
        raise NotNonIncreasing(str(e)) from None
    current = fan
    new_ray = {}
    for g in ordering:
        cone = fan.cones[g]
        if cone not in current.index:
            raise InternalInconsistency(f"cone {cone_label(cone)} vanished before its turn")
        new_ray[g] = current.n_rays
        current = stellar_subdivision(current, cone)
    return Simplicialization(current, ordering, new_ray)


def simplicialize(fan, G, ordering=None):
    """Subdivide at every cone of G in a non-increasing order; the result is simplicial."""
    out = _run_simplicialize(fan, G, ordering).fan
    if not out.is_simplicial():
        raise InternalInconsistency("subdivided fan is not simplicial")
    return out


def verify_simplicialize(fan, G, ordering=None):
    """Simplicialize and match the face poset with that of N(G), cone by nested set."""
    P = fan.face_poset
    run = _run_simplicialize(fan, G, ordering)
    out = run.fan
    if not out.is_simplicial():
        return Verdict(False, "simplicialize", {}, "result is not simplicial")
    target = face_poset(nested_complex(P, sorted(run.new_ray)))
    mapping = []
    for c in out.cones:
        names = sorted(P.labels[g] for g, r in run.new_ray.items() if r in c)
        lab = face_label(names)
        if lab not in target.index:
            return Verdict(False, "simplicialize", {}, f"cone {cone_label(c)} has no nested set")
        mapping.append(target.index[lab])
    w = IsoWitness(out.face_poset, target, tuple(mapping))
    if not w.is_valid():
        return Verdict(False, "simplicialize", {}, "cone map is not an order isomorphism")
    return Verdict(True, "simplicialize", {"iso": w, "fan": out})
