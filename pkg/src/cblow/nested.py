"""Nested subsets of a building set and the nested set complex.

A subset N of a building set G is nested when every antichain in N with at
least two elements has a join, and that join is not in G. Equivalent tests
through factor sets, through chains of L, and through the recursive family
Lambda are provided for cross-checking.
"""
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from cblow.building import as_mask, building_set, factor_mask, maxima_mask
from cblow.poset import SemiLattice, bits, to_mask
from cblow.verdict import Verdict


def _subset_mask(L, G, N):
    g = as_mask(L, G)
    n = as_mask(L, N)
    if n & ~g:
        raise ValueError("N must be a subset of G")
    return g, n


def _antichains_of_size2plus(L, mask):
    """Antichains with at least two elements inside ``mask``, as bitmasks."""
    items = list(bits(mask))
    comparable = [L.down[i] | L.up[i] for i in range(L.n)]

    def rec(start, chosen, size, allowed):
        for k in range(start, len(items)):
            v = items[k]
            if allowed >> v & 1:
                new = chosen | 1 << v
                if size >= 1:
                    yield new
                yield from rec(k + 1, new, size + 1, allowed & ~comparable[v])

    yield from rec(0, 0, 0, mask)


def is_nested(L, G, N):
    g, n = _subset_mask(L, G, N)
    for A in _antichains_of_size2plus(L, n):
        j = L.join_mask(A)
        if j is None or g >> j & 1:
            return False
    return True


def is_nested_via_factors(L, G, N):
    g, n = _subset_mask(L, G, N)
    for A in _antichains_of_size2plus(L, n):
        j = L.join_mask(A)
        if j is None or factor_mask(L, g, j) != A:
            return False
    return True


def is_nested_via_chain(L, G, N):
    """Search a chain C of L whose factor sets cover exactly N.

    Returns a Verdict whose witness holds the chain (ids, increasing).
    """
    g, n = _subset_mask(L, G, N)
    if not n:
        return Verdict(True, "chain", {"chain": ()})
    cand = []
    fm = {}
    for c in range(L.n):
        if c == L.bottom:
            continue
        f = factor_mask(L, g, c)
        if f and not f & ~n:
            cand.append(c)
            fm[c] = f
    cand.sort(key=lambda c: (L.down[c].bit_count(), c))
    dead = set()
    path = []

    def rec(last, covered):
        if covered == n:
            return True
        state = (last, covered)
        if state in dead:
            return False
        for c in cand:
            if last is not None and not (c != last and L.leq[last, c]):
                continue
            path.append(c)
            if rec(c, covered | fm[c]):
                return True
            path.pop()
        dead.add(state)
        return False

    if rec(None, 0):
        return Verdict(True, "chain", {"chain": tuple(path)})
    return Verdict(False, "chain")


def is_nested_via_lambda(L, G, N, memo=None):
    """Membership in the largest family Lambda of subsets of G that contains
    the empty set and singletons, is closed under N -> N_{<x} for x in max N,
    and satisfies max N == F(join(max N))."""
    g, n = _subset_mask(L, G, N)
    if memo is None:
        memo = {}

    def member(m):
        if m.bit_count() <= 1:
            return True
        if m in memo:
            return memo[m]
        top = maxima_mask(L, m)
        j = L.join_mask(top)
        ok = j is not None and factor_mask(L, g, j) == top
        if ok:
            for x in bits(top):
                if not member(m & L.down[x] & ~(1 << x)):
                    ok = False
                    break
        memo[m] = ok
        return ok

    return member(n)


NESTED_TESTS = {
    "def": is_nested,
    "factors": is_nested_via_factors,
    "chain": lambda L, G, N: bool(is_nested_via_chain(L, G, N)),
    "lambda": is_nested_via_lambda,
}


def _extends(L, g, face, v):
    """Whether face + {v} stays nested, given that face is nested."""
    comparable_v = L.down[v] | L.up[v]
    allowed = face & ~comparable_v
    if not allowed:
        return True
    items = list(bits(allowed))
    comparable = [L.down[i] | L.up[i] for i in range(L.n)]

    def rec(start, chosen, allowed_):
        for k in range(start, len(items)):
            u = items[k]
            if allowed_ >> u & 1:
                new = chosen | 1 << u
                j = L.join_mask(new | 1 << v)
                if j is None or g >> j & 1:
                    return False
                if not rec(k + 1, new, allowed_ & ~comparable[u]):
                    return False
        return True

    return rec(0, 0, allowed)


@dataclass(frozen=True, eq=False)
class NestedComplex:
    """All nested subsets of a building set, as sorted id tuples (size, then lexicographic)."""

    building: object
    faces: tuple

    @property
    def host(self):
        return self.building.host

    @cached_property
    def vertices(self):
        return tuple(sorted(self.building.members))

    @cached_property
    def facets(self):
        masks = [to_mask(f) for f in self.faces]
        out = []
        for f, m in zip(self.faces, masks):
            if not any(m != o and m & o == m for o in masks):
                out.append(f)
        return tuple(out)

    @cached_property
    def f_vector(self):
        """Face counts by size, starting with the empty face."""
        top = max((len(f) for f in self.faces), default=0)
        counts = [0] * (top + 1)
        for f in self.faces:
            counts[len(f)] += 1
        return tuple(counts)

    def labelled_faces(self):
        labels = self.host.labels
        return [tuple(sorted(str(labels[v]) for v in f)) for f in self.faces]


def nested_complex(L, G):
    """Enumerate the nested set complex of a building set G."""
    B = building_set(L, G)
    g = B.mask
    verts = sorted(B.members)
    faces = [()]
    frontier = [((), 0)]
    while frontier:
        nxt = []
        for face, m in frontier:
            start = face[-1] + 1 if face else 0
            for v in verts:
                if v < start:
                    continue
                if _extends(L, g, m, v):
                    nf = face + (v,)
                    faces.append(nf)
                    nxt.append((nf, m | 1 << v))
        frontier = nxt
    faces.sort(key=lambda f: (len(f), f))
    return NestedComplex(B, tuple(faces))


def face_label(names):
    return "{" + ",".join(names) + "}"


def face_poset(complex_or_faces):
    """Faces ordered by inclusion, the empty face at the bottom.

    Accepts a NestedComplex (vertices are rendered through the host labels)
    or any collection of faces given as collections of vertex names. Element
    i of the result is the i-th face in (size, lexicographic) order; its label
    is the brace-enclosed sorted list of vertex names.
    """
    if isinstance(complex_or_faces, NestedComplex):
        faces = complex_or_faces.labelled_faces()
    else:
        faces = [tuple(sorted(str(v) for v in f)) for f in complex_or_faces]
    faces = sorted(set(faces), key=lambda f: (len(f), f))
    sets = [frozenset(f) for f in faces]
    present = set(sets)
    for s in sets:
        if any(s - {v} not in present for v in s):
            raise ValueError(f"faces are not closed under subsets at {face_label(sorted(s))}")
    n = len(sets)
    leq = np.zeros((n, n), dtype=bool)
    for i, a in enumerate(sets):
        for j, b in enumerate(sets):
            leq[i, j] = a <= b
    return SemiLattice([face_label(f) for f in faces], leq, checked=True)
