"""Constructors for standard semilattices and coordinate arrangement lattices."""
from dataclasses import dataclass
import itertools
import random

import numpy as np

from cblow.poset import SemiLattice

BOTTOM_LABEL = "0"


def set_label(elements):
    """Text label of a set of positive integers: ``{1,2,3} -> "123"``.

    Falls back to underscores when some element has more than one digit.
    """
    elements = sorted(elements)
    if not elements:
        return BOTTOM_LABEL
    if all(0 < e < 10 for e in elements):
        return "".join(map(str, elements))
    return "_".join(map(str, elements))


@dataclass(frozen=True, eq=False)
class RankedSemiLattice:
    """A semilattice with a codimension for every element.

    Equality compares the lattices and the codimension of each label, so it
    does not depend on element ids.
    """

    lattice: SemiLattice
    codim: tuple

    def codim_by_label(self):
        return {str(lab): c for lab, c in zip(self.lattice.labels, self.codim)}

    def __eq__(self, other):
        if not isinstance(other, RankedSemiLattice):
            return NotImplemented
        return self.lattice == other.lattice and self.codim_by_label() == other.codim_by_label()

    def __hash__(self):
        return hash((self.lattice, tuple(sorted(self.codim_by_label().items()))))

    def __post_init__(self):
        L = self.lattice
        if len(self.codim) != L.n:
            raise ValueError("codim must have one entry per element")
        if self.codim[L.bottom] != 0:
            raise ValueError("codim of the bottom element must be 0")
        for i, j in zip(*np.nonzero(L.leq)):
            if i != j and not self.codim[i] < self.codim[j]:
                raise ValueError(
                    f"codim is not strictly increasing from {L.labels[i]} to {L.labels[j]}"
                )


def _family_lattice(sets, label=set_label):
    """Semilattice of a family of frozensets ordered by inclusion."""
    sets = sorted(set(sets), key=lambda s: (len(s), sorted(s)))
    n = len(sets)
    leq = np.zeros((n, n), dtype=bool)
    for i, a in enumerate(sets):
        for j, b in enumerate(sets):
            leq[i, j] = a <= b
    return SemiLattice([label(s) for s in sets], leq, checked=True), sets


def boolean_lattice(n):
    """Subsets of {1..n} ordered by inclusion."""
    if not 1 <= n <= 10:
        raise ValueError(f"boolean_lattice needs 1 <= n <= 10, got {n}")
    ground = range(1, n + 1)
    family = [frozenset(c) for k in range(n + 1) for c in itertools.combinations(ground, k)]
    return _family_lattice(family)[0]


def set_partitions(elements):
    """All set partitions of a list, each a tuple of sorted tuples."""
    elements = list(elements)
    if not elements:
        yield ()
        return
    first, rest = elements[0], elements[1:]
    for part in set_partitions(rest):
        yield ((first,),) + part
        for i in range(len(part)):
            yield part[:i] + ((first,) + part[i],) + part[i + 1:]


def partition_label(blocks):
    nontrivial = sorted(b for b in blocks if len(b) > 1)
    if not nontrivial:
        return BOTTOM_LABEL
    return "".join("(" + "".join(map(str, b)) + ")" for b in nontrivial)


def partition_lattice(n):
    """Set partitions of {1..n} under refinement, discrete partition at the bottom."""
    if not 2 <= n <= 6:
        raise ValueError(f"partition_lattice needs 2 <= n <= 6, got {n}")
    parts = [tuple(sorted(tuple(sorted(b)) for b in p)) for p in set_partitions(range(1, n + 1))]
    parts.sort(key=lambda p: (-len(p), partition_label(p)))
    k = len(parts)
    block_of = [{e: frozenset(b) for b in p for e in b} for p in parts]
    leq = np.zeros((k, k), dtype=bool)
    for i, p in enumerate(parts):
        for j in range(k):
            # p refines q iff every block of p sits inside a block of q
            leq[i, j] = all(frozenset(b) <= block_of[j][b[0]] for b in p)
    return SemiLattice([partition_label(p) for p in parts], leq, checked=True)


def divisor_lattice(n):
    """Positive divisors of n ordered by divisibility."""
    if n < 1:
        raise ValueError(f"divisor_lattice needs n >= 1, got {n}")
    divs = [d for d in range(1, n + 1) if n % d == 0]
    leq = np.array([[b % a == 0 for b in divs] for a in divs], dtype=bool)
    return SemiLattice([str(d) for d in divs], leq, checked=True)


def union_closure(sets):
    """Close a family of frozensets under pairwise union."""
    closed = set(sets)
    frontier = list(closed)
    while frontier:
        new = []
        for a in frontier:
            for b in list(closed):
                u = a | b
                if u not in closed:
                    closed.add(u)
                    new.append(u)
        frontier = new
    return closed


def coordinate_arrangement_lattice(coordinate_sets):
    """Intersection lattice of coordinate subspaces {z_i = 0 : i in S}.

    Intersections correspond to unions of coordinate sets, reverse inclusion
    of subspaces to inclusion of coordinate sets, and the codimension of a
    subspace is the size of its set.
    """
    family = [frozenset(s) for s in coordinate_sets]
    if not family:
        raise ValueError("need at least one coordinate set")
    if any(not s for s in family):
        raise ValueError("coordinate sets must be nonempty")
    if len(set(family)) != len(family):
        raise ValueError("coordinate sets must be distinct")
    if any(not isinstance(c, int) or c < 1 for s in family for c in s):
        raise ValueError("coordinates must be positive integers")
    closed = union_closure(family) | {frozenset()}
    L, sets = _family_lattice(closed)
    return RankedSemiLattice(L, tuple(len(s) for s in sets))


def union_closed_semilattice(family, remove_top=False):
    """Union closure of ``family`` plus the empty set, optionally without the
    total union (so that some joins are absent)."""
    closed = union_closure(frozenset(s) for s in family) | {frozenset()}
    if remove_top and len(closed) > 1:
        closed.discard(frozenset().union(*closed))
    return _family_lattice(closed)[0]


def random_semilattice(ground_size, family_size, seed, remove_top=False):
    """Union-closed family generated by ``family_size`` random nonempty subsets
    of {1..ground_size}; reproducible from ``seed``."""
    if not 1 <= ground_size <= 6:
        raise ValueError(f"random_semilattice needs 1 <= ground_size <= 6, got {ground_size}")
    rng = random.Random(seed)
    family = []
    for _ in range(family_size):
        mask = rng.randrange(1, 1 << ground_size)
        family.append(frozenset(i + 1 for i in range(ground_size) if mask >> i & 1))
    return union_closed_semilattice(family, remove_top=remove_top)


def chain(k):
    """The chain 0 < 1 < ... < k-1 with k elements."""
    leq = np.triu(np.ones((k, k), dtype=bool))
    return SemiLattice([str(i) for i in range(k)], leq, checked=True)
