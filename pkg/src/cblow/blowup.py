"""Combinatorial blowups, building-set transfer and blowup sequences.

Elements that survive a blowup keep their label. Each new element gets a
``Marked(alpha, y)`` label built from the prior labels, so labels nest as a
tree across iterated blowups. A label is identified by that tree, never by
its position.
"""
from dataclasses import dataclass
import itertools

import numpy as np

from cblow.building import NotABuildingSet, building_set, CHECKERS
from cblow.nested import face_label, face_poset, nested_complex
from cblow.poset import (
    IsoWitness, SemiLattice, is_isomorphic, linear_extensions_decreasing,
    non_boolean_interval,
)
from cblow.verdict import Verdict


class AlphaIsBottom(ValueError):
    pass


class AlphaNotMaximalInG(ValueError):
    pass


class NotDecreasingLinearExtension(ValueError):
    pass


class ElementVanished(RuntimeError):
    """A building-set element disappeared before its turn (a bug, not bad input)."""


@dataclass(frozen=True)
class Marked:
    """The new element [alpha, base] created by blowing up ``alpha``."""

    alpha: object
    base: object

    def __str__(self):
        return f"[{self.alpha},{self.base}]"


def _alpha_id(L, alpha):
    if not 0 <= alpha < L.n:
        raise ValueError(f"element id {alpha} out of range")
    if alpha == L.bottom:
        raise AlphaIsBottom("cannot blow up the bottom element")
    return alpha


def combinatorial_blowup(L, alpha):
    """Bl_alpha L. Survivors come first in their old order, then the marked copies."""
    alpha = _alpha_id(L, alpha)
    keep = [y for y in range(L.n) if not L.leq[alpha, y]]
    marked = [y for y in keep if L._join[y][alpha] >= 0]
    n_old, n = len(keep), len(keep) + len(marked)
    sub = L.leq[np.ix_(keep, keep)]
    leq = np.zeros((n, n), dtype=bool)
    leq[:n_old, :n_old] = sub
    pos = [keep.index(y) for y in marked]
    leq[n_old:, n_old:] = sub[np.ix_(pos, pos)]
    # z <= [alpha, y] iff z <= y; a marked element is never below a survivor
    leq[:n_old, n_old:] = sub[:, pos]
    a = L.labels[alpha]
    labels = [L.labels[y] for y in keep] + [Marked(a, L.labels[y]) for y in marked]
    return SemiLattice(labels, leq, checked=False)


def _expected_join(L, alpha, p, q):
    """Join in Bl_alpha L predicted by the case formulas, as a label or None.

    ``p`` and ``q`` are (is_marked, id in L) pairs.
    """
    (mp, y), (mz, z) = p, q
    j = L._join[y][z]
    if j < 0 or L.leq[alpha, j]:
        return None
    if not (mp or mz):
        return L.labels[j]
    if L._join[j][alpha] < 0:
        return None
    return Marked(L.labels[alpha], L.labels[j])


def verify_blowup_joins(L, alpha):
    """Compare every pairwise join of Bl_alpha L against the case formulas."""
    alpha = _alpha_id(L, alpha)
    B = combinatorial_blowup(L, alpha)
    keep = [y for y in range(L.n) if not L.leq[alpha, y]]
    marked = [y for y in keep if L._join[y][alpha] >= 0]
    origin = [(False, y) for y in keep] + [(True, y) for y in marked]
    for i in range(B.n):
        for k in range(i, B.n):
            got = B._join[i][k]
            got = None if got < 0 else B.labels[got]
            want = _expected_join(L, alpha, origin[i], origin[k])
            if got != want:
                return Verdict(
                    False, "blowup-join", {"pair": (i, k)},
                    f"join is {got}, formula gives {want}",
                )
    return Verdict(True, "blowup-join")


@dataclass(frozen=True, eq=False)
class Transfer:
    """G~ = (G - {alpha}) + {[alpha, 0]} on the blowup, with the id maps."""

    source: SemiLattice
    blowup: SemiLattice
    alpha: int
    building: object
    image: dict

    def nested_correspondence(self):
        """Check that N(G) maps onto N(G~) under alpha -> [alpha, 0] and identity elsewhere."""
        src = nested_complex(self.source, sorted(self.image))
        dst = nested_complex(self.blowup, self.building)
        mapped = {tuple(sorted(self.image[v] for v in f)) for f in src.faces}
        target = set(dst.faces)
        if mapped != target:
            extra = sorted(mapped - target)
            missing = sorted(target - mapped)
            return Verdict(
                False, "transfer", {},
                f"{len(extra)} faces without image, {len(missing)} faces without preimage",
            )
        return Verdict(True, "transfer")


def transfer_building_set(L, G, alpha, criterion="c4"):
    B0 = building_set(L, G)
    alpha = _alpha_id(L, alpha)
    if alpha not in B0:
        raise AlphaNotMaximalInG(f"{L.labels[alpha]} is not in the building set")
    if any(g != alpha and L.leq[alpha, g] for g in B0):
        raise AlphaNotMaximalInG(f"{L.labels[alpha]} is not maximal in the building set")
    B = combinatorial_blowup(L, alpha)
    image = {}
    for g in B0:
        lab = Marked(L.labels[alpha], L.labels[L.bottom]) if g == alpha else L.labels[g]
        if lab not in B.index:
            raise ElementVanished(f"{lab} is missing after blowing up {L.labels[alpha]}")
        image[g] = B.index[lab]
    Gt = building_set(B, sorted(image.values()), criterion)
    return Transfer(L, B, alpha, Gt, image)


def check_decreasing(L, G, ordering):
    """Raise NotDecreasingLinearExtension unless ``ordering`` lists G with
    every element before all elements of G below it."""
    ordering = list(ordering)
    if sorted(ordering) != sorted(set(G)) or len(set(ordering)) != len(ordering):
        raise NotDecreasingLinearExtension("ordering must list each element of G exactly once")
    for i, j in itertools.combinations(range(len(ordering)), 2):
        a, b = ordering[i], ordering[j]
        if L.leq[a, b]:
            raise NotDecreasingLinearExtension(
                f"{L.labels[a]} comes before {L.labels[b]} but lies below it"
            )


@dataclass(frozen=True, eq=False)
class Sequence:
    """Result of blowing up G in order; ``atom_label[g]`` names the final atom of g."""

    lattice: SemiLattice
    ordering: tuple
    atom_label: dict
    steps: tuple


def run_blowups(L, G, ordering=None):
    B0 = building_set(L, G)
    if ordering is None:
        ordering = next(linear_extensions_decreasing(L, sorted(B0), first_only=True))
    ordering = tuple(ordering)
    check_decreasing(L, B0, ordering)
    bottom = L.labels[L.bottom]
    current = {g: L.labels[g] for g in B0}
    M = L
    steps = [L]
    for g in ordering:
        lab = current[g]
        if lab not in M.index:
            raise ElementVanished(f"{lab} is missing at its turn")
        a = M.index[lab]
        rest = [M.index[current[h]] for h in B0 if h != g]
        if any(M.lt(a, r) for r in rest):
            raise AlphaNotMaximalInG(f"{lab} is not maximal among the remaining elements")
        M = combinatorial_blowup(M, a)
        current[g] = Marked(lab, bottom)
        steps.append(M)
    return Sequence(M, ordering, dict(current), tuple(steps))


def blowup_sequence(L, G, ordering=None):
    """Bl_t L after blowing up the elements of G in a decreasing order."""
    return run_blowups(L, G, ordering).lattice


def _canonical_witness(L, G, seq, target):
    """Send x to the face of G-names whose final atoms lie below x."""
    M = seq.lattice
    atoms = {}
    for g, lab in seq.atom_label.items():
        if lab not in M.index:
            raise ElementVanished(f"atom {lab} is missing from the final semilattice")
        atoms[g] = M.index[lab]
    mapping = []
    for x in range(M.n):
        names = sorted(str(L.labels[g]) for g, a in atoms.items() if M.leq[a, x])
        lab = face_label(names)
        if lab not in target.index:
            return None, x
        mapping.append(target.index[lab])
    return IsoWitness(M, target, tuple(mapping)), None


def verify_main_theorem(L, G, ordering=None, all_orders=False, max_orders=None):
    """Blow up G in order(s) and compare with the face poset of N(G).

    The witness holds the label-respecting isomorphism for the first ordering
    and the number of orderings checked.
    """
    B0 = building_set(L, G)
    target = face_poset(nested_complex(L, B0))
    if all_orders:
        orders = linear_extensions_decreasing(L, sorted(B0))
        if max_orders is not None:
            orders = itertools.islice(orders, max_orders)
    else:
        orders = [ordering]
    first = None
    count = 0
    for order in orders:
        seq = run_blowups(L, B0, order)
        w, bad = _canonical_witness(L, B0, seq, target)
        if w is None:
            return Verdict(
                False, "main", {"ordering": seq.ordering},
                f"element {seq.lattice.labels[bad]} has no matching nested set",
            )
        if not w.is_valid():
            return Verdict(
                False, "main", {"ordering": seq.ordering},
                "atom-set map is not an order isomorphism",
            )
        x = non_boolean_interval(seq.lattice)
        if x is not None:
            return Verdict(
                False, "main", {"ordering": seq.ordering},
                f"interval below {seq.lattice.labels[x]} is not boolean",
            )
        if first is None:
            first = w
        elif is_isomorphic(first.source, seq.lattice) is None:
            return Verdict(False, "main", {"ordering": seq.ordering}, "results differ across orderings")
        count += 1
    return Verdict(True, "main", {"iso": first, "orderings": count})


def check_transfer(L, G, alpha):
    """Transfer G at alpha and run every building-set checker plus the nested bijection."""
    t = transfer_building_set(L, G, alpha)
    for name, check in CHECKERS.items():
        v = check(t.blowup, t.building.mask)
        if not v:
            return v
    return t.nested_correspondence()


__all__ = [
    "AlphaIsBottom", "AlphaNotMaximalInG", "ElementVanished", "Marked",
    "NotABuildingSet", "NotDecreasingLinearExtension", "Sequence", "Transfer",
    "blowup_sequence", "check_decreasing", "check_transfer", "combinatorial_blowup",
    "run_blowups", "transfer_building_set", "verify_blowup_joins", "verify_main_theorem",
]
