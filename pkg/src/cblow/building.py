"""Building sets of meet-semilattices.

A subset G of L minus the bottom is a building set when every lower interval
[0, x] is the product of the intervals below the maximal elements of G under
x (the *factors* of x). Four equivalent checks are provided:

``check_building_def``
    builds the product of factor intervals and tests the join map for being
    an order isomorphism (the reference check, used as an oracle);
``check_building_cond2``
    factors must be joins of disjoint blocks of elementary divisors;
``check_building_cond3``
    join-generation plus ``G<=y & G<=(z v y1 v ... v yt) == G<=z``;
``check_building_cond4``
    join-generation plus disjointness and necessity (cheapest; the
    production check).

Every failing verdict names the element(s) witnessing the failure.
"""
from dataclasses import dataclass
import itertools

from cblow import kernels
from cblow.poset import bits, finest_factorization, irreducibles, to_mask
from cblow.verdict import Verdict


class NotABuildingSet(ValueError):
    def __init__(self, verdict, labels=None):
        self.verdict = verdict
        super().__init__(verdict.describe(labels))


class TooLarge(ValueError):
    pass


class InternalInconsistency(RuntimeError):
    pass


@dataclass(frozen=True)
class FactorSet:
    element: int
    factors: tuple


@dataclass(frozen=True, eq=False)
class BuildingSet:
    host: object
    members: frozenset
    validated_by: str = "c4"

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        return x in self.members

    def __eq__(self, other):
        if not isinstance(other, BuildingSet):
            return NotImplemented
        return self.host is other.host and self.members == other.members

    def __hash__(self):
        return hash((id(self.host), self.members))

    @property
    def mask(self):
        return to_mask(self.members)

    def labels(self):
        return [self.host.labels[i] for i in sorted(self.members)]


def as_mask(L, G):
    """Bitmask of a subset of L minus the bottom given as ids or a BuildingSet."""
    if isinstance(G, BuildingSet):
        return G.mask
    if isinstance(G, int):
        m = G
    else:
        m = 0
        for g in G:
            if not 0 <= g < L.n:
                raise ValueError(f"element id {g} out of range")
            m |= 1 << g
    if m >> L.bottom & 1:
        raise ValueError("a building set may not contain the bottom element")
    return m


def maxima_mask(L, mask):
    up = L.up
    out = 0
    for i in bits(mask):
        if up[i] & mask == 1 << i:
            out |= 1 << i
    return out


def factor_mask(L, gmask, x):
    return maxima_mask(L, gmask & L.down[x])


def factors(L, G, x):
    """F(x): the maximal elements of G weakly below x."""
    if x == L.bottom:
        raise ValueError("factors are defined for non-bottom elements only")
    return FactorSet(x, tuple(bits(factor_mask(L, as_mask(L, G), x))))


def _not_generated(L, g):
    """First non-bottom element that is not the join of the G-elements below it."""
    for x in range(L.n):
        if x != L.bottom and L.join_mask(g & L.down[x]) != x:
            return x
    return None


def _subsets(items):
    for r in range(len(items) + 1):
        yield from itertools.combinations(items, r)


def check_building_def(L, G):
    g = as_mask(L, G)
    for x in range(L.n):
        if x == L.bottom:
            continue
        F = list(bits(factor_mask(L, g, x)))
        factors_ = [list(bits(L.down[f])) for f in F]
        if not kernels.lattice_join_map_is_iso(L, factors_, F, L.down[x].bit_count()):
            return Verdict(
                False, "def", {"x": x, "factors": tuple(F)},
                "join map from the product of factor intervals is not an isomorphism",
            )
    return Verdict(True, "def")


def _factorization(L, x):
    key = ("finest", x)
    if key not in L._cache:
        L._cache[key] = finest_factorization(L, x)
    return L._cache[key]


def check_building_cond2(L, G):
    g = as_mask(L, G)
    for y in irreducibles(L):
        if y != L.bottom and not g >> y & 1:
            return Verdict(False, "c2", {"irreducible": y}, "irreducible element missing")
    bottom_label = L.labels[L.bottom]
    for x in range(L.n):
        if x == L.bottom:
            continue
        divisors, phi = _factorization(L, x)
        covered = set()
        for f in bits(factor_mask(L, g, x)):
            block = {d for d in divisors if L.leq[d, f]}
            if block & covered:
                return Verdict(False, "c2", {"x": x, "factor": f}, "blocks overlap")
            covered |= block
            coords = tuple(L.labels[d] if d in block else bottom_label for d in divisors)
            image = phi.target.labels[phi.mapping[phi.source.index[coords]]]
            if L.index[image] != f:
                return Verdict(
                    False, "c2", {"x": x, "factor": f},
                    "factor is not the image of a block of elementary divisors",
                )
        if covered != set(divisors):
            return Verdict(False, "c2", {"x": x}, "blocks do not cover the elementary divisors")
    return Verdict(True, "c2")


def check_building_cond3(L, G):
    g = as_mask(L, G)
    x0 = _not_generated(L, g)
    if x0 is not None:
        return Verdict(False, "c3", {"x": x0}, "not generated by joins")
    jt = L._join
    down = L.down
    for x in range(L.n):
        F = list(bits(factor_mask(L, g, x)))
        for y in F:
            others = [f for f in F if f != y]
            strictly_below = down[y] & ~(1 << y)
            for S in _subsets(others):
                js = L.join(S)
                for z in bits(strictly_below):
                    lhs = g & down[y] & down[jt[z][js]]
                    if lhs != g & down[z]:
                        return Verdict(
                            False, "c3", {"x": x, "y": y, "z": z, "subset": S},
                            "G<=y meets G<=(z v subset) outside G<=z",
                        )
    return Verdict(True, "c3")


def check_building_cond4(L, G):
    g = as_mask(L, G)
    x0 = _not_generated(L, g)
    if x0 is not None:
        return Verdict(False, "c4", {"x": x0}, "not generated by joins")
    jt = L._join
    down = L.down
    for x in range(L.n):
        F = list(bits(factor_mask(L, g, x)))
        if len(F) < 2:
            continue
        for y in F:
            others = [f for f in F if f != y]
            # disjointness is monotone in the subset: test the largest one
            if g & down[y] & down[L.join(others)]:
                return Verdict(
                    False, "c4", {"x": x, "y": y, "subset": tuple(others)}, "disjointness fails"
                )
            # necessity is monotone in z: lower covers of y suffice
            for S in _subsets(others):
                js = L.join(S)
                full = jt[y][js]
                for z in L.lower_covers[y]:
                    if jt[z][js] == full:
                        return Verdict(
                            False, "c4", {"x": x, "y": y, "z": z, "subset": S},
                            "necessity fails",
                        )
    return Verdict(True, "c4")


CHECKERS = {
    "def": check_building_def,
    "c2": check_building_cond2,
    "c3": check_building_cond3,
    "c4": check_building_cond4,
}


def is_building_set(L, G, criterion="c4"):
    return CHECKERS[criterion](L, G)


def building_set(L, G, criterion="c4"):
    """Validate G and wrap it; raises NotABuildingSet with the certificate."""
    if isinstance(G, BuildingSet) and G.host is L:
        return G
    m = as_mask(L, G)
    verdict = CHECKERS[criterion](L, m)
    if not verdict:
        raise NotABuildingSet(verdict, L.labels)
    return BuildingSet(L, frozenset(bits(m)), criterion)


def maximal_building_set(L):
    return BuildingSet(L, frozenset(i for i in range(L.n) if i != L.bottom), "c4")


def minimal_building_set(L):
    """The irreducible elements other than the bottom."""
    members = frozenset(i for i in irreducibles(L) if i != L.bottom)
    verdict = check_building_cond4(L, members)
    if not verdict:
        raise InternalInconsistency(
            "irreducible elements failed the building set check: " + verdict.describe(L.labels)
        )
    return BuildingSet(L, members, "c4")


def enumerate_building_sets(L, max_size=16):
    """All building sets of L, ordered by size and then by sorted ids."""
    if L.n > max_size:
        raise TooLarge(f"semilattice has {L.n} elements, enumeration limit is {max_size}")
    base = minimal_building_set(L).mask
    rest = [i for i in range(L.n) if i != L.bottom and not base >> i & 1]
    found = []
    for r in range(len(rest) + 1):
        for extra in itertools.combinations(rest, r):
            m = base | to_mask(extra)
            if check_building_cond4(L, m):
                found.append(frozenset(bits(m)))
    found.sort(key=lambda s: (len(s), sorted(s)))
    return [BuildingSet(L, s, "c4") for s in found]


def check_geometric(RL, G):
    """Factor codimensions must add up to the codimension of every element."""
    L = RL.lattice
    g = as_mask(L, G)
    verdict = check_building_cond4(L, g)
    if not verdict:
        raise NotABuildingSet(verdict, L.labels)
    for x in range(L.n):
        if x == L.bottom:
            continue
        F = list(bits(factor_mask(L, g, x)))
        total = sum(RL.codim[f] for f in F)
        if total != RL.codim[x]:
            return Verdict(
                False, "geometric", {"x": x, "factors": tuple(F)},
                f"factor codimensions sum to {total}, codim is {RL.codim[x]}",
            )
    return Verdict(True, "geometric")


def _antichains(L, mask):
    """Nonempty antichains inside ``mask`` as bitmasks."""
    items = list(bits(mask))
    comparable = [L.down[i] | L.up[i] for i in range(L.n)]

    def rec(start, chosen, allowed):
        for k in range(start, len(items)):
            v = items[k]
            if allowed >> v & 1:
                new = chosen | 1 << v
                yield new
                yield from rec(k + 1, new, allowed & ~comparable[v])

    yield from rec(0, 0, mask)


def verify_factor_properties(L, G):
    """Check the basic properties of factors for a building set G.

    (1) every element of G below x sits below exactly one factor of x;
    (2) each factor is needed: dropping one strictly lowers the join;
    (3) an antichain H of G with no G-element in any (h, join H] has
        factors exactly H at its join.
    """
    g = as_mask(L, G)
    for x in range(L.n):
        F = list(bits(factor_mask(L, g, x)))
        for y in bits(g & L.down[x]):
            if sum(1 for f in F if L.leq[y, f]) != 1:
                return Verdict(False, "factors-unique", {"x": x, "y": y})
        if x == L.bottom:
            continue
        if L.join(F) != x:
            return Verdict(False, "factors-needed", {"x": x}, "factors do not join to x")
        for f in F:
            if L.join([h for h in F if h != f]) == x:
                return Verdict(False, "factors-needed", {"x": x, "factor": f}, "factor not needed")
    for H in _antichains(L, g):
        j = L.join_mask(H)
        if j is None:
            continue
        gap = g & L.down[j]
        if all(not gap & (L.up[h] & ~(1 << h)) for h in bits(H)):
            if factor_mask(L, g, j) != H:
                return Verdict(False, "factors-recovered", {"antichain": tuple(bits(H))})
    return Verdict(True, "factors")


verify_prop25 = verify_factor_properties
